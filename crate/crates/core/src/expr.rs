//! Small arithmetic expression language shared by class expressions
//! (`3*h1^2*h2`), local polynomials (`x1^2 - 1/2*x2`) and the integer
//! parameter expressions of scenario files (`(L-1)^2`).
//!
//! Grammar: integers, identifiers, `+ - * / ^ ( )`. Exponents must evaluate
//! to non-negative integers. Evaluation is delegated to an [`EvalContext`],
//! which decides what identifiers mean and which divisions are legal.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var { name: String, offset: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, Box<Expr>, usize),
}

pub trait EvalContext {
    type Value: Clone;

    fn int(&self, n: &BigInt) -> Self::Value;
    fn var(&self, name: &str, offset: usize) -> Result<Self::Value>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn sub(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn neg(&self, a: Self::Value) -> Self::Value;
    fn pow(&self, a: Self::Value, e: u32) -> Self::Value;
    fn div(&self, a: Self::Value, b: Self::Value, offset: usize) -> Result<Self::Value>;
    /// Interprets an exponent value as a machine integer.
    fn as_exponent(&self, v: &Self::Value, offset: usize) -> Result<u32>;
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = src[start..i].parse().expect("digits");
            out.push((Tok::Int(n), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            // report the whole (possibly multi-byte) character
            let ch = src[i..].chars().next().unwrap_or(c);
            return Err(Error::Expr { offset: i, message: format!("unexpected character '{ch}'") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(_, o)| *o).unwrap_or(self.end)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, expected: &str) -> Result<T> {
        let found = match self.peek() {
            None => "end of input".to_string(),
            Some(Tok::Int(n)) => format!("'{n}'"),
            Some(Tok::Ident(s)) => format!("'{s}'"),
            Some(Tok::Sym(c)) => format!("'{c}'"),
        };
        Err(Error::Expr { offset: self.offset(), message: format!("expected {expected}, found {found}") })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let off = self.offset();
                self.pos += 1;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), off);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Sym('^')) {
            let off = self.offset();
            self.pos += 1;
            let exp = self.unary()?;
            Ok(Expr::Pow(Box::new(base), Box::new(exp), off))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let off = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Expr::Var { name, offset: off })
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("')'");
                }
                Ok(e)
            }
            _ => self.err("a number, identifier or '('"),
        }
    }
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let toks = tokenize(src)?;
        let mut p = Parser { toks, pos: 0, end: src.len() };
        let e = p.expr()?;
        if p.pos != p.toks.len() {
            return p.err("an operator or end of input");
        }
        Ok(e)
    }

    pub fn eval<C: EvalContext>(&self, ctx: &C) -> Result<C::Value> {
        Ok(match self {
            Expr::Int(n) => ctx.int(n),
            Expr::Var { name, offset } => ctx.var(name, *offset)?,
            Expr::Neg(a) => ctx.neg(a.eval(ctx)?),
            Expr::Add(a, b) => ctx.add(a.eval(ctx)?, b.eval(ctx)?),
            Expr::Sub(a, b) => ctx.sub(a.eval(ctx)?, b.eval(ctx)?),
            Expr::Mul(a, b) => ctx.mul(a.eval(ctx)?, b.eval(ctx)?),
            Expr::Div(a, b, off) => ctx.div(a.eval(ctx)?, b.eval(ctx)?, *off)?,
            Expr::Pow(a, e, off) => {
                let base = a.eval(ctx)?;
                let ev = e.eval(ctx)?;
                let e = ctx.as_exponent(&ev, *off)?;
                ctx.pow(base, e)
            }
        })
    }

    /// Polynomial degree in the variable `var`, treating every other
    /// identifier as a constant. `None` when the expression is not
    /// polynomial in `var` (variable exponent or division by it).
    pub fn degree_in(&self, var: &str) -> Option<u32> {
        match self {
            Expr::Int(_) => Some(0),
            Expr::Var { name, .. } => Some(u32::from(name == var)),
            Expr::Neg(a) => a.degree_in(var),
            Expr::Add(a, b) | Expr::Sub(a, b) => Some(a.degree_in(var)?.max(b.degree_in(var)?)),
            Expr::Mul(a, b) => Some(a.degree_in(var)? + b.degree_in(var)?),
            Expr::Div(a, b, _) => {
                if b.degree_in(var)? == 0 {
                    a.degree_in(var)
                } else {
                    None
                }
            }
            Expr::Pow(a, e, _) => {
                if e.degree_in(var)? != 0 {
                    return None;
                }
                let k = e.eval(&IntContext { param: None }).ok()?.to_u32()?;
                Some(a.degree_in(var)? * k)
            }
        }
    }

    pub fn mentions(&self, var: &str) -> bool {
        match self {
            Expr::Int(_) => false,
            Expr::Var { name, .. } => name == var,
            Expr::Neg(a) => a.mentions(var),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => a.mentions(var) || b.mentions(var),
            Expr::Div(a, b, _) | Expr::Pow(a, b, _) => a.mentions(var) || b.mentions(var),
        }
    }
}

/// Integer evaluation with an optional binding for the parameter `L`.
pub struct IntContext {
    pub param: Option<i64>,
}

impl EvalContext for IntContext {
    type Value = BigInt;

    fn int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }

    fn var(&self, name: &str, offset: usize) -> Result<BigInt> {
        match (name, self.param) {
            ("L", Some(l)) => Ok(BigInt::from(l)),
            ("L", None) => Err(Error::Expr { offset, message: "parameter L is unbound (no sweep given)".into() }),
            _ => Err(Error::Expr { offset, message: format!("unknown identifier '{name}'") }),
        }
    }

    fn add(&self, a: BigInt, b: BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: BigInt, b: BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: BigInt, b: BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: BigInt) -> BigInt {
        -a
    }
    fn pow(&self, a: BigInt, e: u32) -> BigInt {
        num_traits::pow(a, e as usize)
    }

    fn div(&self, a: BigInt, b: BigInt, offset: usize) -> Result<BigInt> {
        if b.is_zero() || !(&a % &b).is_zero() {
            return Err(Error::Expr { offset, message: "inexact integer division".into() });
        }
        Ok(a / b)
    }

    fn as_exponent(&self, v: &BigInt, offset: usize) -> Result<u32> {
        exponent_from_int(v, offset)
    }
}

pub(crate) fn exponent_from_int(v: &BigInt, offset: usize) -> Result<u32> {
    if v.is_negative() {
        return Err(Error::Expr { offset, message: format!("negative exponent {v}") });
    }
    v.to_u32()
        .filter(|e| *e <= 1 << 16)
        .ok_or_else(|| Error::Expr { offset, message: format!("exponent {v} too large") })
}

/// Parses `NAME<k>` into `k` when `name` starts with `prefix` followed by a
/// positive decimal index.
pub(crate) fn indexed_name(name: &str, prefix: &str) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) || rest.starts_with('0') {
        return None;
    }
    rest.parse().ok()
}
