use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::chow::canonical_order;
use crate::error::{Error, Result};
use crate::expr::{exponent_from_int, indexed_name, EvalContext, Expr};

/// A polynomial germ at the origin of `C^n` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl LocalPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    /// `x_{index+1}`.
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[index] = 1;
        Self::monomial(e, BigRational::one())
    }

    pub fn monomial(exps: Vec<u32>, coeff: BigRational) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        Self { nvars, terms }
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        let mut out = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, exps: Vec<u32>, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn vanishes_at_origin(&self) -> bool {
        self.constant_term().is_zero()
    }

    /// Lowest total degree of a term (the order of vanishing).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    fn check_nvars(&self, other: &LocalPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::NvarsMismatch { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &LocalPoly) -> Result<LocalPoly> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &LocalPoly) -> Result<LocalPoly> {
        self.check_nvars(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.iter().zip(eb).map(|(a, b)| a + b).collect(), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigRational) -> LocalPoly {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect() }
    }

    pub fn pow(&self, e: u32) -> LocalPoly {
        let mut acc = Self::constant(self.nvars, BigRational::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `∂/∂x_{index+1}`.
    pub fn derivative(&self, index: usize) -> LocalPoly {
        assert!(index < self.nvars, "variable index out of range");
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[index] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[index] -= 1;
            out.add_term(d, c * BigRational::from_integer(BigInt::from(e[index])));
        }
        out
    }

    /// Partial derivatives `(∂f/∂x_1, ..., ∂f/∂x_n)`.
    pub fn gradient(&self) -> Vec<LocalPoly> {
        (0..self.nvars).map(|i| self.derivative(i)).collect()
    }

    /// Multiplies by the monomial `x^exps` and drops terms of degree
    /// `>= below`.
    pub(crate) fn shifted_truncated(&self, exps: &[u32], below: u32) -> Vec<(Vec<u32>, BigRational)> {
        let shift: u32 = exps.iter().sum();
        self.terms
            .iter()
            .filter(|(e, _)| e.iter().sum::<u32>() + shift < below)
            .map(|(e, c)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), c.clone()))
            .collect()
    }

    /// Parses `x1^2 - 1/2*x2` style text. `nvars` must cover every variable
    /// index used.
    pub fn parse(src: &str, nvars: usize) -> Result<LocalPoly> {
        Expr::parse(src)?.eval(&PolyContext { nvars })
    }

    /// Highest variable index mentioned in `src` (for inferring `nvars`).
    pub fn max_var_index(src: &str) -> Result<usize> {
        fn walk(e: &Expr, best: &mut usize) {
            match e {
                Expr::Var { name, .. } => {
                    if let Some(i) = indexed_name(name, "x") {
                        *best = (*best).max(i);
                    }
                }
                Expr::Int(_) => {}
                Expr::Neg(a) => walk(a, best),
                Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) | Expr::Pow(a, b, _) => {
                    walk(a, best);
                    walk(b, best);
                }
            }
        }
        let mut best = 0;
        walk(&Expr::parse(src)?, &mut best);
        Ok(best)
    }
}

impl fmt::Display for LocalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| canonical_order(a, b));
        for (k, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| if p == 1 { format!("x{}", i + 1) } else { format!("x{}^{p}", i + 1) })
                .collect();
            let mono = mono.join("*");
            let sep = match (k, c.is_negative()) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let abs = c.abs();
            let coeff =
                if abs.is_integer() { abs.numer().to_string() } else { format!("{}/{}", abs.numer(), abs.denom()) };
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{sep}{coeff}")?,
                (false, true) => write!(f, "{sep}{mono}")?,
                (false, false) => write!(f, "{sep}{coeff}*{mono}")?,
            }
        }
        Ok(())
    }
}

struct PolyContext {
    nvars: usize,
}

impl EvalContext for PolyContext {
    type Value = LocalPoly;

    fn int(&self, n: &BigInt) -> LocalPoly {
        LocalPoly::constant(self.nvars, BigRational::from_integer(n.clone()))
    }

    fn var(&self, name: &str, offset: usize) -> Result<LocalPoly> {
        match indexed_name(name, "x") {
            Some(i) if i <= self.nvars => Ok(LocalPoly::var(self.nvars, i - 1)),
            Some(i) => {
                Err(Error::Expr { offset, message: format!("x{i} out of range: germ has {} variables", self.nvars) })
            }
            None => Err(Error::Expr {
                offset,
                message: format!("unknown identifier '{name}' (expected x1..x{})", self.nvars),
            }),
        }
    }

    fn add(&self, a: LocalPoly, b: LocalPoly) -> LocalPoly {
        &a + &b
    }
    fn sub(&self, a: LocalPoly, b: LocalPoly) -> LocalPoly {
        &a - &b
    }
    fn mul(&self, a: LocalPoly, b: LocalPoly) -> LocalPoly {
        &a * &b
    }
    fn neg(&self, a: LocalPoly) -> LocalPoly {
        -&a
    }
    fn pow(&self, a: LocalPoly, e: u32) -> LocalPoly {
        a.pow(e)
    }

    fn div(&self, a: LocalPoly, b: LocalPoly, offset: usize) -> Result<LocalPoly> {
        let c = b.constant_term();
        if b.terms.len() != 1 || c.is_zero() {
            return Err(Error::Expr { offset, message: "only division by a non-zero constant is allowed".into() });
        }
        Ok(a.scale(&c.recip()))
    }

    fn as_exponent(&self, v: &LocalPoly, offset: usize) -> Result<u32> {
        let c = v.constant_term();
        if v.terms.len() > usize::from(!c.is_zero()) || !c.is_integer() {
            return Err(Error::Expr { offset, message: "exponent must be a non-negative integer".into() });
        }
        exponent_from_int(&c.to_integer(), offset)
    }
}

impl Add for &LocalPoly {
    type Output = LocalPoly;
    fn add(self, rhs: &LocalPoly) -> LocalPoly {
        self.checked_add(rhs).expect("variable count mismatch")
    }
}

impl Sub for &LocalPoly {
    type Output = LocalPoly;
    fn sub(self, rhs: &LocalPoly) -> LocalPoly {
        self.checked_add(&-rhs).expect("variable count mismatch")
    }
}

impl Mul for &LocalPoly {
    type Output = LocalPoly;
    fn mul(self, rhs: &LocalPoly) -> LocalPoly {
        self.checked_mul(rhs).expect("variable count mismatch")
    }
}

impl Neg for &LocalPoly {
    type Output = LocalPoly;
    fn neg(self) -> LocalPoly {
        LocalPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LocalPoly {
        LocalPoly::parse(s, 2).unwrap()
    }

    #[test]
    fn parse_and_render() {
        let f = p("x1^2 - 1/2*x2 + 3");
        assert_eq!(f.to_string(), "3 - 1/2*x2 + x1^2");
        assert_eq!(LocalPoly::parse(&f.to_string(), 2).unwrap(), f);
        assert!(LocalPoly::parse("x3", 2).is_err());
        assert!(LocalPoly::parse("x1/x2", 2).is_err());
        assert!(LocalPoly::parse("y", 2).is_err());
        assert_eq!(LocalPoly::max_var_index("x1 + x7^2").unwrap(), 7);
    }

    #[test]
    fn calculus() {
        assert_eq!(p("x1^3*x2^2 + x1").derivative(0), p("3*x1^2*x2^2 + 1"));
        assert_eq!(p("x1^3*x2^2 + x1").derivative(1), p("2*x1^3*x2"));
        assert_eq!(p("(x1 + x2)^2"), p("x1^2 + 2*x1*x2 + x2^2"));
        assert!((&p("x1 - x2") - &p("x1 - x2")).is_zero());
        assert_eq!(p("x2 + x1^2").order(), Some(1));
        assert!(!p("1 + x1").vanishes_at_origin());
    }
}
