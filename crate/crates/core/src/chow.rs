//! Chow ring of a product of projective spaces.
//!
//! `A(P^{n_1} x ... x P^{n_s}) = Z[h_1, ..., h_s] / (h_i^{n_i + 1})`, where
//! `h_i` is the pullback of the hyperplane class of the `i`-th factor.
//! Elements are stored as sparse maps from exponent vectors to non-zero
//! big integers; monomials killed by a relation are never stored, so equal
//! classes have equal term maps.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{exponent_from_int, indexed_name, EvalContext, Expr};

/// The ambient `Y = P^{n_1} x ... x P^{n_s}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct MultiProjectiveSpace {
    factor_dims: Vec<u32>,
}

impl MultiProjectiveSpace {
    pub fn new(factor_dims: Vec<u32>) -> Result<Self> {
        if factor_dims.is_empty() {
            return Err(Error::InvalidSpace("at least one projective factor is required".into()));
        }
        if let Some(i) = factor_dims.iter().position(|&n| n == 0) {
            return Err(Error::InvalidSpace(format!("factor {} has dimension 0", i + 1)));
        }
        Ok(Self { factor_dims })
    }

    /// `P^n`.
    pub fn projective(n: u32) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn factor_dims(&self) -> &[u32] {
        &self.factor_dims
    }

    pub fn num_factors(&self) -> usize {
        self.factor_dims.len()
    }

    pub fn dim(&self) -> u32 {
        self.factor_dims.iter().sum()
    }

    fn admits(&self, exps: &[u32]) -> bool {
        exps.iter().zip(&self.factor_dims).all(|(e, n)| e <= n)
    }
}

impl TryFrom<Vec<u32>> for MultiProjectiveSpace {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<MultiProjectiveSpace> for Vec<u32> {
    fn from(y: MultiProjectiveSpace) -> Vec<u32> {
        y.factor_dims
    }
}

impl fmt::Display for MultiProjectiveSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factor_dims.iter().map(|n| format!("P{n}")).collect();
        f.write_str(&parts.join(" x "))
    }
}

/// Multidegree `(a_1, ..., a_s)` of the line bundle `O(a_1, ..., a_s)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiDegree(Vec<i64>);

impl MultiDegree {
    pub fn new(degrees: Vec<i64>) -> Self {
        MultiDegree(degrees)
    }

    pub fn zero(len: usize) -> Self {
        MultiDegree(vec![0; len])
    }

    pub fn degrees(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negated(&self) -> Self {
        MultiDegree(self.0.iter().map(|a| -a).collect())
    }

    pub fn checked_add(&self, other: &MultiDegree) -> Result<MultiDegree> {
        if self.len() != other.len() {
            return Err(Error::IncompatibleOperands { left: self.to_string(), right: other.to_string() });
        }
        Ok(MultiDegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn checked_sub(&self, other: &MultiDegree) -> Result<MultiDegree> {
        self.checked_add(&other.negated())
    }

    /// Every component strictly positive.
    pub fn is_strictly_positive(&self) -> bool {
        !self.0.is_empty() && self.0.iter().all(|&a| a > 0)
    }

    /// First Chern class `a_1 h_1 + ... + a_s h_s`.
    pub fn c1(&self, space: &MultiProjectiveSpace) -> Result<ChowElement> {
        if self.len() != space.num_factors() {
            return Err(Error::IncompatibleOperands {
                left: format!("multidegree {self}"),
                right: format!("space {space}"),
            });
        }
        let mut out = ChowElement::zero(space);
        for (i, &a) in self.0.iter().enumerate() {
            out = &out + &ChowElement::hyperplane(space, i).scale(&BigInt::from(a));
        }
        Ok(out)
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "O({})", parts.join(","))
    }
}

/// A class in `A(Y)` with exact integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChowElement {
    space: MultiProjectiveSpace,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl ChowElement {
    pub fn zero(space: &MultiProjectiveSpace) -> Self {
        Self { space: space.clone(), terms: BTreeMap::new() }
    }

    pub fn one(space: &MultiProjectiveSpace) -> Self {
        Self::constant(space, BigInt::one())
    }

    pub fn constant(space: &MultiProjectiveSpace, c: BigInt) -> Self {
        Self::monomial(space, vec![0; space.num_factors()], c)
    }

    /// `h_{index+1}`; `index` is 0-based.
    pub fn hyperplane(space: &MultiProjectiveSpace, index: usize) -> Self {
        assert!(index < space.num_factors(), "hyperplane index out of range");
        let mut e = vec![0; space.num_factors()];
        e[index] = 1;
        Self::monomial(space, e, BigInt::one())
    }

    /// `coeff * h^exps`, or zero when the monomial violates a relation.
    pub fn monomial(space: &MultiProjectiveSpace, exps: Vec<u32>, coeff: BigInt) -> Self {
        assert_eq!(exps.len(), space.num_factors(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() && space.admits(&exps) {
            terms.insert(exps, coeff);
        }
        Self { space: space.clone(), terms }
    }

    /// The class of a point, `h_1^{n_1} ... h_s^{n_s}`.
    pub fn point_class(space: &MultiProjectiveSpace) -> Self {
        Self::monomial(space, space.factor_dims.clone(), BigInt::one())
    }

    pub fn from_terms<I>(space: &MultiProjectiveSpace, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut out = Self::zero(space);
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, exps: Vec<u32>, coeff: BigInt) {
        if coeff.is_zero() || !self.space.admits(&exps) {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn space(&self) -> &MultiProjectiveSpace {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    fn check_same(&self, other: &ChowElement) -> Result<()> {
        if self.space != other.space {
            return Err(Error::IncompatibleOperands { left: self.space.to_string(), right: other.space.to_string() });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &ChowElement) -> Result<ChowElement> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &ChowElement) -> Result<ChowElement> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &ChowElement) -> Result<ChowElement> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.space);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> ChowElement {
        if k.is_zero() {
            return Self::zero(&self.space);
        }
        Self { space: self.space.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect() }
    }

    pub fn pow(&self, mut e: u32) -> ChowElement {
        let mut base = self.clone();
        let mut acc = Self::one(&self.space);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Homogeneous part of total degree `d`.
    pub fn grade_part(&self, d: u32) -> ChowElement {
        Self {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total_degree(e) == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops every term of degree above `d`.
    pub fn truncate(&self, d: u32) -> ChowElement {
        Self {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total_degree(e) <= d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Multiplies the degree-`i` part by `(-1)^i`.
    pub fn alternate_signs(&self) -> ChowElement {
        Self {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| if total_degree(e) % 2 == 1 { (e.clone(), -c) } else { (e.clone(), c.clone()) })
                .collect(),
        }
    }

    /// Largest total degree present, `None` for zero.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| total_degree(e)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| total_degree(e));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Degree map: coefficient of the top monomial `h_1^{n_1} ... h_s^{n_s}`.
    pub fn integrate(&self) -> BigInt {
        self.coefficient(&self.space.factor_dims)
    }

    /// Every coefficient non-negative. This certifies effectivity of the
    /// cycle in the monomial basis; it is sufficient, not necessary.
    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Parses the canonical rendering (and, more generally, any integer
    /// polynomial expression in `h1..hs`).
    pub fn parse(space: &MultiProjectiveSpace, src: &str) -> Result<ChowElement> {
        Expr::parse(src)?.eval(&ClassContext { space, param: None })
    }
}

pub(crate) fn total_degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

/// Canonical term order: ascending total degree, then lexicographically
/// descending exponent vectors (`h1^2` before `h1*h2` before `h2^2`).
pub(crate) fn canonical_order(a: &[u32], b: &[u32]) -> Ordering {
    total_degree(a).cmp(&total_degree(b)).then_with(|| b.cmp(a))
}

impl fmt::Display for ChowElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| canonical_order(a, b));
        for (k, exps) in keys.into_iter().enumerate() {
            let c = &self.terms[exps];
            let mono = render_monomial(exps);
            let abs = c.abs();
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => f.write_str(&mono)?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}

fn render_monomial(exps: &[u32]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("h{}", i + 1) } else { format!("h{}^{e}", i + 1) })
        .collect();
    parts.join("*")
}

/// Evaluates expressions in `h1..hs` (and optionally `L`) into `A(Y)`.
pub(crate) struct ClassContext<'a> {
    pub space: &'a MultiProjectiveSpace,
    pub param: Option<i64>,
}

impl EvalContext for ClassContext<'_> {
    type Value = ChowElement;

    fn int(&self, n: &BigInt) -> ChowElement {
        ChowElement::constant(self.space, n.clone())
    }

    fn var(&self, name: &str, offset: usize) -> Result<ChowElement> {
        if name == "L" {
            return match self.param {
                Some(l) => Ok(ChowElement::constant(self.space, BigInt::from(l))),
                None => Err(Error::Expr { offset, message: "parameter L is unbound (no sweep given)".into() }),
            };
        }
        match indexed_name(name, "h") {
            Some(i) if i <= self.space.num_factors() => Ok(ChowElement::hyperplane(self.space, i - 1)),
            Some(i) => Err(Error::Expr {
                offset,
                message: format!("h{i} out of range: ambient has {} factors", self.space.num_factors()),
            }),
            None => Err(Error::Expr { offset, message: format!("unknown identifier '{name}'") }),
        }
    }

    fn add(&self, a: ChowElement, b: ChowElement) -> ChowElement {
        &a + &b
    }
    fn sub(&self, a: ChowElement, b: ChowElement) -> ChowElement {
        &a - &b
    }
    fn mul(&self, a: ChowElement, b: ChowElement) -> ChowElement {
        &a * &b
    }
    fn neg(&self, a: ChowElement) -> ChowElement {
        -&a
    }
    fn pow(&self, a: ChowElement, e: u32) -> ChowElement {
        a.pow(e)
    }

    fn div(&self, _a: ChowElement, _b: ChowElement, offset: usize) -> Result<ChowElement> {
        Err(Error::Expr { offset, message: "division is not allowed in class expressions".into() })
    }

    fn as_exponent(&self, v: &ChowElement, offset: usize) -> Result<u32> {
        let c = v.coefficient(&vec![0; self.space.num_factors()]);
        if v.num_terms() > usize::from(!c.is_zero()) {
            return Err(Error::Expr { offset, message: "exponent must be an integer".into() });
        }
        exponent_from_int(&c, offset)
    }
}

impl Add for &ChowElement {
    type Output = ChowElement;

    fn add(self, rhs: &ChowElement) -> ChowElement {
        self.checked_add(rhs).expect("incompatible operands")
    }
}

impl Sub for &ChowElement {
    type Output = ChowElement;

    fn sub(self, rhs: &ChowElement) -> ChowElement {
        self.checked_sub(rhs).expect("incompatible operands")
    }
}

impl Mul for &ChowElement {
    type Output = ChowElement;

    fn mul(self, rhs: &ChowElement) -> ChowElement {
        self.checked_mul(rhs).expect("incompatible operands")
    }
}

impl Neg for &ChowElement {
    type Output = ChowElement;

    fn neg(self) -> ChowElement {
        ChowElement { space: self.space.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y311() -> MultiProjectiveSpace {
        MultiProjectiveSpace::new(vec![3, 1, 1]).unwrap()
    }

    fn cls(s: &str) -> ChowElement {
        ChowElement::parse(&y311(), s).unwrap()
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn space_validation() {
        assert!(MultiProjectiveSpace::new(vec![]).is_err());
        assert!(MultiProjectiveSpace::new(vec![2, 0]).is_err());
        assert_eq!(y311().dim(), 5);
    }

    #[test]
    fn additive_identity_and_inverse() {
        let h3 = cls("h1");
        assert_eq!(&h3 + &ChowElement::zero(&y311()), h3);
        assert!((&cls("2*h1*h2") + &cls("-2*h1*h2")).is_zero());
        // (4 - l) h3 h11 + (l - 2) h3 h11 at l = 3
        let l = 3;
        let a = ChowElement::monomial(&y311(), vec![1, 1, 0], big(4 - l));
        let b = ChowElement::monomial(&y311(), vec![1, 1, 0], big(l - 2));
        assert_eq!(&a + &b, cls("2*h1*h2"));
    }

    #[test]
    fn mismatched_spaces_are_rejected() {
        let other = ChowElement::hyperplane(&MultiProjectiveSpace::projective(3).unwrap(), 0);
        assert!(matches!(cls("h1").checked_add(&other), Err(Error::IncompatibleOperands { .. })));
        assert!(matches!(cls("h1").checked_mul(&other), Err(Error::IncompatibleOperands { .. })));
    }

    #[test]
    fn worked_example_product() {
        // l = 3: ((l-2) h3 h11 + (3 - 3l + l^2) h3^2) * (l h3^2 + l h3 h11)
        let a = cls("h1*h2 + 3*h1^2");
        let b = cls("3*h1^2 + 3*h1*h2");
        assert_eq!(&a * &b, cls("12*h1^3*h2"));
        assert!((&cls("h2") * &cls("h2")).is_zero());
    }

    #[test]
    fn powers() {
        assert_eq!(cls("1 + h2").pow(2), cls("1 + 2*h2"));
        assert_eq!(cls("h1 + 7").pow(0), ChowElement::one(&y311()));
        assert_eq!(cls("1 + h1").pow(4), cls("1 + 4*h1 + 6*h1^2 + 4*h1^3"));
        for i in 0..3 {
            let n = y311().factor_dims()[i];
            assert!(ChowElement::hyperplane(&y311(), i).pow(n + 1).is_zero());
        }
    }

    #[test]
    fn grading() {
        assert_eq!(cls("1 + 4*h1 + 6*h1^2").grade_part(1), cls("4*h1"));
        let cty = cls("(1+h1)^4*(1+h2)^2*(1+h3)^2");
        assert_eq!(cty.grade_part(1), cls("4*h1 + 2*h2 + 2*h3"));
        assert!(cty.grade_part(6).is_zero());
    }

    #[test]
    fn degree_map() {
        assert_eq!(cls("h1^3*h2*h3").integrate(), big(1));
        assert_eq!(cls("5*h1^3*h2*h3 + 7*h1^2*h2").integrate(), big(5));
    }

    #[test]
    fn effectivity() {
        let l = 4;
        let s = ChowElement::monomial(&y311(), vec![3, 1, 0], big(l * (l - 1) * (l - 1)));
        assert!(s.is_effective());
        assert!(!cls("-h1").is_effective());
        assert!(ChowElement::zero(&y311()).is_effective());
    }

    #[test]
    fn canonical_rendering() {
        assert_eq!(cls("h1^3*h2*12").to_string(), "12*h1^3*h2");
        assert_eq!(cls("h1*h2^1 - 1 + 3*h1^2 - h2*h3").to_string(), "-1 + 3*h1^2 + h1*h2 - h2*h3");
        assert_eq!(ChowElement::zero(&y311()).to_string(), "0");
        assert_eq!(cls("-h1").to_string(), "-h1");
        let x = cls("2 - 3*h1 + h1*h3 + 5*h1^3*h2");
        assert_eq!(ChowElement::parse(&y311(), &x.to_string()).unwrap(), x);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(ChowElement::parse(&y311(), "h4").is_err());
        assert!(ChowElement::parse(&y311(), "h1/2").is_err());
        assert!(ChowElement::parse(&y311(), "L*h1").is_err());
        assert!(ChowElement::parse(&y311(), "h1^h2").is_err());
    }

    #[test]
    fn multidegree_arithmetic() {
        let a = MultiDegree::new(vec![1, -2, 0]);
        assert_eq!(a.c1(&y311()).unwrap(), cls("h1 - 2*h2"));
        assert!(a.checked_add(&MultiDegree::new(vec![1])).is_err());
        assert!(!a.is_strictly_positive());
        assert!(MultiDegree::new(vec![1]).is_strictly_positive());
        assert_eq!(a.to_string(), "O(1,-2,0)");
    }
}
