//! Characteristic classes of split bundles on multiprojective spaces.
//!
//! Bundles on a complete intersection `X ⊂ Y` are represented by bundles on
//! `Y`; classes on `X` are ambient representatives and capping with `[X]`
//! is multiplication by [`class_of_ci`].

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::chow::{ChowElement, MultiDegree, MultiProjectiveSpace};
use crate::error::{Error, Result};

/// `O(d_1) ⊕ ... ⊕ O(d_r)` on a multiprojective space. Rank 0 is allowed
/// and has total Chern class 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitBundle {
    space: MultiProjectiveSpace,
    summands: Vec<MultiDegree>,
}

impl SplitBundle {
    pub fn new(space: &MultiProjectiveSpace, summands: Vec<MultiDegree>) -> Result<Self> {
        if let Some(bad) = summands.iter().find(|d| d.len() != space.num_factors()) {
            return Err(Error::IncompatibleOperands {
                left: format!("summand {bad}"),
                right: format!("space {space}"),
            });
        }
        Ok(Self { space: space.clone(), summands })
    }

    pub fn space(&self) -> &MultiProjectiveSpace {
        &self.space
    }

    pub fn summands(&self) -> &[MultiDegree] {
        &self.summands
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    pub fn dual(&self) -> SplitBundle {
        Self { space: self.space.clone(), summands: self.summands.iter().map(MultiDegree::negated).collect() }
    }

    /// Whitney sum.
    pub fn direct_sum(&self, other: &SplitBundle) -> Result<SplitBundle> {
        if self.space != other.space {
            return Err(Error::IncompatibleOperands { left: self.space.to_string(), right: other.space.to_string() });
        }
        let mut summands = self.summands.clone();
        summands.extend(other.summands.iter().cloned());
        Ok(Self { space: self.space.clone(), summands })
    }
}

impl fmt::Display for SplitBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.summands.iter().map(|d| d.to_string()).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// A total class `1 + c_1 + c_2 + ...`; the unit constant term makes it
/// invertible in `A(Y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalClass(ChowElement);

impl TotalClass {
    pub fn new(value: ChowElement) -> Result<Self> {
        if value.grade_part(0) != ChowElement::one(value.space()) {
            return Err(Error::Invalid(format!("total class must have constant term 1, got {value}")));
        }
        Ok(TotalClass(value))
    }

    pub fn one(space: &MultiProjectiveSpace) -> Self {
        TotalClass(ChowElement::one(space))
    }

    pub fn value(&self) -> &ChowElement {
        &self.0
    }

    pub fn into_value(self) -> ChowElement {
        self.0
    }

    pub fn space(&self) -> &MultiProjectiveSpace {
        self.0.space()
    }

    /// `c_i`.
    pub fn part(&self, i: u32) -> ChowElement {
        self.0.grade_part(i)
    }

    pub fn mul(&self, other: &TotalClass) -> Result<TotalClass> {
        Ok(TotalClass(self.0.checked_mul(&other.0)?))
    }
}

impl fmt::Display for TotalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `c(B) = ∏ (1 + a_1 h_1 + ... + a_s h_s)`.
pub fn chern_of_split(bundle: &SplitBundle) -> TotalClass {
    let space = bundle.space();
    let one = ChowElement::one(space);
    let mut acc = one.clone();
    for d in bundle.summands() {
        let factor = &one + &d.c1(space).expect("summand length checked at construction");
        acc = &acc * &factor;
    }
    TotalClass(acc)
}

/// `c(E*)` from `c(E)`: `c_i ↦ (-1)^i c_i`.
pub fn dual_class(c: &TotalClass) -> TotalClass {
    TotalClass(c.0.alternate_signs())
}

/// The inverse of `c` modulo degrees above `truncation`, by the recursion
/// `t_0 = 1`, `t_d = -Σ_{i=1..d} c_i t_{d-i}`. Applied to `c(E)` this is the
/// Segre class `s(E)`.
pub fn inverse(c: &TotalClass, truncation: u32) -> TotalClass {
    let space = c.space();
    let parts: Vec<ChowElement> = (0..=truncation).map(|i| c.part(i)).collect();
    let mut inv: Vec<ChowElement> = vec![ChowElement::one(space)];
    for d in 1..=truncation as usize {
        let mut t = ChowElement::zero(space);
        for i in 1..=d {
            if !parts[i].is_zero() && !inv[d - i].is_zero() {
                t = &t - &(&parts[i] * &inv[d - i]);
            }
        }
        inv.push(t);
    }
    let mut total = ChowElement::zero(space);
    for t in &inv {
        total = &total + t;
    }
    TotalClass(total)
}

/// Segre class `s(E) = c(E)^{-1}`, truncated at `dim Y`.
pub fn segre_of_split(bundle: &SplitBundle) -> TotalClass {
    inverse(&chern_of_split(bundle), bundle.space().dim())
}

/// `num / den = num · den^{-1}`, truncated at `dim Y`.
pub fn quotient(num: &TotalClass, den: &TotalClass) -> Result<TotalClass> {
    let inv = inverse(den, den.space().dim());
    num.mul(&inv)
}

/// `c(T_Y) = ∏ (1 + h_i)^{n_i + 1}` from the Euler sequences of the factors.
pub fn tangent_of_ambient(space: &MultiProjectiveSpace) -> TotalClass {
    let one = ChowElement::one(space);
    let mut acc = one.clone();
    for (i, &n) in space.factor_dims().iter().enumerate() {
        let factor = &one + &ChowElement::hyperplane(space, i);
        acc = &acc * &factor.pow(n + 1);
    }
    TotalClass(acc)
}

/// `det(T_Y) = O(n_1 + 1, ..., n_s + 1)`.
pub fn ambient_anticanonical_degree(space: &MultiProjectiveSpace) -> MultiDegree {
    MultiDegree::new(space.factor_dims().iter().map(|&n| i64::from(n) + 1).collect())
}

fn check_ci(defining: &SplitBundle) -> Result<u32> {
    let dim_y = defining.space().dim();
    let rank = defining.rank() as u32;
    if rank > dim_y {
        return Err(Error::DegenerateScenario(format!(
            "complete intersection of {rank} equations in a space of dimension {dim_y}"
        )));
    }
    Ok(dim_y - rank)
}

/// `[X] = ∏ c_1(O(d_j))` for `X` cut out by a section of `defining`.
pub fn class_of_ci(defining: &SplitBundle) -> Result<ChowElement> {
    check_ci(defining)?;
    let space = defining.space();
    let mut acc = ChowElement::one(space);
    for d in defining.summands() {
        acc = &acc * &d.c1(space)?;
    }
    Ok(acc)
}

/// `c(T_X) = c(T_Y) / c(N_{X|Y})` with `N_{X|Y} = defining|_X`.
pub fn tangent_of_ci(defining: &SplitBundle) -> Result<TotalClass> {
    check_ci(defining)?;
    quotient(&tangent_of_ambient(defining.space()), &chern_of_split(defining))
}

/// Topological Euler characteristic `χ(X) = ∫ c_{dim X}(T_X) ∩ [X]`.
pub fn chi_of_ci(space: &MultiProjectiveSpace, defining: &SplitBundle) -> Result<BigInt> {
    if defining.space() != space {
        return Err(Error::IncompatibleOperands { left: space.to_string(), right: defining.space().to_string() });
    }
    let dim_x = check_ci(defining)?;
    let ctx = tangent_of_ci(defining)?;
    let x = class_of_ci(defining)?;
    Ok((&ctx.part(dim_x) * &x).integrate())
}

/// `det(B) = O(Σ d_j)`.
pub fn det_of_split(bundle: &SplitBundle) -> MultiDegree {
    bundle.summands().iter().fold(MultiDegree::zero(bundle.space().num_factors()), |acc, d| {
        acc.checked_add(d).expect("summand length checked at construction")
    })
}
