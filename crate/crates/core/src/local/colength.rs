//! Colength by truncated linear algebra.
//!
//! For `D = 1, 2, ...` the quotient `C[x] / (I + m^D)` is computed as the
//! space of polynomials of degree `< D` modulo the span of the truncations
//! of `x^a · g`. Its dimension `d(D)` is non-decreasing in `D`. Once every
//! monomial of degree `D - 1` lies in that span, `m^{D-1} ⊂ I + m^D` and by
//! Nakayama `m^{D-1} ⊂ I` in the local ring, so `d(D-1) = d(D)` is the
//! colength. Without that certificate no value is returned.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::LocalPoly;
use crate::error::{Error, Result};

/// Monomials of total degree exactly `d` in `n` variables.
pub(crate) fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n - 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

type SparseRow = Vec<(usize, BigRational)>;

/// Row echelon basis over `Q`; each stored row has leading coefficient 1
/// at a column no other stored row leads at.
#[derive(Default)]
struct Echelon {
    pivots: HashMap<usize, SparseRow>,
}

fn axpy(row: &SparseRow, k: &BigRational, piv: &SparseRow) -> SparseRow {
    // row - k * piv, both sorted by column
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < piv.len() {
        let take_row = j >= piv.len() || (i < row.len() && row[i].0 < piv[j].0);
        let take_piv = i >= row.len() || (j < piv.len() && piv[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_piv {
            out.push((piv[j].0, -(k * &piv[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - k * &piv[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl Echelon {
    fn reduce(&self, mut row: SparseRow) -> SparseRow {
        loop {
            let Some((col, lead)) = row.first().cloned() else { return row };
            match self.pivots.get(&col) {
                Some(piv) => row = axpy(&row, &lead, piv),
                None => return row,
            }
        }
    }

    fn insert(&mut self, row: SparseRow) {
        let row = self.reduce(row);
        if let Some((col, lead)) = row.first().cloned() {
            let inv = lead.recip();
            let normalized = row.into_iter().map(|(c, v)| (c, v * &inv)).collect();
            self.pivots.insert(col, normalized);
        }
    }

    fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Quotient dimension of `C[x]/(I + m^below)` together with the echelon
/// basis of `(I + m^below)/m^below` and the column index.
fn truncated_quotient(
    nvars: usize,
    generators: &[LocalPoly],
    below: u32,
) -> (usize, Echelon, HashMap<Vec<u32>, usize>) {
    let mut columns: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut by_degree: Vec<Vec<Vec<u32>>> = Vec::new();
    for d in 0..below {
        let monos = monomials_of_degree(nvars, d);
        for m in &monos {
            let next = columns.len();
            columns.insert(m.clone(), next);
        }
        by_degree.push(monos);
    }
    let mut ech = Echelon::default();
    for g in generators {
        let Some(ord) = g.order() else { continue };
        for (d, monos) in by_degree.iter().enumerate() {
            if d as u32 + ord >= below {
                break;
            }
            for m in monos {
                let mut row: SparseRow =
                    g.shifted_truncated(m, below).into_iter().map(|(e, c)| (columns[&e], c)).collect();
                row.sort_by_key(|(c, _)| *c);
                ech.insert(row);
            }
        }
    }
    (columns.len() - ech.rank(), ech, columns)
}

/// `dim_C O_n / (generators)` at the origin. Generators need not vanish at
/// 0; a unit makes the quotient trivial.
pub fn colength_of(nvars: usize, generators: &[LocalPoly], max_degree: u32) -> Result<u64> {
    if let Some(g) = generators.iter().find(|g| g.nvars() != nvars) {
        return Err(Error::NvarsMismatch { expected: nvars, found: g.nvars() });
    }
    let mut previous = 0usize;
    for below in 1..=max_degree.max(1) {
        let (dim, ech, columns) = truncated_quotient(nvars, generators, below);
        let certified = monomials_of_degree(nvars, below - 1)
            .into_iter()
            .all(|m| ech.contains(vec![(columns[&m], BigRational::one())]));
        if certified && dim == previous {
            return Ok(dim as u64);
        }
        previous = dim;
    }
    Err(Error::NotIsolated { max_degree })
}
