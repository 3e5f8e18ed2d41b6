//! Local multiplicities of isolated zeros at the origin.
//!
//! Everything here reduces to the colength `dim_C O_n / I` of an ideal of
//! germs. Milnor numbers, tangency indices of a curve with a vector field,
//! and Jacobian-type point residues are colengths of specific ideals.

mod colength;
mod poly;

pub use colength::colength_of;
pub use poly::LocalPoly;

use crate::error::{Error, Result};

/// Degree budget of the truncation procedure when none is given.
pub const DEFAULT_MAX_DEGREE: u32 = 24;

/// Germs of polynomials at the origin, all vanishing there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalIdeal {
    nvars: usize,
    generators: Vec<LocalPoly>,
}

impl LocalIdeal {
    pub fn new(generators: Vec<LocalPoly>) -> Result<Self> {
        let nvars = match generators.first() {
            Some(g) => g.nvars(),
            None => return Err(Error::Invalid("an ideal needs at least one generator".into())),
        };
        if nvars == 0 {
            return Err(Error::Invalid("germs need at least one variable".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.nvars() != nvars) {
            return Err(Error::NvarsMismatch { expected: nvars, found: g.nvars() });
        }
        if let Some((i, _)) = generators.iter().enumerate().find(|(_, g)| !g.vanishes_at_origin()) {
            return Err(Error::Invalid(format!("generator {} does not vanish at the origin", i + 1)));
        }
        Ok(Self { nvars, generators })
    }

    /// Parses `;`-separated generators, e.g. `x1^2 - x2; x2^2`. The number
    /// of variables is the largest index used unless `nvars` is given.
    pub fn parse(src: &str, nvars: Option<usize>) -> Result<Self> {
        let parts: Vec<&str> = src.split(';').map(str::trim).filter(|s| !s.is_empty()).collect();
        let n = match nvars {
            Some(n) => n,
            None => {
                let mut n = 0;
                for part in &parts {
                    n = n.max(LocalPoly::max_var_index(part)?);
                }
                n.max(1)
            }
        };
        let gens = parts.iter().map(|s| LocalPoly::parse(s, n)).collect::<Result<Vec<_>>>()?;
        Self::new(gens)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[LocalPoly] {
        &self.generators
    }
}

/// `v = Σ a_i ∂/∂x_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorFieldGerm {
    components: Vec<LocalPoly>,
}

impl VectorFieldGerm {
    pub fn new(components: Vec<LocalPoly>) -> Result<Self> {
        let n = components.len();
        if n == 0 {
            return Err(Error::Invalid("a vector field needs at least one component".into()));
        }
        if let Some(c) = components.iter().find(|c| c.nvars() != n) {
            return Err(Error::NvarsMismatch { expected: n, found: c.nvars() });
        }
        Ok(Self { components })
    }

    /// Parses `;`-separated components `a_1; ...; a_n` with `n` variables.
    pub fn parse(src: &str) -> Result<Self> {
        let parts: Vec<&str> = src.split(';').map(str::trim).collect();
        let n = parts.len();
        Self::new(parts.iter().map(|s| LocalPoly::parse(s, n)).collect::<Result<Vec<_>>>()?)
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[LocalPoly] {
        &self.components
    }
}

/// `dim_C O_n / I`.
pub fn colength(ideal: &LocalIdeal, max_degree: u32) -> Result<u64> {
    colength_of(ideal.nvars(), ideal.generators(), max_degree)
}

/// `v(f) = Σ a_i ∂f/∂x_i`.
pub fn apply_vector_field(v: &VectorFieldGerm, f: &LocalPoly) -> Result<LocalPoly> {
    if v.nvars() != f.nvars() {
        return Err(Error::NvarsMismatch { expected: v.nvars(), found: f.nvars() });
    }
    let mut out = LocalPoly::zero(f.nvars());
    for (i, a) in v.components().iter().enumerate() {
        out = &out + &(a * &f.derivative(i));
    }
    Ok(out)
}

/// Milnor number: colength of the Jacobian ideal. Zero at a smooth point.
pub fn milnor_number(f: &LocalPoly, max_degree: u32) -> Result<u64> {
    if !f.vanishes_at_origin() {
        return Err(Error::Invalid("f must vanish at the origin".into()));
    }
    colength_of(f.nvars(), &f.gradient(), max_degree)
}

/// Tangency index `dim O_2 / (f, v(f))` of the curve `{f = 0}` with the
/// foliation generated by `v`.
pub fn brunella_index(f: &LocalPoly, v: &VectorFieldGerm, max_degree: u32) -> Result<u64> {
    if f.nvars() != 2 {
        return Err(Error::NvarsMismatch { expected: 2, found: f.nvars() });
    }
    if !f.vanishes_at_origin() {
        return Err(Error::Invalid("the curve must pass through the origin".into()));
    }
    let vf = apply_vector_field(v, f)?;
    if vf.is_zero() {
        return Err(Error::InvariantCurve);
    }
    match colength_of(2, &[f.clone(), vf], max_degree) {
        Err(Error::NotIsolated { .. }) => Err(Error::InvariantCurve),
        other => other,
    }
}

/// Point residue `Res_0[dg_1 ∧ ... ∧ dg_n; g_1, ..., g_n]`, evaluated as the
/// local intersection multiplicity of the `g_i`.
pub fn jacobian_residue(g: &[LocalPoly], max_degree: u32) -> Result<u64> {
    let n = match g.first() {
        Some(p) => p.nvars(),
        None => return Err(Error::Invalid("empty system".into())),
    };
    if g.len() != n {
        return Err(Error::Invalid(format!("residue needs a square system: {} functions in {n} variables", g.len())));
    }
    let ideal = LocalIdeal::new(g.to_vec())?;
    colength(&ideal, max_degree)
}
