//! Exact verification of residue formulas for maps generically transverse
//! to regular holomorphic distributions.
//!
//! The left-hand sides are characteristic-class expressions in the Chow ring
//! of a product of projective spaces ([`chow`], [`classes`]); the right-hand
//! sides are sums of tangency multiplicities, which for isolated points are
//! colengths of zero-dimensional local ideals ([`local`]). [`residue`]
//! assembles both sides for a [`residue::Scenario`], and [`scenario`] plus
//! [`run`] provide the scenario file format and the CLI driver.

pub mod chow;
pub mod classes;
pub mod error;
pub mod expr;
pub mod local;
pub mod report;
pub mod residue;
pub mod run;
pub mod scenario;

pub use chow::{ChowElement, MultiDegree, MultiProjectiveSpace};
pub use classes::{SplitBundle, TotalClass};
pub use error::{Error, Result};
pub use local::{LocalIdeal, LocalPoly, VectorFieldGerm};
pub use residue::{Scenario, Verdict, VerificationReport};
