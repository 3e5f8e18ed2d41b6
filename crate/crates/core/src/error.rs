use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incompatible operands: {left} vs {right}")]
    IncompatibleOperands { left: String, right: String },

    #[error("invalid ambient space: {0}")]
    InvalidSpace(String),

    #[error("degenerate scenario: {0}")]
    DegenerateScenario(String),

    #[error("corollary not applicable: {0}")]
    CorollaryInapplicable(String),

    #[error("expression error at offset {offset}: {message}")]
    Expr { offset: usize, message: String },

    #[error(
        "colength did not stabilize up to degree {max_degree} \
         (zero not isolated at the origin, or degree budget exceeded)"
    )]
    NotIsolated { max_degree: u32 },

    #[error("curve is invariant by the vector field: v(f) lies in (f), tangency index is infinite")]
    InvariantCurve,

    #[error("variable count mismatch: expected {expected}, found {found}")]
    NvarsMismatch { expected: usize, found: usize },

    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}
