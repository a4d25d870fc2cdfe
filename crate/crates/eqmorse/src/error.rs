use thiserror::Error;

/// Errors shared by all modules of the crate.
///
/// Every operation is exact, so an error always signals bad input or an
/// internal consistency violation, never numerical noise. The one exception
/// is [`Error::SingularEvaluation`], raised by the floating-point evaluation
/// helpers when a denominator is too close to zero to evaluate.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("matrix is not unimodular (|det| = {det})")]
    NotUnimodular { det: String },

    #[error("region is unbounded in coordinate {coordinate}")]
    Unbounded { coordinate: usize },

    #[error("weight {weight} pairs non-positively with the chamber representative")]
    Polarization { weight: String },

    #[error("piecewise linear data does not define an integral weight on cone {cone}")]
    NonIntegralWeight { cone: usize },

    #[error("piecewise linear function is not strictly convex")]
    NotConvex,

    #[error("equivariant index differs between chambers {first} and {second} at weight {weight}")]
    ChamberInconsistency {
        weight: String,
        first: usize,
        second: usize,
    },

    #[error("weight {weight} has no unique cohomological degree (candidates {degrees:?})")]
    AssignmentAmbiguous {
        weight: String,
        degrees: Vec<usize>,
    },

    #[error("evaluation point is too close to a singular hyperplane")]
    SingularEvaluation,

    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
