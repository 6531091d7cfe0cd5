use thiserror::Error;

/// Errors raised by the analysis routines.
///
/// Variants split into two families: input/precondition failures (the caller
/// handed over something that violates a documented invariant) and numerical
/// pathologies (two independent routes that must agree did not).
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix entries must be finite")]
    NonFinite,

    #[error("matrix is not Hermitian (deviation {deviation:.3e} > {tol:.1e})")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("negative eigenvalue {0:.3e} below tolerance")]
    NegativeEigenvalue(f64),

    #[error("invalid basis set: {0}")]
    InvalidBasisSet(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid POVM: {0}")]
    InvalidPovm(String),

    #[error("invalid assemblage: {0}")]
    InvalidAssemblage(String),

    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("numerical pathology: {0}")]
    Pathology(String),
}

impl Error {
    /// True for disagreements between independent computations, as opposed to
    /// bad input.
    pub fn is_pathology(&self) -> bool {
        matches!(self, Error::Pathology(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
