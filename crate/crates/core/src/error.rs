use alloc::vec::Vec;

/// Everything that can go wrong in the core crate.
///
/// Variants split into two families: invalid input (bad shapes, states that
/// fail validation, out-of-range parameters) and numerical failure (a
/// quantity that should be nonnegative came out clearly negative). Callers
/// that need to tell them apart use [`Error::is_numerical`].
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid dimensions {0:?}: every local dimension must be >= 2 and at least one subsystem is required")]
    InvalidDims(Vec<usize>),
    #[error("total dimension {total} exceeds the configured cap {cap}")]
    TooLarge { total: usize, cap: usize },
    #[error("expected length {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("coordinate {value} out of range for subsystem {site} of dimension {dim}")]
    CoordinateOutOfRange { site: usize, value: usize, dim: usize },
    #[error("flat index {index} out of range for total dimension {total}")]
    FlatOutOfRange { index: usize, total: usize },
    #[error("subsystem {site} out of range for {n} subsystems")]
    SubsystemOutOfRange { site: usize, n: usize },
    #[error("invalid subsystem selection: {0}")]
    InvalidSelection(&'static str),
    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("trace is {0}, expected 1")]
    TraceNotOne(f64),
    #[error("matrix is not positive semidefinite (smallest eigenvalue {0:e})")]
    NotPositive(f64),
    #[error("matrix is not unitary (max deviation of U^dag U from identity {0:e})")]
    NotUnitary(f64),
    #[error("flip order m = {m} is invalid for {n} subsystems (need 2 <= m <= n)")]
    InvalidFlipOrder { m: usize, n: usize },
    #[error("invalid flip pattern: {0}")]
    InvalidPattern(&'static str),
    #[error("index is not admissible for the flip pattern")]
    NotAdmissible,
    #[error("operation requires dims {expected:?}, found {found:?}")]
    UnsupportedDims { expected: &'static [usize], found: Vec<usize> },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("numerical failure in {what}: value {value:e}")]
    Numerical { what: &'static str, value: f64 },
}

impl Error {
    /// True for failures of the arithmetic itself rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Numerical { .. })
    }
}

pub type Result<T> = core::result::Result<T, Error>;
