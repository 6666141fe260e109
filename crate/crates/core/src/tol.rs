//! Numerical tolerances shared across the crate.

/// Allowed deviation of a state-vector norm from one.
pub const NORM: f64 = 1e-12;
/// Allowed max-entry deviation of `rho - rho^dag`.
pub const HERMITIAN: f64 = 1e-12;
/// Allowed deviation of a density-matrix trace from one.
pub const TRACE: f64 = 1e-12;
/// Smallest eigenvalue accepted for a positive-semidefinite matrix.
pub const PSD: f64 = -1e-10;
/// Allowed deviation of `U^dag U` from the identity.
pub const UNITARY: f64 = 1e-10;
/// Square-root arguments in `[-SQRT_CLAMP, 0)` are treated as zero.
pub const SQRT_CLAMP: f64 = 1e-12;
/// Eigenvalues in `[-EIGEN_CLAMP, 0)` are clamped to zero.
pub const EIGEN_CLAMP: f64 = 1e-10;
/// Eigenvalues below `-EIGEN_HARD` are a numerical failure.
pub const EIGEN_HARD: f64 = 1e-8;
/// A bound `B^m` above this value counts as detected entanglement.
pub const DETECTION: f64 = 1e-7;
/// Tripartite entanglement in `(-E3_CLAMP, 0)` is clamped to zero.
pub const E3_CLAMP: f64 = 1e-9;
/// Default cap on the total Hilbert-space dimension.
pub const DEFAULT_MAX_TOTAL: usize = 4096;
