//! Thin helpers over nalgebra's Hermitian eigensolver and SVD.

#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector of `values[k]`.
    pub vectors: CMatrix,
}

pub fn hermitian_eigen(m: &CMatrix) -> HermitianEigen {
    let eig = m.clone().symmetric_eigen();
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    HermitianEigen { values, vectors }
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

pub fn min_eigenvalue(m: &CMatrix) -> f64 {
    hermitian_eigenvalues(m)
        .first()
        .copied()
        .unwrap_or(0.0)
}

/// Clamps eigenvalue noise: `[-EIGEN_HARD, 0)` becomes 0, anything lower
/// is reported as a numerical failure.
pub fn clamp_eigenvalue(x: f64, what: &'static str) -> Result<f64> {
    if x >= 0.0 {
        Ok(x)
    } else if x >= -tol::EIGEN_HARD {
        Ok(0.0)
    } else {
        Err(Error::Numerical { what, value: x })
    }
}

/// Principal square root of a positive-semidefinite Hermitian matrix.
pub fn psd_sqrt(m: &CMatrix, what: &'static str) -> Result<CMatrix> {
    let HermitianEigen { values, vectors } = hermitian_eigen(m);
    let n = values.len();
    let mut scaled = vectors.clone();
    for (k, &mu) in values.iter().enumerate() {
        let r = clamp_eigenvalue(mu, what)?.sqrt();
        for i in 0..n {
            scaled[(i, k)] *= r;
        }
    }
    Ok(scaled * vectors.adjoint())
}

/// Singular values, descending.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = m
        .clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Max-entry deviation `|m - m^dag|`.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Max-entry deviation of `u^dag u` from the identity.
pub fn unitary_deviation(u: &CMatrix) -> f64 {
    let g = u.adjoint() * u;
    let mut worst: f64 = 0.0;
    for i in 0..g.nrows() {
        for j in 0..g.ncols() {
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((g[(i, j)] - target).norm());
        }
    }
    worst
}

/// Kronecker product of two square matrices.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}
