//! Seeded random states and unitaries.
//!
//! Every generator takes either a `u64` seed or a caller-owned RNG so that
//! ensembles can be drawn from one reproducible stream.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::dims::Dims;
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, ZERO};
use crate::state::{DensityMatrix, StateVector};

pub type StdRng = ChaCha20Rng;

pub fn rng(seed: u64) -> StdRng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian (independent N(0,1) real and imaginary parts).
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im)
}

pub fn haar_random_pure(dims: &Dims, seed: u64) -> StateVector {
    haar_random_pure_with(dims, &mut rng(seed))
}

pub fn haar_random_pure_with<R: Rng + ?Sized>(dims: &Dims, rng: &mut R) -> StateVector {
    loop {
        let amps: Vec<Complex64> = (0..dims.total()).map(|_| complex_gaussian(rng)).collect();
        // a zero vector has probability zero, but loop rather than panic
        if let Ok(psi) = StateVector::normalized(dims.clone(), amps) {
            return psi;
        }
    }
}

/// Mixture of `rank` Haar-random pure states with flat-Dirichlet weights.
pub fn random_mixed(dims: &Dims, rank: usize, seed: u64) -> Result<DensityMatrix> {
    random_mixed_with(dims, rank, &mut rng(seed))
}

pub fn random_mixed_with<R: Rng + ?Sized>(
    dims: &Dims,
    rank: usize,
    rng: &mut R,
) -> Result<DensityMatrix> {
    if rank == 0 || rank > dims.total() {
        return Err(Error::InvalidParameter("rank must satisfy 1 <= rank <= total"));
    }
    let n = dims.total();
    let weights: Vec<f64> = (0..rank).map(|_| Exp1.sample(rng)).collect();
    let wsum: f64 = weights.iter().sum();
    let mut matrix = CMatrix::zeros(n, n);
    for w in weights {
        let psi = haar_random_pure_with(dims, rng);
        let v = psi.as_vector();
        matrix += (v * v.adjoint()).scale(w / wsum);
    }
    Ok(DensityMatrix::from_trusted(dims.clone(), matrix))
}

/// Haar-random `d x d` unitary: Gram-Schmidt on a complex Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    let mut u = CMatrix::from_fn(d, d, |_, _| complex_gaussian(rng));
    for j in 0..d {
        for k in 0..j {
            let proj: Complex64 = (0..d).map(|i| u[(i, k)].conj() * u[(i, j)]).sum();
            for i in 0..d {
                let sub = proj * u[(i, k)];
                u[(i, j)] -= sub;
            }
        }
        let norm = u.column(j).norm();
        for i in 0..d {
            u[(i, j)] = if norm > 0.0 { u[(i, j)].unscale(norm) } else { ZERO };
        }
    }
    u
}

/// One independent Haar unitary per subsystem.
pub fn random_local_unitaries<R: Rng + ?Sized>(dims: &Dims, rng: &mut R) -> Vec<CMatrix> {
    dims.local().iter().map(|&d| random_unitary(d, rng)).collect()
}

/// Applies one unitary per subsystem.
pub fn apply_local_unitaries(psi: &StateVector, us: &[CMatrix]) -> Result<StateVector> {
    let mut out = psi.clone();
    for (s, u) in us.iter().enumerate() {
        out = out.apply_local_unitary(s, u)?;
    }
    Ok(out)
}
