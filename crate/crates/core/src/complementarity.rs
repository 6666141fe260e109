//! Predictability, coherence and mixedness of a single qudit, and the
//! information budget of an n-partite state built from them.
//!
//! For a `d`-level density matrix with populations `P_ii`:
//!
//! ```text
//! P^2 = d/(d-1) * sum_i P_ii^2 - 1/(d-1)
//! C^2 = d/(d-1) * (Tr rho^2 - sum_i P_ii^2)
//! M^2 = d/(d-1) * (1 - Tr rho^2)
//! ```
//!
//! so that `P^2 + C^2 + M^2 = 1` for every state.

#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;


use crate::error::{Error, Result};
use crate::state::DensityMatrix;
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplementarityTriple {
    pub predictability: f64,
    pub coherence: f64,
    pub mixedness: f64,
    /// `S^2 = P^2 + C^2`, the locally accessible information.
    pub single_property_sq: f64,
}

impl ComplementarityTriple {
    /// `P^2 + C^2 + M^2`, which is one up to rounding.
    pub fn total(&self) -> f64 {
        self.single_property_sq + self.mixedness * self.mixedness
    }
}

/// Information content of an n-partite state: `I + E + R = n`.
#[derive(Debug, Clone, PartialEq)]
pub struct InfoBudget {
    pub n: usize,
    /// `I = sum_s S_s^2`.
    pub local_info: f64,
    /// Entanglement as supplied by the caller.
    pub entanglement: f64,
    /// `R = n - I - E`, reported as computed.
    pub residual: f64,
    pub per_subsystem: Vec<ComplementarityTriple>,
}

/// Square root of a quantity that is nonnegative in exact arithmetic,
/// clamped to `[0, 1]`.
fn unit_sqrt(x: f64, what: &'static str) -> Result<f64> {
    if x >= 0.0 {
        Ok(x.sqrt().min(1.0))
    } else if x >= -tol::SQRT_CLAMP {
        Ok(0.0)
    } else {
        Err(Error::Numerical { what, value: x })
    }
}

fn level_factor(rho: &DensityMatrix) -> f64 {
    let d = rho.dims().total() as f64;
    d / (d - 1.0)
}

fn diagonal_moment(rho: &DensityMatrix) -> f64 {
    rho.diagonal().iter().map(|p| p * p).sum()
}

/// Generalized predictability of `rho`, treated as a single `d = total`
/// level system.
///
/// Evaluated as `d/(d-1) * sum_i (P_ii - 1/d)^2`, which equals the moment
/// form above for unit trace and is exactly zero on `I/d`.
pub fn predictability(rho: &DensityMatrix) -> Result<f64> {
    let uniform = 1.0 / rho.dims().total() as f64;
    let spread: f64 = rho.diagonal().iter().map(|p| (p - uniform) * (p - uniform)).sum();
    unit_sqrt(level_factor(rho) * spread, "predictability")
}

/// Generalized coherence, from `Tr rho^2 - sum_i P_ii^2`.
pub fn coherence(rho: &DensityMatrix) -> Result<f64> {
    let arg = level_factor(rho) * (rho.purity() - diagonal_moment(rho));
    let c = unit_sqrt(arg, "coherence")?;
    debug_assert!(
        coherence_off_diagonal(rho).map_or(true, |o| (o - c).abs() < 1e-10),
        "coherence forms disagree"
    );
    Ok(c)
}

/// Generalized coherence as the sum over all two-level coherences,
/// `sqrt(2d/(d-1) * sum_{i<j} |P_ij|^2)`.
pub fn coherence_off_diagonal(rho: &DensityMatrix) -> Result<f64> {
    let n = rho.dims().total();
    let mut acc = 0.0;
    for j in 1..n {
        for i in 0..j {
            acc += rho.overlap_element(i, j).norm_sqr();
        }
    }
    unit_sqrt(2.0 * level_factor(rho) * acc, "coherence")
}

/// Normalized linear entropy `sqrt(d/(d-1) (1 - Tr rho^2))`.
pub fn mixedness(rho: &DensityMatrix) -> Result<f64> {
    unit_sqrt(level_factor(rho) * (1.0 - rho.purity()), "mixedness")
}

/// The triple for `rho` taken as one system.
pub fn triple(rho: &DensityMatrix) -> Result<ComplementarityTriple> {
    let predictability = predictability(rho)?;
    let coherence = coherence(rho)?;
    let mixedness = mixedness(rho)?;
    Ok(ComplementarityTriple {
        predictability,
        coherence,
        mixedness,
        single_property_sq: predictability * predictability + coherence * coherence,
    })
}

/// The triple of the marginal on subsystem `s`.
pub fn subsystem_triple(rho: &DensityMatrix, s: usize) -> Result<ComplementarityTriple> {
    triple(&rho.reduce_to(&[s])?)
}

/// `sum_s M_s^2`, the pure-state entanglement.
pub fn total_mixedness_sq(rho: &DensityMatrix) -> Result<f64> {
    (0..rho.dims().n())
        .map(|s| subsystem_triple(rho, s).map(|t| t.mixedness * t.mixedness))
        .sum()
}

/// Splits the `n` dits of `rho` into local information, the supplied
/// entanglement value and the residual.
pub fn info_budget(rho: &DensityMatrix, entanglement: f64) -> Result<InfoBudget> {
    if !(entanglement >= 0.0) || !entanglement.is_finite() {
        return Err(Error::InvalidParameter("entanglement must be finite and nonnegative"));
    }
    let n = rho.dims().n();
    let per_subsystem = (0..n)
        .map(|s| subsystem_triple(rho, s))
        .collect::<Result<Vec<_>>>()?;
    let local_info: f64 = per_subsystem.iter().map(|t| t.single_property_sq).sum();
    Ok(InfoBudget {
        n,
        local_info,
        entanglement,
        residual: n as f64 - local_info - entanglement,
        per_subsystem,
    })
}
