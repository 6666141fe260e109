//! Bipartite/tripartite split of three-qubit entanglement.
//!
//! Pair terms are `E_(jk) = 2 C_W(rho_jk)^2` with `C_W` the Wootters
//! concurrence of the two-qubit marginal; they are local-unitary invariant.
//! The tripartite part is the flip-concurrence total minus the pair terms.

use crate::bounds;
use crate::dims::Dims;
use crate::error::{Error, Result};
use crate::flip;
use crate::state::{DensityMatrix, StateVector};
use crate::tol;


#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripartiteDecomposition {
    pub e12: f64,
    pub e13: f64,
    pub e23: f64,
    /// `e12 + e13 + e23`.
    pub e2_total: f64,
    pub e3: f64,
    /// `C_(2)^2 + C_(3)^2` (or the bound-based counterpart).
    pub total: f64,
    /// Set when the flip terms are lower bounds rather than exact values.
    pub estimate: bool,
}

const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

fn check_three_qubits(dims: &Dims) -> Result<()> {
    if dims.local() != [2, 2, 2] {
        return Err(Error::UnsupportedDims {
            expected: &[2, 2, 2],
            found: dims.local().to_vec(),
        });
    }
    Ok(())
}

/// `E_(jk) = 2 C_W(Tr_other rho)^2` for subsystems `j != k`.
pub fn pair_entanglement(rho: &DensityMatrix, pair: (usize, usize)) -> Result<f64> {
    check_three_qubits(rho.dims())?;
    let (j, k) = if pair.0 < pair.1 { pair } else { (pair.1, pair.0) };
    if j == k || k > 2 {
        return Err(Error::InvalidSelection("pair must name two distinct qubits of three"));
    }
    let c = bounds::wootters_mixed(&rho.reduce_to(&[j, k])?)?;
    Ok(2.0 * c * c)
}

fn combine(rho: &DensityMatrix, c2: f64, c3: f64, estimate: bool) -> Result<TripartiteDecomposition> {
    let [e12, e13, e23] = PAIRS.map(|p| pair_entanglement(rho, p));
    let (e12, e13, e23) = (e12?, e13?, e23?);
    let e2_total = e12 + e13 + e23;
    let total = c2 + c3;
    let mut e3 = total - e2_total;
    if e3 < 0.0 {
        if e3 > -tol::E3_CLAMP {
            e3 = 0.0;
        } else if !estimate {
            return Err(Error::Numerical {
                what: "tripartite entanglement",
                value: e3,
            });
        }
    }
    Ok(TripartiteDecomposition {
        e12,
        e13,
        e23,
        e2_total,
        e3,
        total,
        estimate,
    })
}

/// Exact split for a pure three-qubit state.
pub fn decompose(psi: &StateVector) -> Result<TripartiteDecomposition> {
    check_three_qubits(psi.dims())?;
    let spectrum = flip::concurrence_spectrum(psi);
    combine(&psi.to_density(), spectrum.get(2), spectrum.get(3), false)
}

/// Split for a mixed three-qubit state with the flip concurrences replaced
/// by their lower bounds `(B^m)^2`. Always marked as an estimate; a
/// clearly negative `e3` is reported as computed.
pub fn decompose_mixed(rho: &DensityMatrix) -> Result<TripartiteDecomposition> {
    check_three_qubits(rho.dims())?;
    let b = bounds::bounds(rho)?;
    let (b2, b3) = (b.get(2), b.get(3));
    combine(rho, b2 * b2, b3 * b3, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{self, Family, FamilySpec};
    use crate::random;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn ghz_is_purely_tripartite() {
        let ghz = families::ghz();
        for p in PAIRS {
            assert!(pair_entanglement(&ghz.to_density(), p).unwrap() < 1e-14);
        }
        let d = decompose(&ghz).unwrap();
        assert!(close(d.e3, 3.0) && d.e2_total < 1e-14 && !d.estimate);
    }

    #[test]
    fn w_is_purely_bipartite() {
        let w = families::w_state();
        for p in PAIRS {
            assert!(close(pair_entanglement(&w.to_density(), p).unwrap(), 8.0 / 9.0));
        }
        let d = decompose(&w).unwrap();
        assert!(close(d.e2_total, 8.0 / 3.0) && d.e3.abs() < 1e-12);
    }

    #[test]
    fn biseparable_family() {
        for k in 0..=20 {
            let alpha = k as f64 * core::f64::consts::PI / 20.0;
            let psi = families::make_state(&FamilySpec::new(Family::Bisep, alpha).unwrap())
                .into_pure()
                .unwrap();
            let d = decompose(&psi).unwrap();
            assert!(close(d.e12, 2.0) && d.e13 < 1e-12 && d.e23 < 1e-12);
            assert!(d.e3.abs() < 1e-12);
        }
    }

    #[test]
    fn mixed_estimate_reduces_to_pure() {
        let psi = random::haar_random_pure(&Dims::qubits(3), 21);
        let exact = decompose(&psi).unwrap();
        let est = decompose_mixed(&psi.to_density()).unwrap();
        assert!(est.estimate);
        assert!((exact.e3 - est.e3).abs() < 1e-8);
        assert!((exact.e2_total - est.e2_total).abs() < 1e-8);

        let ghz_end = families::make_state(&FamilySpec::new(Family::GhzwMix, 0.0).unwrap());
        let d = decompose_mixed(&ghz_end.to_density()).unwrap();
        assert!((d.e3 - 3.0).abs() < 1e-10);
        let w_end = families::make_state(&FamilySpec::new(Family::GhzwMix, core::f64::consts::PI).unwrap());
        let d = decompose_mixed(&w_end.to_density()).unwrap();
        assert!((d.e2_total - 8.0 / 3.0).abs() < 1e-10 && d.e3.abs() < 1e-10);
    }

    #[test]
    fn rejects_other_shapes() {
        let two = random::haar_random_pure(&Dims::qubits(2), 1);
        assert!(decompose(&two).is_err());
        let rho = families::ghz().to_density();
        assert!(pair_entanglement(&rho, (1, 1)).is_err());
        assert!(pair_entanglement(&rho, (0, 3)).is_err());
        assert!(pair_entanglement(&rho, (2, 0)).is_ok());
    }
}
