//! Lower bounds on the mixed-state m-flip concurrence.
//!
//! Each elementary term `(pattern, a, s)` of the pure-state sum is a
//! bilinear form `<psi| Theta |psi*>` with the rank-2 operator
//!
//! ```text
//! Theta = |F_E a><a| - |F_E a_s><a_s|,    a_s = F_s a
//! ```
//!
//! Only the symmetric part `Theta_sym = (Theta + Theta^T) / 2` contributes to
//! such a form, and for a complex-symmetric operator the convex roof of
//! `|<psi|Theta_sym|psi*>|` is bounded below by `max(0, 2 lambda_max - sum
//! lambda)`, where the `lambda` are the square roots of the eigenvalues of
//! `rho * Theta_sym rho* Theta_sym^dag`. For two qubits `Theta_sym` is
//! `+-sigma_y (x) sigma_y / 2`, which recovers Wootters' construction.
//!
//! The `lambda` are computed as singular values of
//! `sqrt(rho_S) Theta_sym sqrt(rho_S)*`, where `rho_S` is the 4x4 principal
//! block of `rho` on the support of `Theta_sym`. This gives the same spectrum
//! as the dense route (see [`lambda_spectrum_dense`]) without squaring the
//! rounding error.

#[allow(unused_imports)]
use num_traits::Float;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::dims::Dims;
use crate::error::{Error, Result};
use crate::flip::{self, site_weight, FlipPattern};
use crate::linalg::{self, CMatrix, ONE};
use crate::state::DensityMatrix;
use crate::tol;

/// One summand of the m-flip sum: a pattern, an admissible base index and
/// a pivot site.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipTerm {
    pattern: FlipPattern,
    base: usize,
    pivot_pos: usize,
}

impl FlipTerm {
    pub fn new(dims: &Dims, pattern: FlipPattern, base: usize, pivot: usize) -> Result<Self> {
        if base >= dims.total() {
            return Err(Error::FlatOutOfRange {
                index: base,
                total: dims.total(),
            });
        }
        if !pattern.is_admissible(dims, base) {
            return Err(Error::NotAdmissible);
        }
        let pivot_pos = pattern
            .position(pivot)
            .ok_or(Error::InvalidPattern("pivot site is not in the pattern"))?;
        Ok(FlipTerm {
            pattern,
            base,
            pivot_pos,
        })
    }

    pub fn pattern(&self) -> &FlipPattern {
        &self.pattern
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn pivot(&self) -> usize {
        self.pattern.sites()[self.pivot_pos]
    }

    /// `[a, F_E a, a_s, F_E a_s]`, four distinct basis states.
    pub fn support(&self, dims: &Dims) -> [usize; 4] {
        self.pattern.term_support(dims, self.base, self.pivot_pos)
    }

    pub fn weight(&self, dims: &Dims) -> f64 {
        site_weight(dims.dim(self.pivot()))
    }
}

/// Every term of the `m`-flip sum, in the same order the pure-state sum
/// visits them.
pub fn flip_terms(dims: &Dims, m: usize) -> Result<Vec<FlipTerm>> {
    let mut out = Vec::new();
    for pattern in flip::enumerate_patterns(dims, m)? {
        for a in pattern.admissible(dims) {
            for pivot_pos in 0..pattern.m() {
                out.push(FlipTerm {
                    pattern: pattern.clone(),
                    base: a,
                    pivot_pos,
                });
            }
        }
    }
    Ok(out)
}

/// The 4x4 blocks of `Theta` and `Theta_sym` on the term support.
const THETA_BLOCK: [(usize, usize, f64); 2] = [(1, 0, 1.0), (3, 2, -1.0)];

/// Dense `Theta = |F_E a><a| - |F_E a_s><a_s|`.
pub fn flip_term_operator(term: &FlipTerm, dims: &Dims) -> CMatrix {
    let s = term.support(dims);
    let n = dims.total();
    let mut theta = CMatrix::zeros(n, n);
    for (r, c, v) in THETA_BLOCK {
        theta[(s[r], s[c])] += Complex64::new(v, 0.0);
    }
    theta
}

/// Dense `(Theta + Theta^T) / 2`.
pub fn symmetric_flip_operator(term: &FlipTerm, dims: &Dims) -> CMatrix {
    let theta = flip_term_operator(term, dims);
    (&theta + theta.transpose()).unscale(2.0)
}

fn symmetric_block() -> CMatrix {
    let mut c = CMatrix::zeros(4, 4);
    for (r, col, v) in THETA_BLOCK {
        let h = Complex64::new(v / 2.0, 0.0);
        c[(r, col)] += h;
        c[(col, r)] += h;
    }
    c
}

/// `rho~ = Theta_sym rho* Theta_sym^dag`. Positive semidefinite, not trace
/// normalized.
pub fn flip_density_matrix(rho: &DensityMatrix, term: &FlipTerm) -> CMatrix {
    let t = symmetric_flip_operator(term, rho.dims());
    &t * rho.matrix().map(|z| z.conj()) * t.adjoint()
}

/// Square roots of the eigenvalues of `rho rho~`, descending.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaSpectrum {
    pub lambdas: Vec<f64>,
}

impl LambdaSpectrum {
    fn from_unsorted(mut lambdas: Vec<f64>) -> Self {
        lambdas.sort_by(|a, b| b.total_cmp(a));
        LambdaSpectrum { lambdas }
    }

    pub fn max(&self) -> f64 {
        self.lambdas.first().copied().unwrap_or(0.0)
    }

    /// `max(0, 2 lambda_max - sum lambda)`.
    pub fn concurrence(&self) -> f64 {
        let sum: f64 = self.lambdas.iter().sum();
        (2.0 * self.max() - sum).max(0.0)
    }
}

/// Singular values of `sqrt(rho_block) * op * sqrt(rho_block)*`.
fn flipped_singular_values(block: &CMatrix, op: &CMatrix, what: &'static str) -> Result<Vec<f64>> {
    let root = linalg::psd_sqrt(block, what)?;
    let t = &root * op * root.map(|z| z.conj());
    Ok(linalg::singular_values(&t))
}

/// The four `lambda` of one term.
pub fn lambda_spectrum(rho: &DensityMatrix, term: &FlipTerm) -> Result<LambdaSpectrum> {
    let s = term.support(rho.dims());
    let block = CMatrix::from_fn(4, 4, |i, j| rho.entry(s[i], s[j]));
    let sv = flipped_singular_values(&block, &symmetric_block(), "flip spectrum")?;
    Ok(LambdaSpectrum::from_unsorted(sv))
}

/// Reference route: eigenvalues of the full `sqrt(rho) rho~ sqrt(rho)`.
/// Slower, and the square root amplifies eigenvalue noise to about `1e-8`.
pub fn lambda_spectrum_dense(rho: &DensityMatrix, term: &FlipTerm) -> Result<LambdaSpectrum> {
    let root = linalg::psd_sqrt(rho.matrix(), "flip spectrum")?;
    let h = &root * flip_density_matrix(rho, term) * &root;
    let h = (&h + h.adjoint()).unscale(2.0);
    let lambdas = linalg::hermitian_eigenvalues(&h)
        .into_iter()
        .map(|x| linalg::clamp_eigenvalue(x, "flip spectrum").map(f64::sqrt))
        .collect::<Result<Vec<_>>>()?;
    Ok(LambdaSpectrum::from_unsorted(lambdas))
}

fn check_order(dims: &Dims, m: usize) -> Result<()> {
    if m < 2 || m > dims.n() {
        return Err(Error::InvalidFlipOrder { m, n: dims.n() });
    }
    Ok(())
}

/// `B^m(rho) = sqrt(sum_terms w_s max(0, 2 lambda_max - sum lambda)^2)`.
pub fn bound(rho: &DensityMatrix, m: usize) -> Result<f64> {
    check_order(rho.dims(), m)?;
    let dims = rho.dims();
    let mut acc = 0.0;
    for term in flip_terms(dims, m)? {
        let c = lambda_spectrum(rho, &term)?.concurrence();
        acc += term.weight(dims) * c * c;
    }
    Ok(acc.sqrt())
}

/// `B^m` for every `m = 2..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundResult {
    pub per_m: BTreeMap<usize, f64>,
    /// Any `B^m` above the detection threshold.
    pub detected: bool,
}

impl BoundResult {
    pub fn get(&self, m: usize) -> f64 {
        self.per_m.get(&m).copied().unwrap_or(0.0)
    }

    /// `sum_m (B^m)^2`, the bound-based entanglement estimate.
    pub fn total_sq(&self) -> f64 {
        self.per_m.values().map(|b| b * b).sum()
    }
}

pub fn bounds(rho: &DensityMatrix) -> Result<BoundResult> {
    let per_m = (2..=rho.dims().n())
        .map(|m| bound(rho, m).map(|b| (m, b)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let detected = per_m.values().any(|&b| b > tol::DETECTION);
    Ok(BoundResult { per_m, detected })
}

fn sigma_yy() -> CMatrix {
    let mut y = CMatrix::zeros(4, 4);
    y[(0, 3)] = -ONE;
    y[(3, 0)] = -ONE;
    y[(1, 2)] = ONE;
    y[(2, 1)] = ONE;
    y
}

/// Two-qubit Wootters concurrence `max(0, l1 - l2 - l3 - l4)`.
pub fn wootters_mixed(rho: &DensityMatrix) -> Result<f64> {
    if rho.dims().local() != [2, 2] {
        return Err(Error::UnsupportedDims {
            expected: &[2, 2],
            found: rho.dims().local().to_vec(),
        });
    }
    let sv = flipped_singular_values(rho.matrix(), &sigma_yy(), "wootters spectrum")?;
    let spectrum = LambdaSpectrum::from_unsorted(sv);
    Ok(spectrum.concurrence())
}

/// True iff the partial transpose over `side` has an eigenvalue below
/// `-1e-10`. `side` must be a nonempty proper subset of the subsystems.
pub fn ppt_negative(rho: &DensityMatrix, side: &[usize]) -> Result<bool> {
    let pt = rho.partial_transpose(side)?;
    Ok(linalg::min_eigenvalue(&pt) < -tol::EIGEN_CLAMP)
}

/// Werner state `p |Phi+><Phi+| + (1 - p) I/4`.
pub fn werner(p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter("Werner weight must lie in [0, 1]"));
    }
    let dims = Dims::qubits(2);
    let mut m = CMatrix::identity(4, 4).scale((1.0 - p) / 4.0);
    for &i in &[0, 3] {
        for &j in &[0, 3] {
            m[(i, j)] += Complex64::new(p / 2.0, 0.0);
        }
    }
    Ok(DensityMatrix::from_trusted(dims, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flip::{concurrence_spectrum, m_flip_concurrence_sq, minor_term};
    use crate::linalg::ZERO;
    use crate::random;
    use crate::state::StateVector;
    use alloc::vec;

    fn bell() -> StateVector {
        StateVector::from_real(Dims::qubits(2), &[1., 0., 0., 1.]).unwrap()
    }

    fn bell_term() -> FlipTerm {
        let q2 = Dims::qubits(2);
        let p = FlipPattern::qubit_pairs(&q2, vec![0, 1]).unwrap();
        FlipTerm::new(&q2, p, 0, 0).unwrap()
    }

    #[test]
    fn raw_operator_example() {
        let q2 = Dims::qubits(2);
        let theta = flip_term_operator(&bell_term(), &q2);
        let mut want = CMatrix::zeros(4, 4);
        want[(3, 0)] = ONE; // |11><00|
        want[(1, 2)] = -ONE; // -|01><10|
        assert_eq!(theta, want);

        // annihilates every basis state except |00> and |10>
        for b in [1usize, 3] {
            assert!(theta.column(b).iter().all(|z| *z == ZERO));
        }

        let psi = bell();
        let v = psi.as_vector();
        let val = (v.adjoint() * &theta * v.map(|z| z.conj()))[(0, 0)];
        assert!((val.norm() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn two_qubit_symmetric_operator_is_spin_flip() {
        let q2 = Dims::qubits(2);
        for t in flip_terms(&q2, 2).unwrap() {
            let s = symmetric_flip_operator(&t, &q2);
            let y = sigma_yy().unscale(2.0);
            assert!(s == y || s == -y);
        }
    }

    #[test]
    fn term_validation() {
        let q2 = Dims::qubits(2);
        let d3 = Dims::new(vec![3, 3]).unwrap();
        let p = FlipPattern::qubit_pairs(&d3, vec![0, 1]).unwrap();
        assert_eq!(FlipTerm::new(&d3, p.clone(), 2, 0), Err(Error::NotAdmissible));
        assert!(FlipTerm::new(&d3, p, 0, 2).is_err());
        assert_eq!(flip_terms(&q2, 2).unwrap().len(), 8);
        assert_eq!(flip_terms(&Dims::qubits(3), 3).unwrap().len(), 24);
    }

    #[test]
    fn pure_state_lambda_is_minor() {
        let dims = Dims::new(vec![2, 3, 2]).unwrap();
        let psi = random::haar_random_pure(&dims, 4);
        let rho = psi.to_density();
        for m in 2..=3 {
            for t in flip_terms(&dims, m).unwrap() {
                let spec = lambda_spectrum(&rho, &t).unwrap();
                let idx = dims.index(t.base()).unwrap();
                let minor = minor_term(&psi, t.pattern(), &idx, t.pivot()).unwrap();
                assert!((spec.max() - minor.norm()).abs() < 1e-12);
                assert!(spec.lambdas[1..].iter().all(|&l| l < 1e-12));

                let rt = flip_density_matrix(&rho, &t);
                // rank one, so the single nonzero eigenvalue is the trace
                let only = (rho.matrix() * &rt).trace();
                assert!((only - Complex64::new(minor.norm_sqr(), 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn maximally_mixed_flip_matrix() {
        let rho = DensityMatrix::maximally_mixed(Dims::qubits(2));
        let rt = flip_density_matrix(&rho, &bell_term());
        let ev = linalg::hermitian_eigenvalues(&rt);
        assert!(ev.iter().all(|&x| (x - 1.0 / 16.0).abs() < 1e-15));
        let spec = lambda_spectrum(&rho, &bell_term()).unwrap();
        assert!(spec.lambdas.iter().all(|&l| (l - 0.125).abs() < 1e-14));
        assert_eq!(spec.concurrence(), 0.0);
    }

    #[test]
    fn support_outside_rho_gives_zero() {
        // rho supported on |01> only; the term touches |00>,|11>,|10>,|01>
        // but rho_S has rank one with zero overlap through Theta_sym
        let rho = StateVector::basis(Dims::qubits(2), 1).unwrap().to_density();
        let rt = flip_density_matrix(&rho, &bell_term());
        let spec = lambda_spectrum(&rho, &bell_term()).unwrap();
        assert!(spec.lambdas.iter().all(|&l| l == 0.0));
        assert!(rt.iter().all(|z| z.norm() <= 0.25 + 1e-15));

        let d3 = Dims::new(vec![3, 3]).unwrap();
        let p = FlipPattern::qubit_pairs(&d3, vec![0, 1]).unwrap();
        let t = FlipTerm::new(&d3, p, 0, 0).unwrap();
        let outside = StateVector::basis(d3, 8).unwrap().to_density();
        assert!(flip_density_matrix(&outside, &t).iter().all(|z| *z == ZERO));
        assert_eq!(lambda_spectrum(&outside, &t).unwrap().max(), 0.0);
    }

    #[test]
    fn werner_spectrum_matches_wootters() {
        for &p in &[0.0, 0.2, 0.5, 0.8, 1.0] {
            let rho = werner(p).unwrap();
            let c = wootters_mixed(&rho).unwrap();
            let spec = lambda_spectrum(&rho, &bell_term()).unwrap();
            assert!((spec.concurrence() - c / 2.0).abs() < 1e-12);
            let closed = ((3.0 * p - 1.0) / 2.0).max(0.0);
            assert!((c - closed).abs() < 1e-12);
        }
    }

    #[test]
    fn bound_examples() {
        let psi = random::haar_random_pure(&Dims::qubits(3), 8);
        let rho = psi.to_density();
        for m in 2..=3 {
            let b = bound(&rho, m).unwrap();
            assert!((b * b - m_flip_concurrence_sq(&psi, m).unwrap()).abs() < 1e-10);
        }
        let prod = DensityMatrix::mixture(&[
            (0.3, &StateVector::basis(Dims::qubits(3), 0).unwrap().to_density()),
            (0.7, &StateVector::basis(Dims::qubits(3), 5).unwrap().to_density()),
        ])
        .unwrap();
        assert!(!bounds(&prod).unwrap().detected);
        assert!(bounds(&prod).unwrap().total_sq() < 1e-20);
        let b = bound(&werner(1.0).unwrap(), 2).unwrap();
        assert!((b * b - 2.0).abs() < 1e-12);
        assert!(bound(&rho, 4).is_err());
    }

    #[test]
    fn wootters_examples() {
        assert!((wootters_mixed(&werner(0.5).unwrap()).unwrap() - 0.25).abs() < 1e-12);
        assert!(wootters_mixed(&werner(0.3).unwrap()).unwrap() < 1e-12);
        let w = StateVector::from_real(Dims::qubits(3), &[0., 1., 1., 0., 1., 0., 0., 0.]).unwrap();
        let marginal = w.to_density().reduce_to(&[0, 1]).unwrap();
        assert!((wootters_mixed(&marginal).unwrap() - 2.0 / 3.0).abs() < 1e-12);
        assert!(wootters_mixed(&w.to_density()).is_err());
    }

    #[test]
    fn ppt_examples() {
        let b = bell().to_density();
        assert!(ppt_negative(&b, &[0]).unwrap() && ppt_negative(&b, &[1]).unwrap());
        let prod = StateVector::basis(Dims::qubits(2), 2).unwrap().to_density();
        assert!(!ppt_negative(&prod, &[0]).unwrap());
        assert!(ppt_negative(&werner(0.4).unwrap(), &[1]).unwrap());
        assert!(!ppt_negative(&werner(0.3).unwrap(), &[1]).unwrap());
        assert!(ppt_negative(&b, &[0, 1]).is_err());
        assert!(ppt_negative(&b, &[]).is_err());
    }

    #[test]
    fn ghz_bound_spectrum() {
        let ghz = StateVector::from_real(Dims::qubits(3), &[1., 0., 0., 0., 0., 0., 0., 1.]).unwrap();
        let r = bounds(&ghz.to_density()).unwrap();
        let s = concurrence_spectrum(&ghz);
        assert!((r.get(3).powi(2) - s.get(3)).abs() < 1e-12);
        assert!(r.get(2) < 1e-12);
        assert!(r.detected);
    }
}
