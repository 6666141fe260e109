//! m-flip concurrences of pure states.
//!
//! A flip pattern picks `m >= 2` subsystems `E` and one level pair
//! `(k_t, l_t)` on each. For an admissible basis index `a` (every
//! `a_t in {k_t, l_t}` for `t in E`) and a pivot `s in E`, the elementary
//! term is the 2x2 minor
//!
//! ```text
//! psi[a] psi[F_E a] - psi[F_s a] psi[F_{E\s} a]
//! ```
//!
//! where `F_X` swaps `k_t <-> l_t` on every `t in X`. It is the determinant
//! of the site-`s`-versus-rest amplitude matrix restricted to rows
//! `{k_s, l_s}` and the two rest-columns that differ on `E \ s`.
//!
//! `C_(m)^2` sums `w_s |minor|^2` over all patterns of size `m`, all
//! admissible `a` and all pivots, with `w_s = d_s / (2 (d_s - 1))`. With
//! this weight every rest-column pair is counted so that
//! `sum_m C_(m)^2 = sum_s M_s^2` holds exactly for pure states.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::dims::{Dims, MultiIndex};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, ONE};
use crate::state::StateVector;

/// `sigma_kl` on a `d`-level system: swaps `|k>` and `|l>`, kills the rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlipOperator {
    d: usize,
    k: usize,
    l: usize,
}

impl FlipOperator {
    pub fn new(d: usize, k: usize, l: usize) -> Result<Self> {
        if d < 2 || k >= l || l >= d {
            return Err(Error::InvalidPattern("flip operator needs 0 <= k < l < d"));
        }
        Ok(FlipOperator { d, k, l })
    }

    pub fn levels(&self) -> (usize, usize) {
        (self.k, self.l)
    }

    /// Dense `d x d` matrix with ones at `(k, l)` and `(l, k)`.
    pub fn matrix(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.d, self.d);
        m[(self.k, self.l)] = ONE;
        m[(self.l, self.k)] = ONE;
        m
    }
}

/// Per-pivot weight `d / (2 (d - 1))`; one for qubits.
#[inline]
pub fn site_weight(d: usize) -> f64 {
    d as f64 / (2.0 * (d as f64 - 1.0))
}

/// Flipped sites (strictly increasing) with one level pair per site.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlipPattern {
    sites: Vec<usize>,
    pairs: Vec<(usize, usize)>,
}

impl FlipPattern {
    pub fn new(dims: &Dims, sites: Vec<usize>, pairs: Vec<(usize, usize)>) -> Result<Self> {
        if sites.len() < 2 {
            return Err(Error::InvalidPattern("at least two flipped sites are required"));
        }
        if sites.len() != pairs.len() {
            return Err(Error::InvalidPattern("one level pair per site is required"));
        }
        if sites.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPattern("sites must be strictly increasing"));
        }
        for (&s, &(k, l)) in sites.iter().zip(&pairs) {
            dims.check_site(s)?;
            if k >= l || l >= dims.dim(s) {
                return Err(Error::InvalidPattern("level pair needs k < l < d_s"));
            }
        }
        Ok(FlipPattern { sites, pairs })
    }

    /// All sites with levels `(0, 1)`.
    pub fn qubit_pairs(dims: &Dims, sites: Vec<usize>) -> Result<Self> {
        let pairs = alloc::vec![(0, 1); sites.len()];
        Self::new(dims, sites, pairs)
    }

    pub fn sites(&self) -> &[usize] {
        &self.sites
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn m(&self) -> usize {
        self.sites.len()
    }

    pub fn position(&self, site: usize) -> Option<usize> {
        self.sites.iter().position(|&s| s == site)
    }

    pub fn is_admissible(&self, dims: &Dims, flat: usize) -> bool {
        self.sites.iter().zip(&self.pairs).all(|(&t, &(k, l))| {
            let c = dims.coord(flat, t);
            c == k || c == l
        })
    }

    /// Swaps `k_t <-> l_t` at pattern position `pos`. `flat` must be
    /// admissible.
    #[inline]
    pub(crate) fn flip_at(&self, dims: &Dims, flat: usize, pos: usize) -> usize {
        let t = self.sites[pos];
        let (k, l) = self.pairs[pos];
        let st = dims.stride(t);
        if dims.coord(flat, t) == k {
            flat + (l - k) * st
        } else {
            flat - (l - k) * st
        }
    }

    /// `F_E(a)`: flips every site of the pattern.
    #[inline]
    pub(crate) fn flip_all(&self, dims: &Dims, flat: usize) -> usize {
        (0..self.m()).fold(flat, |a, pos| self.flip_at(dims, a, pos))
    }

    /// Admissible flat indices in ascending order.
    pub fn admissible(&self, dims: &Dims) -> Vec<usize> {
        let free = dims.complement(&self.sites);
        let free_off = dims.offsets(&free);
        let m = self.m();
        let mut out = Vec::with_capacity(free_off.len() << m);
        for &o in &free_off {
            for bits in 0..(1usize << m) {
                let mut flat = o;
                for pos in 0..m {
                    let (k, l) = self.pairs[pos];
                    let level = if bits >> (m - 1 - pos) & 1 == 1 { l } else { k };
                    flat += level * dims.stride(self.sites[pos]);
                }
                out.push(flat);
            }
        }
        out.sort_unstable();
        out
    }

    /// Minor at base index `a` (admissible) with pivot at pattern position
    /// `pos`, without validation.
    #[inline]
    pub(crate) fn minor_unchecked(&self, psi: &StateVector, a: usize, pos: usize) -> Complex64 {
        let dims = psi.dims();
        let fa = self.flip_all(dims, a);
        let a_s = self.flip_at(dims, a, pos);
        let rest = self.flip_all(dims, a_s);
        psi.amp(a) * psi.amp(fa) - psi.amp(a_s) * psi.amp(rest)
    }

    /// The four basis states touched by the term `(a, pos)`:
    /// `[a, F_E a, F_s a, F_E F_s a]`.
    pub(crate) fn term_support(&self, dims: &Dims, a: usize, pos: usize) -> [usize; 4] {
        let a_s = self.flip_at(dims, a, pos);
        [a, self.flip_all(dims, a), a_s, self.flip_all(dims, a_s)]
    }
}

/// Every level pair `k < l < d`, ordered by `l` then `k`.
fn level_pairs(d: usize) -> Vec<(usize, usize)> {
    (1..d).flat_map(|l| (0..l).map(move |k| (k, l))).collect()
}

/// Iterator over all flip patterns with exactly `m` sites.
#[derive(Debug, Clone)]
pub struct Patterns {
    dims: Dims,
    combo: Vec<usize>,
    choice: Vec<usize>,
    pairs: Vec<Vec<(usize, usize)>>,
    done: bool,
}

impl Patterns {
    fn advance_combo(&mut self) -> bool {
        let n = self.dims.n();
        let m = self.combo.len();
        let mut i = m;
        while i > 0 {
            i -= 1;
            if self.combo[i] < n - m + i {
                self.combo[i] += 1;
                for j in i + 1..m {
                    self.combo[j] = self.combo[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }

    fn advance_choice(&mut self) -> bool {
        let mut i = self.choice.len();
        while i > 0 {
            i -= 1;
            let site = self.combo[i];
            if self.choice[i] + 1 < self.pairs[site].len() {
                self.choice[i] += 1;
                return true;
            }
            self.choice[i] = 0;
        }
        false
    }
}

impl Iterator for Patterns {
    type Item = FlipPattern;

    fn next(&mut self) -> Option<FlipPattern> {
        if self.done {
            return None;
        }
        let item = FlipPattern {
            sites: self.combo.clone(),
            pairs: self
                .combo
                .iter()
                .zip(&self.choice)
                .map(|(&s, &c)| self.pairs[s][c])
                .collect(),
        };
        if !self.advance_choice() && !self.advance_combo() {
            self.done = true;
        }
        Some(item)
    }
}

fn check_order(dims: &Dims, m: usize) -> Result<()> {
    if m < 2 || m > dims.n() {
        return Err(Error::InvalidFlipOrder { m, n: dims.n() });
    }
    Ok(())
}

/// Every `m`-site subset crossed with every choice of level pair per site,
/// each exactly once.
pub fn enumerate_patterns(dims: &Dims, m: usize) -> Result<Patterns> {
    check_order(dims, m)?;
    Ok(Patterns {
        dims: dims.clone(),
        combo: (0..m).collect(),
        choice: alloc::vec![0; m],
        pairs: dims.local().iter().map(|&d| level_pairs(d)).collect(),
        done: false,
    })
}

/// The minor for base index `a` and pivot site `s`.
pub fn minor_term(
    psi: &StateVector,
    pattern: &FlipPattern,
    a: &MultiIndex,
    s: usize,
) -> Result<Complex64> {
    let dims = psi.dims();
    if dims.flat(&a.coords)? != a.flat {
        return Err(Error::InvalidParameter("multi-index coords and flat index disagree"));
    }
    let pos = pattern
        .position(s)
        .ok_or(Error::InvalidPattern("pivot site is not in the pattern"))?;
    if !pattern.is_admissible(dims, a.flat) {
        return Err(Error::NotAdmissible);
    }
    Ok(pattern.minor_unchecked(psi, a.flat, pos))
}

/// Weighted sum of `|minor|^2` over one pattern.
pub fn pattern_contribution(psi: &StateVector, pattern: &FlipPattern) -> f64 {
    let dims = psi.dims();
    let mut acc = 0.0;
    for a in pattern.admissible(dims) {
        for (pos, &s) in pattern.sites().iter().enumerate() {
            acc += site_weight(dims.dim(s)) * pattern.minor_unchecked(psi, a, pos).norm_sqr();
        }
    }
    acc
}

/// `C_(m)^2` of a pure state.
pub fn m_flip_concurrence_sq(psi: &StateVector, m: usize) -> Result<f64> {
    Ok(enumerate_patterns(psi.dims(), m)?
        .map(|p| pattern_contribution(psi, &p))
        .sum())
}

/// All `C_(m)^2` for `m = 2..=n` and their sum `E(psi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcurrenceSpectrum {
    pub per_m: BTreeMap<usize, f64>,
    pub total: f64,
}

impl ConcurrenceSpectrum {
    pub fn get(&self, m: usize) -> f64 {
        self.per_m.get(&m).copied().unwrap_or(0.0)
    }
}

pub fn concurrence_spectrum(psi: &StateVector) -> ConcurrenceSpectrum {
    let per_m: BTreeMap<usize, f64> = (2..=psi.dims().n())
        .map(|m| (m, m_flip_concurrence_sq(psi, m).expect("m in range")))
        .collect();
    let total = per_m.values().sum();
    ConcurrenceSpectrum { per_m, total }
}

/// Two-qubit Wootters concurrence `2 |psi_00 psi_11 - psi_01 psi_10|`.
pub fn wootters_concurrence_pure(psi: &StateVector) -> Result<f64> {
    if psi.dims().local() != [2, 2] {
        return Err(Error::UnsupportedDims {
            expected: &[2, 2],
            found: psi.dims().local().to_vec(),
        });
    }
    Ok(2.0 * (psi.amp(0) * psi.amp(3) - psi.amp(1) * psi.amp(2)).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state;
    use alloc::vec;

    fn bell() -> StateVector {
        StateVector::from_real(Dims::qubits(2), &[1., 0., 0., 1.]).unwrap()
    }

    fn ghz() -> StateVector {
        StateVector::from_real(Dims::qubits(3), &[1., 0., 0., 0., 0., 0., 0., 1.]).unwrap()
    }

    fn w() -> StateVector {
        StateVector::from_real(Dims::qubits(3), &[0., 1., 1., 0., 1., 0., 0., 0.]).unwrap()
    }

    #[test]
    fn flip_matrices() {
        assert_eq!(FlipOperator::new(2, 0, 1).unwrap().matrix(), state::pauli_x());
        let m = FlipOperator::new(3, 0, 2).unwrap().matrix();
        for i in 0..3 {
            for j in 0..3 {
                let one = (i, j) == (0, 2) || (i, j) == (2, 0);
                assert_eq!(m[(i, j)].re, if one { 1.0 } else { 0.0 });
            }
        }
        let sq = &m * &m;
        assert_eq!(sq[(0, 0)].re, 1.0);
        assert_eq!(sq[(1, 1)].re, 0.0);
        assert_eq!(sq[(2, 2)].re, 1.0);
        assert!(FlipOperator::new(3, 2, 2).is_err());
        assert!(FlipOperator::new(3, 1, 3).is_err());
    }

    #[test]
    fn pattern_counts() {
        let q3 = Dims::qubits(3);
        assert_eq!(enumerate_patterns(&q3, 2).unwrap().count(), 3);
        assert_eq!(enumerate_patterns(&q3, 3).unwrap().count(), 1);
        let t2 = Dims::new(vec![3, 3]).unwrap();
        assert_eq!(enumerate_patterns(&t2, 2).unwrap().count(), 9);
        let mixed = Dims::new(vec![2, 3, 4]).unwrap();
        // subsets {0,1}: 1*3, {0,2}: 1*6, {1,2}: 3*6
        assert_eq!(enumerate_patterns(&mixed, 2).unwrap().count(), 27);
        assert_eq!(enumerate_patterns(&mixed, 3).unwrap().count(), 18);
        assert!(enumerate_patterns(&q3, 1).is_err());
        assert!(enumerate_patterns(&q3, 4).is_err());
    }

    #[test]
    fn patterns_are_distinct_and_ordered() {
        let d = Dims::new(vec![3, 2, 3]).unwrap();
        let all: Vec<_> = enumerate_patterns(&d, 2).unwrap().collect();
        for (i, p) in all.iter().enumerate() {
            assert!(p.sites().windows(2).all(|w| w[0] < w[1]));
            assert!(all[i + 1..].iter().all(|q| q != p));
        }
    }

    #[test]
    fn pattern_validation() {
        let d = Dims::new(vec![2, 3]).unwrap();
        assert!(FlipPattern::new(&d, vec![0], vec![(0, 1)]).is_err());
        assert!(FlipPattern::new(&d, vec![1, 0], vec![(0, 1), (0, 1)]).is_err());
        assert!(FlipPattern::new(&d, vec![0, 1], vec![(0, 1), (1, 3)]).is_err());
        assert!(FlipPattern::new(&d, vec![0, 1], vec![(0, 1), (0, 2)]).is_ok());
    }

    #[test]
    fn admissible_indices() {
        let d = Dims::new(vec![2, 3, 2]).unwrap();
        let p = FlipPattern::new(&d, vec![1, 2], vec![(0, 2), (0, 1)]).unwrap();
        let adm = p.admissible(&d);
        assert_eq!(adm.len(), 8);
        for flat in 0..d.total() {
            assert_eq!(adm.contains(&flat), p.is_admissible(&d, flat));
        }
    }

    #[test]
    fn minor_examples() {
        let q2 = Dims::qubits(2);
        let p = FlipPattern::qubit_pairs(&q2, vec![0, 1]).unwrap();
        let a = q2.index_of(&[0, 0]).unwrap();
        let m = minor_term(&bell(), &p, &a, 0).unwrap();
        assert!((m - Complex64::new(0.5, 0.0)).norm() < 1e-15);

        let q3 = Dims::qubits(3);
        let p = FlipPattern::qubit_pairs(&q3, vec![0, 1, 2]).unwrap();
        let a = q3.index_of(&[0, 0, 0]).unwrap();
        let m = minor_term(&ghz(), &p, &a, 1).unwrap();
        assert!((m - Complex64::new(0.5, 0.0)).norm() < 1e-15);

        let prod = StateVector::from_real(q3.clone(), &[1., 5., 3., 15., 2., 10., 6., 30.]).unwrap();
        for a in 0..8 {
            for s in 0..3 {
                let idx = q3.index(a).unwrap();
                assert!(minor_term(&prod, &p, &idx, s).unwrap().norm() < 1e-15);
            }
        }
    }

    #[test]
    fn minor_rejects_bad_inputs() {
        let d = Dims::new(vec![3, 3]).unwrap();
        let psi = StateVector::basis(d.clone(), 0).unwrap();
        let p = FlipPattern::new(&d, vec![0, 1], vec![(0, 1), (0, 1)]).unwrap();
        let a = d.index_of(&[2, 0]).unwrap();
        assert_eq!(minor_term(&psi, &p, &a, 0), Err(Error::NotAdmissible));
        let a = d.index_of(&[0, 0]).unwrap();
        assert!(minor_term(&psi, &p, &a, 2).is_err());
    }

    #[test]
    fn named_state_spectra() {
        let s = concurrence_spectrum(&bell());
        assert!((s.get(2) - 2.0).abs() < 1e-14);

        let s = concurrence_spectrum(&ghz());
        assert!(s.get(2).abs() < 1e-15);
        assert!((s.get(3) - 3.0).abs() < 1e-14);
        assert!((s.total - 3.0).abs() < 1e-14);

        let s = concurrence_spectrum(&w());
        assert!((s.get(2) - 8.0 / 3.0).abs() < 1e-14);
        assert!(s.get(3).abs() < 1e-15);

        let prod = StateVector::basis(Dims::new(vec![2, 3, 2]).unwrap(), 7).unwrap();
        assert_eq!(concurrence_spectrum(&prod).total, 0.0);
    }

    #[test]
    fn wootters_pure_examples() {
        assert!((wootters_concurrence_pure(&bell()).unwrap() - 1.0).abs() < 1e-15);
        let prod = StateVector::basis(Dims::qubits(2), 2).unwrap();
        assert_eq!(wootters_concurrence_pure(&prod).unwrap(), 0.0);
        for k in 0..20 {
            let th = k as f64 * 0.17;
            let psi = StateVector::from_real(Dims::qubits(2), &[th.cos(), 0., 0., th.sin()]).unwrap();
            let c = wootters_concurrence_pure(&psi).unwrap();
            assert!((c - (2.0 * th).sin().abs()).abs() < 1e-14);
        }
        assert!(wootters_concurrence_pure(&ghz()).is_err());
    }
}
