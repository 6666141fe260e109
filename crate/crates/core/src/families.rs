//! Named three-qubit states, one-parameter families and the sweep engine
//! behind the information-content curves.

#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::bounds;
use crate::complementarity;
use crate::dims::Dims;
use crate::error::{Error, Result};
use crate::flip;
use crate::state::{DensityMatrix, StateVector};
use crate::tripartite::{self, TripartiteDecomposition};

/// `(|000> + |111>) / sqrt 2`.
pub fn ghz() -> StateVector {
    StateVector::from_real(Dims::qubits(3), &[1., 0., 0., 0., 0., 0., 0., 1.]).expect("ghz")
}

/// `(|001> + |010> + |100>) / sqrt 3`.
pub fn w_state() -> StateVector {
    StateVector::from_real(Dims::qubits(3), &[0., 1., 1., 0., 1., 0., 0., 0.]).expect("w")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Bell pair on qubits 1-2 times `cos a |0> + sin a |1>` on qubit 3.
    Bisep,
    /// `sin a |W> + cos a |111>`.
    PhiW,
    /// `sin a |W> + cos a |GHZ>`.
    PsiWghz,
    /// `sin^2(a/2) rho_W + cos^2(a/2) rho_GHZ`.
    GhzwMix,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Bisep, Family::PhiW, Family::PsiWghz, Family::GhzwMix];

    pub fn name(self) -> &'static str {
        match self {
            Family::Bisep => "bisep",
            Family::PhiW => "phi_w",
            Family::PsiWghz => "psi_wghz",
            Family::GhzwMix => "ghzw_mix",
        }
    }

    pub fn is_mixed(self) -> bool {
        self == Family::GhzwMix
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or(Error::InvalidParameter("unknown family (expected bisep, phi_w, psi_wghz or ghzw_mix)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilySpec {
    pub family: Family,
    pub alpha: f64,
}

impl FamilySpec {
    pub fn new(family: Family, alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::InvalidParameter("alpha must be finite"));
        }
        Ok(FamilySpec { family, alpha })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FamilyState {
    Pure(StateVector),
    Mixed(DensityMatrix),
}

impl FamilyState {
    pub fn to_density(&self) -> DensityMatrix {
        match self {
            FamilyState::Pure(psi) => psi.to_density(),
            FamilyState::Mixed(rho) => rho.clone(),
        }
    }

    pub fn into_pure(self) -> Option<StateVector> {
        match self {
            FamilyState::Pure(psi) => Some(psi),
            FamilyState::Mixed(_) => None,
        }
    }
}

pub fn make_state(spec: &FamilySpec) -> FamilyState {
    let (s, c) = (spec.alpha.sin(), spec.alpha.cos());
    let w = s / 3f64.sqrt();
    let amps = match spec.family {
        Family::Bisep => {
            let h = core::f64::consts::FRAC_1_SQRT_2;
            [h * c, h * s, 0., 0., 0., 0., h * c, h * s]
        }
        Family::PhiW => [0., w, w, 0., w, 0., 0., c],
        Family::PsiWghz => {
            let g = c * core::f64::consts::FRAC_1_SQRT_2;
            [g, w, w, 0., w, 0., 0., g]
        }
        Family::GhzwMix => {
            let half = spec.alpha / 2.0;
            let (sw, cg) = (half.sin() * half.sin(), half.cos() * half.cos());
            let (w, g) = (w_state().to_density(), ghz().to_density());
            let matrix = w.matrix().scale(sw) + g.matrix().scale(cg);
            return FamilyState::Mixed(DensityMatrix::from_trusted(Dims::qubits(3), matrix));
        }
    };
    FamilyState::Pure(StateVector::from_real(Dims::qubits(3), &amps).expect("family amplitudes are nonzero"))
}

/// One point of an information-content curve. All values are in dits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub alpha: f64,
    /// Local information `I = sum_s S_s^2`.
    pub local_info: f64,
    pub e12: f64,
    pub e13: f64,
    pub e23: f64,
    pub e2_total: f64,
    pub e3: f64,
    pub residual: f64,
    pub c2_sq: f64,
    pub c3_sq: f64,
    /// True for mixed families, where flip terms are bound-based.
    pub estimate: bool,
}

impl SweepRow {
    pub fn decomposition(&self) -> TripartiteDecomposition {
        TripartiteDecomposition {
            e12: self.e12,
            e13: self.e13,
            e23: self.e23,
            e2_total: self.e2_total,
            e3: self.e3,
            total: self.c2_sq + self.c3_sq,
            estimate: self.estimate,
        }
    }
}

/// Evaluates every column for one family member.
pub fn evaluate(spec: &FamilySpec) -> Result<SweepRow> {
    let (rho, dec, c2_sq, c3_sq) = match make_state(spec) {
        FamilyState::Pure(psi) => {
            let spectrum = flip::concurrence_spectrum(&psi);
            (psi.to_density(), tripartite::decompose(&psi)?, spectrum.get(2), spectrum.get(3))
        }
        FamilyState::Mixed(rho) => {
            let b = bounds::bounds(&rho)?;
            let dec = tripartite::decompose_mixed(&rho)?;
            (rho, dec, b.get(2) * b.get(2), b.get(3) * b.get(3))
        }
    };
    let budget = complementarity::info_budget(&rho, c2_sq + c3_sq)?;
    Ok(SweepRow {
        alpha: spec.alpha,
        local_info: budget.local_info,
        e12: dec.e12,
        e13: dec.e13,
        e23: dec.e23,
        e2_total: dec.e2_total,
        e3: dec.e3,
        residual: budget.residual,
        c2_sq,
        c3_sq,
        estimate: dec.estimate,
    })
}

/// `steps` uniformly spaced angles, both endpoints included.
pub fn alpha_grid(start: f64, end: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::InvalidParameter("a sweep needs at least two steps"));
    }
    if !start.is_finite() || !end.is_finite() {
        return Err(Error::InvalidParameter("alpha range must be finite"));
    }
    let span = end - start;
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|k| if k + 1 == steps { end } else { start + span * (k as f64 / last) })
        .collect())
}

/// A sweep failure, tagged with the angle that produced it.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("at alpha = {alpha}: {source}")]
pub struct SweepError {
    pub alpha: f64,
    #[source]
    pub source: Error,
}

/// Rows in grid order.
pub fn sweep(family: Family, start: f64, end: f64, steps: usize) -> core::result::Result<Vec<SweepRow>, SweepError> {
    let grid = alpha_grid(start, end, steps).map_err(|source| SweepError { alpha: start, source })?;
    grid.into_iter()
        .map(|alpha| {
            FamilySpec::new(family, alpha)
                .and_then(|spec| evaluate(&spec))
                .map_err(|source| SweepError { alpha, source })
        })
        .collect()
}

/// Interior grid points that are local maxima (`v[i-1] < v[i] >= v[i+1]`).
pub fn interior_local_maxima(values: &[f64]) -> Vec<usize> {
    (1..values.len().saturating_sub(1))
        .filter(|&i| values[i] > values[i - 1] && values[i] >= values[i + 1])
        .collect()
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
/// Returns the abscissa and value at the best point seen.
pub fn golden_section_max<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    if !(lo < hi) || !(tol > 0.0) {
        return Err(Error::InvalidParameter("golden section needs lo < hi and tol > 0"));
    }
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    while b - a > tol {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 >= f2 { (x1, f1) } else { (x2, f2) })
}

/// Grid argmax of `column` restricted to `window`, refined by one golden
/// section search over the neighbouring grid cells.
pub fn refine_window_max(
    rows: &[SweepRow],
    column: fn(&SweepRow) -> f64,
    window: (f64, f64),
    family: Family,
    tol: f64,
) -> Result<Option<SweepRow>> {
    let inside: Vec<usize> = (0..rows.len())
        .filter(|&i| rows[i].alpha > window.0 && rows[i].alpha < window.1)
        .collect();
    let Some(&best) = inside.iter().max_by(|&&i, &&j| column(&rows[i]).total_cmp(&column(&rows[j]))) else {
        return Ok(None);
    };
    if best == 0 || best + 1 == rows.len() {
        return Ok(None);
    }
    let (lo, hi) = (rows[best - 1].alpha, rows[best + 1].alpha);
    let (alpha, _) = golden_section_max(
        |a| FamilySpec::new(family, a).and_then(|s| evaluate(&s)).map(|r| column(&r)),
        lo,
        hi,
        tol,
    )?;
    evaluate(&FamilySpec::new(family, alpha)?).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn pure(f: Family, a: f64) -> StateVector {
        make_state(&FamilySpec::new(f, a).unwrap()).into_pure().unwrap()
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("ghz".parse::<Family>().is_err());
        assert!(FamilySpec::new(Family::PhiW, f64::NAN).is_err());
    }

    #[test]
    fn family_anchors() {
        assert_eq!(pure(Family::PhiW, 0.0), StateVector::basis(Dims::qubits(3), 7).unwrap());
        let w = pure(Family::PhiW, PI / 2.0);
        assert!((w.inner(&w_state()).norm() - 1.0).abs() < 1e-15);
        let g = make_state(&FamilySpec::new(Family::GhzwMix, 0.0).unwrap()).to_density();
        assert!((g.matrix() - ghz().to_density().matrix()).norm() < 1e-15);
        for f in Family::ALL {
            for k in 0..10 {
                let rho = make_state(&FamilySpec::new(f, k as f64 * 0.37).unwrap()).to_density();
                assert!((rho.trace() - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn grid_includes_endpoints() {
        let g = alpha_grid(0.0, PI, 201).unwrap();
        assert_eq!(g.len(), 201);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[200], PI);
        assert!(alpha_grid(0.0, 1.0, 1).is_err());
    }

    #[test]
    fn phi_w_rows() {
        let r = evaluate(&FamilySpec::new(Family::PhiW, PI / 3.0).unwrap()).unwrap();
        assert!((r.e3 - 3.0).abs() < 1e-10 && r.local_info < 1e-8);
        let r = evaluate(&FamilySpec::new(Family::PhiW, PI / 2.0).unwrap()).unwrap();
        assert!((r.e2_total - 8.0 / 3.0).abs() < 1e-12);
        assert!(r.e3 < 1e-8 && (r.local_info - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn rows_close_the_budget() {
        for f in Family::ALL {
            for row in sweep(f, 0.0, PI, 13).unwrap() {
                let sum = row.local_info + row.e2_total + row.e3 + row.residual;
                assert!((sum - 3.0).abs() < 1e-8);
                assert_eq!(row.estimate, f.is_mixed());
                if !f.is_mixed() {
                    assert!(row.residual.abs() < 1e-8);
                }
            }
        }
    }

    #[test]
    fn golden_section_finds_parabola_peak() {
        let (x, fx) = golden_section_max(|x| Ok(-(x - 0.3) * (x - 0.3)), 0.0, 1.0, 1e-10).unwrap();
        assert!((x - 0.3).abs() < 1e-9 && fx.abs() < 1e-17);
        assert!(golden_section_max(Ok, 1.0, 0.0, 1e-3).is_err());
    }

    #[test]
    fn local_maxima_detection() {
        assert_eq!(interior_local_maxima(&[0., 1., 0., 2., 2., 1.]), alloc::vec![1, 3]);
        assert!(interior_local_maxima(&[1.0]).is_empty());
    }
}
