//! Invariant suites behind `mflip check`.
//!
//! Every check draws from its own seeded stream, so a suite's output is a
//! pure function of `(suite, samples, seed)`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use mflip_core::bounds::{self, flip_terms};
use mflip_core::complementarity;
use mflip_core::families::{self, Family, FamilySpec};
use mflip_core::flip;
use mflip_core::linalg::min_eigenvalue;
use mflip_core::random::{self, StdRng};
use mflip_core::tripartite::{self, TripartiteDecomposition};
use mflip_core::{DensityMatrix, Dims, Result, StateVector};
use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Oracles,
    Decomposition,
    Bounds,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Identities, Suite::Oracles, Suite::Decomposition, Suite::Bounds];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Oracles => "oracles",
            Suite::Decomposition => "decomposition",
            Suite::Bounds => "bounds",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}` (expected identities, oracles, decomposition or bounds)"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckLine {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{tag} {:<28} {}", self.name, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub lines: Vec<CheckLine>,
    /// Informational measurements that are not pass/fail.
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(&l.to_string());
            out.push('\n');
        }
        for n in &self.notes {
            out.push_str("INFO ");
            out.push_str(n);
            out.push('\n');
        }
        let ok = self.lines.iter().filter(|l| l.pass).count();
        out.push_str(&format!("{}: {}/{} passed\n", self.suite.name(), ok, self.lines.len()));
        out
    }
}

fn stream(seed: u64, tag: u64) -> StdRng {
    random::rng(seed ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Largest deviation over samples, compared against `tol`.
fn deviation(name: &'static str, count: usize, tol: f64, run: impl FnOnce() -> Result<f64>) -> CheckLine {
    match run() {
        Ok(dev) => CheckLine {
            name,
            pass: dev < tol,
            detail: format!("n={count} max_dev={dev:.3e} tol={tol:.0e}"),
        },
        Err(e) => CheckLine { name, pass: false, detail: format!("n={count} error: {e}") },
    }
}

fn max_abs(a: f64, b: f64) -> f64 {
    a.max(b.abs())
}

const PURE_DIMS: [&[usize]; 7] = [&[2, 2], &[2, 2, 2], &[2, 2, 2, 2], &[2, 3], &[3, 3], &[2, 2, 3], &[3, 3, 3]];

fn dims(local: &[usize]) -> Dims {
    Dims::new(local.to_vec()).expect("fixed dims are valid")
}

fn random_rank_mixed(d: &Dims, rng: &mut StdRng) -> Result<DensityMatrix> {
    let rank = rng.random_range(1..=d.total());
    random::random_mixed_with(d, rank, rng)
}

pub fn run(suite: Suite, samples: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport { suite, lines: Vec::new(), notes: Vec::new() };
    match suite {
        Suite::Identities => identities(samples, seed, &mut report),
        Suite::Oracles => oracles(samples, seed, &mut report),
        Suite::Decomposition => decomposition(samples, seed, &mut report),
        Suite::Bounds => bounds_suite(samples, seed, &mut report),
    }
    report
}

fn identities(samples: usize, seed: u64, report: &mut SuiteReport) {
    let lines = &mut report.lines;
    let mut rng = stream(seed, 1);
    let mut mixed = Vec::new();
    lines.push(deviation("complementarity", 4 * samples, 1e-10, || {
        let mut dev: f64 = 0.0;
        for d in 2..=5 {
            for _ in 0..samples {
                let rho = random_rank_mixed(&dims(&[d]), &mut rng)?;
                dev = max_abs(dev, complementarity::triple(&rho)?.total() - 1.0);
                mixed.push(rho);
            }
        }
        Ok(dev)
    }));
    lines.push(deviation("coherence_forms", mixed.len(), 1e-10, || {
        mixed.iter().try_fold(0.0, |dev, rho| {
            let (a, b) = (complementarity::coherence(rho)?, complementarity::coherence_off_diagonal(rho)?);
            Ok(max_abs(dev, a * a - b * b))
        })
    }));
    let mut rng = stream(seed, 2);
    lines.push(deviation("master_identity", PURE_DIMS.len() * samples, 1e-9, || {
        let mut dev: f64 = 0.0;
        for local in PURE_DIMS {
            let d = dims(local);
            for _ in 0..samples {
                let psi = random::haar_random_pure_with(&d, &mut rng);
                let total = flip::concurrence_spectrum(&psi).total;
                dev = max_abs(dev, total - complementarity::total_mixedness_sq(&psi.to_density())?);
            }
        }
        Ok(dev)
    }));
    let mut rng = stream(seed, 3);
    lines.push(deviation("pure_budget_closure", 2 * samples, 1e-9, || {
        let mut dev: f64 = 0.0;
        for local in [&[2, 2, 2][..], &[2, 3]] {
            let d = dims(local);
            for _ in 0..samples {
                let psi = random::haar_random_pure_with(&d, &mut rng);
                let b = complementarity::info_budget(&psi.to_density(), flip::concurrence_spectrum(&psi).total)?;
                dev = max_abs(dev, b.residual);
            }
        }
        Ok(dev)
    }));
}

fn grid(steps: usize) -> Vec<f64> {
    families::alpha_grid(0.0, PI, steps).expect("grid")
}

fn pure_member(family: Family, alpha: f64) -> Result<StateVector> {
    let spec = FamilySpec::new(family, alpha)?;
    Ok(families::make_state(&spec).into_pure().expect("pure family"))
}

fn oracles(samples: usize, seed: u64, report: &mut SuiteReport) {
    let lines = &mut report.lines;
    lines.push(deviation("bisep_closed_form", 201, 1e-10, || {
        grid(201).into_iter().try_fold(0.0, |dev, a| {
            let c3 = flip::m_flip_concurrence_sq(&pure_member(Family::Bisep, a)?, 3)?;
            let (s, c) = a.sin_cos();
            Ok(max_abs(dev, c3 - 4.0 * c * c * s * s))
        })
    }));
    lines.push(deviation("phi_w_closed_form", 201, 1e-10, || {
        grid(201).into_iter().try_fold(0.0, |dev, a| {
            let psi = pure_member(Family::PhiW, a)?;
            let (s, c) = a.sin_cos();
            let want = 8.0 / 3.0 * (s.powi(4) + 3.0 * c * c * s * s);
            let dev = max_abs(dev, flip::m_flip_concurrence_sq(&psi, 2)? - want);
            Ok(max_abs(dev, flip::m_flip_concurrence_sq(&psi, 3)?))
        })
    }));
    let two = Dims::qubits(2);
    let mut rng = stream(seed, 4);
    lines.push(deviation("wootters_pure_link", samples, 1e-10, || {
        (0..samples).try_fold(0.0, |dev, _| {
            let psi = random::haar_random_pure_with(&two, &mut rng);
            let cw = flip::wootters_concurrence_pure(&psi)?;
            Ok(max_abs(dev, flip::m_flip_concurrence_sq(&psi, 2)? - 2.0 * cw * cw))
        })
    }));
    let mut rng = stream(seed, 5);
    lines.push(deviation("wootters_mixed_on_pure", samples, 1e-10, || {
        (0..samples).try_fold(0.0, |dev, _| {
            let psi = random::haar_random_pure_with(&two, &mut rng);
            let diff = bounds::wootters_mixed(&psi.to_density())? - flip::wootters_concurrence_pure(&psi)?;
            Ok(max_abs(dev, diff))
        })
    }));
    let ps: [f64; 6] = [0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0];
    lines.push(deviation("wootters_werner", ps.len(), 1e-10, || {
        ps.into_iter().try_fold(0.0, |dev, p| {
            let want = ((3.0 * p - 1.0) / 2.0).max(0.0);
            Ok(max_abs(dev, bounds::wootters_mixed(&bounds::werner(p)?)? - want))
        })
    }));
}

fn decomposition_deviation(a: &TripartiteDecomposition, b: &TripartiteDecomposition) -> f64 {
    [a.e12 - b.e12, a.e13 - b.e13, a.e23 - b.e23, a.e2_total - b.e2_total, a.e3 - b.e3]
        .into_iter()
        .fold(0.0, max_abs)
}

const LU_PER_STATE: usize = 5;

fn decomposition(samples: usize, seed: u64, report: &mut SuiteReport) {
    let lines = &mut report.lines;
    lines.push(deviation("named_state_anchors", 3 + 201, 1e-8, || {
        let ghz = tripartite::decompose(&families::ghz())?;
        let w = tripartite::decompose(&families::w_state())?;
        let mut dev = [ghz.e2_total, ghz.e3 - 3.0, w.e2_total - 8.0 / 3.0, w.e3].into_iter().fold(0.0, max_abs);
        for a in grid(201) {
            let t = tripartite::decompose(&pure_member(Family::Bisep, a)?)?;
            dev = [t.e12 - 2.0, t.e13, t.e23, t.e3].into_iter().fold(dev, max_abs);
        }
        Ok(dev)
    }));
    lines.push(deviation("phi_w_extrema", 3, 1e-6, || {
        let row = |a: f64| families::evaluate(&FamilySpec::new(Family::PhiW, a)?);
        let dev = [row(PI / 3.0)?.e3 - 3.0, row(2.0 * PI / 3.0)?.e3 - 3.0, row(PI / 2.0)?.e2_total - 8.0 / 3.0];
        Ok(dev.into_iter().fold(0.0, max_abs))
    }));
    let three = Dims::qubits(3);
    let mut rng = stream(seed, 6);
    lines.push(deviation("local_unitary_invariance", samples * LU_PER_STATE, 1e-8, || {
        let mut dev: f64 = 0.0;
        for _ in 0..samples {
            let psi = random::haar_random_pure_with(&three, &mut rng);
            let base = tripartite::decompose(&psi)?;
            let total = flip::concurrence_spectrum(&psi).total;
            for _ in 0..LU_PER_STATE {
                let us = random::random_local_unitaries(&three, &mut rng);
                let moved = random::apply_local_unitaries(&psi, &us)?;
                dev = dev.max(decomposition_deviation(&base, &tripartite::decompose(&moved)?));
                dev = max_abs(dev, flip::concurrence_spectrum(&moved).total - total);
            }
        }
        Ok(dev)
    }));
    let mut rng = stream(seed, 7);
    let mut min_e3 = f64::INFINITY;
    let mut conservation: f64 = 0.0;
    let mut pair_sum: f64 = 0.0;
    let mut failure = None;
    for _ in 0..samples {
        let psi = random::haar_random_pure_with(&three, &mut rng);
        let step = tripartite::decompose(&psi).and_then(|t| {
            Ok((t, complementarity::total_mixedness_sq(&psi.to_density())?))
        });
        match step {
            Ok((t, m)) => {
                min_e3 = min_e3.min(t.e3);
                conservation = max_abs(conservation, t.e2_total + t.e3 - m);
                pair_sum = max_abs(pair_sum, t.e12 + t.e13 + t.e23 - t.e2_total);
            }
            Err(e) => {
                failure = Some(e);
                break;
            }
        }
    }
    let err_line = |name, e: &mflip_core::Error| CheckLine { name, pass: false, detail: format!("n={samples} error: {e}") };
    match failure {
        Some(e) => {
            lines.push(err_line("e3_nonnegative", &e));
            lines.push(err_line("conservation", &e));
            lines.push(err_line("pair_sum", &e));
        }
        None => {
            lines.push(CheckLine {
                name: "e3_nonnegative",
                pass: min_e3 >= 0.0,
                detail: format!("n={samples} min_e3={min_e3:.3e} bound=0"),
            });
            lines.push(deviation("conservation", samples, 1e-9, || Ok(conservation)));
            lines.push(deviation("pair_sum", samples, 1e-12, || Ok(pair_sum)));
        }
    }
}

fn bounds_suite(samples: usize, seed: u64, report: &mut SuiteReport) {
    let two = Dims::qubits(2);
    let mut rng = stream(seed, 8);
    let mut violations = 0usize;
    let mut agree = 0usize;
    let mut entangled = 0usize;
    let mut wootters_dev: f64 = 0.0;
    let mut failure = None;
    for _ in 0..samples {
        let step = random_rank_mixed(&two, &mut rng).and_then(|rho| {
            let b = bounds::bound(&rho, 2)?;
            let ppt = bounds::ppt_negative(&rho, &[0])?;
            let cw = bounds::wootters_mixed(&rho)?;
            Ok((b, ppt, cw))
        });
        match step {
            Ok((b, ppt, cw)) => {
                if b > 1e-8 && !ppt {
                    violations += 1;
                }
                if ppt {
                    entangled += 1;
                }
                if (b > mflip_core::tol::DETECTION) == ppt {
                    agree += 1;
                }
                wootters_dev = max_abs(wootters_dev, b * b - 2.0 * cw * cw);
            }
            Err(e) => {
                failure = Some(e);
                break;
            }
        }
    }
    match failure {
        Some(e) => report.lines.push(CheckLine { name: "soundness", pass: false, detail: format!("error: {e}") }),
        None => {
            report.lines.push(CheckLine {
                name: "soundness",
                pass: violations == 0,
                detail: format!("n={samples} violations={violations}"),
            });
            report.lines.push(deviation("two_qubit_wootters_bound", samples, 1e-10, || Ok(wootters_dev)));
            report.notes.push(format!(
                "bound/ppt agreement {agree}/{samples} (ppt-entangled {entangled}/{samples})"
            ));
        }
    }
    let mut rng = stream(seed, 9);
    let pure_dims: [&[usize]; 4] = [&[2, 2], &[2, 3], &[3, 3], &[2, 2, 2]];
    report.lines.push(deviation("pure_state_equality", samples, 1e-8, || {
        let mut dev: f64 = 0.0;
        for k in 0..samples {
            let d = dims(pure_dims[k % pure_dims.len()]);
            let psi = random::haar_random_pure_with(&d, &mut rng);
            let rho = psi.to_density();
            for m in 2..=d.n() {
                let b = bounds::bound(&rho, m)?;
                dev = max_abs(dev, b * b - flip::m_flip_concurrence_sq(&psi, m)?);
            }
        }
        Ok(dev)
    }));
    let mut rng = stream(seed, 10);
    let states = samples.div_ceil(10);
    let three = Dims::qubits(3);
    let line = match (0..states).try_fold(f64::INFINITY, |lo: f64, _| {
        let rho = random_rank_mixed(&three, &mut rng)?;
        let mut lo = lo;
        for m in 2..=3 {
            for term in flip_terms(&three, m)? {
                lo = lo.min(min_eigenvalue(&bounds::flip_density_matrix(&rho, &term)));
            }
        }
        Ok::<_, mflip_core::Error>(lo)
    }) {
        Ok(lo) => CheckLine {
            name: "flipped_state_psd",
            pass: lo >= -1e-10,
            detail: format!("n={states} min_eig={lo:.3e} bound=-1e-10"),
        },
        Err(e) => CheckLine { name: "flipped_state_psd", pass: false, detail: format!("error: {e}") },
    };
    report.lines.push(line);
}
