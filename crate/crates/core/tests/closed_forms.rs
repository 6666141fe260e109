use std::f64::consts::PI;

use mflip_core::bounds;
use mflip_core::families::{self, Family, FamilySpec};
use mflip_core::flip;
use mflip_core::random;
use mflip_core::tripartite;
use mflip_core::{Dims, StateVector};

fn pure(f: Family, a: f64) -> StateVector {
    families::make_state(&FamilySpec::new(f, a).unwrap()).into_pure().unwrap()
}

fn grid() -> Vec<f64> {
    families::alpha_grid(0.0, PI, 201).unwrap()
}

#[test]
fn biseparable_three_flip() {
    for a in grid() {
        let c3 = flip::m_flip_concurrence_sq(&pure(Family::Bisep, a), 3).unwrap();
        let want = 4.0 * a.cos().powi(2) * a.sin().powi(2);
        assert!((c3 - want).abs() < 1e-10, "alpha {a}: {c3} vs {want}");
    }
}

#[test]
fn w_plus_111_flips() {
    for a in grid() {
        let psi = pure(Family::PhiW, a);
        let (s, c) = a.sin_cos();
        let want = 8.0 / 3.0 * (s.powi(4) + 3.0 * c * c * s * s);
        assert!((flip::m_flip_concurrence_sq(&psi, 2).unwrap() - want).abs() < 1e-10);
        assert!(flip::m_flip_concurrence_sq(&psi, 3).unwrap().abs() < 1e-10);
    }
}

#[test]
fn phi_w_third_pi_matches_ghz_under_local_unitaries() {
    let t = tripartite::decompose(&pure(Family::PhiW, PI / 3.0)).unwrap();
    let g = tripartite::decompose(&families::ghz()).unwrap();
    assert!((t.e3 - g.e3).abs() < 1e-10 && t.e2_total.abs() < 1e-10);
}

/// `|C_W| = 2|ad - bc|` for `a|00> + b|01> + c|10> + d|11>`.
#[test]
fn two_qubit_flip_is_twice_squared_wootters() {
    let mut rng = random::rng(3);
    for _ in 0..200 {
        let psi = random::haar_random_pure_with(&Dims::qubits(2), &mut rng);
        let a = psi.amplitudes();
        let cw = 2.0 * (a[0] * a[3] - a[1] * a[2]).norm();
        assert!((flip::m_flip_concurrence_sq(&psi, 2).unwrap() - 2.0 * cw * cw).abs() < 1e-12);
        assert!((bounds::wootters_mixed(&psi.to_density()).unwrap() - cw).abs() < 1e-10);
    }
}

#[test]
fn werner_wootters() {
    for p in [0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0] {
        let want = ((3.0 * p - 1.0) / 2.0f64).max(0.0);
        assert!((bounds::wootters_mixed(&bounds::werner(p).unwrap()).unwrap() - want).abs() < 1e-10);
    }
}

#[test]
fn ghzw_mixture_endpoints_reduce_to_pure_decompositions() {
    let at = |a| tripartite::decompose_mixed(&families::make_state(&FamilySpec::new(Family::GhzwMix, a).unwrap()).to_density());
    let g = at(0.0).unwrap();
    assert!((g.e3 - 3.0).abs() < 1e-8 && g.estimate);
    let w = at(PI).unwrap();
    assert!((w.e2_total - 8.0 / 3.0).abs() < 1e-8 && w.e3.abs() < 1e-8);
}

#[test]
fn psi_wghz_window_maximum_is_nearly_bipartite() {
    let rows = families::sweep(Family::PsiWghz, 0.0, PI, 401).unwrap();
    let r = families::refine_window_max(&rows, |r| r.e2_total, (0.75 * PI, 0.85 * PI), Family::PsiWghz, 1e-10)
        .unwrap()
        .unwrap();
    assert!(r.alpha > 0.75 * PI && r.alpha < 0.85 * PI);
    assert!(r.e3 < 1e-3, "{}", r.e3);
}
