mod common;

use std::f64::consts::PI;

use bhlab::classical;
use bhlab::exact::{self, EdOptions};
use bhlab::revival::{self, Averaging, RevivalParams, RevivalState};
use bhlab::{build_two_site_params, Error, InitialState, TimeGrid, C64};
use common::*;
use proptest::prelude::*;

#[test]
fn mean_field_limit_matches_pendulum() {
    let grid = TimeGrid::with_steps(20.0, 100_000).unwrap();
    for g in [0.5, 1.8, 3.0] {
        let p = RevivalParams::new(1.0, g, 100).unwrap().mean_field();
        let r = revival::integrate_revival(&p, &grid).unwrap();
        let pend = classical::integrate_pendulum(1.0, g, &grid).unwrap();
        let d = sup_diff(r.real("n12_over_N").unwrap(), pend.real("n12_over_N").unwrap());
        assert!(d < 1e-6, "g={g}: {d}");
    }
}

#[test]
fn linear_limit_is_rabi() {
    let p = RevivalParams::new(1.3, 0.0, 40).unwrap();
    let grid = TimeGrid::new(10.0, 1e-3).unwrap();
    let r = revival::integrate_revival(&p, &grid).unwrap();
    for (t, v) in r.times().iter().zip(r.real("n12_over_N").unwrap()) {
        assert!((v - (2.6 * t).cos()).abs() < 1e-10);
    }
}

#[test]
fn small_coupling_solution_tracks_ode() {
    let (n, g) = (50u64, 0.02);
    let u = g / n as f64;
    let p = RevivalParams::new(1.0, g, n).unwrap();
    let grid = TimeGrid::new(0.9 * PI / u, 0.01).unwrap();
    let r = revival::integrate_revival(&p, &grid).unwrap();
    let approx: Vec<f64> =
        r.times().iter().map(|&t| revival::approx_small_g_solution(n, 1.0, u, t) / n as f64).collect();
    let d = sup_diff(&approx, r.real("n12_over_N").unwrap());
    assert!(d < 0.1, "{d}");
}

#[test]
fn small_coupling_solution_limits() {
    assert!((revival::approx_small_g_solution(50, 1.0, 0.0, 0.7) - 50.0 * 1.4f64.cos()).abs() < 1e-12);
    let u = 0.01;
    let t = PI / u;
    assert!((revival::approx_small_g_solution(50, 1.0, u, t) - 50.0 * (2.0 * t).cos()).abs() < 1e-9);
}

#[test]
fn ode_tracks_exact_dynamics_early_on() {
    let (n, g) = (50u64, 0.1);
    let grid = TimeGrid::new(200.0, 0.01).unwrap();
    let p = build_two_site_params(1.0, g, n).unwrap();
    let ed =
        exact::evolve_number_state(&p, &InitialState::number_on_site(2, 0, n), &grid, &EdOptions::default()).unwrap();
    let ode = revival::integrate_revival(&RevivalParams::new(1.0, g, n).unwrap(), &grid).unwrap();
    let d = sup_diff(ed.real("n12_over_N").unwrap(), ode.real("n12_over_N").unwrap());
    assert!(d < 0.05, "{d}");
    let dq = sup_diff_c(ed.complex("q").unwrap(), ode.complex("q").unwrap());
    assert!(dq < 0.05, "{dq}");
}

#[test]
fn pure_phase_variant_damps_twice_as_hard() {
    let p = RevivalParams::new(1.0, 0.1, 50).unwrap();
    let q = p.with_averaging(Averaging::PurePhase);
    let t = 300.0;
    assert!((q.damping_factor(t) - p.damping_factor(t).powi(2)).abs() < 1e-15);
    let grid = TimeGrid::new(50.0, 0.01).unwrap();
    assert!(revival::integrate_revival(&q, &grid).is_ok());
}

#[test]
fn unstable_step_hits_overflow_guard() {
    let p = RevivalParams::new(1.0, 100.0, 50).unwrap();
    let grid = TimeGrid::new(200.0, 1.0).unwrap();
    assert!(matches!(revival::integrate_revival_raw(&p, &grid), Err(Error::Overflow { .. })));
}

proptest! {
    #[test]
    fn envelope_is_periodic(n in 1u64..500, u in 1e-4..1.0f64, t in 0.0..1e3f64) {
        let a = revival::collapse_envelope(n, u, t);
        let b = revival::collapse_envelope(n, u, t + PI / u);
        prop_assert!((a - b).abs() <= 1e-9 * a.max(1e-300) + 1e-300);
        prop_assert!(a <= 1.0 && a > 0.0 || a == 0.0);
    }

    #[test]
    fn right_hand_side_at_start(n in 1u64..500, eps in -2.0..2.0f64, g in 0.0..3.0f64) {
        let p = RevivalParams::new(eps, g, n).unwrap();
        let (dn, dq) = revival::revival_rhs(&RevivalState::initial(n), &p, 0.0);
        prop_assert_eq!(dn, 0.0);
        prop_assert!((dq - C64::new(0.0, eps * n as f64)).norm() < 1e-12 * n as f64);
    }
}
