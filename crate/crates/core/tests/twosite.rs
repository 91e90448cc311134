mod common;

use std::f64::consts::PI;

use bhlab::classical::{self, PendulumState, Regime, WellState};
use bhlab::TimeGrid;
use proptest::prelude::*;

/// Complete elliptic integral of the first kind, `K(k)`, via the AGM.
fn ellip_k(k: f64) -> f64 {
    let (mut a, mut b) = (1.0, (1.0 - k * k).sqrt());
    for _ in 0..40 {
        let (an, bn) = (0.5 * (a + b), (a * b).sqrt());
        a = an;
        b = bn;
    }
    PI / (2.0 * a)
}

/// Period of the population imbalance for eps = 1.
fn imbalance_period(g: f64) -> f64 {
    let k = g / 2.0;
    if k < 1.0 {
        4.0 * ellip_k(k) / 2.0
    } else {
        2.0 * ellip_k(1.0 / k) / (2.0 * k)
    }
}

fn value_at(grid: &TimeGrid, series: &[f64], t: f64) -> f64 {
    let k = (t / grid.dt()).floor() as usize;
    let frac = t / grid.dt() - k as f64;
    series[k] * (1.0 - frac) + series[k + 1] * frac
}

#[test]
fn oscillation_period_matches_elliptic_integral() {
    for g in [0.5, 1.2, 1.8, 2.2, 3.0, 6.0] {
        let period = imbalance_period(g);
        let grid = TimeGrid::new(1.2 * period, 1e-5).unwrap();
        let s = classical::integrate_double_well(1.0, g, &grid).unwrap();
        let r = s.real("n12_over_N").unwrap();
        let at_period = value_at(&grid, r, period);
        let at_half = value_at(&grid, r, 0.5 * period);
        let floor = if g < 2.0 { -1.0 } else { (1.0 - 4.0 / (g * g)).sqrt() };
        assert!((at_period - 1.0).abs() < 1e-6, "g={g}: {at_period}");
        assert!((at_half - floor).abs() < 1e-6, "g={g}: {at_half} vs {floor}");
    }
}

#[test]
fn self_trapped_imbalance_stays_above_bound() {
    for g in [2.2, 3.0, 6.0] {
        let grid = TimeGrid::new(30.0, 1e-3).unwrap();
        let s = classical::integrate_double_well(1.0, g, &grid).unwrap();
        let min = s.real("n12_over_N").unwrap().iter().cloned().fold(f64::INFINITY, f64::min);
        let bound = (1.0 - 4.0 / (g * g)).sqrt();
        assert!(min >= bound - 1e-9 && min < bound + 1e-3, "g={g}: {min} vs {bound}");
        assert_eq!(classical::regime_from_imbalance(s.real("n12_over_N").unwrap()), Regime::SelfTrapped);
    }
}

#[test]
fn numerical_regime_agrees_with_classification() {
    for g in [0.1, 0.5, 1.0, 1.9, 2.1, 2.5, 4.0] {
        let grid = TimeGrid::new(40.0, 1e-3).unwrap();
        let s = classical::integrate_pendulum(1.0, g, &grid).unwrap();
        assert_eq!(classical::regime_from_imbalance(s.real("n12_over_N").unwrap()), classical::classify_regime(1.0, g));
    }
}

#[test]
fn weak_coupling_gives_rabi_oscillation() {
    let g = 1e-4;
    let grid = TimeGrid::new(5.0, 1e-3).unwrap();
    let s = classical::integrate_pendulum(1.0, g, &grid).unwrap();
    for (t, r) in s.times().iter().zip(s.real("n12_over_N").unwrap()) {
        assert!((r - (2.0 * t).cos()).abs() < 1e-6);
    }
}

#[test]
fn zero_hopping_freezes_population() {
    let grid = TimeGrid::new(5.0, 1e-2).unwrap();
    let s = classical::integrate_pendulum(0.0, 1.0, &grid).unwrap();
    assert!(s.real("rho1").unwrap().iter().all(|r| (r - 1.0).abs() < 1e-15));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn energies_are_conserved(g in 0.05..6.0f64, eps in 0.2..2.0f64) {
        let grid = TimeGrid::new(20.0, 1e-3).unwrap();
        let p = classical::pendulum_trajectory(eps, g, &grid).unwrap();
        let w = classical::well_trajectory(eps, g, &grid).unwrap();
        let e0 = classical::pendulum_energy(eps, PendulumState::initial(g));
        let w0 = classical::well_energy(eps, g, WellState::initial());
        for (a, b) in p.iter().zip(&w) {
            prop_assert!((classical::pendulum_energy(eps, *a) - e0).abs() < 1e-8 * e0.abs().max(1.0));
            prop_assert!((classical::well_energy(eps, g, *b) - w0).abs() < 1e-8 * w0.abs().max(1.0));
        }
    }

    #[test]
    fn pendulum_and_well_describe_same_imbalance(g in 0.05..6.0f64, eps in 0.2..2.0f64) {
        let grid = TimeGrid::new(10.0, 1e-3).unwrap();
        let p = classical::pendulum_trajectory(eps, g, &grid).unwrap();
        let w = classical::well_trajectory(eps, g, &grid).unwrap();
        for (a, b) in p.iter().zip(&w) {
            prop_assert!((a.phi_dot / (2.0 * g) - b.rho12).abs() < 1e-7);
        }
    }

    #[test]
    fn population_stays_in_unit_interval(g in 0.05..6.0f64) {
        let grid = TimeGrid::new(10.0, 1e-3).unwrap();
        let s = classical::integrate_pendulum(1.0, g, &grid).unwrap();
        prop_assert!(s.real("rho1").unwrap().iter().all(|r| *r >= -1e-9 && *r <= 1.0 + 1e-9));
    }
}
