mod common;

use bhlab::classical;
use bhlab::exact::{self, EdOptions};
use bhlab::gp::{self, DriftMode, GPState};
use bhlab::{build_two_site_params, Error, InitialState, ModelParams, TimeGrid, C64};
use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn on_site_one() -> GPState {
    GPState::new(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)])
}

#[test]
fn two_site_gp_reproduces_pendulum_population() {
    for g in [0.5, 1.8, 3.0] {
        let p = build_two_site_params(1.0, g, 1000).unwrap();
        let grid = TimeGrid::with_steps(10.0, 20_000).unwrap();
        let s = gp::integrate_gp(&p, DriftMode::Coherent, &on_site_one(), &grid).unwrap();
        let pend = classical::integrate_pendulum(1.0, g, &grid).unwrap();
        let d = sup_diff(s.real("rho1").unwrap(), pend.real("rho1").unwrap());
        assert!(d < 1e-8, "g={g}: {d}");
    }
}

#[test]
fn density_obeys_two_site_equation() {
    let (eps, g) = (0.7, 1.4);
    let p = build_two_site_params(eps, g, 10).unwrap();
    let w0 = GPState::new(vec![C64::new(0.6, 0.2), C64::new(-0.3, 0.7)]);
    let n = w0.norm_sqr().sqrt();
    let w0 = GPState::new(w0.w.iter().map(|z| z / n).collect());
    let h = 1e-4;
    let grid = TimeGrid::with_steps(2.0, 20_000).unwrap();
    let states = gp::integrate_gp_states(&p, DriftMode::Coherent, &w0, &grid).unwrap();
    for k in [100, 5000, 12_345] {
        let q = |i: usize| states[i].density(0, 1);
        let dq = (q(k + 1) - q(k - 1)) / (2.0 * h);
        let rho12 = states[k].w[0].norm_sqr() - states[k].w[1].norm_sqr();
        let want = C64::new(0.0, eps * rho12) - C64::new(0.0, 2.0 * g * rho12) * q(k);
        assert!((dq - want).norm() < 1e-6);
    }
}

#[test]
fn gp_limit_of_exact_dynamics() {
    let grid = TimeGrid::new(4.0, 0.05).unwrap();
    let fine = TimeGrid::with_steps(4.0, 80 * 20).unwrap();
    let dev = |n: u64| {
        let p = build_two_site_params(1.0, 0.5, n).unwrap();
        let ed = exact::evolve_number_state(&p, &InitialState::number_on_site(2, 0, n), &grid, &EdOptions::default())
            .unwrap();
        let mf = gp::integrate_gp(&p, DriftMode::Number, &on_site_one(), &fine).unwrap().decimate(20);
        sup_diff_c(ed.complex("q").unwrap(), mf.complex("q").unwrap())
    };
    let (a, b) = (dev(100), dev(1600));
    assert!(b < a / 4.0, "{a} {b}");
}

#[test]
fn many_site_norm_and_energy() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let h = random_symmetric(&mut rng, 6);
    let p = ModelParams::with_coupling(h, 2.0, 100).unwrap();
    let w: Vec<C64> = (0..6).map(|_| random_complex(&mut rng)).collect();
    let n = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let w0 = GPState::new(w.iter().map(|z| z / n).collect());
    let grid = TimeGrid::with_steps(100.0, 100_000).unwrap();
    let s = gp::integrate_gp(&p, DriftMode::Coherent, &w0, &grid).unwrap();
    let norm = s.real("norm").unwrap();
    assert!(norm.iter().all(|x| (x - 1.0).abs() < 1e-9));
    let e = s.real("energy").unwrap();
    assert!(e.iter().all(|x| (x - e[0]).abs() < 1e-7));
    assert!(s.real("rho6").is_some());
}

#[test]
fn coarse_step_trips_norm_guard() {
    let p = build_two_site_params(1.0, 50.0, 10).unwrap();
    let w0 = GPState::new(vec![C64::new(0.8, 0.0), C64::new(0.6, 0.0)]);
    let grid = TimeGrid::new(10.0, 0.2).unwrap();
    assert!(matches!(gp::integrate_gp(&p, DriftMode::Coherent, &w0, &grid), Err(Error::NormDrift { .. })));
}

#[test]
fn state_length_must_match_sites() {
    let p = build_two_site_params(1.0, 1.0, 10).unwrap();
    let grid = TimeGrid::new(1.0, 0.1).unwrap();
    let w0 = GPState::new(vec![C64::new(1.0, 0.0)]);
    assert!(matches!(gp::integrate_gp(&p, DriftMode::Coherent, &w0, &grid), Err(Error::Dimension(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn drift_forms_agree_on_unit_sphere(seed in any::<u64>(), sites in 2usize..5, g in 0.0..3.0f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_symmetric(&mut rng, sites);
        let p = ModelParams::with_coupling(h, g, 50).unwrap();
        let w: Vec<C64> = (0..sites).map(|_| random_complex(&mut rng)).collect();
        let n = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        prop_assume!(n > 1e-3);
        let w0 = GPState::new(w.iter().map(|z| z / n).collect());
        let grid = TimeGrid::with_steps(5.0, 10_000).unwrap();
        let a = gp::integrate_gp_states(&p, DriftMode::Coherent, &w0, &grid).unwrap();
        let b = gp::integrate_gp_states(&p, DriftMode::Number, &w0, &grid).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!(sup_diff_c(&x.w, &y.w) < 1e-9);
        }
    }

    #[test]
    fn norm_is_conserved(seed in any::<u64>(), g in 0.0..3.0f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_symmetric(&mut rng, 3);
        let p = ModelParams::with_coupling(h, g, 50).unwrap();
        let w: Vec<C64> = (0..3).map(|_| random_complex(&mut rng)).collect();
        let n = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        prop_assume!(n > 1e-3);
        let w0 = GPState::new(w.iter().map(|z| z / n).collect());
        let grid = TimeGrid::with_steps(10.0, 10_000).unwrap();
        let s = gp::integrate_gp(&p, DriftMode::Coherent, &w0, &grid).unwrap();
        prop_assert!(s.real("norm").unwrap().iter().all(|x| (x - 1.0).abs() < 1e-9));
    }
}
