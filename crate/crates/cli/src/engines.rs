use bhlab::classical;
use bhlab::exact::{self, zero_d_closed_form, EdOptions};
use bhlab::gp::{self, DriftMode, GPState};
use bhlab::revival::{self, RevivalParams};
use bhlab::{build_two_site_params, Error, InitialState, ModelParams, RealMatrix, TimeGrid, TrajectorySeries, C64};

use crate::config::{Engine, RunPoint, StateKind};

fn output_grid(p: &RunPoint) -> bhlab::Result<TimeGrid> {
    TimeGrid::new(p.t_max, p.dt)
}

/// Fine grid for the ODE engines; its every `substeps`-th point lies on the
/// output grid.
fn integrator_grid(p: &RunPoint) -> bhlab::Result<TimeGrid> {
    let coarse = output_grid(p)?;
    TimeGrid::with_steps(coarse.t_max(), coarse.steps() * p.substeps)
}

fn site_one_amplitude(p: &RunPoint) -> C64 {
    C64::from_polar((p.n_total as f64).sqrt(), p.state.phase)
}

fn initial_state(p: &RunPoint) -> InitialState {
    let mut lambda = vec![C64::new(0.0, 0.0); p.sites];
    lambda[0] = site_one_amplitude(p);
    match p.state.kind {
        StateKind::Number => InitialState::Number { lambda, n_total: p.n_total },
        StateKind::Coherent => InitialState::Coherent { lambda },
    }
}

fn chain_params(p: &RunPoint) -> bhlab::Result<ModelParams> {
    match p.sites {
        1 => ModelParams::zero_d(p.eps, p.u())?.with_n_total(p.n_total),
        2 => build_two_site_params(p.eps, p.g, p.n_total),
        s => {
            let mut h = RealMatrix::zeros(s);
            for j in 0..s - 1 {
                h.set(j, j + 1, p.eps);
                h.set(j + 1, j, p.eps);
            }
            ModelParams::with_coupling(h, p.g, p.n_total)
        }
    }
}

fn require_two_sites(engine: Engine, p: &RunPoint) -> bhlab::Result<()> {
    if p.sites != 2 {
        return Err(Error::Unsupported(format!("engine `{engine}` needs two sites, got {}", p.sites)));
    }
    Ok(())
}

/// Run one engine at one parameter point; the result is sampled on the
/// output grid.
pub fn run_engine(engine: Engine, p: &RunPoint) -> bhlab::Result<TrajectorySeries> {
    match engine {
        Engine::Ed => {
            let params = chain_params(p)?;
            let state = initial_state(p);
            let grid = output_grid(p)?;
            match (p.sites, p.state.kind) {
                (1, StateKind::Number) => {
                    Err(Error::Unsupported("a single-site number state is stationary; use a coherent state".into()))
                }
                (_, StateKind::Number) => exact::evolve_number_state(&params, &state, &grid, &EdOptions::default()),
                (_, StateKind::Coherent) => exact::evolve_coherent_state(&params, &state, &grid, &EdOptions::default()),
            }
        }
        Engine::Gp => {
            let params = chain_params(p)?;
            let state = initial_state(p);
            let mode = match p.state.kind {
                StateKind::Number => DriftMode::Number,
                StateKind::Coherent => DriftMode::Coherent,
            };
            let s = gp::integrate_gp(&params, mode, &GPState::from_initial(&state), &integrator_grid(p)?)?;
            Ok(s.decimate(p.substeps))
        }
        Engine::Pendulum => {
            require_two_sites(engine, p)?;
            Ok(classical::integrate_pendulum(p.eps, p.g, &integrator_grid(p)?)?.decimate(p.substeps))
        }
        Engine::DoubleWell => {
            require_two_sites(engine, p)?;
            Ok(classical::integrate_double_well(p.eps, p.g, &integrator_grid(p)?)?.decimate(p.substeps))
        }
        Engine::Revival => {
            require_two_sites(engine, p)?;
            let params = RevivalParams::new(p.eps, p.g, p.n_total)?;
            Ok(revival::integrate_revival(&params, &integrator_grid(p)?)?.decimate(p.substeps))
        }
        Engine::Envelope => {
            require_two_sites(engine, p)?;
            let grid = output_grid(p)?;
            let times = grid.times();
            let n = p.n_total as f64;
            let mut s = TrajectorySeries::new(times.clone());
            s.push_real("envelope", times.iter().map(|&t| revival::collapse_envelope(p.n_total, p.u(), t)).collect())?;
            s.push_real(
                "n12_over_N",
                times.iter().map(|&t| revival::approx_small_g_solution(p.n_total, p.eps, p.u(), t) / n).collect(),
            )?;
            Ok(s)
        }
        Engine::ClosedForm => {
            if p.sites != 1 {
                return Err(Error::Unsupported(format!("closed form needs one site, got {}", p.sites)));
            }
            let grid = output_grid(p)?;
            let times = grid.times();
            let lambda = site_one_amplitude(p);
            let mut s = TrajectorySeries::new(times.clone());
            s.push_complex("a", times.iter().map(|&t| zero_d_closed_form(lambda, p.eps, p.u(), t)).collect())?;
            Ok(s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::StateSpec;

    fn point(sites: usize, kind: StateKind) -> RunPoint {
        RunPoint {
            eps: 1.0,
            g: 0.5,
            n_total: 20,
            sites,
            state: StateSpec { kind, phase: 0.0 },
            t_max: 1.0,
            dt: 0.1,
            substeps: 10,
        }
    }

    #[test]
    fn ode_engines_land_on_output_grid() {
        let p = point(2, StateKind::Number);
        for e in [Engine::Gp, Engine::Pendulum, Engine::DoubleWell, Engine::Revival, Engine::Envelope, Engine::Ed] {
            let s = run_engine(e, &p).unwrap();
            assert_eq!(s.len(), 11, "{e}");
            assert!((s.times()[10] - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn single_site_engines() {
        let p = point(1, StateKind::Coherent);
        let a = run_engine(Engine::ClosedForm, &p).unwrap();
        let b = run_engine(Engine::Ed, &p).unwrap();
        let d = a.complex("a").unwrap().iter().zip(b.complex("a").unwrap()).map(|(x, y)| (x - y).norm());
        assert!(d.fold(0.0, f64::max) < 1e-9);
        assert!(run_engine(Engine::Pendulum, &p).is_err());
    }

    #[test]
    fn chain_runs_mean_field_only() {
        let p = point(4, StateKind::Coherent);
        assert!(run_engine(Engine::Gp, &p).unwrap().real("rho4").is_some());
        assert!(run_engine(Engine::Ed, &p).is_err());
    }
}
