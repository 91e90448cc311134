//! Built-in experiments reproducing the standard figures at desk scale.
//!
//! | preset      | model                          | engines                 | horizon       | reduced N              | `--full` N                  |
//! |-------------|--------------------------------|-------------------------|---------------|------------------------|-----------------------------|
//! | `fig-4`     | one site, eps 2, g 0.5         | closed_form, ed         | 3 pi/u        | 20                     | 20                          |
//! | `fig-5.1.1` | eps 1, g in {0.5, 1.0, 1.8}    | ed, pendulum            | 4 pi          | 250, 500, 1000, 2500   | 2500, 5000, 10000, 20000    |
//! | `fig-5.1.2` | eps 1, g in {2.2, 3.0, 6.0}    | ed, pendulum            | 4 pi          | 250, 500, 1000, 2500   | 2500, 5000, 10000, 20000    |
//! | `fig-5.3.1` | eps 1, g in {0.05, 0.1}        | ed, envelope            | 1000 pi       | 50                     | 50                          |
//! | `fig-5.3.2` | eps 1, g in {0.2, 0.5}         | ed, envelope            | 1000 pi       | 50                     | 50                          |
//! | `fig-5.3.3` | eps 1, g 0.1                   | ed, revival, envelope   | 2 pi/u        | 50                     | 50                          |
//!
//! All two-site presets start from a number state with every particle on
//! site one.

use crate::config::{
    Engine, ExperimentConfig, GridSpec, ModelSpec, OutputSpec, StateKind, StateSpec, SweepSpec, ToleranceSpec,
};

/// Name and one-line description of a preset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PresetInfo {
    pub name: &'static str,
    pub description: &'static str,
}

pub const PRESETS: [PresetInfo; 6] = [
    PresetInfo { name: "fig-4", description: "single-site coherent state: closed form vs exact evolution" },
    PresetInfo { name: "fig-5.1.1", description: "large-N approach to the pendulum, oscillatory couplings" },
    PresetInfo { name: "fig-5.1.2", description: "large-N approach to the pendulum, self-trapped couplings" },
    PresetInfo { name: "fig-5.3.1", description: "collapse and revival against the analytic envelope" },
    PresetInfo {
        name: "fig-5.3.2",
        description: "collapse and revival against the analytic envelope, stronger coupling",
    },
    PresetInfo { name: "fig-5.3.3", description: "averaged revival equations vs exact evolution, g = 0.1" },
];

fn grid(t_max_over_pi: Option<f64>, t_max_over_revival: Option<f64>, dt: f64, substeps: usize) -> GridSpec {
    GridSpec { t_max: None, t_max_over_pi, t_max_over_revival, dt, substeps }
}

fn two_site(g: f64, n_total: u64) -> ModelSpec {
    ModelSpec { eps: 1.0, g, n_total, sites: 2 }
}

fn large_n(name: &str, gs: [f64; 3], full: bool) -> ExperimentConfig {
    let ns = if full { vec![2500, 5000, 10000, 20000] } else { vec![250, 500, 1000, 2500] };
    ExperimentConfig {
        name: name.into(),
        engines: vec![Engine::Ed, Engine::Pendulum],
        model: two_site(gs[0], ns[0]),
        state: StateSpec::default(),
        grid: grid(Some(4.0), None, 0.02, 20),
        output: OutputSpec::default(),
        sweep: Some(SweepSpec { g: Some(gs.to_vec()), n_total: Some(ns) }),
        tolerances: Vec::new(),
    }
}

fn collapse(name: &str, gs: [f64; 2]) -> ExperimentConfig {
    ExperimentConfig {
        name: name.into(),
        engines: vec![Engine::Ed, Engine::Envelope],
        model: two_site(gs[0], 50),
        state: StateSpec::default(),
        grid: grid(Some(1000.0), None, 0.1, 1),
        output: OutputSpec::default(),
        sweep: Some(SweepSpec { g: Some(gs.to_vec()), n_total: None }),
        tolerances: Vec::new(),
    }
}

/// Configuration of a preset; `full` selects the large particle numbers.
pub fn preset(name: &str, full: bool) -> Option<ExperimentConfig> {
    let cfg = match name {
        "fig-4" => ExperimentConfig {
            name: name.into(),
            engines: vec![Engine::ClosedForm, Engine::Ed],
            model: ModelSpec { eps: 2.0, g: 0.5, n_total: 20, sites: 1 },
            state: StateSpec { kind: StateKind::Coherent, phase: 0.0 },
            grid: grid(None, Some(3.0), 0.05, 1),
            output: OutputSpec::default(),
            sweep: None,
            tolerances: vec![ToleranceSpec {
                engines: [Engine::ClosedForm, Engine::Ed],
                observable: "a".into(),
                max_sup: 1e-9,
            }],
        },
        "fig-5.1.1" => large_n(name, [0.5, 1.0, 1.8], full),
        "fig-5.1.2" => large_n(name, [2.2, 3.0, 6.0], full),
        "fig-5.3.1" => collapse(name, [0.05, 0.1]),
        "fig-5.3.2" => collapse(name, [0.2, 0.5]),
        "fig-5.3.3" => ExperimentConfig {
            name: name.into(),
            engines: vec![Engine::Ed, Engine::Revival, Engine::Envelope],
            model: two_site(0.1, 50),
            state: StateSpec::default(),
            grid: grid(None, Some(2.0), 0.05, 5),
            output: OutputSpec::default(),
            sweep: None,
            tolerances: Vec::new(),
        },
        _ => return None,
    };
    Some(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_listed_preset_validates() {
        for info in PRESETS {
            for full in [false, true] {
                let cfg = preset(info.name, full).unwrap();
                cfg.validate().unwrap();
                assert_eq!(cfg.name, info.name);
            }
        }
        assert!(preset("fig-9", false).is_none());
    }

    #[test]
    fn full_flag_raises_particle_numbers() {
        let reduced = preset("fig-5.1.1", false).unwrap().points();
        let full = preset("fig-5.1.1", true).unwrap().points();
        assert_eq!(reduced.iter().map(|p| p.n_total).max(), Some(2500));
        assert_eq!(full.iter().map(|p| p.n_total).max(), Some(20000));
    }
}
