use std::f64::consts::PI;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// A computational engine that produces a time series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    /// Exact many-body evolution.
    Ed,
    /// Mean-field (Gross-Pitaevskii) amplitudes.
    Gp,
    /// Relative-phase pendulum.
    Pendulum,
    /// Cubic double-well equation for the imbalance.
    DoubleWell,
    /// Averaged equations with the collapse factor.
    Revival,
    /// Analytic collapse factor and the small-coupling approximation.
    Envelope,
    /// Single-site closed form.
    ClosedForm,
}

impl Engine {
    pub const ALL: [Engine; 7] = [
        Engine::Ed,
        Engine::Gp,
        Engine::Pendulum,
        Engine::DoubleWell,
        Engine::Revival,
        Engine::Envelope,
        Engine::ClosedForm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Ed => "ed",
            Engine::Gp => "gp",
            Engine::Pendulum => "pendulum",
            Engine::DoubleWell => "double_well",
            Engine::Revival => "revival",
            Engine::Envelope => "envelope",
            Engine::ClosedForm => "closed_form",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateKind {
    #[default]
    Number,
    Coherent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

/// Lattice and couplings. For more than two sites the lattice is an open
/// chain with hopping `eps` between neighbours.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub eps: f64,
    pub g: f64,
    pub n_total: u64,
    #[serde(default = "default_sites")]
    pub sites: usize,
}

fn default_sites() -> usize {
    2
}

/// All particles start on the first site; coherent states carry mean
/// occupation `n_total` and amplitude phase `phase`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSpec {
    #[serde(default)]
    pub kind: StateKind,
    #[serde(default)]
    pub phase: f64,
}

/// Output sampling. Exactly one of the three horizon keys must be set.
///
/// `t_max_over_pi` is in units of `pi`, `t_max_over_revival` in units of the
/// revival time `pi / u`, which changes along a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    #[serde(default)]
    pub t_max: Option<f64>,
    #[serde(default)]
    pub t_max_over_pi: Option<f64>,
    #[serde(default)]
    pub t_max_over_revival: Option<f64>,
    /// Output spacing.
    pub dt: f64,
    /// Integrator steps per output sample for the ODE engines.
    #[serde(default = "default_substeps")]
    pub substeps: usize,
}

fn default_substeps() -> usize {
    1
}

impl GridSpec {
    pub fn horizon(&self, u: f64) -> CliResult<f64> {
        match (self.t_max, self.t_max_over_pi, self.t_max_over_revival) {
            (Some(t), None, None) => Ok(t),
            (None, Some(k), None) => Ok(k * PI),
            (None, None, Some(k)) => {
                if !(u > 0.0) {
                    return Err(CliError::Config("t_max_over_revival needs a positive interaction".into()));
                }
                Ok(k * PI / u)
            }
            _ => Err(CliError::Config("grid needs exactly one of t_max, t_max_over_pi, t_max_over_revival".into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default = "default_dir")]
    pub dir: String,
    #[serde(default)]
    pub format: OutputFormat,
}

fn default_dir() -> String {
    "bhlab-output".into()
}

impl Default for OutputSpec {
    fn default() -> Self {
        Self { dir: default_dir(), format: OutputFormat::Csv }
    }
}

/// Parameter grid; every combination of the listed values is run.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    #[serde(default)]
    pub g: Option<Vec<f64>>,
    #[serde(default)]
    pub n_total: Option<Vec<u64>>,
}

/// Declared bound on the sup-norm deviation between two engines.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceSpec {
    pub engines: [Engine; 2],
    pub observable: String,
    pub max_sup: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    pub engines: Vec<Engine>,
    pub model: ModelSpec,
    #[serde(default)]
    pub state: StateSpec,
    pub grid: GridSpec,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub sweep: Option<SweepSpec>,
    #[serde(default)]
    pub tolerances: Vec<ToleranceSpec>,
}

/// One parameter point of a (possibly swept) experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct RunPoint {
    pub eps: f64,
    pub g: f64,
    pub n_total: u64,
    pub sites: usize,
    pub state: StateSpec,
    pub t_max: f64,
    pub dt: f64,
    pub substeps: usize,
}

impl RunPoint {
    pub fn u(&self) -> f64 {
        self.g / self.n_total as f64
    }

    /// File-name fragment identifying the point.
    pub fn label(&self) -> String {
        format!("g{}_N{}", self.g, self.n_total)
    }
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> CliResult<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string_pretty(self).expect("configuration serializes to TOML")
    }

    pub fn validate(&self) -> CliResult<()> {
        let bad = |m: String| Err(CliError::Config(m));
        if self.name.is_empty() || self.name.contains(['/', '\\']) {
            return bad(format!("name `{}` must be non-empty and free of path separators", self.name));
        }
        if self.engines.is_empty() {
            return bad("at least one engine is required".into());
        }
        let mut seen = self.engines.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != self.engines.len() {
            return bad("engines must not repeat".into());
        }
        let m = &self.model;
        if !m.eps.is_finite() || !m.g.is_finite() || m.g < 0.0 {
            return bad(format!("need finite eps and g >= 0, got eps = {}, g = {}", m.eps, m.g));
        }
        if m.n_total == 0 || m.sites == 0 {
            return bad("n_total and sites must be positive".into());
        }
        let g = &self.grid;
        if !(g.dt > 0.0 && g.dt.is_finite()) || g.substeps == 0 {
            return bad("grid needs dt > 0 and substeps >= 1".into());
        }
        if let Some(sweep) = &self.sweep {
            if sweep.g.as_ref().is_some_and(|v| v.is_empty()) || sweep.n_total.as_ref().is_some_and(|v| v.is_empty()) {
                return bad("sweep grids must be non-empty".into());
            }
            if sweep.g.is_none() && sweep.n_total.is_none() {
                return bad("sweep needs a g or n_total list".into());
            }
        }
        for tol in &self.tolerances {
            if !self.engines.contains(&tol.engines[0]) || !self.engines.contains(&tol.engines[1]) {
                return bad(format!("tolerance refers to an engine that is not run: {:?}", tol.engines));
            }
            if !(tol.max_sup >= 0.0) {
                return bad("max_sup must be non-negative".into());
            }
        }
        for p in self.points() {
            if !(p.g >= 0.0 && p.g.is_finite()) || p.n_total == 0 {
                return bad(format!("invalid sweep point g = {}, N = {}", p.g, p.n_total));
            }
            let t = g.horizon(p.u())?;
            if !(t > 0.0 && t.is_finite()) {
                return bad(format!("horizon must be positive, got {t}"));
            }
        }
        Ok(())
    }

    /// Expand the sweep into run points (g outer, N inner).
    pub fn points(&self) -> Vec<RunPoint> {
        let gs = self.sweep.as_ref().and_then(|s| s.g.clone()).unwrap_or_else(|| vec![self.model.g]);
        let ns = self.sweep.as_ref().and_then(|s| s.n_total.clone()).unwrap_or_else(|| vec![self.model.n_total]);
        let mut out = Vec::with_capacity(gs.len() * ns.len());
        for &g in &gs {
            for &n in &ns {
                let u = g / n.max(1) as f64;
                out.push(RunPoint {
                    eps: self.model.eps,
                    g,
                    n_total: n,
                    sites: self.model.sites,
                    state: self.state.clone(),
                    t_max: self.grid.horizon(u).unwrap_or(f64::NAN),
                    dt: self.grid.dt,
                    substeps: self.grid.substeps,
                });
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
name = "demo"
engines = ["ed", "pendulum"]

[model]
eps = 1.0
g = 0.5
n_total = 40

[grid]
t_max = 2.0
dt = 0.1
"#;

    #[test]
    fn minimal_config_parses_with_defaults() {
        let cfg = ExperimentConfig::from_toml_str(MINIMAL).unwrap();
        assert_eq!(cfg.model.sites, 2);
        assert_eq!(cfg.state.kind, StateKind::Number);
        assert_eq!(cfg.output.format, OutputFormat::Csv);
        assert_eq!(cfg.points().len(), 1);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = MINIMAL.replace("n_total = 40", "n_total = 40\nfoo = 1");
        assert!(matches!(ExperimentConfig::from_toml_str(&text), Err(CliError::Config(_))));
    }

    #[test]
    fn horizon_keys_are_exclusive() {
        let text = MINIMAL.replace("t_max = 2.0", "t_max = 2.0\nt_max_over_pi = 1.0");
        assert!(ExperimentConfig::from_toml_str(&text).is_err());
    }

    #[test]
    fn sweep_expands_to_product() {
        let text = format!("{MINIMAL}\n[sweep]\ng = [0.5, 1.0]\nn_total = [10, 20, 30]\n");
        let cfg = ExperimentConfig::from_toml_str(&text).unwrap();
        let pts = cfg.points();
        assert_eq!(pts.len(), 6);
        assert_eq!((pts[4].g, pts[4].n_total), (1.0, 20));
    }

    #[test]
    fn round_trip_through_toml() {
        let cfg = ExperimentConfig::from_toml_str(MINIMAL).unwrap();
        assert_eq!(ExperimentConfig::from_toml_str(&cfg.to_toml_string()).unwrap(), cfg);
    }
}
