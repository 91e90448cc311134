//! Experiment runner for [`bhlab`]: declarative TOML configurations,
//! engine dispatch, CSV/JSON emission, cross-engine comparison reports,
//! built-in figure presets and a verification battery.
//!
//! ```
//! use bhlab_cli::{run_experiment, ExperimentConfig};
//!
//! let cfg = ExperimentConfig::from_toml_str(r#"
//!     name = "quick"
//!     engines = ["gp", "pendulum"]
//!
//!     [model]
//!     eps = 1.0
//!     g = 0.5
//!     n_total = 100
//!
//!     [grid]
//!     t_max = 1.0
//!     dt = 0.1
//!     substeps = 100
//! "#).unwrap();
//! let dir = std::env::temp_dir().join("bhlab-doc-example");
//! let report = run_experiment(&cfg, &dir).unwrap();
//! let d = report.points[0].deviation(bhlab_cli::Engine::Gp, bhlab_cli::Engine::Pendulum, "rho1").unwrap();
//! assert!(d.sup < 1e-9);
//! ```

mod config;
mod engines;
mod error;
mod output;
pub mod presets;
mod report;
mod run;
mod verify;

pub use config::{
    Engine, ExperimentConfig, GridSpec, ModelSpec, OutputFormat, OutputSpec, RunPoint, StateKind, StateSpec, SweepSpec,
    ToleranceSpec,
};
pub use engines::run_engine;
pub use error::{CliError, CliResult};
pub use output::{write_csv, write_json};
pub use report::{
    pairwise_deviations, ComparisonReport, Deviation, EngineOutcome, EngineStatus, PointReport, ToleranceCheck,
    COMPARED_OBSERVABLES,
};
pub use run::{resolve_output_dir, run_experiment, summarize, OUTPUT_DIR_ENV};
pub use verify::{verify_suite, CheckResult, VerifyOptions, VerifySummary};

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/experiments.md")]
mod book_experiments {}
