use std::collections::BTreeMap;
use std::path::Path;

use bhlab::classical::classify_regime;
use bhlab::TrajectorySeries;
use rayon::prelude::*;

use crate::config::{Engine, ExperimentConfig, RunPoint};
use crate::engines::run_engine;
use crate::error::{CliError, CliResult};
use crate::output::{write_series, write_text};
use crate::report::{pairwise_deviations, ComparisonReport, EngineOutcome, EngineStatus, PointReport, ToleranceCheck};

/// Environment variable that overrides `output.dir`.
pub const OUTPUT_DIR_ENV: &str = "BHLAB_OUTPUT_DIR";

/// Output directory after applying the environment override.
pub fn resolve_output_dir(config: &ExperimentConfig) -> std::path::PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if !dir.is_empty() => dir.into(),
        _ => config.output.dir.clone().into(),
    }
}

fn evaluate_point(config: &ExperimentConfig, p: &RunPoint) -> PointReport {
    let mut outcomes = Vec::with_capacity(config.engines.len());
    let mut series = BTreeMap::new();
    for &engine in &config.engines {
        match run_engine(engine, p) {
            Ok(s) => {
                outcomes.push(EngineOutcome { engine, status: EngineStatus::Ok, file: None, error: None });
                series.insert(engine, s);
            }
            Err(e) => outcomes.push(EngineOutcome {
                engine,
                status: EngineStatus::Failed,
                file: None,
                error: Some(e.to_string()),
            }),
        }
    }
    let ordered: Vec<(Engine, &TrajectorySeries)> =
        config.engines.iter().filter_map(|e| series.get(e).map(|s| (*e, s))).collect();
    let deviations = pairwise_deviations(&ordered);
    let mut report = PointReport {
        eps: p.eps,
        g: p.g,
        n_total: p.n_total,
        sites: p.sites,
        t_max: p.t_max,
        regime: (p.sites == 2).then(|| classify_regime(p.eps, p.g).label().to_string()),
        engines: outcomes,
        deviations,
        checks: Vec::new(),
        series,
    };
    report.checks = config
        .tolerances
        .iter()
        .map(|tol| {
            let observed = report.deviation(tol.engines[0], tol.engines[1], &tol.observable).map(|d| d.sup);
            ToleranceCheck {
                engines: tol.engines,
                observable: tol.observable.clone(),
                max_sup: tol.max_sup,
                observed,
                passed: observed.is_some_and(|d| d <= tol.max_sup),
            }
        })
        .collect();
    report
}

/// Run every engine at every sweep point, write one file per successful
/// series (plus a `.failed` marker per failed one) and `<name>_report.json`
/// into `out_dir`.
///
/// Sweep points are evaluated in parallel; files are written afterwards in
/// sweep order, so identical configurations give identical files.
pub fn run_experiment(config: &ExperimentConfig, out_dir: &Path) -> CliResult<ComparisonReport> {
    config.validate()?;
    let points = config.points();
    let mut reports: Vec<PointReport> = points.par_iter().map(|p| evaluate_point(config, p)).collect();
    std::fs::create_dir_all(out_dir).map_err(|source| CliError::Io { path: out_dir.to_path_buf(), source })?;
    let ext = config.output.format.extension();
    for (p, report) in points.iter().zip(reports.iter_mut()) {
        let stem = format!("{}_{}", config.name, p.label());
        for outcome in report.engines.iter_mut() {
            match outcome.status {
                EngineStatus::Ok => {
                    let file = format!("{stem}_{}.{ext}", outcome.engine);
                    write_series(&out_dir.join(&file), &report.series[&outcome.engine], config.output.format)?;
                    outcome.file = Some(file);
                }
                EngineStatus::Failed => {
                    let file = format!("{stem}_{}.failed", outcome.engine);
                    write_text(&out_dir.join(&file), outcome.error.as_deref().unwrap_or_default())?;
                    outcome.file = Some(file);
                }
            }
        }
    }
    let report = ComparisonReport::new(config.name.clone(), reports);
    write_text(&out_dir.join(format!("{}_report.json", config.name)), &report.to_json())?;
    Ok(report)
}

/// Human-readable summary, one line per point and comparison.
pub fn summarize(report: &ComparisonReport) -> String {
    let mut out = String::new();
    for p in &report.points {
        let regime = p.regime.as_deref().map(|r| format!(" [{r}]")).unwrap_or_default();
        out.push_str(&format!("g = {}, N = {}{regime}\n", p.g, p.n_total));
        for e in &p.engines {
            match &e.error {
                None => {
                    out.push_str(&format!("  {:<12} ok      {}\n", e.engine.name(), e.file.as_deref().unwrap_or("")))
                }
                Some(err) => out.push_str(&format!("  {:<12} FAILED  {err}\n", e.engine.name())),
            }
        }
        for d in &p.deviations {
            out.push_str(&format!("  {} vs {} {:<11} sup {:.3e}  rms {:.3e}\n", d.a, d.b, d.observable, d.sup, d.rms));
        }
        for c in &p.checks {
            let obs = c.observed.map(|v| format!("{v:.3e}")).unwrap_or_else(|| "n/a".into());
            let tag = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "  {tag} {} vs {} {}: {obs} (max {:e})\n",
                c.engines[0], c.engines[1], c.observable, c.max_sup
            ));
        }
    }
    out.push_str(if report.passed { "result: pass\n" } else { "result: FAIL\n" });
    out
}
