use std::path::Path;

use bhlab::TrajectorySeries;

use crate::config::OutputFormat;
use crate::error::{CliError, CliResult};

/// Shortest round-trip representation of a sample.
fn fmt(v: f64) -> String {
    format!("{v:?}")
}

/// Write a series as CSV with a leading `t` column, complex observables
/// split into `_re` and `_im` columns.
pub fn write_csv(path: &Path, s: &TrajectorySeries) -> CliResult<()> {
    let err = |e: csv::Error| CliError::Output { path: path.to_path_buf(), message: e.to_string() };
    let mut w = csv::Writer::from_path(path).map_err(err)?;
    let mut header = vec!["t".to_string()];
    header.extend(s.flat_header());
    w.write_record(&header).map_err(err)?;
    for (k, t) in s.times().iter().enumerate() {
        let mut row = vec![fmt(*t)];
        row.extend(s.flat_row(k).into_iter().map(fmt));
        w.write_record(&row).map_err(err)?;
    }
    w.flush().map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Write a series as a JSON object of named columns, same layout as the CSV.
pub fn write_json(path: &Path, s: &TrajectorySeries) -> CliResult<()> {
    let mut map = serde_json::Map::new();
    map.insert("t".into(), serde_json::json!(s.times()));
    let header = s.flat_header();
    for (j, name) in header.iter().enumerate() {
        let col: Vec<f64> = (0..s.len()).map(|k| s.flat_row(k)[j]).collect();
        map.insert(name.clone(), serde_json::json!(col));
    }
    let text = serde_json::to_string(&serde_json::Value::Object(map))
        .map_err(|e| CliError::Output { path: path.to_path_buf(), message: e.to_string() })?;
    write_text(path, &text)
}

pub fn write_series(path: &Path, s: &TrajectorySeries, format: OutputFormat) -> CliResult<()> {
    match format {
        OutputFormat::Csv => write_csv(path, s),
        OutputFormat::Json => write_json(path, s),
    }
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}
