use std::collections::BTreeMap;

use bhlab::{Column, TrajectorySeries};
use serde::Serialize;

use crate::config::Engine;

/// Observables compared between engines when both provide them.
pub const COMPARED_OBSERVABLES: [&str; 4] = ["rho1", "n12_over_N", "q", "a"];

/// Sup-norm and RMS distance of one observable between two engines.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Deviation {
    pub a: Engine,
    pub b: Engine,
    pub observable: String,
    pub sup: f64,
    pub rms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EngineStatus {
    Ok,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EngineOutcome {
    pub engine: Engine,
    pub status: EngineStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ToleranceCheck {
    pub engines: [Engine; 2],
    pub observable: String,
    pub max_sup: f64,
    /// `None` when an engine failed or lacks the observable.
    pub observed: Option<f64>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PointReport {
    pub eps: f64,
    pub g: f64,
    pub n_total: u64,
    pub sites: usize,
    pub t_max: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regime: Option<String>,
    pub engines: Vec<EngineOutcome>,
    pub deviations: Vec<Deviation>,
    pub checks: Vec<ToleranceCheck>,
    #[serde(skip)]
    pub series: BTreeMap<Engine, TrajectorySeries>,
}

impl PointReport {
    /// Deviation between two engines, in either order.
    pub fn deviation(&self, a: Engine, b: Engine, observable: &str) -> Option<&Deviation> {
        self.deviations
            .iter()
            .find(|d| d.observable == observable && ((d.a == a && d.b == b) || (d.a == b && d.b == a)))
    }

    pub fn passed(&self) -> bool {
        self.engines.iter().all(|e| e.status == EngineStatus::Ok) && self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub name: String,
    pub passed: bool,
    pub points: Vec<PointReport>,
}

impl ComparisonReport {
    pub fn new(name: String, points: Vec<PointReport>) -> Self {
        let passed = points.iter().all(PointReport::passed);
        Self { name, passed, points }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes to JSON")
    }
}

/// Distances between every pair of series on their shared observables.
pub fn pairwise_deviations(series: &[(Engine, &TrajectorySeries)]) -> Vec<Deviation> {
    let mut out = Vec::new();
    for (i, (ea, sa)) in series.iter().enumerate() {
        for (eb, sb) in &series[i + 1..] {
            if sa.len() != sb.len() {
                continue;
            }
            for obs in COMPARED_OBSERVABLES {
                if let Some((sup, rms)) = distance(sa.get(obs), sb.get(obs)) {
                    out.push(Deviation { a: *ea, b: *eb, observable: obs.to_string(), sup, rms });
                }
            }
        }
    }
    out
}

fn distance(a: Option<&Column>, b: Option<&Column>) -> Option<(f64, f64)> {
    let diffs: Vec<f64> = match (a?, b?) {
        (Column::Real(x), Column::Real(y)) => x.iter().zip(y).map(|(p, q)| (p - q).abs()).collect(),
        (Column::Complex(x), Column::Complex(y)) => x.iter().zip(y).map(|(p, q)| (p - q).norm()).collect(),
        _ => return None,
    };
    if diffs.is_empty() {
        return None;
    }
    let sup = diffs.iter().cloned().fold(0.0, f64::max);
    let rms = (diffs.iter().map(|d| d * d).sum::<f64>() / diffs.len() as f64).sqrt();
    Some((sup, rms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(v: Vec<f64>) -> TrajectorySeries {
        let mut s = TrajectorySeries::new((0..v.len()).map(|k| k as f64).collect());
        s.push_real("rho1", v).unwrap();
        s
    }

    #[test]
    fn deviations_are_symmetric() {
        let a = series(vec![1.0, 0.5, 0.0]);
        let b = series(vec![1.0, 0.7, 0.3]);
        let ab = pairwise_deviations(&[(Engine::Ed, &a), (Engine::Gp, &b)]);
        let ba = pairwise_deviations(&[(Engine::Gp, &b), (Engine::Ed, &a)]);
        assert_eq!(ab[0].sup, ba[0].sup);
        assert_eq!(ab[0].rms, ba[0].rms);
        assert!((ab[0].sup - 0.3).abs() < 1e-15);
        assert!((ab[0].rms - (0.13f64 / 3.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn disjoint_observables_give_no_rows() {
        let a = series(vec![1.0]);
        let mut b = TrajectorySeries::new(vec![0.0]);
        b.push_real("envelope", vec![1.0]).unwrap();
        assert!(pairwise_deviations(&[(Engine::Ed, &a), (Engine::Envelope, &b)]).is_empty());
    }
}
