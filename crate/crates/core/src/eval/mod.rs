//! Downstream evaluation of stop lists.
//!
//! Each replicated task reduces to a set of named metrics in an
//! [`EvalReport`]; [`compare_runs`] then tallies, per candidate list, how
//! many metrics got better, worse or stayed the same against a baseline.

pub mod metrics;
pub mod nb;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;

pub use metrics::{
    auc, classification_metrics, ranking_metrics, roc_curve, ClassificationMetrics, RankedQueryResult,
    RankingMetrics, ScoredInstance,
};
pub use nb::{one_vs_rest, predict_nb, train_nb, BinaryNBModel, Prediction, DEFAULT_ALPHA};

use crate::{Error, Result};

/// Metric name to value.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EvalReport {
    pub metrics: BTreeMap<String, f64>,
}

impl EvalReport {
    pub fn insert(&mut self, name: impl Into<String>, value: f64) {
        self.metrics.insert(name.into(), value);
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.metrics.get(name).copied()
    }

    pub fn from_ranking(m: &RankingMetrics, k: usize) -> Self {
        let mut r = EvalReport::default();
        r.insert(format!("top@{k}"), m.top_k);
        r.insert(format!("mrr@{k}"), m.mrr);
        r.insert(format!("map@{k}"), m.map);
        r.insert(format!("mean_recall@{k}"), m.mean_recall);
        r
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("metric,value\n");
        for (k, v) in &self.metrics {
            let _ = writeln!(out, "{k},{v}");
        }
        out
    }

    pub fn to_table(&self) -> String {
        let width = self.metrics.keys().map(String::len).max().unwrap_or(0).max(6);
        let mut out = format!("{:<width$}  value\n", "metric");
        for (k, v) in &self.metrics {
            let _ = writeln!(out, "{k:<width$}  {v:.4}");
        }
        out
    }

    pub fn parse_csv(text: &str, origin: &Path) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(text.as_bytes());
        let mut report = EvalReport::default();
        for (idx, rec) in rdr.deserialize::<(String, f64)>().enumerate() {
            let line = idx + 2;
            let (name, value) = rec.map_err(|e| Error::malformed(origin, line, e.to_string()))?;
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::malformed(origin, line, format!("{name} = {value} is outside [0, 1]")));
            }
            if report.metrics.insert(name.clone(), value).is_some() {
                return Err(Error::malformed(origin, line, format!("metric {name:?} repeated")));
            }
        }
        Ok(report)
    }

    pub fn load_csv(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_csv(&text, path)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Better,
    Worse,
    Same,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ListComparison {
    pub list: String,
    pub outcomes: BTreeMap<String, Outcome>,
    pub better: usize,
    pub worse: usize,
    pub same: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ComparisonReport {
    pub rows: Vec<ListComparison>,
}

pub const DEFAULT_EPSILON: f64 = 0.0;

/// Classifies every metric of every candidate against `baseline`: better
/// above `baseline + epsilon`, worse below `baseline - epsilon`, otherwise
/// the same. Candidates keep their input order.
pub fn compare_runs(
    baseline: &EvalReport,
    candidates: &[(String, EvalReport)],
    epsilon: f64,
) -> Result<ComparisonReport> {
    if epsilon.is_nan() || epsilon < 0.0 {
        return Err(Error::InvalidArgument(format!("epsilon must be >= 0, got {epsilon}")));
    }
    let mut rows = Vec::with_capacity(candidates.len());
    for (name, cand) in candidates {
        if !cand.metrics.keys().eq(baseline.metrics.keys()) {
            let missing: Vec<_> = baseline.metrics.keys().filter(|k| !cand.metrics.contains_key(*k)).collect();
            let extra: Vec<_> = cand.metrics.keys().filter(|k| !baseline.metrics.contains_key(*k)).collect();
            return Err(Error::MetricKeyMismatch {
                list: name.clone(),
                detail: format!("missing {missing:?}, unexpected {extra:?}"),
            });
        }
        let mut row = ListComparison {
            list: name.clone(),
            outcomes: BTreeMap::new(),
            better: 0,
            worse: 0,
            same: 0,
        };
        for (metric, &base) in &baseline.metrics {
            let value = cand.metrics[metric];
            let outcome = if value > base + epsilon {
                row.better += 1;
                Outcome::Better
            } else if value < base - epsilon {
                row.worse += 1;
                Outcome::Worse
            } else {
                row.same += 1;
                Outcome::Same
            };
            row.outcomes.insert(metric.clone(), outcome);
        }
        rows.push(row);
    }
    Ok(ComparisonReport { rows })
}

impl ComparisonReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("list,better,worse,same\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{},{}", r.list, r.better, r.worse, r.same);
        }
        out
    }

    pub fn to_table(&self) -> String {
        let width = self.rows.iter().map(|r| r.list.len()).max().unwrap_or(0).max("Stop word list".len());
        let mut out = format!("{:<width$}  better  worse  same\n", "Stop word list");
        for r in &self.rows {
            let _ = writeln!(out, "{:<width$}  {:>6}  {:>5}  {:>4}", r.list, r.better, r.worse, r.same);
        }
        out
    }
}

fn read_jsonl<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let raw = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    raw.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(idx, l)| serde_json::from_str(l).map_err(|e| Error::malformed(path, idx + 1, e.to_string())))
        .collect()
}

/// Reads `{"query_id", "ranked", "relevant"}` lines.
pub fn read_ranked_results(path: impl AsRef<Path>) -> Result<Vec<RankedQueryResult>> {
    read_jsonl(path.as_ref())
}

/// Reads `{"id", "score", "label"}` lines.
pub fn read_scored_instances(path: impl AsRef<Path>) -> Result<Vec<ScoredInstance>> {
    read_jsonl(path.as_ref())
}
