//! Per-trial records of the two experiments and their tabular summaries.
//!
//! JSON output serializes the full records at full precision, so a report
//! can be reloaded and re-summarized without loss. CSV output carries only
//! the per-dataset summary rows plus a pooled `total` row, with all floats
//! printed to six decimal places.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::EvalMethod;

/// An error percentage at or below this magnitude counts as exactly zero.
pub const ZERO_ERROR_TOLERANCE: f64 = 1e-9;

/// One pair trial: the sampled members, the three distances around the
/// exact mean, and the derived errors.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorrectnessRecord {
    pub trial: usize,
    pub x_index: usize,
    pub y_index: usize,
    pub d_x_y: f64,
    pub d_x_mu: f64,
    pub d_mu_y: f64,
    pub err_eq: f64,
    pub err_mid: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorrectnessDataset {
    pub dataset: String,
    pub records: Vec<CorrectnessRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorrectnessReport {
    pub datasets: Vec<CorrectnessDataset>,
}

/// Average, population standard deviation, and maximum of a set of values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricAggregate {
    pub avg: f64,
    pub std: f64,
    pub max: f64,
}

impl MetricAggregate {
    pub fn from_values<I: IntoIterator<Item = f64>>(values: I) -> MetricAggregate {
        let values: Vec<f64> = values.into_iter().collect();
        if values.is_empty() {
            return MetricAggregate {
                avg: 0.0,
                std: 0.0,
                max: 0.0,
            };
        }
        let n = values.len() as f64;
        let avg = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - avg) * (v - avg)).sum::<f64>() / n;
        let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        MetricAggregate {
            avg,
            std: var.sqrt(),
            max,
        }
    }
}

/// Summary row: zero counts and aggregates of both errors.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorrectnessSummary {
    pub dataset: String,
    pub n_eq: usize,
    pub n_mid: usize,
    pub eq: MetricAggregate,
    pub mid: MetricAggregate,
}

fn summarize_correctness<'a, I>(name: &str, records: I) -> CorrectnessSummary
where
    I: Iterator<Item = &'a CorrectnessRecord> + Clone,
{
    let n_eq = records
        .clone()
        .filter(|r| r.err_eq.abs() <= ZERO_ERROR_TOLERANCE)
        .count();
    let n_mid = records
        .clone()
        .filter(|r| r.err_mid.abs() <= ZERO_ERROR_TOLERANCE)
        .count();
    CorrectnessSummary {
        dataset: name.to_string(),
        n_eq,
        n_mid,
        eq: MetricAggregate::from_values(records.clone().map(|r| r.err_eq)),
        mid: MetricAggregate::from_values(records.map(|r| r.err_mid)),
    }
}

impl CorrectnessReport {
    /// One summary per dataset, in report order, then a pooled `total` row
    /// over all records.
    pub fn summaries(&self) -> Vec<CorrectnessSummary> {
        let mut rows: Vec<CorrectnessSummary> = self
            .datasets
            .iter()
            .map(|d| summarize_correctness(&d.dataset, d.records.iter()))
            .collect();
        rows.push(summarize_correctness(
            "total",
            self.datasets.iter().flat_map(|d| d.records.iter()),
        ));
        rows
    }

    pub fn to_csv_string(&self) -> String {
        let mut out =
            String::from("dataset,n_eq,n_mid,eq_avg,eq_std,eq_max,mid_avg,mid_std,mid_max\n");
        for s in self.summaries() {
            out.push_str(&format!(
                "{},{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}\n",
                s.dataset,
                s.n_eq,
                s.n_mid,
                s.eq.avg,
                s.eq.std,
                s.eq.max,
                s.mid.avg,
                s.mid.std,
                s.mid.max
            ));
        }
        out
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        write_text(path, &self.to_csv_string())
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        write_text(path, &self.to_json_string()?)
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<CorrectnessReport> {
        read_json(path)
    }
}

/// Result of testing one method's mean against the trial's reference set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MethodOutcome {
    pub method: EvalMethod,
    pub distances: [f64; 3],
    pub satisfied: [bool; 3],
    pub coherent: bool,
    pub frechet_value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// One triple trial: the sampled members, the reference radii, and every
/// requested method's outcome.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DriftoutRecord {
    pub trial: usize,
    pub indices: [usize; 3],
    pub radii: [f64; 3],
    pub outcomes: Vec<MethodOutcome>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DriftoutDataset {
    pub dataset: String,
    pub records: Vec<DriftoutRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DriftoutReport {
    pub methods: Vec<EvalMethod>,
    pub datasets: Vec<DriftoutDataset>,
}

/// Percentages of trials whose mean drifted out of the reference region,
/// aligned with the report's method list.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DriftoutSummary {
    pub dataset: String,
    pub driftout_pct: Vec<f64>,
}

fn driftout_pct<'a, I>(records: I, method: EvalMethod) -> f64
where
    I: Iterator<Item = &'a DriftoutRecord>,
{
    let mut total = 0usize;
    let mut drifted = 0usize;
    for record in records {
        if let Some(outcome) = record.outcomes.iter().find(|o| o.method == method) {
            total += 1;
            if !outcome.coherent {
                drifted += 1;
            }
        }
    }
    if total == 0 {
        0.0
    } else {
        100.0 * drifted as f64 / total as f64
    }
}

impl DriftoutReport {
    pub fn summaries(&self) -> Vec<DriftoutSummary> {
        let mut rows: Vec<DriftoutSummary> = self
            .datasets
            .iter()
            .map(|d| DriftoutSummary {
                dataset: d.dataset.clone(),
                driftout_pct: self
                    .methods
                    .iter()
                    .map(|&m| driftout_pct(d.records.iter(), m))
                    .collect(),
            })
            .collect();
        rows.push(DriftoutSummary {
            dataset: "total".to_string(),
            driftout_pct: self
                .methods
                .iter()
                .map(|&m| {
                    driftout_pct(self.datasets.iter().flat_map(|d| d.records.iter()), m)
                })
                .collect(),
        });
        rows
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("dataset");
        for m in &self.methods {
            out.push_str(&format!(",{m}_pct"));
        }
        out.push('\n');
        for s in self.summaries() {
            out.push_str(&s.dataset);
            for pct in &s.driftout_pct {
                out.push_str(&format!(",{pct:.6}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        write_text(path, &self.to_csv_string())
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        write_text(path, &self.to_json_string()?)
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<DriftoutReport> {
        read_json(path)
    }
}

fn write_text(path: impl AsRef<Path>, content: &str) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, content).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(serde_json::from_str(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(trial: usize, err_eq: f64, err_mid: f64) -> CorrectnessRecord {
        CorrectnessRecord {
            trial,
            x_index: 0,
            y_index: 1,
            d_x_y: 1.0,
            d_x_mu: 0.5,
            d_mu_y: 0.5,
            err_eq,
            err_mid,
        }
    }

    #[test]
    fn aggregates_by_hand() {
        let a = MetricAggregate::from_values([0.0, 2.0]);
        assert_eq!((a.avg, a.std, a.max), (1.0, 1.0, 2.0));
        let single = MetricAggregate::from_values([5.0]);
        assert_eq!((single.avg, single.std, single.max), (5.0, 0.0, 5.0));
        let empty = MetricAggregate::from_values([]);
        assert_eq!((empty.avg, empty.std, empty.max), (0.0, 0.0, 0.0));
    }

    #[test]
    fn correctness_csv_by_hand() {
        let report = CorrectnessReport {
            datasets: vec![
                CorrectnessDataset {
                    dataset: "alpha".to_string(),
                    records: vec![record(0, 0.0, 1.0), record(1, 10.0, 2.0)],
                },
                CorrectnessDataset {
                    dataset: "beta".to_string(),
                    records: vec![record(0, 20.0, 3.0)],
                },
            ],
        };
        // Pooled eq errors are (0, 10, 20): avg 10, population std sqrt(200/3).
        let expected = "\
dataset,n_eq,n_mid,eq_avg,eq_std,eq_max,mid_avg,mid_std,mid_max
alpha,1,0,5.000000,5.000000,10.000000,1.500000,0.500000,2.000000
beta,0,0,20.000000,0.000000,20.000000,3.000000,0.000000,3.000000
total,1,0,10.000000,8.164966,20.000000,2.000000,0.816497,3.000000
";
        assert_eq!(report.to_csv_string(), expected);
    }

    #[test]
    fn zero_counts_use_the_tolerance() {
        let report = CorrectnessReport {
            datasets: vec![CorrectnessDataset {
                dataset: "d".to_string(),
                records: vec![record(0, 5e-10, 2e-9), record(1, 1e-9, 0.0)],
            }],
        };
        let rows = report.summaries();
        assert_eq!(rows[0].n_eq, 2);
        assert_eq!(rows[0].n_mid, 1);
    }

    #[test]
    fn correctness_json_round_trips_exactly() {
        let report = CorrectnessReport {
            datasets: vec![CorrectnessDataset {
                dataset: "d".to_string(),
                records: vec![record(0, 1.0 / 3.0, 2.0 / 7.0)],
            }],
        };
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.json");
        report.write_json(&path).unwrap();
        let back = CorrectnessReport::from_json_file(&path).unwrap();
        let (a, b) = (&report.datasets[0].records[0], &back.datasets[0].records[0]);
        assert_eq!(a.err_eq.to_bits(), b.err_eq.to_bits());
        assert_eq!(a.err_mid.to_bits(), b.err_mid.to_bits());
        assert_eq!(report.to_csv_string(), back.to_csv_string());
    }

    fn outcome(method: EvalMethod, coherent: bool) -> MethodOutcome {
        MethodOutcome {
            method,
            distances: [1.0, 1.0, 1.0],
            satisfied: [coherent; 3],
            coherent,
            frechet_value: 3.0,
            iterations: 1,
            converged: false,
        }
    }

    #[test]
    fn driftout_csv_by_hand() {
        let records = [
            (true, true),
            (true, false),
            (true, false),
            (false, false),
        ];
        let report = DriftoutReport {
            methods: vec![EvalMethod::Dba, EvalMethod::Ssg],
            datasets: vec![DriftoutDataset {
                dataset: "synth".to_string(),
                records: records
                    .iter()
                    .enumerate()
                    .map(|(t, &(dba_ok, ssg_ok))| DriftoutRecord {
                        trial: t,
                        indices: [0, 1, 2],
                        radii: [1.0, 1.0, 1.0],
                        outcomes: vec![
                            outcome(EvalMethod::Dba, dba_ok),
                            outcome(EvalMethod::Ssg, ssg_ok),
                        ],
                    })
                    .collect(),
            }],
        };
        let expected = "\
dataset,dba_pct,ssg_pct
synth,25.000000,75.000000
total,25.000000,75.000000
";
        assert_eq!(report.to_csv_string(), expected);
    }

    #[test]
    fn driftout_json_round_trips() {
        let report = DriftoutReport {
            methods: vec![EvalMethod::Exact],
            datasets: vec![DriftoutDataset {
                dataset: "d".to_string(),
                records: vec![DriftoutRecord {
                    trial: 0,
                    indices: [2, 0, 1],
                    radii: [0.25, 0.5, 0.125],
                    outcomes: vec![outcome(EvalMethod::Exact, true)],
                }],
            }],
        };
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.json");
        report.write_json(&path).unwrap();
        let back = DriftoutReport::from_json_file(&path).unwrap();
        assert_eq!(back.methods, vec![EvalMethod::Exact]);
        assert_eq!(back.datasets[0].records[0].indices, [2, 0, 1]);
        assert_eq!(report.to_csv_string(), back.to_csv_string());
    }
}
