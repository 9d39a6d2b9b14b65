//! The two experiments: midpoint correctness on pairs and drift-out on
//! triples. Trials are seeded individually from the master seed, the dataset
//! name, and the trial index, then run in parallel; results are collected in
//! trial order, so reports do not depend on the number of worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::data::{sample_distinct_indices, splitmix64, trial_seed, Dataset};
use crate::dtw::dtw_distance;
use crate::error::{Error, Result};
use crate::exact::{exact_mean_dp, DpGuard};
use crate::geometry::{
    build_reference_set, centrality_test, err_eq_from_distances, err_mid_from_distances,
    DEFAULT_CENTRALITY_TOLERANCE,
};
use crate::heuristics::{dba, ssg, HeuristicConfig};
use crate::report::{
    CorrectnessDataset, CorrectnessRecord, CorrectnessReport, DriftoutDataset, DriftoutRecord,
    DriftoutReport, MethodOutcome,
};

/// Decorrelates the per-trial heuristic seed from the tuple-drawing seed.
const HEURISTIC_SEED_SALT: u64 = 0x6865_7572_6973_7469;

/// Mean algorithms selectable in the drift-out experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalMethod {
    Dba,
    Ssg,
    Exact,
}

impl std::fmt::Display for EvalMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EvalMethod::Dba => "dba",
            EvalMethod::Ssg => "ssg",
            EvalMethod::Exact => "exact",
        })
    }
}

impl std::str::FromStr for EvalMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<EvalMethod> {
        match s {
            "dba" => Ok(EvalMethod::Dba),
            "ssg" => Ok(EvalMethod::Ssg),
            "exact" => Ok(EvalMethod::Exact),
            other => Err(Error::InvalidConfig(format!(
                "unknown method '{other}', expected dba, ssg, or exact"
            ))),
        }
    }
}

pub const CANONICAL_METHOD_ORDER: [EvalMethod; 3] =
    [EvalMethod::Dba, EvalMethod::Ssg, EvalMethod::Exact];

/// Deduplicates and orders requested methods as dba, ssg, exact.
pub fn normalize_methods(requested: &[EvalMethod]) -> Result<Vec<EvalMethod>> {
    if requested.is_empty() {
        return Err(Error::InvalidConfig(
            "at least one method is required".to_string(),
        ));
    }
    Ok(CANONICAL_METHOD_ORDER
        .iter()
        .copied()
        .filter(|m| requested.contains(m))
        .collect())
}

fn combinations(n: usize, k: usize) -> u64 {
    let n = n as u128;
    let c = match k {
        2 => n * n.saturating_sub(1) / 2,
        3 => n * n.saturating_sub(1) * n.saturating_sub(2) / 6,
        _ => unreachable!("tuple sizes are 2 or 3"),
    };
    c.min(u64::MAX as u128) as u64
}

#[derive(Debug, Clone)]
pub struct CorrectnessOptions {
    pub trials: usize,
    pub seed: u64,
    pub guard: DpGuard,
}

impl Default for CorrectnessOptions {
    fn default() -> Self {
        CorrectnessOptions {
            trials: 100,
            seed: 0,
            guard: DpGuard::default(),
        }
    }
}

/// For each dataset, repeatedly samples a pair, computes its exact mean, and
/// records how far the mean is from an honest metric midpoint.
pub fn correctness_eval(
    datasets: &[Dataset],
    opts: &CorrectnessOptions,
) -> Result<CorrectnessReport> {
    if datasets.is_empty() {
        return Err(Error::InvalidConfig(
            "at least one dataset is required".to_string(),
        ));
    }
    if opts.trials == 0 {
        return Err(Error::InvalidConfig(
            "trials must be at least 1".to_string(),
        ));
    }
    let mut out = Vec::with_capacity(datasets.len());
    for ds in datasets {
        if ds.len() < 2 {
            return Err(Error::DatasetTooSmall {
                name: ds.name.clone(),
                len: ds.len(),
                need: 2,
            });
        }
        if ds.max_length() > opts.guard.max_len_pair {
            return Err(Error::GuardExceeded {
                context: format!("dataset '{}' series length for pair means", ds.name),
                limit: opts.guard.max_len_pair as u64,
                actual: ds.max_length() as u64,
            });
        }
        let available = combinations(ds.len(), 2);
        if opts.trials as u64 > available {
            return Err(Error::TooManyTrials {
                name: ds.name.clone(),
                trials: opts.trials,
                available,
                tuple_size: 2,
            });
        }
        let records: Result<Vec<CorrectnessRecord>> = (0..opts.trials)
            .into_par_iter()
            .map(|t| {
                let mut rng =
                    ChaCha12Rng::seed_from_u64(trial_seed(opts.seed, &ds.name, t as u64));
                let idx = sample_distinct_indices(&mut rng, ds.len(), 2);
                let pair = ds.sample_from_indices(&idx)?;
                let mean = exact_mean_dp(&pair, &opts.guard)?;
                let (x, y) = (pair.member(0), pair.member(1));
                let d_x_y = dtw_distance(x, y);
                let d_x_mu = dtw_distance(x, &mean.mean);
                let d_mu_y = dtw_distance(&mean.mean, y);
                Ok(CorrectnessRecord {
                    trial: t,
                    x_index: idx[0],
                    y_index: idx[1],
                    d_x_y,
                    d_x_mu,
                    d_mu_y,
                    err_eq: err_eq_from_distances(d_x_mu, d_mu_y),
                    err_mid: err_mid_from_distances(d_x_y, d_x_mu, d_mu_y),
                })
            })
            .collect();
        out.push(CorrectnessDataset {
            dataset: ds.name.clone(),
            records: records?,
        });
    }
    Ok(CorrectnessReport { datasets: out })
}

#[derive(Debug, Clone)]
pub struct DriftoutOptions {
    pub trials: usize,
    pub seed: u64,
    pub methods: Vec<EvalMethod>,
    pub heuristic: HeuristicConfig,
    pub tolerance: f64,
    pub guard: DpGuard,
}

impl Default for DriftoutOptions {
    fn default() -> Self {
        DriftoutOptions {
            trials: 50,
            seed: 0,
            methods: vec![EvalMethod::Dba, EvalMethod::Ssg],
            heuristic: HeuristicConfig::default(),
            tolerance: DEFAULT_CENTRALITY_TOLERANCE,
            guard: DpGuard::default(),
        }
    }
}

/// For each dataset, repeatedly samples a triple, builds its exact reference
/// set, and tests each requested method's mean for membership in the central
/// region.
pub fn driftout_eval(datasets: &[Dataset], opts: &DriftoutOptions) -> Result<DriftoutReport> {
    if datasets.is_empty() {
        return Err(Error::InvalidConfig(
            "at least one dataset is required".to_string(),
        ));
    }
    if opts.trials == 0 {
        return Err(Error::InvalidConfig(
            "trials must be at least 1".to_string(),
        ));
    }
    opts.heuristic.validate()?;
    let methods = normalize_methods(&opts.methods)?;
    let mut out = Vec::with_capacity(datasets.len());
    for ds in datasets {
        if ds.len() < 3 {
            return Err(Error::DatasetTooSmall {
                name: ds.name.clone(),
                len: ds.len(),
                need: 3,
            });
        }
        if ds.max_length() > opts.guard.max_len_pair {
            return Err(Error::GuardExceeded {
                context: format!("dataset '{}' series length for reference means", ds.name),
                limit: opts.guard.max_len_pair as u64,
                actual: ds.max_length() as u64,
            });
        }
        if methods.contains(&EvalMethod::Exact) && ds.max_length() > opts.guard.max_len_triple {
            return Err(Error::GuardExceeded {
                context: format!("dataset '{}' series length for exact triple means", ds.name),
                limit: opts.guard.max_len_triple as u64,
                actual: ds.max_length() as u64,
            });
        }
        let available = combinations(ds.len(), 3);
        if opts.trials as u64 > available {
            return Err(Error::TooManyTrials {
                name: ds.name.clone(),
                trials: opts.trials,
                available,
                tuple_size: 3,
            });
        }
        let records: Result<Vec<DriftoutRecord>> = (0..opts.trials)
            .into_par_iter()
            .map(|t| {
                let seed = trial_seed(opts.seed, &ds.name, t as u64);
                let mut rng = ChaCha12Rng::seed_from_u64(seed);
                let idx = sample_distinct_indices(&mut rng, ds.len(), 3);
                let triple = ds.sample_from_indices(&idx)?;
                let reference = build_reference_set(&triple, &opts.guard)?;
                let mut outcomes = Vec::with_capacity(methods.len());
                for &method in &methods {
                    let result = match method {
                        EvalMethod::Dba | EvalMethod::Ssg => {
                            let mut cfg = opts.heuristic.clone();
                            cfg.seed = splitmix64(seed ^ HEURISTIC_SEED_SALT);
                            if method == EvalMethod::Dba {
                                dba(&triple, &cfg)?
                            } else {
                                ssg(&triple, &cfg)?
                            }
                        }
                        EvalMethod::Exact => exact_mean_dp(&triple, &opts.guard)?,
                    };
                    let centrality = centrality_test(&reference, &result.mean, opts.tolerance);
                    outcomes.push(MethodOutcome {
                        method,
                        distances: centrality.distances,
                        satisfied: centrality.satisfied,
                        coherent: centrality.coherent,
                        frechet_value: result.frechet_value,
                        iterations: result.iterations,
                        converged: result.converged,
                    });
                }
                Ok(DriftoutRecord {
                    trial: t,
                    indices: [idx[0], idx[1], idx[2]],
                    radii: reference.radii(),
                    outcomes,
                })
            })
            .collect();
        out.push(DriftoutDataset {
            dataset: ds.name.clone(),
            records: records?,
        });
    }
    Ok(DriftoutReport {
        methods,
        datasets: out,
    })
}
