//! Time series averaging under dynamic time warping.
//!
//! The crate computes exact Frechet means of two or three series by dynamic
//! programming, heuristic means of arbitrary samples (DBA and stochastic
//! subgradient descent), and the geometric diagnostics used to compare them:
//! metric-midpoint errors and cluster-centrality tests. Two batch
//! experiments, [`correctness_eval`] and [`driftout_eval`], run those
//! diagnostics over datasets and produce CSV or JSON reports.

mod data;
mod dtw;
mod error;
mod eval;
mod exact;
mod frechet;
mod geometry;
mod heuristics;
mod path;
mod report;
mod series;

pub use data::{
    fnv1a64, load_ucr, sample_distinct_indices, splitmix64, synthetic_random_walks, trial_seed,
    ucr_string, write_ucr, znormalize, Dataset, LabeledSeries,
};
pub use dtw::{cost_of_path, dtw, dtw_bruteforce, dtw_distance};
pub use error::{Error, Result};
pub use eval::{
    correctness_eval, driftout_eval, normalize_methods, CorrectnessOptions, DriftoutOptions,
    EvalMethod, CANONICAL_METHOD_ORDER,
};
pub use exact::{exact_mean_bruteforce, exact_mean_dp, BruteforceGuard, DpGuard};
pub use frechet::{block_cost, frechet, MeanMethod, MeanResult};
pub use geometry::{
    build_reference_set, centrality_test, err_eq, err_eq_from_distances, err_mid,
    err_mid_from_distances, CentralityReport, ReferenceSet, DEFAULT_CENTRALITY_TOLERANCE,
};
pub use heuristics::{dba, medoid, ssg, HeuristicConfig, Init};
pub use path::{
    count_paths, enumerate_paths, enumerate_paths_bounded, WarpingPath,
    DEFAULT_ENUMERATION_LIMIT,
};
pub use report::{
    CorrectnessDataset, CorrectnessRecord, CorrectnessReport, CorrectnessSummary,
    DriftoutDataset, DriftoutRecord, DriftoutReport, DriftoutSummary, MethodOutcome,
    MetricAggregate, ZERO_ERROR_TOLERANCE,
};
pub use series::{Sample, TimeSeries};
