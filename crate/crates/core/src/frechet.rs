//! The Frechet function and the result type shared by all mean algorithms.

use serde::{Deserialize, Serialize};

use crate::dtw::dtw_distance;
use crate::path::WarpingPath;
use crate::series::{Sample, TimeSeries};

/// Frechet function: sum of squared DTW distances from `z` to each member.
pub fn frechet(sample: &Sample, z: &TimeSeries) -> f64 {
    sample
        .iter()
        .map(|x| {
            let d = dtw_distance(z, x);
            d * d
        })
        .sum()
}

/// Optimal single value for a block of matched sample elements: its mean,
/// together with the summed squared deviation from that mean.
pub fn block_cost(values: &[f64]) -> (f64, f64) {
    assert!(!values.is_empty(), "block must contain at least one value");
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let cost = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (mean, cost)
}

/// Which algorithm produced a mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeanMethod {
    ExactDp,
    ExactBruteforce,
    Dba,
    Ssg,
}

impl std::fmt::Display for MeanMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            MeanMethod::ExactDp => "exact-dp",
            MeanMethod::ExactBruteforce => "exact-bruteforce",
            MeanMethod::Dba => "dba",
            MeanMethod::Ssg => "ssg",
        };
        f.write_str(name)
    }
}

/// A computed mean plus diagnostics.
///
/// `alignment`, when present, holds one warping path per sample member
/// certifying the reported Frechet value: path `j` aligns the mean (rows)
/// with member `j` (columns).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeanResult {
    pub mean: TimeSeries,
    pub frechet_value: f64,
    pub method: MeanMethod,
    pub iterations: usize,
    pub converged: bool,
    pub alignment: Option<Vec<WarpingPath>>,
}
