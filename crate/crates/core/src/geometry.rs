//! Geometric diagnostics: how mean-like a candidate series actually is.
//!
//! In Euclidean space the mean of two points is their midpoint: equidistant
//! from both, and the two half-distances add up to the full distance. Under
//! dynamic time warping neither property survives. The two relative errors
//! here quantify the failures, and reference sets turn the idea into a
//! membership test for means of three series.

use serde::{Deserialize, Serialize};

use crate::dtw::dtw_distance;
use crate::error::{Error, Result};
use crate::exact::{exact_mean_dp, DpGuard};
use crate::frechet::MeanResult;
use crate::series::{Sample, TimeSeries};

/// Tolerance added to reference radii when testing centrality, absorbing
/// float noise in distance computations.
pub const DEFAULT_CENTRALITY_TOLERANCE: f64 = 1e-9;

/// Relative equidistance error in percent: how far `mu` is from being
/// equally distant to `x` and `y`. Zero when both distances vanish.
pub fn err_eq(x: &TimeSeries, mu: &TimeSeries, y: &TimeSeries) -> f64 {
    err_eq_from_distances(dtw_distance(x, mu), dtw_distance(mu, y))
}

pub fn err_eq_from_distances(d_x_mu: f64, d_mu_y: f64) -> f64 {
    let denom = d_x_mu.max(d_mu_y);
    if denom == 0.0 {
        return 0.0;
    }
    100.0 * (d_x_mu - d_mu_y).abs() / denom
}

/// Relative midpoint error in percent: how badly the route through `mu`
/// violates additivity of distances between `x` and `y`. Zero when `x` and
/// `y` coincide; can exceed 100 when `mu` lies far off the direct path.
pub fn err_mid(x: &TimeSeries, mu: &TimeSeries, y: &TimeSeries) -> f64 {
    err_mid_from_distances(
        dtw_distance(x, y),
        dtw_distance(x, mu),
        dtw_distance(mu, y),
    )
}

pub fn err_mid_from_distances(d_x_y: f64, d_x_mu: f64, d_mu_y: f64) -> f64 {
    if d_x_y == 0.0 {
        return 0.0;
    }
    // The half-distances are summed before subtracting so that swapping the
    // roles of x and y cannot change even the last bit.
    100.0 * (d_x_y - (d_x_mu + d_mu_y)).abs() / d_x_y
}

/// Reference structure for a sample of three series: for each member, the
/// exact mean of the other two and its distance back to the left-out member.
/// A candidate mean of the full sample should not stray further from any
/// member than that member's reference mean does.
#[derive(Debug, Clone)]
pub struct ReferenceSet {
    sample: Sample,
    means: Vec<MeanResult>,
    radii: [f64; 3],
}

/// Computes the three leave-one-out means exactly.
pub fn build_reference_set(sample: &Sample, guard: &DpGuard) -> Result<ReferenceSet> {
    if sample.len() != 3 {
        return Err(Error::ReferenceSetSize(sample.len()));
    }
    let mut means = Vec::with_capacity(3);
    let mut radii = [0.0; 3];
    for (k, radius) in radii.iter_mut().enumerate() {
        let pair = sample.without(k)?;
        let mean = exact_mean_dp(&pair, guard)?;
        *radius = dtw_distance(&mean.mean, sample.member(k));
        means.push(mean);
    }
    Ok(ReferenceSet {
        sample: sample.clone(),
        means,
        radii,
    })
}

impl ReferenceSet {
    pub fn sample(&self) -> &Sample {
        &self.sample
    }

    /// Leave-one-out means; entry k is the exact mean of the sample without
    /// member k.
    pub fn means(&self) -> &[MeanResult] {
        &self.means
    }

    /// Entry k is the distance from reference mean k to member k.
    pub fn radii(&self) -> [f64; 3] {
        self.radii
    }
}

/// Outcome of testing one candidate against a reference set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CentralityReport {
    /// Distance from the candidate to each sample member.
    pub distances: [f64; 3],
    /// Reference radii the distances are compared against.
    pub radii: [f64; 3],
    /// Whether the candidate stays within each radius (plus tolerance).
    pub satisfied: [bool; 3],
    /// All three conditions hold.
    pub coherent: bool,
}

pub fn centrality_test(
    reference: &ReferenceSet,
    candidate: &TimeSeries,
    tolerance: f64,
) -> CentralityReport {
    let mut distances = [0.0; 3];
    let mut satisfied = [false; 3];
    for k in 0..3 {
        distances[k] = dtw_distance(candidate, reference.sample.member(k));
        satisfied[k] = distances[k] <= reference.radii[k] + tolerance;
    }
    CentralityReport {
        distances,
        radii: reference.radii,
        satisfied,
        coherent: satisfied.iter().all(|&s| s),
    }
}
