//! Heuristic mean algorithms for samples of any size.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::dtw::dtw;
use crate::error::{Error, Result};
use crate::frechet::{block_cost, frechet, MeanMethod, MeanResult};
use crate::series::{Sample, TimeSeries};

/// Initial mean estimate for the iterative algorithms.
#[derive(Debug, Clone)]
pub enum Init {
    /// The sample member with minimal Frechet value.
    Medoid,
    /// A specific sample member.
    Member(usize),
    /// An explicit starting series (fixes the mean length).
    Series(TimeSeries),
}

/// Shared configuration for [`dba`] and [`ssg`].
///
/// `eta0` and `eta1` are the first and last subgradient step sizes; the
/// schedule between them is linear. `tolerance` bounds the per-iteration
/// Frechet decrease below which DBA reports convergence.
#[derive(Debug, Clone)]
pub struct HeuristicConfig {
    pub max_iterations: usize,
    pub eta0: f64,
    pub eta1: f64,
    pub tolerance: f64,
    pub seed: u64,
    pub init: Init,
}

impl Default for HeuristicConfig {
    fn default() -> Self {
        HeuristicConfig {
            max_iterations: 200,
            eta0: 0.2,
            eta1: 0.02,
            tolerance: 1e-12,
            seed: 0,
            init: Init::Medoid,
        }
    }
}

impl HeuristicConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig(
                "max_iterations must be at least 1".to_string(),
            ));
        }
        if !self.eta0.is_finite() || !self.eta1.is_finite() || self.eta0 < 0.0 || self.eta1 < 0.0 {
            return Err(Error::InvalidConfig(
                "step sizes must be finite and non-negative".to_string(),
            ));
        }
        if self.eta1 > self.eta0 {
            return Err(Error::InvalidConfig(format!(
                "step sizes must not increase, got eta0 = {} < eta1 = {}",
                self.eta0, self.eta1
            )));
        }
        if !self.tolerance.is_finite() || self.tolerance < 0.0 {
            return Err(Error::InvalidConfig(
                "tolerance must be finite and non-negative".to_string(),
            ));
        }
        Ok(())
    }
}

/// Index and Frechet value of the sample member minimizing the Frechet
/// function; ties go to the smallest index.
pub fn medoid(sample: &Sample) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (i, member) in sample.iter().enumerate() {
        let f = frechet(sample, member);
        if f < best.1 {
            best = (i, f);
        }
    }
    best
}

fn resolve_init(sample: &Sample, init: &Init) -> Result<TimeSeries> {
    match init {
        Init::Medoid => Ok(sample.member(medoid(sample).0).clone()),
        Init::Member(i) => {
            if *i >= sample.len() {
                return Err(Error::InvalidConfig(format!(
                    "initial member index {} out of range for sample of {}",
                    i,
                    sample.len()
                )));
            }
            Ok(sample.member(*i).clone())
        }
        Init::Series(z) => Ok(z.clone()),
    }
}

/// DTW barycenter averaging. Each iteration aligns the current estimate with
/// every member and replaces each mean position by the average of the sample
/// elements matched there, which never increases the Frechet value. Stops
/// early once an iteration improves the value by at most `tolerance` or
/// reproduces the previous iteration's matched multisets. The mean length is
/// fixed by the initializer.
pub fn dba(sample: &Sample, config: &HeuristicConfig) -> Result<MeanResult> {
    config.validate()?;
    let mut z = resolve_init(sample, &config.init)?;
    let mut prev_multisets: Option<Vec<Vec<f64>>> = None;
    let mut iterations = 0;
    let mut converged = false;

    while iterations < config.max_iterations {
        let mut f_old = 0.0;
        let mut multisets: Vec<Vec<f64>> = vec![Vec::new(); z.len()];
        for member in sample {
            let (dist, path) = dtw(&z, member);
            f_old += dist * dist;
            for &(t, l) in path.points() {
                multisets[t - 1].push(member.at(l));
            }
        }
        for values in &mut multisets {
            values.sort_by(f64::total_cmp);
        }

        let mut new_values = Vec::with_capacity(z.len());
        let mut updated_cost = 0.0;
        for values in &multisets {
            let (mu, cost) = block_cost(values);
            new_values.push(mu);
            updated_cost += cost;
        }
        z = TimeSeries::new(new_values).expect("means of finite values are finite");
        iterations += 1;

        if f_old - updated_cost <= config.tolerance {
            converged = true;
            break;
        }
        if prev_multisets.as_ref() == Some(&multisets) {
            converged = true;
            break;
        }
        prev_multisets = Some(multisets);
    }

    let mut frechet_value = 0.0;
    let mut alignment = Vec::with_capacity(sample.len());
    for member in sample {
        let (dist, path) = dtw(&z, member);
        frechet_value += dist * dist;
        alignment.push(path);
    }
    Ok(MeanResult {
        mean: z,
        frechet_value,
        method: MeanMethod::Dba,
        iterations,
        converged,
        alignment: Some(alignment),
    })
}

/// Stochastic subgradient descent on the Frechet function. Each step aligns
/// the estimate with one member, chosen by cycling through a fresh random
/// permutation every pass over the sample, and moves against the subgradient
/// of the corresponding squared-distance term under a linearly decaying step
/// size. Returns the best estimate seen, the initializer included; `converged`
/// is always false because no stopping test is applied.
pub fn ssg(sample: &Sample, config: &HeuristicConfig) -> Result<MeanResult> {
    config.validate()?;
    let init = resolve_init(sample, &config.init)?;
    let mut best_f = frechet(sample, &init);
    let mut best_z = init.clone();
    let mut z = init.into_values();

    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
    let mut order: Vec<usize> = (0..sample.len()).collect();
    let mut cursor = order.len();

    for t in 0..config.max_iterations {
        if cursor == order.len() {
            order.shuffle(&mut rng);
            cursor = 0;
        }
        let member = sample.member(order[cursor]);
        cursor += 1;

        let current = TimeSeries::new(z.clone())?;
        let (_, path) = dtw(&current, member);
        let eta = if config.max_iterations == 1 {
            config.eta0
        } else {
            let frac = t as f64 / (config.max_iterations - 1) as f64;
            config.eta0 + (config.eta1 - config.eta0) * frac
        };
        let mut grad = vec![0.0; z.len()];
        for &(a, b) in path.points() {
            grad[a - 1] += 2.0 * (z[a - 1] - member.at(b));
        }
        for (zv, g) in z.iter_mut().zip(&grad) {
            *zv -= eta * g;
        }

        let candidate = TimeSeries::new(z.clone())?;
        let f = frechet(sample, &candidate);
        if f < best_f {
            best_f = f;
            best_z = candidate;
        }
    }

    Ok(MeanResult {
        mean: best_z,
        frechet_value: best_f,
        method: MeanMethod::Ssg,
        iterations: config.max_iterations,
        converged: false,
        alignment: None,
    })
}
