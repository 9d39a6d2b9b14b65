//! Univariate time series and samples of them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A univariate time series: a non-empty sequence of finite values.
///
/// Both invariants are enforced at construction, so every downstream
/// computation can assume at least one element and no NaN/inf.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct TimeSeries(Vec<f64>);

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySeries);
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFiniteValue { index, value });
            }
        }
        Ok(TimeSeries(values))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false: the empty series is unrepresentable.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_values(self) -> Vec<f64> {
        self.0
    }

    /// Value at 1-based position `t` (warping paths address elements this way).
    pub fn at(&self, t: usize) -> f64 {
        self.0[t - 1]
    }
}

impl TryFrom<Vec<f64>> for TimeSeries {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        TimeSeries::new(values)
    }
}

impl From<TimeSeries> for Vec<f64> {
    fn from(series: TimeSeries) -> Vec<f64> {
        series.0
    }
}

impl AsRef<[f64]> for TimeSeries {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// A non-empty collection of time series, the unit every mean operates on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<TimeSeries>", into = "Vec<TimeSeries>")]
pub struct Sample(Vec<TimeSeries>);

impl Sample {
    pub fn new(members: Vec<TimeSeries>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptySample);
        }
        Ok(Sample(members))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn members(&self) -> &[TimeSeries] {
        &self.0
    }

    pub fn member(&self, index: usize) -> &TimeSeries {
        &self.0[index]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, TimeSeries> {
        self.0.iter()
    }

    pub fn into_members(self) -> Vec<TimeSeries> {
        self.0
    }

    /// Sample with member `index` removed. Errors if that would empty it.
    pub fn without(&self, index: usize) -> Result<Sample> {
        let mut members = self.0.clone();
        members.remove(index);
        Sample::new(members)
    }
}

impl TryFrom<Vec<TimeSeries>> for Sample {
    type Error = Error;

    fn try_from(members: Vec<TimeSeries>) -> Result<Self> {
        Sample::new(members)
    }
}

impl From<Sample> for Vec<TimeSeries> {
    fn from(sample: Sample) -> Vec<TimeSeries> {
        sample.0
    }
}

impl<'a> IntoIterator for &'a Sample {
    type Item = &'a TimeSeries;
    type IntoIter = std::slice::Iter<'a, TimeSeries>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}
