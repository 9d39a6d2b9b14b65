//! Dataset loading, generation, and deterministic seeding helpers.
//!
//! The on-disk format is the UCR archive layout: one series per line, the
//! class label first, then the observations, separated by a comma, a tab, or
//! runs of spaces (detected from the first line). All rows of a file must
//! have the same length.

use std::fmt::Write as _;
use std::io::{BufRead, BufReader};
use std::path::Path;

use rand::distributions::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{Sample, TimeSeries};

/// One row of a dataset: its class label and the series itself.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledSeries {
    pub label: String,
    pub data: TimeSeries,
}

/// A named collection of labeled series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub name: String,
    pub series: Vec<LabeledSeries>,
}

impl Dataset {
    pub fn len(&self) -> usize {
        self.series.len()
    }

    pub fn is_empty(&self) -> bool {
        self.series.is_empty()
    }

    /// Common series length, if every row has the same one.
    pub fn uniform_length(&self) -> Option<usize> {
        let first = self.series.first()?.data.len();
        self.series
            .iter()
            .all(|s| s.data.len() == first)
            .then_some(first)
    }

    pub fn max_length(&self) -> usize {
        self.series.iter().map(|s| s.data.len()).max().unwrap_or(0)
    }

    /// The rows at `indices`, in order, as a sample.
    pub fn sample_from_indices(&self, indices: &[usize]) -> Result<Sample> {
        Sample::new(
            indices
                .iter()
                .map(|&i| self.series[i].data.clone())
                .collect(),
        )
    }

    /// Every series z-normalized in place; see [`znormalize`].
    pub fn znormalized(&self) -> Dataset {
        Dataset {
            name: self.name.clone(),
            series: self
                .series
                .iter()
                .map(|s| LabeledSeries {
                    label: s.label.clone(),
                    data: znormalize(&s.data),
                })
                .collect(),
        }
    }
}

/// Centers a series and scales it to unit variance. A constant series has
/// nothing to scale, so it is only centered.
pub fn znormalize(series: &TimeSeries) -> TimeSeries {
    let values = series.values();
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    let sd = var.sqrt();
    let normalized: Vec<f64> = if sd > 0.0 {
        values.iter().map(|v| (v - mean) / sd).collect()
    } else {
        values.iter().map(|v| v - mean).collect()
    };
    TimeSeries::new(normalized).expect("normalizing finite values stays finite")
}

fn detect_separator(line: &str) -> char {
    if line.contains('\t') {
        '\t'
    } else if line.contains(',') {
        ','
    } else {
        ' '
    }
}

/// Loads a UCR-format file. The dataset is named after the file stem.
pub fn load_ucr(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: display.clone(),
        source,
    })?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| display.clone());

    let mut series = Vec::new();
    let mut expected_len: Option<usize> = None;
    let mut separator = None;
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|source| Error::Io {
            path: display.clone(),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let sep = *separator.get_or_insert_with(|| detect_separator(&line));
        let mut fields = line
            .split(sep)
            .map(str::trim)
            .filter(|f| !f.is_empty());
        let label = fields
            .next()
            .ok_or_else(|| Error::Parse {
                file: display.clone(),
                line: line_no,
                message: "row has no fields".to_string(),
            })?
            .to_string();
        let mut values = Vec::new();
        for field in fields {
            let value: f64 = field.parse().map_err(|_| Error::Parse {
                file: display.clone(),
                line: line_no,
                message: format!("cannot parse '{field}' as a number"),
            })?;
            if !value.is_finite() {
                return Err(Error::Parse {
                    file: display.clone(),
                    line: line_no,
                    message: format!("non-finite value '{field}'"),
                });
            }
            values.push(value);
        }
        if values.is_empty() {
            return Err(Error::Parse {
                file: display.clone(),
                line: line_no,
                message: "row has a label but no observations".to_string(),
            });
        }
        match expected_len {
            None => expected_len = Some(values.len()),
            Some(expected) if expected != values.len() => {
                return Err(Error::Parse {
                    file: display.clone(),
                    line: line_no,
                    message: format!(
                        "row has {} observations, expected {expected}",
                        values.len()
                    ),
                });
            }
            _ => {}
        }
        series.push(LabeledSeries {
            label,
            data: TimeSeries::new(values).expect("validated above"),
        });
    }
    if series.is_empty() {
        return Err(Error::DatasetTooSmall {
            name,
            len: 0,
            need: 1,
        });
    }
    Ok(Dataset { name, series })
}

/// A dataset rendered in comma-separated UCR format. Values are printed with
/// the shortest representation that parses back to the same float, so a
/// write/load round trip is exact.
pub fn ucr_string(dataset: &Dataset) -> String {
    let mut out = String::new();
    for row in &dataset.series {
        out.push_str(&row.label);
        for v in row.data.values() {
            let _ = write!(out, ",{v}");
        }
        out.push('\n');
    }
    out
}

/// Writes a dataset in comma-separated UCR format; see [`ucr_string`].
pub fn write_ucr(dataset: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, ucr_string(dataset)).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// FNV-1a hash of a byte string, the name half of deterministic seeding.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// SplitMix64 finalizer; a cheap avalanche for combining seed components.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for one trial, mixing the master seed, the dataset name, and the
/// trial index. Trials are independent of each other and of evaluation
/// order, so runs parallelize without changing results.
pub fn trial_seed(master: u64, dataset_name: &str, trial: u64) -> u64 {
    let base = splitmix64(master ^ fnv1a64(dataset_name.as_bytes()));
    splitmix64(base ^ trial)
}

/// `count` distinct indices below `len`, drawn in order by rejection.
pub fn sample_distinct_indices(
    rng: &mut impl Rng,
    len: usize,
    count: usize,
) -> Vec<usize> {
    assert!(count <= len, "cannot draw {count} distinct indices from {len}");
    let mut picked = Vec::with_capacity(count);
    while picked.len() < count {
        let candidate = rng.gen_range(0..len);
        if !picked.contains(&candidate) {
            picked.push(candidate);
        }
    }
    picked
}

/// A dataset of Gaussian random walks: standard-normal increments starting
/// from a standard-normal value. Deterministic in `name` and `seed`.
pub fn synthetic_random_walks(
    name: &str,
    count: usize,
    length: usize,
    seed: u64,
) -> Result<Dataset> {
    if count == 0 || length == 0 {
        return Err(Error::InvalidConfig(
            "synthetic datasets need at least one series and one observation".to_string(),
        ));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(splitmix64(seed ^ fnv1a64(name.as_bytes())));
    let mut series = Vec::with_capacity(count);
    for i in 0..count {
        let mut values = Vec::with_capacity(length);
        let mut level = 0.0;
        for _ in 0..length {
            let step: f64 = StandardNormal.sample(&mut rng);
            level += step;
            values.push(level);
        }
        series.push(LabeledSeries {
            label: (i % 2 + 1).to_string(),
            data: TimeSeries::new(values).expect("normal draws are finite"),
        });
    }
    Ok(Dataset {
        name: name.to_string(),
        series,
    })
}
