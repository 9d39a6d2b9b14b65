//! Warping paths between two series and exhaustive path enumeration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A warping path of order `rows x cols`: a sequence of 1-based index pairs
/// from (1, 1) to (rows, cols) advancing by (1,0), (0,1) or (1,1) per step.
///
/// Validity is checked at construction; `points` is immutable afterwards.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WarpingPath {
    rows: usize,
    cols: usize,
    points: Vec<(usize, usize)>,
}

impl WarpingPath {
    pub fn new(rows: usize, cols: usize, points: Vec<(usize, usize)>) -> Result<Self> {
        let first = *points.first().ok_or(Error::EmptyPath)?;
        let last = *points.last().expect("non-empty");
        if first != (1, 1) || last != (rows, cols) {
            return Err(Error::PathBoundary {
                rows,
                cols,
                start_i: first.0,
                start_j: first.1,
                end_i: last.0,
                end_j: last.1,
            });
        }
        for w in points.windows(2) {
            let (a, b) = (w[0], w[1]);
            let di = b.0.wrapping_sub(a.0);
            let dj = b.1.wrapping_sub(a.1);
            if !matches!((di, dj), (1, 0) | (0, 1) | (1, 1)) {
                return Err(Error::PathStep {
                    from_i: a.0,
                    from_j: a.1,
                    to_i: b.0,
                    to_j: b.1,
                });
            }
        }
        Ok(WarpingPath { rows, cols, points })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn points(&self) -> &[(usize, usize)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Same path with every (i, j) flipped to (j, i).
    pub fn transposed(&self) -> WarpingPath {
        WarpingPath {
            rows: self.cols,
            cols: self.rows,
            points: self.points.iter().map(|&(i, j)| (j, i)).collect(),
        }
    }
}

/// Number of warping paths of order m x n (the Delannoy number D(m-1, n-1)).
///
/// Saturates at u128::MAX; callers treat that as "too many".
pub fn count_paths(m: usize, n: usize) -> u128 {
    // Row-by-row Delannoy recurrence: D(i,j) = D(i-1,j) + D(i,j-1) + D(i-1,j-1).
    let mut prev = vec![1u128; n];
    for _ in 1..m {
        let mut cur = vec![0u128; n];
        cur[0] = 1;
        for j in 1..n {
            cur[j] = cur[j - 1]
                .saturating_add(prev[j])
                .saturating_add(prev[j - 1]);
        }
        prev = cur;
    }
    prev[n - 1]
}

pub const DEFAULT_ENUMERATION_LIMIT: usize = 8;

/// All warping paths of order m x n, in depth-first step order
/// (at each point: down, right, then diagonal).
///
/// Path counts grow exponentially, so both lengths are capped at
/// [`DEFAULT_ENUMERATION_LIMIT`]; use [`enumerate_paths_bounded`] to override.
pub fn enumerate_paths(m: usize, n: usize) -> Result<Vec<WarpingPath>> {
    enumerate_paths_bounded(m, n, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_paths_bounded(m: usize, n: usize, max_len: usize) -> Result<Vec<WarpingPath>> {
    if m == 0 || n == 0 {
        return Err(Error::EmptySeries);
    }
    if m > max_len || n > max_len {
        return Err(Error::GuardExceeded {
            context: format!("path enumeration for order {m}x{n}"),
            limit: max_len as u64,
            actual: m.max(n) as u64,
        });
    }
    let mut paths = Vec::new();
    let mut prefix = vec![(1usize, 1usize)];
    extend(m, n, &mut prefix, &mut paths);
    Ok(paths)
}

fn extend(m: usize, n: usize, prefix: &mut Vec<(usize, usize)>, out: &mut Vec<WarpingPath>) {
    let (i, j) = *prefix.last().expect("prefix starts at (1, 1)");
    if (i, j) == (m, n) {
        out.push(WarpingPath {
            rows: m,
            cols: n,
            points: prefix.clone(),
        });
        return;
    }
    for (di, dj) in [(1, 0), (0, 1), (1, 1)] {
        let (ni, nj) = (i + di, j + dj);
        if ni <= m && nj <= n {
            prefix.push((ni, nj));
            extend(m, n, prefix, out);
            prefix.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_and_step_validation() {
        assert!(matches!(
            WarpingPath::new(2, 2, vec![]),
            Err(Error::EmptyPath)
        ));
        assert!(matches!(
            WarpingPath::new(2, 2, vec![(1, 1), (2, 1)]),
            Err(Error::PathBoundary { .. })
        ));
        assert!(matches!(
            WarpingPath::new(3, 3, vec![(1, 1), (3, 3)]),
            Err(Error::PathStep { .. })
        ));
        // Backwards step wraps around and is rejected.
        assert!(matches!(
            WarpingPath::new(2, 2, vec![(1, 1), (2, 2), (1, 2), (2, 2)]),
            Err(Error::PathStep { .. })
        ));
        let p = WarpingPath::new(2, 3, vec![(1, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(p.len(), 3);
    }

    #[test]
    fn path_length_bounds() {
        // Any valid m x n path has between max(m, n) and m + n - 1 points.
        for p in enumerate_paths(3, 4).unwrap() {
            assert!(p.len() >= 4 && p.len() <= 6);
        }
    }

    #[test]
    fn delannoy_counts() {
        assert_eq!(count_paths(1, 1), 1);
        assert_eq!(count_paths(2, 2), 3);
        assert_eq!(count_paths(3, 2), 5);
        assert_eq!(count_paths(2, 3), 5);
        assert_eq!(count_paths(3, 3), 13);
        assert_eq!(count_paths(1, 7), 1);
    }

    #[test]
    fn enumeration_matches_count() {
        for m in 1..=4 {
            for n in 1..=4 {
                let paths = enumerate_paths(m, n).unwrap();
                assert_eq!(paths.len() as u128, count_paths(m, n), "order {m}x{n}");
                // No duplicates.
                let mut seen = std::collections::HashSet::new();
                for p in &paths {
                    assert!(seen.insert(p.points().to_vec()));
                }
            }
        }
    }

    #[test]
    fn enumeration_guard() {
        assert!(matches!(
            enumerate_paths(9, 2),
            Err(Error::GuardExceeded { .. })
        ));
        assert!(enumerate_paths_bounded(9, 2, 9).is_ok());
    }

    #[test]
    fn transpose_round_trips() {
        for p in enumerate_paths(3, 2).unwrap() {
            let t = p.transposed();
            assert_eq!(t.rows(), 2);
            assert_eq!(t.cols(), 3);
            assert_eq!(t.transposed(), p);
        }
    }
}
