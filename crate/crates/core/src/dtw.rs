//! Dynamic time warping distance between two univariate series.

use crate::error::{Error, Result};
use crate::path::{enumerate_paths, WarpingPath};
use crate::series::TimeSeries;

const DIAG: u8 = 0;
const VERT: u8 = 1;
const HORIZ: u8 = 2;

/// DTW distance together with an optimal warping path.
///
/// The recurrence accumulates squared pointwise differences and takes one
/// square root at the end. Ties between predecessors are broken in favour of
/// the diagonal step, then the vertical step (advancing `x`), then the
/// horizontal step, which makes the returned path deterministic.
pub fn dtw(x: &TimeSeries, y: &TimeSeries) -> (f64, WarpingPath) {
    let (m, n) = (x.len(), y.len());
    let xs = x.values();
    let ys = y.values();
    let w = n + 1;
    let mut acc = vec![f64::INFINITY; (m + 1) * w];
    let mut step = vec![DIAG; (m + 1) * w];
    acc[0] = 0.0;
    for i in 1..=m {
        for j in 1..=n {
            let d = xs[i - 1] - ys[j - 1];
            let diag = acc[(i - 1) * w + (j - 1)];
            let vert = acc[(i - 1) * w + j];
            let horiz = acc[i * w + (j - 1)];
            let best = diag.min(vert).min(horiz);
            acc[i * w + j] = d * d + best;
            step[i * w + j] = if diag <= vert && diag <= horiz {
                DIAG
            } else if vert <= horiz {
                VERT
            } else {
                HORIZ
            };
        }
    }

    let mut points = Vec::with_capacity(m.max(n));
    let (mut i, mut j) = (m, n);
    while (i, j) != (1, 1) {
        points.push((i, j));
        match step[i * w + j] {
            DIAG => {
                i -= 1;
                j -= 1;
            }
            VERT => i -= 1,
            _ => j -= 1,
        }
    }
    points.push((1, 1));
    points.reverse();
    let path = WarpingPath::new(m, n, points).expect("backtrace yields a valid path");
    (acc[m * w + n].sqrt(), path)
}

/// DTW distance alone, using two DP rows instead of the full matrix.
///
/// Performs the same floating-point operations in the same order as [`dtw`],
/// so the two agree bit for bit.
pub fn dtw_distance(x: &TimeSeries, y: &TimeSeries) -> f64 {
    let xs = x.values();
    let ys = y.values();
    let n = ys.len();
    let mut prev = vec![f64::INFINITY; n + 1];
    let mut cur = vec![f64::INFINITY; n + 1];
    prev[0] = 0.0;
    for &xv in xs {
        cur[0] = f64::INFINITY;
        for j in 1..=n {
            let d = xv - ys[j - 1];
            let best = prev[j - 1].min(prev[j]).min(cur[j - 1]);
            cur[j] = d * d + best;
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[n].sqrt()
}

/// Cost of a specific warping path: the square root of the summed squared
/// differences over its points. The path order must match the series lengths.
pub fn cost_of_path(x: &TimeSeries, y: &TimeSeries, path: &WarpingPath) -> Result<f64> {
    if path.rows() != x.len() || path.cols() != y.len() {
        return Err(Error::PathOrderMismatch {
            path_rows: path.rows(),
            path_cols: path.cols(),
            rows: x.len(),
            cols: y.len(),
        });
    }
    let sum: f64 = path
        .points()
        .iter()
        .map(|&(i, j)| {
            let d = x.at(i) - y.at(j);
            d * d
        })
        .sum();
    Ok(sum.sqrt())
}

/// DTW by exhaustive search over all warping paths. Exponential; the
/// enumeration guard limits both lengths. Intended as a reference
/// implementation for testing the DP.
pub fn dtw_bruteforce(x: &TimeSeries, y: &TimeSeries) -> Result<(f64, WarpingPath)> {
    let mut best: Option<(f64, WarpingPath)> = None;
    for path in enumerate_paths(x.len(), y.len())? {
        let cost = cost_of_path(x, y, &path).expect("enumerated path has matching order");
        match &best {
            Some((c, _)) if *c <= cost => {}
            _ => best = Some((cost, path)),
        }
    }
    Ok(best.expect("at least one path exists"))
}
