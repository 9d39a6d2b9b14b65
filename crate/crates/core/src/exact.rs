//! Exact Frechet means for samples of two or three series.
//!
//! The solver searches over tuples of warping paths, one per sample member,
//! that share a common mean length. For a fixed tuple the optimal mean takes
//! each position to the average of the sample elements matched there, so the
//! search reduces to a shortest-path problem over "how far into each member
//! has been consumed" states. Runtime grows as roughly the product of the
//! per-member index-pair counts times 2^k, which is why lengths are guarded.

use crate::error::{Error, Result};
use crate::frechet::{block_cost, frechet, MeanMethod, MeanResult};
use crate::path::{count_paths, enumerate_paths_bounded, WarpingPath};
use crate::series::{Sample, TimeSeries};

/// Length limits for the dynamic-programming solver.
///
/// The defaults keep a single call around a minute on commodity hardware.
#[derive(Debug, Clone)]
pub struct DpGuard {
    pub max_len_pair: usize,
    pub max_len_triple: usize,
}

impl Default for DpGuard {
    fn default() -> Self {
        DpGuard {
            max_len_pair: 120,
            max_len_triple: 24,
        }
    }
}

/// Exact mean of a sample of 2 or 3 series by dynamic programming.
///
/// Returns a global minimizer of the Frechet function of minimal length,
/// together with witness paths certifying the value. Other sample sizes are
/// rejected: above three the state space is impractical, and for one series
/// the problem is trivial.
pub fn exact_mean_dp(sample: &Sample, guard: &DpGuard) -> Result<MeanResult> {
    match sample.len() {
        2 => run_dp::<2>(sample, guard.max_len_pair, "exact mean of a pair"),
        3 => run_dp::<3>(sample, guard.max_len_triple, "exact mean of a triple"),
        k => Err(Error::UnsupportedSampleSize(k)),
    }
}

#[derive(Clone, Copy)]
struct Cell {
    cost: f64,
    len: u32,
    prev: u32,
    rmask: u8,
}

#[inline]
fn flat<const K: usize>(dims: &[usize; K], e: &[usize; K]) -> usize {
    let mut f = 0;
    for j in 0..K {
        f = f * dims[j] + e[j];
    }
    f
}

fn decode<const K: usize>(dims: &[usize; K], mut f: usize) -> [usize; K] {
    let mut e = [0usize; K];
    for j in (0..K).rev() {
        e[j] = f % dims[j];
        f /= dims[j];
    }
    e
}

fn prefix_sums(values: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut p1 = Vec::with_capacity(values.len() + 1);
    let mut p2 = Vec::with_capacity(values.len() + 1);
    p1.push(0.0);
    p2.push(0.0);
    for &v in values {
        p1.push(p1.last().unwrap() + v);
        p2.push(p2.last().unwrap() + v * v);
    }
    (p1, p2)
}

/// State (e_1, .., e_K): element e_j of member j is the last one matched by
/// the columns built so far. Each transition appends one mean position that
/// matches, per member, a contiguous nonempty block starting at e_j (bit j of
/// the repeat mask set, allowed once e_j >= 1) or at e_j + 1. At least one
/// member must consume a fresh element: a position repeating only last
/// elements can always be dropped without raising the cost, so skipping those
/// transitions loses no optimum and bounds the mean length.
///
/// Every predecessor is componentwise <= its successor and distinct from it,
/// so a single pass in row-major state order sees each state after all of its
/// predecessors. Cell values order by (cost, length); on exact ties the first
/// transition found wins, which makes the result deterministic and the
/// returned mean as short as possible.
fn run_dp<const K: usize>(sample: &Sample, max_len: usize, context: &str) -> Result<MeanResult> {
    let mut ns = [0usize; K];
    for (j, n) in ns.iter_mut().enumerate() {
        *n = sample.member(j).len();
        if *n > max_len {
            return Err(Error::GuardExceeded {
                context: context.to_string(),
                limit: max_len as u64,
                actual: *n as u64,
            });
        }
    }
    let sums: [(Vec<f64>, Vec<f64>); K] =
        std::array::from_fn(|j| prefix_sums(sample.member(j).values()));
    let mut dims = [0usize; K];
    for j in 0..K {
        dims[j] = ns[j] + 1;
    }
    let total: usize = dims.iter().product();

    let mut cells = vec![
        Cell {
            cost: f64::INFINITY,
            len: 0,
            prev: u32::MAX,
            rmask: 0,
        };
        total
    ];
    cells[0].cost = 0.0;

    for f in 0..total {
        let base = cells[f];
        if !base.cost.is_finite() {
            continue;
        }
        let e = decode(&dims, f);
        'mask: for rmask in 0u8..(1 << K) {
            let mut lo = [0usize; K];
            for j in 0..K {
                if rmask >> j & 1 == 1 {
                    if e[j] == 0 {
                        continue 'mask;
                    }
                    lo[j] = e[j];
                } else {
                    if e[j] == ns[j] {
                        continue 'mask;
                    }
                    lo[j] = e[j] + 1;
                }
            }
            let mut ep = lo;
            loop {
                if ep != e {
                    let mut cnt = 0.0f64;
                    let mut s1 = 0.0f64;
                    let mut s2 = 0.0f64;
                    for j in 0..K {
                        let (p1, p2) = &sums[j];
                        let (a, b) = (lo[j], ep[j]);
                        cnt += (b - a + 1) as f64;
                        s1 += p1[b] - p1[a - 1];
                        s2 += p2[b] - p2[a - 1];
                    }
                    let cost = base.cost + (s2 - s1 * s1 / cnt).max(0.0);
                    let len = base.len + 1;
                    let cell = &mut cells[flat(&dims, &ep)];
                    if cost < cell.cost || (cost == cell.cost && len < cell.len) {
                        *cell = Cell {
                            cost,
                            len,
                            prev: f as u32,
                            rmask,
                        };
                    }
                }
                let mut d = K;
                let advanced = loop {
                    if d == 0 {
                        break false;
                    }
                    d -= 1;
                    if ep[d] < ns[d] {
                        ep[d] += 1;
                        ep[d + 1..K].copy_from_slice(&lo[d + 1..K]);
                        break true;
                    }
                };
                if !advanced {
                    continue 'mask;
                }
            }
        }
    }

    let goal = total - 1;
    debug_assert!(cells[goal].cost.is_finite(), "goal state is always reachable");

    let mut chain = Vec::with_capacity(cells[goal].len as usize);
    let mut cur = goal;
    while cur != 0 {
        let cell = cells[cur];
        chain.push((cell.prev as usize, cell.rmask, cur));
        cur = cell.prev as usize;
    }
    chain.reverse();

    let mut mean_values = Vec::with_capacity(chain.len());
    let mut member_points: [Vec<(usize, usize)>; K] = std::array::from_fn(|_| Vec::new());
    for (t, &(pf, rmask, cf)) in chain.iter().enumerate() {
        let e = decode(&dims, pf);
        let ep = decode(&dims, cf);
        let mut cnt = 0.0f64;
        let mut s1 = 0.0f64;
        for j in 0..K {
            let a = if rmask >> j & 1 == 1 { e[j] } else { e[j] + 1 };
            let b = ep[j];
            cnt += (b - a + 1) as f64;
            s1 += sums[j].0[b] - sums[j].0[a - 1];
            for i in a..=b {
                member_points[j].push((t + 1, i));
            }
        }
        mean_values.push(s1 / cnt);
    }

    let mean = TimeSeries::new(mean_values).expect("means of finite values are finite");
    let alignment = member_points
        .into_iter()
        .enumerate()
        .map(|(j, points)| {
            WarpingPath::new(chain.len(), ns[j], points).expect("backtrace yields valid paths")
        })
        .collect();
    let frechet_value = frechet(sample, &mean);
    Ok(MeanResult {
        mean,
        frechet_value,
        method: MeanMethod::ExactDp,
        iterations: 0,
        converged: true,
        alignment: Some(alignment),
    })
}

/// Work limits for the brute-force solver.
#[derive(Debug, Clone)]
pub struct BruteforceGuard {
    pub max_members: usize,
    pub max_len: usize,
    pub max_tuples: u64,
}

impl Default for BruteforceGuard {
    fn default() -> Self {
        BruteforceGuard {
            max_members: 3,
            max_len: 4,
            max_tuples: 50_000_000,
        }
    }
}

/// Exact mean by exhausting every tuple of warping paths up to the maximal
/// useful mean length. A reference implementation for validating the dynamic
/// program: it shares no search machinery with it, only the problem statement.
/// The guard caps members, lengths, and the total number of path tuples.
pub fn exact_mean_bruteforce(sample: &Sample, guard: &BruteforceGuard) -> Result<MeanResult> {
    let k = sample.len();
    if k > guard.max_members {
        return Err(Error::GuardExceeded {
            context: "brute-force mean member count".to_string(),
            limit: guard.max_members as u64,
            actual: k as u64,
        });
    }
    let ns: Vec<usize> = sample.iter().map(|x| x.len()).collect();
    for &n in &ns {
        if n > guard.max_len {
            return Err(Error::GuardExceeded {
                context: "brute-force mean series length".to_string(),
                limit: guard.max_len as u64,
                actual: n as u64,
            });
        }
    }
    // Positions beyond this length cannot all consume fresh elements, and a
    // position that consumes none can be dropped without raising the cost.
    let l_max = ns.iter().sum::<usize>() - k + 1;
    let mut budget: u128 = 0;
    for l in 1..=l_max {
        let mut prod: u128 = 1;
        for &n in &ns {
            prod = prod.saturating_mul(count_paths(l, n));
        }
        budget = budget.saturating_add(prod);
    }
    if budget > guard.max_tuples as u128 {
        return Err(Error::GuardExceeded {
            context: "brute-force mean path tuples".to_string(),
            limit: guard.max_tuples,
            actual: budget.min(u64::MAX as u128) as u64,
        });
    }

    let mut best_cost = f64::INFINITY;
    let mut best: Option<(Vec<f64>, Vec<WarpingPath>)> = None;
    let mut col_means = Vec::new();
    let mut scratch = Vec::new();
    for l in 1..=l_max {
        let path_sets: Vec<Vec<WarpingPath>> = ns
            .iter()
            .map(|&n| enumerate_paths_bounded(l, n, l.max(n)))
            .collect::<Result<_>>()?;
        let mut idx = vec![0usize; k];
        loop {
            let tuple: Vec<&WarpingPath> = (0..k).map(|j| &path_sets[j][idx[j]]).collect();
            let mut cursors = vec![0usize; k];
            let mut cost = 0.0f64;
            col_means.clear();
            let mut aborted = false;
            for t in 1..=l {
                scratch.clear();
                for (j, path) in tuple.iter().enumerate() {
                    let points = path.points();
                    while cursors[j] < points.len() && points[cursors[j]].0 == t {
                        scratch.push(sample.member(j).at(points[cursors[j]].1));
                        cursors[j] += 1;
                    }
                }
                let (mu, c) = block_cost(&scratch);
                col_means.push(mu);
                cost += c;
                if cost >= best_cost {
                    aborted = true;
                    break;
                }
            }
            if !aborted && cost < best_cost {
                best_cost = cost;
                best = Some((
                    col_means.clone(),
                    tuple.into_iter().cloned().collect(),
                ));
            }

            let mut d = k;
            let advanced = loop {
                if d == 0 {
                    break false;
                }
                d -= 1;
                idx[d] += 1;
                if idx[d] < path_sets[d].len() {
                    break true;
                }
                idx[d] = 0;
            };
            if !advanced {
                break;
            }
        }
    }

    let (mean_values, alignment) = best.expect("length-1 tuples always evaluated");
    let mean = TimeSeries::new(mean_values).expect("means of finite values are finite");
    let frechet_value = frechet(sample, &mean);
    Ok(MeanResult {
        mean,
        frechet_value,
        method: MeanMethod::ExactBruteforce,
        iterations: 0,
        converged: true,
        alignment: Some(alignment),
    })
}
