//! Property tests for the metric, the solvers, and the diagnostics.

use proptest::prelude::*;

use warpmean_core::{
    build_reference_set, centrality_test, cost_of_path, dba, dtw, dtw_bruteforce, dtw_distance,
    err_eq, err_mid, exact_mean_bruteforce, exact_mean_dp, frechet, ssg, BruteforceGuard,
    DpGuard, HeuristicConfig, Init, Sample, TimeSeries, DEFAULT_CENTRALITY_TOLERANCE,
};

const ABS_TOL: f64 = 1e-9;

fn series(max_len: usize) -> impl Strategy<Value = TimeSeries> {
    prop::collection::vec(-5.0f64..5.0, 1..=max_len)
        .prop_map(|v| TimeSeries::new(v).unwrap())
}

fn sample_of(members: usize, max_len: usize) -> impl Strategy<Value = Sample> {
    prop::collection::vec(series(max_len), members..=members)
        .prop_map(|v| Sample::new(v).unwrap())
}

/// Powers of two scale every squared difference exactly, so these factors
/// must not change anything but magnitudes.
fn pow2_factor() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.5), Just(2.0), Just(4.0)]
}

fn scaled(x: &TimeSeries, a: f64) -> TimeSeries {
    TimeSeries::new(x.values().iter().map(|v| a * v).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dtw_matches_exhaustive_search(x in series(6), y in series(6)) {
        let (fast, path) = dtw(&x, &y);
        let (slow, _) = dtw_bruteforce(&x, &y).unwrap();
        prop_assert!((fast - slow).abs() <= ABS_TOL);
        // The returned path certifies the distance and has a legal length.
        prop_assert!((cost_of_path(&x, &y, &path).unwrap() - fast).abs() <= ABS_TOL);
        prop_assert!(path.len() >= x.len().max(y.len()));
        prop_assert!(path.len() < x.len() + y.len());
    }

    #[test]
    fn dtw_distance_is_bitwise_symmetric(x in series(12), y in series(12)) {
        prop_assert_eq!(
            dtw_distance(&x, &y).to_bits(),
            dtw_distance(&y, &x).to_bits()
        );
    }

    #[test]
    fn dtw_is_exactly_equivariant_under_pow2_scaling(
        x in series(10),
        y in series(10),
        a in pow2_factor(),
    ) {
        let (d, path) = dtw(&x, &y);
        let (ds, path_s) = dtw(&scaled(&x, a), &scaled(&y, a));
        prop_assert_eq!(ds.to_bits(), (a * d).to_bits());
        prop_assert_eq!(path_s.points(), path.points());
    }

    #[test]
    fn dtw_distance_is_nonnegative_and_zero_on_self(x in series(12)) {
        prop_assert_eq!(dtw_distance(&x, &x), 0.0);
        let shifted = TimeSeries::new(
            x.values().iter().map(|v| v + 1.0).collect()
        ).unwrap();
        prop_assert!(dtw_distance(&x, &shifted) >= 0.0);
    }

    #[test]
    fn midpoint_errors_are_symmetric_in_the_endpoints(
        x in series(6), mu in series(6), y in series(6),
    ) {
        prop_assert_eq!(
            err_eq(&x, &mu, &y).to_bits(),
            err_eq(&y, &mu, &x).to_bits()
        );
        prop_assert_eq!(
            err_mid(&x, &mu, &y).to_bits(),
            err_mid(&y, &mu, &x).to_bits()
        );
    }

    #[test]
    fn midpoint_errors_are_invariant_under_pow2_scaling(
        x in series(6), mu in series(6), y in series(6), a in pow2_factor(),
    ) {
        let (sx, smu, sy) = (scaled(&x, a), scaled(&mu, a), scaled(&y, a));
        prop_assert_eq!(err_eq(&x, &mu, &y).to_bits(), err_eq(&sx, &smu, &sy).to_bits());
        prop_assert_eq!(err_mid(&x, &mu, &y).to_bits(), err_mid(&sx, &smu, &sy).to_bits());
        prop_assert!(err_eq(&x, &mu, &y) <= 100.0 + ABS_TOL);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn exact_dp_agrees_with_bruteforce(s in sample_of(2, 3)) {
        let dp = exact_mean_dp(&s, &DpGuard::default()).unwrap();
        let bf = exact_mean_bruteforce(&s, &BruteforceGuard::default()).unwrap();
        prop_assert!((dp.frechet_value - bf.frechet_value).abs() <= ABS_TOL);
        prop_assert_eq!(dp.mean.len(), bf.mean.len());
        // No series beats the reported optimum from either route.
        for member in &s {
            prop_assert!(frechet(&s, member) >= dp.frechet_value - ABS_TOL);
        }
    }

    #[test]
    fn exact_mean_is_no_worse_than_any_member(s in sample_of(3, 5)) {
        let dp = exact_mean_dp(&s, &DpGuard::default()).unwrap();
        for member in &s {
            prop_assert!(frechet(&s, member) >= dp.frechet_value - ABS_TOL);
        }
        // The witness paths certify the value.
        let total: f64 = dp.alignment.as_ref().unwrap().iter().enumerate()
            .map(|(j, p)| {
                let c = cost_of_path(&dp.mean, s.member(j), p).unwrap();
                c * c
            })
            .sum();
        prop_assert!((total - dp.frechet_value).abs() <= ABS_TOL);
    }

    #[test]
    fn dba_descends_monotonically(s in sample_of(3, 5)) {
        let init = s.member(0).clone();
        let mut last = frechet(&s, &init);
        for max_iterations in 1..=4 {
            let cfg = HeuristicConfig {
                max_iterations,
                init: Init::Series(init.clone()),
                ..HeuristicConfig::default()
            };
            let r = dba(&s, &cfg).unwrap();
            prop_assert!(r.frechet_value <= last + 1e-12);
            prop_assert_eq!(r.mean.len(), init.len());
            last = r.frechet_value;
        }
    }

    #[test]
    fn ssg_never_beats_its_own_best(s in sample_of(2, 5), seed in 0u64..1000) {
        let init = s.member(0).clone();
        let f_init = frechet(&s, &init);
        let cfg = HeuristicConfig {
            max_iterations: 20,
            seed,
            init: Init::Series(init.clone()),
            ..HeuristicConfig::default()
        };
        let r = ssg(&s, &cfg).unwrap();
        prop_assert!(r.frechet_value <= f_init);
        prop_assert!((frechet(&s, &r.mean) - r.frechet_value).abs() <= ABS_TOL);
        prop_assert_eq!(r.mean.len(), init.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// An exact mean of three series always lies inside the reference region
    /// spanned by the three leave-one-out means. The inequality chain behind
    /// the guarantee is asserted term by term.
    #[test]
    fn exact_triple_means_are_always_coherent(s in sample_of(3, 4)) {
        let guard = DpGuard::default();
        let reference = build_reference_set(&s, &guard).unwrap();
        let full = exact_mean_dp(&s, &guard).unwrap();
        let report = centrality_test(&reference, &full.mean, DEFAULT_CENTRALITY_TOLERANCE);
        prop_assert!(report.coherent, "distances {:?} radii {:?}", report.distances, report.radii);

        for k in 0..3 {
            let pair = s.without(k).unwrap();
            let mu_k = &reference.means()[k];
            // The leave-one-out mean is optimal for its pair.
            prop_assert!(
                frechet(&pair, &mu_k.mean) <= frechet(&pair, &full.mean) + ABS_TOL
            );
            // The full mean is optimal for the whole sample.
            prop_assert!(full.frechet_value <= frechet(&s, &mu_k.mean) + ABS_TOL);
        }
    }
}
