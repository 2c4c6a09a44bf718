use proptest::prelude::*;

use ramstat_core::bounds::{binomial, expected_mono, goodman_fraction};
use ramstat_core::census::{clique_census, transitivity, triangle_census};
use ramstat_core::ingest::{
    build_trade_graph, hamming, random_coloring, sweep, threshold_coloring, DistanceMatrix,
};
use ramstat_core::stats::{
    bar_chi2, bias_summary, chi2_vs_expectation, chi2_vs_goodman, p_value, Chi2Kind, Chi2Report,
    Series,
};
use ramstat_core::{Color, TradeFlow, TwoColoring};

fn coloring() -> impl Strategy<Value = TwoColoring> {
    (3usize..70, 0.0f64..=1.0, any::<u64>())
        .prop_map(|(n, t, seed)| random_coloring(n, t, seed).unwrap())
}

fn vote_strings() -> impl Strategy<Value = Vec<String>> {
    (1usize..12).prop_flat_map(|len| {
        prop::collection::vec(
            prop::collection::vec(prop::sample::select(vec!['Y', 'N', 'A']), len),
            2..20,
        )
        .prop_map(|rows| rows.into_iter().map(|r| r.into_iter().collect()).collect())
    })
}

fn distances(rows: &[String]) -> DistanceMatrix {
    let d = rows
        .iter()
        .map(|a| rows.iter().map(|b| hamming(a, b).unwrap()).collect())
        .collect();
    DistanceMatrix::from_rows(d).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn red_is_the_complement_of_blue(c in coloring()) {
        let n = c.n();
        let red = c.adjacency(Color::Red);
        let blue = c.adjacency(Color::Blue);
        for i in 0..n {
            prop_assert!(!red.get(i, i) && !blue.get(i, i));
            for j in 0..n {
                if i != j {
                    prop_assert!(red.get(i, j) ^ blue.get(i, j));
                    prop_assert_eq!(red.get(i, j), red.get(j, i));
                }
            }
        }
        let pairs = (n * (n - 1) / 2) as u64;
        prop_assert_eq!(c.edge_count(Color::Red) + c.edge_count(Color::Blue), pairs);
    }

    #[test]
    fn blue_edges_round_trip(c in coloring()) {
        let back = TwoColoring::from_blue_edges(c.n(), c.blue_edges()).unwrap();
        prop_assert_eq!(back.adjacency(Color::Blue), c.adjacency(Color::Blue));
    }

    #[test]
    fn closed_two_walks_equal_degree(c in coloring(), v in any::<prop::sample::Index>()) {
        let v = v.index(c.n());
        for color in Color::BOTH {
            prop_assert_eq!(c.path_count(color, 2, v, v).unwrap(), c.degree(color, v) as u64);
        }
    }

    #[test]
    fn triangle_census_is_k3_census(c in coloring()) {
        let t = triangle_census(&c);
        let k = clique_census(&c, 3).unwrap();
        prop_assert_eq!((t.red_triangles, t.blue_triangles, t.total), (k.red_count, k.blue_count, k.total));
        prop_assert!(t.mono >= ramstat_core::bounds::goodman_min(c.n() as u64));
    }

    #[test]
    fn transitivity_closed_form(c in coloring()) {
        let t = triangle_census(&c);
        let r = transitivity(&c);
        let f = t.mono as f64;
        prop_assert_eq!(r.completion_ratio, 3.0 * f / (t.total as f64 + 2.0 * f));
        // the Goodman floor g bounds the ratio below by 3g / (1 + 2g)
        if c.n() >= 3 {
            let g = goodman_fraction(c.n() as u64).unwrap().forced_fraction;
            prop_assert!(r.completion_ratio >= 3.0 * g / (1.0 + 2.0 * g) - 1e-12);
        }
    }

    #[test]
    fn hamming_is_a_metric(rows in vote_strings()) {
        let d = distances(&rows);
        let n = d.n();
        for i in 0..n {
            prop_assert_eq!(d.get(i, i), 0);
            for j in 0..n {
                prop_assert_eq!(d.get(i, j), d.get(j, i));
                for k in 0..n {
                    prop_assert!(d.get(i, k) <= d.get(i, j) + d.get(j, k));
                }
            }
        }
    }

    #[test]
    fn thresholds_only_turn_blue_to_red(rows in vote_strings()) {
        let d = distances(&rows);
        let top = d.max_distance().unwrap_or(0) + 1;
        for t in 0..top {
            let lo = threshold_coloring(&d, t).unwrap();
            let hi = threshold_coloring(&d, t + 1).unwrap();
            for (i, j) in hi.blue_edges() {
                prop_assert!(lo.is_blue(i, j));
            }
        }
        let table = sweep(&d, 0, top, None).unwrap();
        let last = table.rows.last().unwrap();
        prop_assert_eq!(last.census.blue_triangles, 0);
        prop_assert_eq!(last.census.mono_fraction, 1.0);
        if d.min_distance().is_some_and(|m| m >= 1) {
            prop_assert_eq!(table.rows[0].census.red_triangles, 0);
            prop_assert_eq!(table.rows[0].census.mono_fraction, 1.0);
        }
    }

    #[test]
    fn chi2_ignores_point_order(
        points in prop::collection::btree_map(0u32..100, (0.0f64..1.0, 0.01f64..1.0), 1..20),
        seed in any::<u64>(),
    ) {
        let obs: Vec<(f64, f64)> = points.iter().map(|(&t, &(o, _))| (t as f64, o)).collect();
        let exp: Vec<(f64, f64)> = points.iter().map(|(&t, &(_, e))| (t as f64, e)).collect();
        let a = chi2_vs_expectation(&Series::from_points(obs.clone()).unwrap(), &Series::from_points(exp.clone()).unwrap(), 1).unwrap();
        let mut rng = seed;
        let mut shuffled = obs.clone();
        let mut shuffled_exp = exp.clone();
        for i in (1..shuffled.len()).rev() {
            rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (rng >> 33) as usize % (i + 1);
            shuffled.swap(i, j);
            shuffled_exp.swap(i, j);
        }
        let b = chi2_vs_expectation(&Series::from_points(shuffled).unwrap(), &Series::from_points(shuffled_exp).unwrap(), 1).unwrap();
        prop_assert_eq!(a, b);
        let g1 = chi2_vs_goodman(&Series::from_points(obs).unwrap(), 40, false, 1).unwrap();
        prop_assert!(g1.statistic >= 0.0);
    }

    #[test]
    fn chi2_zero_iff_equal(values in prop::collection::vec(0.01f64..1.0, 1..20)) {
        let ts: Vec<f64> = (0..values.len()).map(|i| i as f64).collect();
        let s = Series::new(ts.clone(), values.clone()).unwrap();
        let r = chi2_vs_expectation(&s, &s, 1).unwrap();
        prop_assert_eq!(r.statistic, 0.0);
        prop_assert_eq!(r.p_value, 1.0);
        let mut bumped = values.clone();
        bumped[0] += 0.5;
        let b = Series::new(ts, bumped).unwrap();
        prop_assert!(chi2_vs_expectation(&b, &s, 1).unwrap().statistic > 0.0);
    }

    #[test]
    fn bar_chi2_of_identical_reports(stat in 0.0f64..100.0, count in 1usize..6) {
        let r = Chi2Report { kind: Chi2Kind::VsExpectation, statistic: stat, df: 1, p_value: p_value(stat, 1), points: 1, skipped: 0 };
        let mean = bar_chi2(&vec![r; count]).unwrap();
        prop_assert!((mean - stat).abs() <= 1e-12 * stat.max(1.0));
    }

    #[test]
    fn p_value_decreases(a in 0.0f64..60.0, b in 0.0f64..60.0, df in 1u32..8) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(p_value(lo, df) >= p_value(hi, df));
        prop_assert!((0.0..=1.0).contains(&p_value(a, df)));
    }

    #[test]
    fn trade_graph_ignores_flow_order(
        volumes in prop::collection::btree_map((0usize..9, 0usize..9), 1u32..1_000_000, 1..40),
        k in 1usize..6,
        seed in any::<u64>(),
    ) {
        // distinct volumes: make each unique by adding its pair index
        let mut flows: Vec<TradeFlow> = volumes
            .iter()
            .filter(|((e, i), _)| e != i)
            .enumerate()
            .map(|(x, (&(e, i), &v))| TradeFlow {
                exporter: format!("C{e}"),
                importer: format!("C{i}"),
                volume: v as f64 * 100.0 + x as f64,
            })
            .collect();
        prop_assume!(!flows.is_empty());
        let a = build_trade_graph(&flows, k).unwrap();
        let mut rng = seed;
        for i in (1..flows.len()).rev() {
            rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            flows.swap(i, (rng >> 33) as usize % (i + 1));
        }
        let b = build_trade_graph(&flows, k).unwrap();
        prop_assert_eq!(a.labels(), b.labels());
        prop_assert_eq!(a.blue_edges(), b.blue_edges());
        let t = triangle_census(&a);
        if a.n() >= 3 {
            prop_assert!(t.mono_fraction >= goodman_fraction(a.n() as u64).unwrap().forced_fraction);
        }
    }
}

#[test]
fn expectation_symmetric_on_grid() {
    for n in [20u64, 214, 435] {
        for m in 3..=5u32 {
            let mut best = (f64::INFINITY, 0.0);
            for i in 0..=100 {
                let t = i as f64 / 100.0;
                let a = expected_mono(n, m, t).unwrap();
                let b = expected_mono(n, m, 1.0 - t).unwrap();
                assert_eq!(a.expected_mono, b.expected_mono, "n={n} m={m} t={t}");
                if a.expected_mono < best.0 {
                    best = (a.expected_mono, t);
                }
            }
            assert_eq!(best.1, 0.5, "n={n} m={m}");
        }
    }
}

#[test]
fn monte_carlo_mean_near_285() {
    let samples = 10_000;
    let counts: Vec<f64> = (0..samples)
        .map(|s| triangle_census(&random_coloring(20, 0.5, s).unwrap()).mono as f64)
        .collect();
    let mean = counts.iter().sum::<f64>() / samples as f64;
    let var = counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (samples as f64 - 1.0);
    let se = (var / samples as f64).sqrt();
    assert!((mean - 285.0).abs() <= 3.0 * se, "mean {mean} se {se}");
    assert_eq!(binomial(20, 3), Some(1140));
}

#[test]
fn balanced_random_bias_near_one() {
    let samples = 400u64;
    let (mut red, mut blue) = (Vec::new(), Vec::new());
    for s in 0..samples {
        let t = triangle_census(&random_coloring(30, 0.5, s).unwrap());
        red.push(t.red_triangles as f64);
        blue.push(t.blue_triangles as f64);
    }
    let diff: Vec<f64> = red.iter().zip(&blue).map(|(r, b)| r - b).collect();
    let mean = diff.iter().sum::<f64>() / samples as f64;
    let var = diff.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (samples as f64 - 1.0);
    assert!(mean.abs() <= 3.0 * (var / samples as f64).sqrt());
    let total = triangle_census(&random_coloring(30, 0.5, 7).unwrap());
    let b = bias_summary(&total).unwrap();
    assert!((b.red_share + b.blue_share - 1.0).abs() < 1e-12);
    let ratio = red.iter().sum::<f64>() / blue.iter().sum::<f64>();
    assert!((ratio - 1.0).abs() < 0.05, "ratio {ratio}");
}

#[test]
fn p_value_matches_erfc() {
    for x in [0.1, 1.0, 1.329, 2.0, 5.0, 10.0, 15.0, 15.13] {
        let want = statrs::function::erf::erfc((x / 2.0f64).sqrt());
        assert!((p_value(x, 1) - want).abs() < 1e-6, "x={x}");
    }
    assert!((p_value(1.329, 1) - 0.248983).abs() < 5e-6);
    assert!(p_value(15.130, 1) <= 0.00012);
    // df=2 has closed form exp(-x/2)
    for x in [0.5, 3.0, 9.0] {
        assert!((p_value(x, 2) - (-x / 2.0f64).exp()).abs() < 1e-9);
    }
}
