use mu_lab::random::{gnp_edges, sample_gnp, sample_gw_tree, sample_regular, sample_subset, GwConfig, Seed};
use mu_lab::{Adjacency, Graph};
use proptest::prelude::*;

#[test]
fn gnp_edge_count_matches_its_mean() {
    for &(n, p) in &[(200usize, 0.3f64), (2000, 0.002), (50, 0.9)] {
        let pairs = (n * (n - 1) / 2) as f64;
        let reps = 40;
        let total: usize = (0..reps).map(|i| gnp_edges(n, p, Seed::new(5).derive(i)).unwrap().len()).sum();
        let mean = total as f64 / reps as f64;
        let sd = (pairs * p * (1.0 - p) / reps as f64).sqrt();
        assert!((mean - pairs * p).abs() < 5.0 * sd, "n={n} p={p}: {mean} vs {}", pairs * p);
    }
}

#[test]
fn regular_sampler_is_uniform_on_six_vertices() {
    // 70 labelled 2-regular graphs on 6 vertices: 60 hexagons, 10 pairs of triangles
    let reps = 20_000;
    let hexagons = (0..reps)
        .filter(|&i| {
            let g = sample_regular(6, 2, Seed::new(11).derive(i)).unwrap();
            g.components().len() == 1
        })
        .count();
    let share = hexagons as f64 / reps as f64;
    let sd = (60.0 / 70.0 * 10.0 / 70.0 / reps as f64).sqrt();
    assert!((share - 60.0 / 70.0).abs() < 5.0 * sd, "{share}");
    let k4 = sample_regular(4, 3, Seed::new(1)).unwrap();
    assert_eq!(k4, Graph::complete(4));
}

#[test]
fn subsets_are_uniform_bits() {
    let n = 64;
    let reps = 4000;
    let total: usize = (0..reps).map(|i| sample_subset(n, Seed::new(3).derive(i)).len()).sum();
    let mean = total as f64 / reps as f64;
    assert!((mean - 32.0).abs() < 5.0 * (16.0 / reps as f64).sqrt());
}

#[test]
fn gw_progeny_mean() {
    let cfg = GwConfig::new(0.5, 1_000_000).unwrap();
    let reps = 20_000;
    let total: usize = (0..reps).map(|i| sample_gw_tree(&cfg, Seed::new(8).derive(i)).tree.size()).sum();
    let mean = total as f64 / reps as f64;
    // mean 2, variance λ/(1−λ)³ = 4
    assert!((mean - 2.0).abs() < 5.0 * (4.0 / reps as f64).sqrt(), "{mean}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn samplers_are_pure_functions_of_the_seed(n in 0usize..60, p in 0.0f64..=1.0, value: u64, stream: u64) {
        let s = Seed::with_stream(value, stream);
        prop_assert_eq!(sample_gnp(n, p, s).unwrap(), sample_gnp(n, p, s).unwrap());
        prop_assert_eq!(sample_subset(n, s), sample_subset(n, s));
    }

    #[test]
    fn regular_samples_are_simple_and_regular(half in 2usize..30, d in 1usize..5, value: u64) {
        let n = 2 * half;
        prop_assume!(d < n);
        let g = sample_regular(n, d, Seed::new(value)).unwrap();
        prop_assert_eq!(g.regular_degree(), Some(d));
        prop_assert!((0..n).all(|v| !g.has_edge(v, v)));
    }
}
