use mu_lab::mu::{log2_big, mu_exact, mu_lower_certificates, mu_sample_lower, mu_upper_subcritical, CertificateConfig};
use mu_lab::random::{sample_gnp, Seed};
use mu_lab::{Graph, MuConfig};
use proptest::prelude::*;

fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}")).trim().to_string()
}

#[test]
fn comb_counts_match_golden_files() {
    for (k, file) in [(8, "mu_comb8.txt"), (10, "mu_comb10.txt")] {
        let r = mu_exact(&Graph::comb(k)).unwrap();
        let exact = r.exact.unwrap();
        assert_eq!(exact.to_string(), golden(file));
        assert!(log2_big(&exact) >= (k - 3) as f64);
    }
}

#[test]
fn record_lines_are_stable() {
    let r = mu_exact(&Graph::path(5)).unwrap();
    assert_eq!(r.record(), golden("record_p5.txt"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn every_bound_brackets_the_exact_value(n in 1usize..15, c in 0.2f64..4.0, value: u64) {
        let g = sample_gnp(n, (c / n as f64).min(1.0), Seed::new(value)).unwrap();
        let exact = log2_big(&mu_exact(&g).unwrap().exact.unwrap());
        let lower = mu_lower_certificates(&g, Seed::new(value), &CertificateConfig::default()).unwrap();
        for b in &lower.lower_bounds {
            prop_assert!(b.log2 <= exact + 1e-9, "{} = {} > {}", b.method, b.log2, exact);
        }
        let upper = mu_upper_subcritical(&g, None).unwrap();
        for b in &upper.upper_bounds {
            prop_assert!(b.log2 >= exact - 1e-9, "{} = {} < {}", b.method, b.log2, exact);
        }
        let sampled = mu_sample_lower(&g, 200, Seed::new(value), &MuConfig::default()).unwrap();
        prop_assert!(sampled.best_lower().unwrap().log2 <= exact + 1e-9);
    }
}
