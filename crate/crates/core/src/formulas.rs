//! Closed-form quantities the experiments compare against.

use crate::anatomy::conjugate_lambda;
use crate::{Real, Result};

/// `q = 1 − 2p(1−p)`, the probability that a third vertex sees two given
/// vertices alike.
pub fn q<F: Real>(p: F) -> F {
    F::one() - F::c(2.0) * p * (F::one() - p)
}

/// `α_n = n·q`.
pub fn alpha_n<F: Real>(n: usize, p: F) -> F {
    F::from_count(n) * q(p)
}

/// `β_n = √(8 n p (1−p) q ln n)`.
pub fn beta_n<F: Real>(n: usize, p: F) -> F {
    let n_f = F::from_count(n);
    (F::c(8.0) * n_f * p * (F::one() - p) * q(p) * n_f.ln()).sqrt()
}

/// Subset-size window `[n/2 − √(n ln n), n/2 + √(n ln n)]`.
pub fn subset_window<F: Real>(n: usize) -> (F, F) {
    let n_f = F::from_count(n);
    let half = n_f / F::c(2.0);
    let r = if n > 1 { (n_f * n_f.ln()).sqrt() } else { F::zero() };
    (half - r, half + r)
}

/// Degree window `np ± √(2np(1−p) ln n)`.
pub fn degree_window<F: Real>(n: usize, p: F) -> (F, F) {
    let n_f = F::from_count(n);
    let mid = n_f * p;
    let r = (F::c(2.0) * n_f * p * (F::one() - p) * n_f.ln()).sqrt();
    (mid - r, mid + r)
}

/// `ln E X` where `X` counts tree components on `k` vertices in G(n,p):
/// `E X = C(n,k) k^{k−2} p^{k−1} (1−p)^{k(n−k) + C(k,2) − (k−1)}`.
pub fn ln_expected_tree_components<F: Real>(n: usize, k: usize, p: F) -> F {
    if k == 0 || k > n {
        return F::neg_infinity();
    }
    let mut ln_binom = F::zero();
    for i in 0..k {
        ln_binom = ln_binom + F::from_count(n - i).ln() - F::from_count(i + 1).ln();
    }
    let k_f = F::from_count(k);
    let mut s = ln_binom + (k_f - F::c(2.0)) * k_f.ln();
    if k > 1 {
        s = s + F::from_count(k - 1) * p.ln();
    }
    let exponent = F::from_count(k * (n - k) + k * (k - 1) / 2 - (k - 1));
    if exponent > F::zero() {
        s = s + exponent * (-p).ln_1p();
    }
    s
}

pub fn expected_tree_components<F: Real>(n: usize, k: usize, p: F) -> F {
    ln_expected_tree_components(n, k, p).exp()
}

/// Expected number of the `n − m` outside vertices with no neighbour in a
/// fixed `m`-set: `(n − m)(1 − p)^m`.
pub fn expected_outside_isolated<F: Real>(n: usize, m: usize, p: F) -> F {
    F::from_count(n - m.min(n)) * (F::one() - p).powf(F::from_count(m))
}

/// Limiting 2-core fraction `(1 − λ′)(1 − λ′/λ)` for G(n, λ/n), `λ > 1`.
pub fn two_core_fraction<F: Real>(lambda: F) -> Result<F> {
    let lp = conjugate_lambda(lambda)?;
    Ok((F::one() - lp) * (F::one() - lp / lambda))
}

/// Mean total progeny `1/(1 − λ)` of a subcritical Poisson GW tree.
pub fn gw_progeny_mean<F: Real>(lambda: F) -> F {
    F::one() / (F::one() - lambda)
}

/// Lower bound `0.003/ε` on `E ln f(T)` for `T ~ GW(Pois(1−ε))`.
pub fn gw_main_bound<F: Real>(epsilon: F) -> F {
    F::c(0.003) / epsilon
}

/// Lower bound `0.002 N/ε` on `Σ ln f(T_i)` over `N` independent trees.
pub fn gw_many_bound<F: Real>(trees: usize, epsilon: F) -> F {
    F::c(0.002) * F::from_count(trees) / epsilon
}

/// Left side `1 + (1−p)^{5.4}` of the scanned inequality.
pub fn boring_lhs<F: Real>(p: F) -> F {
    F::one() + (F::one() - p).powf(F::c(5.4))
}

/// Majorant `1 + e^{−5.4p}` of the left side.
pub fn boring_majorant<F: Real>(p: F) -> F {
    F::one() + (F::c(-5.4) * p).exp()
}

/// Right side `2^{1 − 2p(1−p)}`.
pub fn boring_rhs<F: Real>(p: F) -> F {
    F::c(2.0).powf(q(p))
}

/// Spectral threshold `2√(d−1) + 1` for random d-regular graphs.
pub fn regular_spectral_bound<F: Real>(d: usize) -> F {
    F::c(2.0) * F::from_count(d - 1).sqrt() + F::one()
}

/// Upper bound `k·4^k` on the number of unlabelled trees on `k` vertices.
pub fn tree_classes_bound(k: usize) -> f64 {
    k as f64 * 4f64.powi(k as i32)
}

/// Upper bound `k³·4^k` on the number of unlabelled unicyclic graphs on `k` vertices.
pub fn unicyclic_classes_bound(k: usize) -> f64 {
    (k as f64).powi(3) * 4f64.powi(k as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn hand_computed_values() {
        // q(0.3) = 0.58; α = 1160; β = √(8·2000·0.21·0.58·ln 2000)
        assert!(close(alpha_n(2000, 0.3), 1160.0, 1e-12));
        assert!(close(beta_n(2000, 0.3), 121.707_184_3, 1e-8));
        assert_eq!(alpha_n(500, 0.5), 250.0);
        let (lo, hi) = subset_window::<f64>(100);
        assert!(close(lo, 50.0 - 21.459_660_3, 1e-8) && close(hi, 71.459_660_3, 1e-8));
        let (dlo, dhi) = degree_window(1000, 0.5);
        assert!(close(dlo, 500.0 - 58.769_700_0, 1e-8) && close(dhi, 558.769_700_0, 1e-8));
    }

    #[test]
    fn tree_component_expectation() {
        let n = 10_000;
        let p = 0.5 / n as f64;
        // k = 1: n(1−p)^{n−1}; k = 2: C(n,2) p (1−p)^{2(n−2)}
        let k1 = n as f64 * (1.0 - p).powi(n as i32 - 1);
        let k2 = (n * (n - 1) / 2) as f64 * p * (1.0 - p).powi(2 * (n as i32 - 2));
        assert!(close(expected_tree_components(n, 1, p), k1, 1e-10));
        assert!(close(expected_tree_components(n, 2, p), k2, 1e-10));
        // k = 3: C(n,3)·3·p²·(1−p)^{3(n−3)+1}
        let k3 = (n as f64 * (n - 1) as f64 * (n - 2) as f64 / 6.0) * 3.0 * p * p * (1.0 - p).powi(3 * (n as i32 - 3) + 1);
        assert!(close(expected_tree_components(n, 3, p), k3, 1e-10));
        assert!(close(expected_tree_components(20, 1, 0.0), 20.0, 1e-12));
        assert_eq!(expected_tree_components(20, 3, 0.0), 0.0);
    }

    #[test]
    fn other_closed_forms() {
        assert!(close(expected_outside_isolated(10, 4, 0.5), 6.0 / 16.0, 1e-14));
        assert!(close(two_core_fraction(2.0).unwrap(), 0.473_007_011, 1e-8));
        assert!(close(gw_progeny_mean(0.5), 2.0, 1e-15));
        assert!(close(gw_main_bound(0.1), 0.03, 1e-15));
        assert!(close(boring_lhs(0.5), 1.023_683_071, 1e-9));
        assert!(close(boring_rhs(0.5), std::f64::consts::SQRT_2, 1e-15));
        assert!(close(regular_spectral_bound(3), 3.828_427_1, 1e-7));
        assert!((alpha_n::<f32>(2000, 0.3) - 1160.0).abs() < 1e-2);
    }
}
