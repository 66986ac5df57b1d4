use crate::graph::{Adjacency, SparseGraph};
use crate::random::{gw_from_rng, GwConfig, Seed, DEFAULT_MAX_NODES};
use crate::{Error, Real, Result};

/// The unique `λ′ ∈ (0, 1)` with `λ′e^{−λ′} = λe^{−λ}`, by bisection.
pub fn conjugate_lambda<F: Real>(lambda: F) -> Result<F> {
    if !(lambda > F::one()) || !lambda.is_finite() {
        return Err(Error::Domain(format!("conjugate parameter needs λ > 1, got {:?}", lambda)));
    }
    let target = lambda * (-lambda).exp();
    let h = |x: F| x * (-x).exp();
    let (mut lo, mut hi) = (F::zero(), F::one());
    for _ in 0..200 {
        let mid = (lo + hi) / F::c(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if h(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(if (h(lo) - target).abs() <= (h(hi) - target).abs() { lo } else { hi })
}

/// Core with an independent Galton–Watson tree grafted at every core vertex.
#[derive(Clone, Debug)]
pub struct ContiguousModel {
    /// Core vertices keep labels `0..core_order`; tree nodes follow.
    pub graph: SparseGraph,
    pub core_order: usize,
    /// Node count of the tree grafted at each core vertex (root included).
    pub tree_sizes: Vec<usize>,
    pub truncated: bool,
}

/// Grafts a Pois(λ′) Galton–Watson tree at every vertex of `core`; trees are
/// drawn in vertex order from one generator keyed by `seed`.
pub fn build_contiguous_model<G: Adjacency + ?Sized>(core: &G, lambda_prime: f64, seed: Seed) -> Result<ContiguousModel> {
    if !(lambda_prime > 0.0 && lambda_prime < 1.0) {
        return Err(Error::Domain(format!("λ′ must lie in (0, 1), got {lambda_prime}")));
    }
    let k = core.order();
    let cfg = GwConfig::new(lambda_prime, DEFAULT_MAX_NODES)?;
    let mut rng = seed.rng();
    let mut edges: Vec<(u32, u32)> = (0..k).flat_map(|v| core.neighbors(v).filter(move |&w| w > v).map(move |w| (v as u32, w as u32))).collect();
    let mut next = k;
    let mut truncated = false;
    let mut tree_sizes = Vec::with_capacity(k);
    for v in 0..k {
        let sample = gw_from_rng(&cfg, &mut rng);
        truncated |= sample.truncated;
        let t = &sample.tree;
        tree_sizes.push(t.size());
        // node 0 is v; node i > 0 becomes next + i - 1
        let label = |i: usize| if i == 0 { v } else { next + i - 1 };
        for x in 0..t.size() {
            for &c in t.children(x) {
                edges.push((label(x) as u32, label(c as usize) as u32));
            }
        }
        next += t.size() - 1;
    }
    Ok(ContiguousModel { graph: SparseGraph::from_edges(next, &edges)?, core_order: k, tree_sizes, truncated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    /// Independent bisection written against the defining equation only.
    fn oracle(lambda: f64) -> f64 {
        let t = lambda * (-lambda).exp();
        let (mut a, mut b) = (1e-300f64, 1.0f64);
        while b - a > 1e-15 {
            let m = 0.5 * (a + b);
            if m * (-m).exp() > t {
                b = m
            } else {
                a = m
            }
        }
        0.5 * (a + b)
    }

    #[test]
    fn residuals_and_known_value() {
        for i in 1..=100 {
            let lambda = 1.0 + 9.0 * i as f64 / 100.0;
            let lp: f64 = conjugate_lambda(lambda).unwrap();
            assert!(lp > 0.0 && lp < 1.0);
            assert!((lp * (-lp).exp() - lambda * (-lambda).exp()).abs() <= 1e-12);
            assert!((lp - oracle(lambda)).abs() < 1e-9);
        }
        assert!((conjugate_lambda(2.0f64).unwrap() - 0.40637).abs() < 1e-5);
        assert!(conjugate_lambda(1.0f64).is_err());
        assert!(conjugate_lambda(0.5f64).is_err());
        let near: f64 = conjugate_lambda(1.0 + 1e-6).unwrap();
        assert!(near > 0.99);
        let single: f32 = conjugate_lambda(2.0f32).unwrap();
        assert!((single - 0.40637).abs() < 1e-5);
    }

    #[test]
    fn contiguous_model_keeps_the_core_induced() {
        let core = Graph::complete(5);
        let m = build_contiguous_model(&core, 0.5, Seed::new(4)).unwrap();
        assert_eq!(m.core_order, 5);
        let g = &m.graph;
        for u in 0..5 {
            for v in 0..5 {
                assert_eq!(Adjacency::has_edge(g, u, v), u != v);
            }
        }
        assert!((5..g.order()).all(|v| g.degree(v) >= 1));
        assert_eq!(m.tree_sizes.iter().sum::<usize>(), g.order());
        let tiny = build_contiguous_model(&Graph::empty(1000), 1e-6, Seed::new(1)).unwrap();
        assert!(tiny.graph.order() <= 1001);
    }
}
