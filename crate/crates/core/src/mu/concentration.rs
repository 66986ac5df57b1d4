use crate::graph::{Adjacency, VertexSet};
use crate::random::Seed;
use crate::{Error, Real, Result};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

const EXHAUSTIVE_LIMIT: usize = 20;

/// Denominator of the edge-count ratio.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Expectation {
    /// `C(|W|, 2)·p`, with the empirical edge density when `None`.
    Density(Option<f64>),
    /// `d·|W|² / (2n)` for d-regular graphs.
    Regular(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EdgeConcentrationReport<F> {
    pub min_ratio: F,
    pub max_ratio: F,
    /// Smallest |W| tested.
    pub threshold_size: usize,
    pub tested: usize,
}

/// Ratio `|E(G[W])| / expected` over subsets `W ⊆ U` with `|W| ≥ min_size`:
/// every such subset when `|U| ≤ 20`, otherwise `trials` random ones whose
/// size is uniform on `min_size..=|U|`. A zero expectation with zero edges
/// counts as ratio 0.
pub fn edge_concentration<F: Real, G: Adjacency>(
    g: &G,
    u: &VertexSet,
    min_size: usize,
    trials: usize,
    expectation: Expectation,
    seed: Seed,
) -> Result<EdgeConcentrationReport<F>> {
    let n = g.order();
    if min_size < 2 || u.len() < min_size {
        return Err(Error::InvalidParameter(format!("need 2 ≤ min_size ≤ |U|, got {min_size} with |U| = {}", u.len())));
    }
    if u.universe() != n {
        return Err(Error::InvalidParameter("vertex set and graph differ in order".into()));
    }
    let p = match expectation {
        Expectation::Density(Some(p)) => p,
        Expectation::Density(None) if n >= 2 => 2.0 * g.edge_count() as f64 / (n as f64 * (n - 1) as f64),
        Expectation::Density(None) => 0.0,
        Expectation::Regular(_) => 0.0,
    };
    let expected = |w: usize| match expectation {
        Expectation::Density(_) => (w * (w - 1) / 2) as f64 * p,
        Expectation::Regular(d) => (d * w * w) as f64 / (2 * n) as f64,
    };
    let ratio = |edges: usize, w: usize| {
        let e = expected(w);
        if e > 0.0 {
            edges as f64 / e
        } else if edges == 0 {
            0.0
        } else {
            f64::INFINITY
        }
    };
    let verts: Vec<usize> = u.iter().collect();
    let mut acc = (f64::INFINITY, f64::NEG_INFINITY, usize::MAX, 0usize);
    let mut record = |edges: usize, w: usize| {
        let r = ratio(edges, w);
        acc = (acc.0.min(r), acc.1.max(r), acc.2.min(w), acc.3 + 1);
    };
    if verts.len() <= EXHAUSTIVE_LIMIT {
        let rows: Vec<u32> = verts
            .iter()
            .map(|&v| verts.iter().enumerate().filter(|&(_, &w)| g.has_edge(v, w)).fold(0, |r, (i, _)| r | 1 << i))
            .collect();
        for mask in 0u32..1 << verts.len() {
            let w = mask.count_ones() as usize;
            if w < min_size {
                continue;
            }
            let twice: u32 = (0..verts.len()).filter(|i| mask >> i & 1 == 1).map(|i| (rows[i] & mask).count_ones()).sum();
            record(twice as usize / 2, w);
        }
    } else {
        let mut rng = seed.rng();
        let mut pool = verts.clone();
        let mut inside = vec![false; n];
        for _ in 0..trials {
            let w = rng.random_range(min_size..=pool.len());
            let (chosen, _) = pool.partial_shuffle(&mut rng, w);
            chosen.iter().for_each(|&v| inside[v] = true);
            let twice: usize = chosen.iter().map(|&v| g.neighbors(v).filter(|&x| inside[x]).count()).sum();
            chosen.iter().for_each(|&v| inside[v] = false);
            record(twice / 2, w);
        }
    }
    let (min_ratio, max_ratio, threshold_size, tested) = acc;
    if tested == 0 {
        return Err(Error::InvalidParameter("no subset tested".into()));
    }
    Ok(EdgeConcentrationReport { min_ratio: F::c(min_ratio), max_ratio: F::c(max_ratio), threshold_size, tested })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::random::sample_gnp_sparse;

    #[test]
    fn complete_and_empty() {
        let g = Graph::complete(10);
        let all = VertexSet::full(10);
        let r: EdgeConcentrationReport<f64> =
            edge_concentration(&g, &all, 2, 0, Expectation::Density(Some(1.0)), Seed::new(0)).unwrap();
        assert_eq!((r.min_ratio, r.max_ratio, r.threshold_size), (1.0, 1.0, 2));
        assert_eq!(r.tested, 1024 - 11);
        let e: EdgeConcentrationReport<f64> =
            edge_concentration(&Graph::empty(10), &all, 3, 0, Expectation::Density(None), Seed::new(0)).unwrap();
        assert_eq!((e.min_ratio, e.max_ratio), (0.0, 0.0));
        assert!(edge_concentration::<f64, _>(&g, &all, 1, 0, Expectation::Density(None), Seed::new(0)).is_err());
    }

    #[test]
    fn regular_denominator() {
        // C₂₄ restricted to an arc of 12 vertices: 11 edges against 2·144/48 = 6
        let g = Graph::cycle(24);
        let arc = VertexSet::from_vertices(24, 0..12);
        let r: EdgeConcentrationReport<f64> =
            edge_concentration(&g, &arc, 12, 0, Expectation::Regular(2), Seed::new(0)).unwrap();
        assert!((r.max_ratio - 11.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn dense_random_sets_are_concentrated() {
        let n = 4000;
        let g = sample_gnp_sparse(n, 200.0 / n as f64, Seed::new(2)).unwrap();
        let r: EdgeConcentrationReport<f64> = edge_concentration(
            &g,
            &VertexSet::full(n),
            n / 100,
            200,
            Expectation::Density(Some(200.0 / n as f64)),
            Seed::new(3),
        )
        .unwrap();
        assert!(r.min_ratio > 0.5 && r.max_ratio < 1.5, "{r:?}");
        assert_eq!(r.tested, 200);
    }
}
