//! Seeded samplers. Every sampler draws from ChaCha8 (`rand_chacha`) keyed by
//! a [`Seed`]: the seed value keys the generator and the stream id selects
//! an independent ChaCha stream.

use crate::graph::{Graph, SparseGraph, VertexSet};
use crate::tree::RootedTree;
use crate::{Error, Result};
use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// Generator identity: `value` keys ChaCha8 (via `seed_from_u64`), `stream`
/// selects the ChaCha stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed {
    pub value: u64,
    pub stream: u64,
}

impl Seed {
    pub fn new(value: u64) -> Self {
        Seed { value, stream: 0 }
    }

    pub fn with_stream(value: u64, stream: u64) -> Self {
        Seed { value, stream }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.value);
        rng.set_stream(self.stream);
        rng
    }

    /// Child seed for replica or purpose `tag`: same value, stream
    /// `splitmix64(stream ^ splitmix64(tag))`.
    pub fn derive(&self, tag: u64) -> Seed {
        Seed { value: self.value, stream: splitmix64(self.stream ^ splitmix64(tag)) }
    }
}

impl std::fmt::Display for Seed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.value, self.stream)
    }
}

pub(crate) fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Below this edge probability the G(n,p) sampler skips geometrically.
pub const GEOMETRIC_SKIP_BELOW: f64 = 0.1;

/// Edges of G(n, p) in lexicographic order. Pairs `(u, v)`, `u < v`, are
/// visited in lexicographic order; for `p < 0.1` the gap to the next edge is
/// drawn as `⌊ln U / ln(1-p)⌋` with `U` uniform on (0, 1], otherwise every
/// pair draws one uniform `[0, 1)` variate.
pub fn gnp_edges(n: usize, p: f64, seed: Seed) -> Result<Vec<(u32, u32)>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("edge probability {p} outside [0, 1]")));
    }
    if n > u32::MAX as usize {
        return Err(Error::InvalidParameter("order exceeds u32 labels".into()));
    }
    let mut edges = Vec::new();
    if n < 2 || p == 0.0 {
        return Ok(edges);
    }
    let mut rng = seed.rng();
    if p == 1.0 {
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u as u32, v as u32));
            }
        }
    } else if p < GEOMETRIC_SKIP_BELOW {
        let log_q = (1.0 - p).ln();
        let (mut u, mut v) = (0usize, 0usize); // v is the last visited column in row u
        loop {
            let r: f64 = 1.0 - rng.random::<f64>();
            let skip = (r.ln() / log_q).floor();
            if skip >= (n * n) as f64 {
                break;
            }
            let mut step = skip as usize + 1;
            // advance `step` pairs
            loop {
                let left = n - 1 - v;
                if step <= left {
                    v += step;
                    break;
                }
                step -= left;
                u += 1;
                v = u;
                if u >= n - 1 {
                    return Ok(edges);
                }
            }
            edges.push((u as u32, v as u32));
        }
    } else {
        for u in 0..n {
            for v in u + 1..n {
                if rng.random::<f64>() < p {
                    edges.push((u as u32, v as u32));
                }
            }
        }
    }
    Ok(edges)
}

/// Dense sample of G(n, p).
pub fn sample_gnp(n: usize, p: f64, seed: Seed) -> Result<Graph> {
    let mut g = Graph::empty(n);
    for (u, v) in gnp_edges(n, p, seed)? {
        g.add_edge_unchecked(u as usize, v as usize);
    }
    Ok(g)
}

/// Sparse sample of G(n, p); the same graph as [`sample_gnp`] for the same seed.
pub fn sample_gnp_sparse(n: usize, p: f64, seed: Seed) -> Result<SparseGraph> {
    SparseGraph::from_edges(n, &gnp_edges(n, p, seed)?)
}

/// Default number of rejected pairings before giving up.
pub const DEFAULT_PAIRING_RETRIES: usize = 10_000;

/// Uniform simple d-regular graph by the pairing model with full rejection.
pub fn regular_edges(n: usize, d: usize, seed: Seed, max_retries: usize) -> Result<Vec<(u32, u32)>> {
    if d == 0 || d >= n || (n * d) % 2 == 1 {
        return Err(Error::InvalidParameter(format!("no {d}-regular graph on {n} vertices (need 1 ≤ d < n, nd even)")));
    }
    let mut rng = seed.rng();
    let mut points: Vec<u32> = (0..n * d).map(|i| (i / d) as u32).collect();
    let mut seen: HashSet<(u32, u32)> = HashSet::with_capacity(n * d / 2);
    for _ in 0..=max_retries {
        points.sort_unstable();
        points.shuffle(&mut rng);
        seen.clear();
        let mut ok = true;
        for pair in points.chunks_exact(2) {
            let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if a == b || !seen.insert((a, b)) {
                ok = false;
                break;
            }
        }
        if ok {
            let mut edges: Vec<(u32, u32)> = seen.drain().collect();
            edges.sort_unstable();
            return Ok(edges);
        }
    }
    Err(Error::RetryLimit(max_retries))
}

pub fn sample_regular(n: usize, d: usize, seed: Seed) -> Result<Graph> {
    let mut g = Graph::empty(n);
    for (u, v) in regular_edges(n, d, seed, DEFAULT_PAIRING_RETRIES)? {
        g.add_edge_unchecked(u as usize, v as usize);
    }
    Ok(g)
}

pub fn sample_regular_sparse(n: usize, d: usize, seed: Seed) -> Result<SparseGraph> {
    SparseGraph::from_edges(n, &regular_edges(n, d, seed, DEFAULT_PAIRING_RETRIES)?)
}

/// Each vertex independently with probability 1/2, one bit per vertex from
/// successive 64-bit outputs.
pub fn sample_subset(n: usize, seed: Seed) -> VertexSet {
    subset_from_rng(n, &mut seed.rng())
}

pub(crate) fn subset_from_rng(n: usize, rng: &mut impl RngCore) -> VertexSet {
    let mut s = VertexSet::new(n);
    let mut word = 0u64;
    for v in 0..n {
        if v % 64 == 0 {
            word = rng.next_u64();
        }
        if word >> (v % 64) & 1 == 1 {
            s.insert(v);
        }
    }
    s
}

/// Poisson variate by sequential inversion; `exp_neg` must be `e^{-λ}`.
pub fn poisson(rng: &mut impl Rng, lambda: f64, exp_neg: f64) -> u32 {
    let u: f64 = rng.random();
    let mut pmf = exp_neg;
    let mut cdf = pmf;
    let mut k = 0u32;
    while u >= cdf && k < 10_000 {
        k += 1;
        pmf *= lambda / k as f64;
        if pmf == 0.0 {
            break;
        }
        cdf += pmf;
    }
    k
}

/// Poisson Galton–Watson parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GwConfig {
    pub lambda: f64,
    pub max_nodes: usize,
}

/// Default truncation guard for Galton–Watson trees.
pub const DEFAULT_MAX_NODES: usize = 1_000_000;

impl GwConfig {
    pub fn new(lambda: f64, max_nodes: usize) -> Result<Self> {
        if !(lambda > 0.0 && lambda < 10.0) || max_nodes == 0 {
            return Err(Error::InvalidParameter(format!("GW config needs 0 < λ < 10 and max_nodes ≥ 1 (λ={lambda}, max_nodes={max_nodes})")));
        }
        Ok(GwConfig { lambda, max_nodes })
    }

    pub fn subcritical(epsilon: f64) -> Result<Self> {
        GwConfig::new(1.0 - epsilon, DEFAULT_MAX_NODES)
    }
}

/// A sampled tree; `truncated` is set when generation hit `max_nodes`.
#[derive(Clone, Debug)]
pub struct GwSample {
    pub tree: RootedTree,
    pub truncated: bool,
}

/// Breadth-first Galton–Watson tree with Pois(λ) offspring.
pub fn sample_gw_tree(cfg: &GwConfig, seed: Seed) -> GwSample {
    gw_from_rng(cfg, &mut seed.rng())
}

pub(crate) fn gw_from_rng(cfg: &GwConfig, rng: &mut impl Rng) -> GwSample {
    let exp_neg = (-cfg.lambda).exp();
    let mut tree = RootedTree::single();
    let mut next = 0usize;
    while next < tree.size() {
        let k = poisson(rng, cfg.lambda, exp_neg) as usize;
        for _ in 0..k {
            if tree.size() >= cfg.max_nodes {
                return GwSample { tree, truncated: true };
            }
            tree.add_child(next);
        }
        next += 1;
    }
    GwSample { tree, truncated: false }
}
