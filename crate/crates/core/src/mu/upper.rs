use super::{Bound, MuReport};
use crate::formulas::{tree_classes_bound, unicyclic_classes_bound};
use crate::graph::{Adjacency, CanonicalForm, Canonizer, Graph};
use crate::{Error, Result};
use std::collections::HashSet;
use std::time::Instant;

/// Largest small component whose connected induced subgraphs are enumerated.
pub const MAX_CENSUS_COMPONENT: usize = 20;

/// `⌈2 ln ln n⌉`, at least 1.
pub fn default_threshold(n: usize) -> usize {
    let lnln = (n as f64).ln().ln();
    if lnln.is_finite() && lnln > 0.0 {
        ((2.0 * lnln).ceil() as usize).max(1)
    } else {
        1
    }
}

/// Upper bounds on log2 μ(G) from a component census.
///
/// Vertices of components larger than the threshold `t` form `U`, and
/// contribute at most a factor 2^{|U|}. Any induced subgraph of the rest is a
/// disjoint union of connected graphs on at most `t` vertices, each an induced
/// subgraph of a small component, so it is fixed by how many copies of each
/// such type it contains:
///
/// * `otter`: at most n+1 multiplicities per type, with k·4^k tree types and
///   k³·4^k unicyclic types on k ≤ t vertices, plus the complex types found
///   by enumeration;
/// * `exact_census`: the types found by enumerating the connected induced
///   subgraphs of each small component, type τ occurring at most
///   ⌊n_small/|τ|⌋ times.
pub fn mu_upper_subcritical<G: Adjacency>(g: &G, threshold: Option<usize>) -> Result<MuReport> {
    let start = Instant::now();
    let n = g.order();
    let t = threshold.unwrap_or_else(|| default_threshold(n));
    if t == 0 {
        return Err(Error::InvalidParameter("component threshold must be positive".into()));
    }
    let comps = g.components();
    let big: usize = comps.iter().filter(|c| c.len() > t).map(Vec::len).sum();
    let small_total = n - big;
    let mut canon = Canonizer::default();
    let mut seen_components: HashSet<CanonicalForm> = HashSet::new();
    let mut types: HashSet<CanonicalForm> = HashSet::new();
    let mut complex_types = 0usize;
    for comp in comps.iter().filter(|c| c.len() <= t) {
        if comp.len() > MAX_CENSUS_COMPONENT {
            return Err(Error::InvalidParameter(format!(
                "threshold {t} admits a component of {} vertices, census limit is {MAX_CENSUS_COMPONENT}",
                comp.len()
            )));
        }
        let rows = local_rows(g, comp);
        if !seen_components.insert(canon.certificate(&rows)) {
            continue;
        }
        for mask in 1..1u64 << rows.len() {
            if !connected(&rows, mask) {
                continue;
            }
            let sub = Graph::from_small_rows(&rows).induced_by(&bits(mask));
            let (k, m) = (sub.order(), sub.edge_count());
            if types.insert(canon.certificate(&sub.small_rows().expect("small"))) && m > k {
                complex_types += 1;
            }
        }
    }

    let log_n1 = ((n + 1) as f64).log2();
    let otter_classes: f64 = (1..=t).map(|k| tree_classes_bound(k) + unicyclic_classes_bound(k)).sum();
    let census: f64 = types.iter().map(|c| ((small_total / c.order() + 1) as f64).log2()).sum();
    let mut report = MuReport::new(n);
    report.upper_bounds.push(Bound::certified("otter", big as f64 + log_n1 * (otter_classes + complex_types as f64)));
    report.upper_bounds.push(Bound::certified("exact_census", big as f64 + census));
    report.notes.push(format!("threshold={t} large_vertices={big} small_types={}", types.len()));
    report.elapsed = start.elapsed().as_secs_f64();
    report.finish()
}

fn local_rows<G: Adjacency>(g: &G, comp: &[usize]) -> Vec<u64> {
    comp.iter()
        .map(|&v| {
            g.neighbors(v).fold(0u64, |r, w| match comp.binary_search(&w) {
                Ok(i) => r | 1 << i,
                Err(_) => r,
            })
        })
        .collect()
}

fn bits(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

fn connected(rows: &[u64], mask: u64) -> bool {
    let mut reached = mask & mask.wrapping_neg();
    loop {
        let mut next = reached;
        let mut r = reached;
        while r != 0 {
            next |= rows[r.trailing_zeros() as usize] & mask;
            r &= r - 1;
        }
        if next == reached {
            return reached == mask;
        }
        reached = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mu::{log2_big, mu_exact};
    use crate::random::{sample_gnp, Seed};

    fn bound(r: &MuReport, method: &str) -> f64 {
        r.upper_bounds.iter().find(|b| b.method == method).unwrap().log2
    }

    #[test]
    fn empty_graph() {
        let n = 15;
        let r = mu_upper_subcritical(&Graph::empty(n), Some(1)).unwrap();
        assert!((bound(&r, "exact_census") - 16f64.log2()).abs() < 1e-12);
        assert!((bound(&r, "otter") - 8.0 * 16f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn matching_is_counted_by_multisets() {
        let g = Graph::from_edges(20, (0..10).map(|i| (2 * i, 2 * i + 1))).unwrap();
        let exact = log2_big(mu_exact(&g).unwrap().exact.as_ref().unwrap());
        let r = mu_upper_subcritical(&g, Some(2)).unwrap();
        // types K1 (≤ 20 copies) and K2 (≤ 10 copies)
        assert!((bound(&r, "exact_census") - (21f64 * 11.0).log2()).abs() < 1e-12);
        assert!(exact <= bound(&r, "exact_census") + 1e-9);
    }

    #[test]
    fn sound_on_sparse_random_graphs() {
        for s in 0..20 {
            let g = sample_gnp(18, 0.5 / 18.0, Seed::new(s)).unwrap();
            let exact = mu_exact(&g).unwrap();
            let mut r = mu_upper_subcritical(&g, None).unwrap();
            r.exact = exact.exact;
            r.finish().unwrap();
        }
    }

    #[test]
    fn connectivity_of_masks() {
        let rows = Graph::path(4).small_rows().unwrap();
        assert!(connected(&rows, 0b0110));
        assert!(!connected(&rows, 0b1001));
        assert!(connected(&rows, 0b1111));
        assert_eq!(default_threshold(100_000), 5);
        assert_eq!(default_threshold(2), 1);
    }
}
