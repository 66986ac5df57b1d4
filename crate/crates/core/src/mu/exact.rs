use super::{MuConfig, MuReport};
use crate::graph::{brute, CanonicalForm, Canonizer, Graph, VertexSet, MAX_CANON_ORDER};
use crate::{Error, Result};
use num_bigint::BigUint;
use rayon::prelude::*;
use std::collections::{HashMap, HashSet};
use std::time::Instant;

/// Order limit of [`mu_oracle_naive`].
pub const NAIVE_ORACLE_CAP: usize = 10;

const CHUNK: u64 = 1 << 12;

pub fn mu_exact(g: &Graph) -> Result<MuReport> {
    mu_exact_with(g, &MuConfig::default())
}

/// Canonicalizes the induced subgraph of every vertex subset and counts the
/// distinct certificates. Subsets are split into fixed-size index ranges, each
/// rayon task keeps a private set, and the sets are merged by union, so the
/// count does not depend on the number of workers.
pub fn mu_exact_with(g: &Graph, cfg: &MuConfig) -> Result<MuReport> {
    let n = g.order();
    let cap = cfg.exact_cap.min(MAX_CANON_ORDER).min(40);
    if n > cap {
        return Err(Error::TooLarge { order: n, cap });
    }
    let start = Instant::now();
    let rows = g.small_rows().expect("order checked");
    let total = 1u64 << n;
    let chunks = total.div_ceil(CHUNK);
    let seen = (0..chunks)
        .into_par_iter()
        .fold(
            || (Canonizer::default(), HashSet::<CanonicalForm>::new(), Vec::with_capacity(n)),
            |(mut canon, mut set, mut sub), c| {
                for mask in c * CHUNK..((c + 1) * CHUNK).min(total) {
                    induced_rows(&rows, mask, &mut sub);
                    set.insert(canon.certificate(&sub));
                }
                (canon, set, sub)
            },
        )
        .map(|(_, set, _)| set)
        .reduce(HashSet::new, |a, b| {
            let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
            big.extend(small);
            big
        });
    let mut report = MuReport::new(n);
    report.exact = Some(BigUint::from(seen.len()));
    report.subsets_enumerated = total;
    report.elapsed = start.elapsed().as_secs_f64();
    report.finish()
}

/// Rows of `G[mask]` relabelled to `0..|mask|` in increasing vertex order,
/// i.e. a software parallel-bit-extract of each row through `mask`.
fn induced_rows(rows: &[u64], mask: u64, out: &mut Vec<u64>) {
    out.clear();
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        out.push(extract(rows[v] & mask, mask));
    }
}

fn extract(x: u64, mask: u64) -> u64 {
    let mut out = 0u64;
    let mut m = mask;
    let mut bit = 0;
    while m != 0 {
        let low = m & m.wrapping_neg();
        if x & low != 0 {
            out |= 1 << bit;
        }
        bit += 1;
        m ^= low;
    }
    out
}

/// Counts isomorphism classes of induced subgraphs with permutation-search
/// isomorphism tests only. Subsets are bucketed by size, edge count and
/// sorted degree sequence before pairwise testing.
pub fn mu_oracle_naive(g: &Graph) -> Result<BigUint> {
    let n = g.order();
    if n > NAIVE_ORACLE_CAP {
        return Err(Error::TooLarge { order: n, cap: NAIVE_ORACLE_CAP });
    }
    let mut buckets: HashMap<(usize, usize, Vec<usize>), Vec<Graph>> = HashMap::new();
    let mut classes = 0usize;
    for mask in 0..1u64 << n {
        let h = g.induced_subgraph(&VertexSet::from_mask(n, mask));
        let mut degs = h.degrees();
        degs.sort_unstable();
        let reps = buckets.entry((h.order(), h.edge_count(), degs)).or_default();
        if !reps.iter().any(|r| brute::isomorphic(r, &h)) {
            reps.push(h);
            classes += 1;
        }
    }
    Ok(BigUint::from(classes))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mu(g: &Graph) -> u64 {
        mu_exact(g).unwrap().exact.unwrap().try_into().unwrap()
    }

    #[test]
    fn extract_packs_bits() {
        assert_eq!(extract(0b1010_0110, 0b1110_0110), 0b10111);
        assert_eq!(extract(u64::MAX, 0), 0);
        let mut out = Vec::new();
        // path 0-1-2-3, keep {0, 1, 3}: edge 0-1 only
        let p = Graph::path(4).small_rows().unwrap();
        induced_rows(&p, 0b1011, &mut out);
        assert_eq!(out, vec![0b010, 0b001, 0b000]);
    }

    #[test]
    fn small_examples() {
        assert_eq!(mu(&Graph::complete(5)), 6);
        assert_eq!(mu(&Graph::empty(7)), 8);
        assert_eq!(mu(&Graph::path(3)), 5);
        assert_eq!(mu(&Graph::cycle(5)), 8);
        assert_eq!(mu(&Graph::empty(0)), 1);
        assert!(mu(&Graph::comb(8)) >= 32);
        assert!(matches!(mu_exact(&Graph::empty(25)), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(mu_oracle_naive(&Graph::complete(3)).unwrap(), BigUint::from(4u32));
        assert_eq!(mu_oracle_naive(&Graph::cycle(5)).unwrap(), BigUint::from(8u32));
        assert_eq!(mu_oracle_naive(&Graph::path(3)).unwrap(), BigUint::from(5u32));
        assert!(mu_oracle_naive(&Graph::empty(11)).is_err());
    }
}
