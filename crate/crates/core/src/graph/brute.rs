//! Permutation-search isomorphism, kept independent of the canonical-form
//! code so it can serve as an oracle.

use super::Graph;

/// Tests isomorphism by backtracking over all vertex bijections.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.order();
    if n != b.order() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da = a.degrees();
    let mut db = b.degrees();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    count_maps(a, b, 0, &mut image, &mut used, true) > 0
}

/// `|Aut(g)|` by trying every permutation consistent with adjacency so far.
pub fn automorphism_count(g: &Graph) -> u64 {
    let n = g.order();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    count_maps(g, g, 0, &mut image, &mut used, false)
}

fn count_maps(a: &Graph, b: &Graph, v: usize, image: &mut [usize], used: &mut [bool], stop_at_one: bool) -> u64 {
    let n = a.order();
    if v == n {
        return 1;
    }
    let mut total = 0;
    for w in 0..n {
        if used[w] || a.degree(v) != b.degree(w) {
            continue;
        }
        if (0..v).all(|u| a.has_edge(u, v) == b.has_edge(image[u], w)) {
            image[v] = w;
            used[w] = true;
            total += count_maps(a, b, v + 1, image, used, stop_at_one);
            used[w] = false;
            if stop_at_one && total > 0 {
                return total;
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_basics() {
        assert!(isomorphic(&Graph::path(4), &Graph::path(4).permuted(&[2, 0, 3, 1])));
        assert!(!isomorphic(&Graph::path(4), &Graph::cycle(4)));
        assert_eq!(automorphism_count(&Graph::cycle(6)), 12);
        assert_eq!(automorphism_count(&Graph::empty(0)), 1);
    }
}
