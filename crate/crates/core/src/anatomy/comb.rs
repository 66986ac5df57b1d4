use crate::graph::{Adjacency, Graph};
use crate::random::Seed;
use crate::{Error, Result};
use rand::seq::IndexedRandom;
use rand::Rng;
use serde::Serialize;

/// Move rule of the greedy path search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathRule {
    /// Prefer moves that leave a continuation, then fewest fresh neighbours.
    /// Gives long paths and follows spines of combs.
    Long,
    /// Fewest fresh neighbours only, dead ends allowed. Gives shorter, less
    /// crowded paths, which keep more teeth in [`extract_comb`].
    Sparse,
}

/// Greedy randomized search for a long induced path, best of `tries` restarts.
///
/// A path end may only move to a vertex whose sole path neighbour is that end;
/// moves are ranked by [`PathRule::Long`], ties broken at random. Both ends
/// are grown until stuck.
pub fn find_induced_path<G: Adjacency>(g: &G, tries: usize, seed: Seed) -> Vec<usize> {
    let mut search = PathSearch::new(g, seed);
    let mut best: Vec<usize> = Vec::new();
    for _ in 0..tries.max(1) {
        let path = search.grow(PathRule::Long);
        if path.len() > best.len() {
            best = path;
        }
    }
    assert!(is_induced_path(g, &best), "path search produced a non-induced path");
    best
}

/// Comb with the most teeth over `tries` searched paths, alternating the two
/// move rules.
pub fn find_comb<G: Adjacency>(g: &G, tries: usize, seed: Seed) -> Result<CombExtraction> {
    let mut search = PathSearch::new(g, seed);
    let mut best: Option<CombExtraction> = None;
    let mut last_err = Error::DegreeTooLow;
    for i in 0..tries.max(1) {
        let rule = if i % 2 == 0 { PathRule::Long } else { PathRule::Sparse };
        let path = search.grow(rule);
        assert!(is_induced_path(g, &path), "path search produced a non-induced path");
        match extract_comb(g, &path) {
            Ok(ex) if best.as_ref().is_none_or(|b| ex.u_star_size > b.u_star_size) => best = Some(ex),
            Ok(_) => {}
            Err(e) => last_err = e,
        }
    }
    best.ok_or(last_err)
}

struct PathSearch<'g, G> {
    g: &'g G,
    rng: rand_chacha::ChaCha8Rng,
    // cnt[v] = number of path vertices adjacent to v
    cnt: Vec<u32>,
    on_path: Vec<bool>,
}

impl<'g, G: Adjacency> PathSearch<'g, G> {
    fn new(g: &'g G, seed: Seed) -> Self {
        let n = g.order();
        PathSearch { g, rng: seed.rng(), cnt: vec![0; n], on_path: vec![false; n] }
    }

    fn grow(&mut self, rule: PathRule) -> Vec<usize> {
        let g = self.g;
        let n = g.order();
        if n == 0 {
            return Vec::new();
        }
        self.cnt.iter_mut().for_each(|c| *c = 0);
        self.on_path.iter_mut().for_each(|b| *b = false);
        let start = self.rng.random_range(0..n);
        let mut path = vec![start];
        self.push(start);
        let mut cands: Vec<(bool, usize, usize)> = Vec::new();
        for _ in 0..2 {
            loop {
                let end = *path.last().unwrap();
                cands.clear();
                for w in g.neighbors(end) {
                    if self.on_path[w] || self.cnt[w] != 1 {
                        continue;
                    }
                    let fresh = g.neighbors(w).filter(|&x| !self.on_path[x] && self.cnt[x] == 0).count();
                    cands.push((rule == PathRule::Long && fresh == 0, fresh, w));
                }
                let Some(&(dead, fresh, _)) = cands.iter().min() else { break };
                let ties: Vec<usize> = cands.iter().filter(|c| c.0 == dead && c.1 == fresh).map(|c| c.2).collect();
                let w = *ties.choose(&mut self.rng).unwrap();
                path.push(w);
                self.push(w);
            }
            path.reverse();
        }
        path
    }

    fn push(&mut self, v: usize) {
        self.on_path[v] = true;
        for w in self.g.neighbors(v) {
            self.cnt[w] += 1;
        }
    }
}

/// Distinct vertices, consecutive ones adjacent, no other adjacencies.
pub fn is_induced_path<G: Adjacency>(g: &G, path: &[usize]) -> bool {
    let n = g.order();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in path.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return false;
        }
        pos[v] = i;
    }
    path.iter().enumerate().all(|(i, &v)| {
        let on_path: Vec<usize> = g.neighbors(v).filter(|&w| pos[w] != usize::MAX).map(|w| pos[w]).collect();
        let expected = (i > 0) as usize + (i + 1 < path.len()) as usize;
        on_path.len() == expected && on_path.iter().all(|&j| j + 1 == i || i + 1 == j)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CombExtraction {
    /// Induced subgraph on the path followed by `u_star`, in that vertex order.
    #[serde(skip)]
    pub comb: Graph,
    pub path: Vec<usize>,
    pub u_star: Vec<usize>,
    pub u_star_size: usize,
}

/// Attaches teeth to an induced path.
///
/// Each path vertex `v_i` picks the off-path neighbour with the fewest path
/// neighbours (lowest label on ties) as `u_i`. A tooth survives when it was
/// picked once, has exactly one neighbour in `V(P) ∪ U`, and is not adjacent
/// to either of the two first or two last path vertices.
pub fn extract_comb<G: Adjacency>(g: &G, path: &[usize]) -> Result<CombExtraction> {
    if !is_induced_path(g, path) {
        return Err(Error::PathNotInduced);
    }
    let n = g.order();
    let mut on_path = vec![false; n];
    for &v in path {
        on_path[v] = true;
    }
    let path_deg = |u: usize| g.neighbors(u).filter(|&w| on_path[w]).count();
    let picks: Vec<Option<usize>> = path
        .iter()
        .map(|&v| g.neighbors(v).filter(|&u| !on_path[u]).min_by_key(|&u| (path_deg(u), u)))
        .collect();
    if picks.iter().all(Option::is_none) {
        return Err(Error::DegreeTooLow);
    }
    let mut times_picked = vec![0u32; n];
    let mut in_u = vec![false; n];
    for &u in picks.iter().flatten() {
        times_picked[u] += 1;
        in_u[u] = true;
    }
    let l = path.len();
    let ends: Vec<usize> = [0, 1, l.saturating_sub(2), l - 1]
        .into_iter()
        .filter(|&i| i < l)
        .map(|i| path[i])
        .collect();
    let mut u_star = Vec::new();
    for &u in picks.iter().flatten() {
        if times_picked[u] != 1 {
            continue;
        }
        let deg_in = g.neighbors(u).filter(|&w| on_path[w] || in_u[w]).count();
        if deg_in == 1 && ends.iter().all(|&e| !g.has_edge(u, e)) {
            u_star.push(u);
        }
    }
    let verts: Vec<usize> = path.iter().chain(&u_star).copied().collect();
    let mut comb = Graph::empty(verts.len());
    for (i, &a) in verts.iter().enumerate() {
        for (j, &b) in verts.iter().enumerate().skip(i + 1) {
            if g.has_edge(a, b) {
                comb.add_edge_unchecked(i, j);
            }
        }
    }
    Ok(CombExtraction { comb, path: path.to_vec(), u_star_size: u_star.len(), u_star })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::sample_regular_sparse;

    #[test]
    fn paths_and_cliques() {
        let p = Graph::path(12);
        let found = find_induced_path(&p, 20, Seed::new(1));
        assert_eq!(found.len(), 12);
        let k = Graph::complete(7);
        assert_eq!(find_induced_path(&k, 10, Seed::new(2)).len(), 2);
    }

    #[test]
    fn induced_check() {
        let c = Graph::cycle(5);
        assert!(is_induced_path(&c, &[0, 1, 2, 3]));
        assert!(!is_induced_path(&c, &[0, 1, 2, 3, 4]));
        assert!(!is_induced_path(&c, &[0, 2]));
        assert!(!is_induced_path(&c, &[0, 1, 0]));
    }

    #[test]
    fn comb_spine_recovers_interior_teeth() {
        for n in [6, 10, 20] {
            let g = Graph::comb(n);
            let spine: Vec<usize> = (0..n).collect();
            let ex = extract_comb(&g, &spine).unwrap();
            assert_eq!(ex.u_star, (2..n - 2).map(|i| n + i).collect::<Vec<_>>());
            for t in path_len_range(&ex) {
                assert_eq!(ex.comb.degree(t), 1);
            }
            assert_eq!(ex.comb.edge_count(), ex.comb.order() - 1);
        }
    }

    fn path_len_range(ex: &CombExtraction) -> std::ops::Range<usize> {
        ex.path.len()..ex.path.len() + ex.u_star_size
    }

    #[test]
    fn clique_edge_has_no_teeth() {
        let g = Graph::complete(4);
        let ex = extract_comb(&g, &[0, 1]).unwrap();
        assert_eq!(ex.u_star_size, 0);
        assert!(matches!(extract_comb(&g, &[0, 1, 2]), Err(Error::PathNotInduced)));
        assert!(matches!(extract_comb(&Graph::path(3), &[0, 1, 2]), Err(Error::DegreeTooLow)));
    }

    #[test]
    fn random_cubic_graphs() {
        let g = sample_regular_sparse(200, 3, Seed::new(7)).unwrap();
        let path = find_induced_path(&g, 200, Seed::new(8));
        assert!(path.len() >= 10, "path length {}", path.len());
        let ex = find_comb(&g, 50, Seed::new(8)).unwrap();
        assert!(is_induced_path(&g, &ex.path));
        for t in path_len_range(&ex) {
            assert_eq!(ex.comb.degree(t), 1);
        }
        assert_eq!(ex.comb.edge_count(), ex.comb.order() - 1);
        assert!(ex.u_star_size >= 20, "{} teeth", ex.u_star_size);
    }

}
