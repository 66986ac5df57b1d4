//! Simple undirected graphs, vertex sets and isomorphism machinery.

mod automorphism;
pub mod brute;
mod canon;
pub mod io;
mod refine;
mod sparse;

pub use automorphism::{automorphism_count, automorphism_count_with, DEFAULT_AUTOMORPHISM_CAP};
pub use canon::{are_isomorphic, canonical_form, canonical_form_with, CanonicalForm, DEFAULT_CANON_CAP, MAX_CANON_ORDER};
pub(crate) use canon::Canonizer;
pub use refine::{automorphism_log2_upper_bound, color_refinement};
pub use sparse::SparseGraph;

use crate::{Error, Result};

/// Read access to adjacency shared by the dense and sparse representations.
pub trait Adjacency: Sync {
    type Neighbors<'a>: Iterator<Item = usize> + 'a
    where
        Self: 'a;

    fn order(&self) -> usize;
    fn degree(&self, v: usize) -> usize;
    fn neighbors(&self, v: usize) -> Self::Neighbors<'_>;
    fn has_edge(&self, u: usize, v: usize) -> bool;

    fn edge_count(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Returns `Some(d)` when every vertex has degree `d` (`None` for the empty graph).
    fn regular_degree(&self) -> Option<usize> {
        let n = self.order();
        if n == 0 {
            return None;
        }
        let d = self.degree(0);
        (1..n).all(|v| self.degree(v) == d).then_some(d)
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    fn components(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Dense simple undirected graph on vertices `0..n`, stored as adjacency bit rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        Graph { n, words, rows: vec![0; n * words] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge_unchecked(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.add_edge_unchecked(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge_unchecked(0, n - 1);
        }
        g
    }

    /// Comb on `2n` vertices: spine `0..n` is a path and vertex `n + i` is a
    /// pendant tooth at spine vertex `i`.
    pub fn comb(n: usize) -> Self {
        let mut g = Graph::empty(2 * n);
        for i in 0..n {
            if i > 0 {
                g.add_edge_unchecked(i - 1, i);
            }
            g.add_edge_unchecked(i, n + i);
        }
        g
    }

    /// Builds a graph from an edge list. Duplicate edges are merged.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph on at most 64 vertices from bit rows.
    pub(crate) fn from_small_rows(rows: &[u64]) -> Self {
        let n = rows.len();
        assert!(n <= 64);
        let mut g = Graph::empty(n);
        g.rows.copy_from_slice(rows);
        g
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x, order: self.n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.add_edge_unchecked(u, v);
        Ok(())
    }

    pub(crate) fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.n && v < self.n {
            self.rows[u * self.words + v / 64] &= !(1 << (v % 64));
            self.rows[v * self.words + u / 64] &= !(1 << (u % 64));
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Adjacency bit row of `v`.
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Number of 64-bit words per row.
    pub fn words_per_row(&self) -> usize {
        self.words
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> BitIter<'_> {
        BitIter::new(self.row(v))
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge_unchecked(u, v);
                }
            }
        }
        g
    }

    /// Subgraph induced by `set`, relabelled to `0..|set|` in increasing vertex order.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Graph {
        let verts: Vec<usize> = set.iter().filter(|&v| v < self.n).collect();
        self.induced_by(&verts)
    }

    /// Subgraph induced by `verts`, where vertex `i` of the result is `verts[i]`.
    pub fn induced_by(&self, verts: &[usize]) -> Graph {
        let mut g = Graph::empty(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge_unchecked(i, j);
                }
            }
        }
        g
    }

    /// Relabels so that vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge_unchecked(perm[u], perm[v]);
        }
        g
    }

    /// Rows as single words when the graph has at most 64 vertices.
    pub fn small_rows(&self) -> Option<Vec<u64>> {
        (self.n <= 64).then(|| self.rows.iter().step_by(self.words).copied().take(self.n).collect())
    }

    /// Edge density `|E| / C(n, 2)`; zero for graphs with fewer than two vertices.
    pub fn density(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        self.edge_count() as f64 / (self.n as f64 * (self.n as f64 - 1.0) / 2.0)
    }
}

impl Adjacency for Graph {
    type Neighbors<'a> = BitIter<'a>;

    fn order(&self) -> usize {
        self.n
    }
    fn degree(&self, v: usize) -> usize {
        Graph::degree(self, v)
    }
    fn neighbors(&self, v: usize) -> BitIter<'_> {
        Graph::neighbors(self, v)
    }
    fn has_edge(&self, u: usize, v: usize) -> bool {
        Graph::has_edge(self, u, v)
    }
    fn edge_count(&self) -> usize {
        Graph::edge_count(self)
    }
}

/// Iterator over set bit positions of a word slice.
#[derive(Clone)]
pub struct BitIter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl<'a> BitIter<'a> {
    pub fn new(words: &'a [u64]) -> Self {
        BitIter { words, idx: 0, cur: words.first().copied().unwrap_or(0) }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + b);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

/// Subset of `0..n` stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VertexSet {
    n: usize,
    bits: Vec<u64>,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet { n, bits: vec![0; words_for(n)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = VertexSet::new(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_vertices(n: usize, verts: impl IntoIterator<Item = usize>) -> Self {
        let mut s = VertexSet::new(n);
        for v in verts {
            s.insert(v);
        }
        s
    }

    /// Set of `n ≤ 64` vertices given by a bit mask.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut s = VertexSet::new(n);
        s.bits[0] = if n >= 64 { mask } else { mask & ((1u64 << n) - 1) };
        s
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    /// Inserts `v`; panics when `v` is outside the universe.
    pub fn insert(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} outside universe of size {}", self.n);
        self.bits[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.n {
            self.bits[v / 64] &= !(1 << (v % 64));
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.bits[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> BitIter<'_> {
        BitIter::new(&self.bits)
    }

    pub fn words(&self) -> &[u64] {
        &self.bits
    }

    pub fn complement(&self) -> VertexSet {
        let mut s = VertexSet::full(self.n);
        for (a, b) in s.bits.iter_mut().zip(&self.bits) {
            *a &= !b;
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders_have_expected_edge_counts() {
        assert_eq!(Graph::complete(6).edge_count(), 15);
        assert_eq!(Graph::path(5).edge_count(), 4);
        assert_eq!(Graph::cycle(7).edge_count(), 7);
        let c = Graph::comb(5);
        assert_eq!(c.order(), 10);
        assert_eq!(c.edge_count(), 9);
        assert_eq!(Graph::empty(0).edge_count(), 0);
    }

    #[test]
    fn rows_cross_word_boundaries() {
        let mut g = Graph::empty(130);
        g.add_edge(3, 129).unwrap();
        g.add_edge(64, 65).unwrap();
        assert!(g.has_edge(129, 3));
        assert_eq!(g.neighbors(3).collect::<Vec<_>>(), vec![129]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(3, 129), (64, 65)]);
        assert!(g.add_edge(5, 5).is_err());
        assert!(g.add_edge(5, 130).is_err());
    }

    #[test]
    fn induced_subgraph_relabels_in_order() {
        let g = Graph::cycle(6);
        let s = VertexSet::from_vertices(6, [0, 1, 2, 5]);
        let h = g.induced_subgraph(&s);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 3), (1, 2)]);
    }

    #[test]
    fn components_of_disjoint_union() {
        let g = Graph::from_edges(6, [(0, 1), (2, 3), (3, 4)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1], vec![2, 3, 4], vec![5]]);
        assert_eq!(Graph::cycle(5).regular_degree(), Some(2));
        assert_eq!(Graph::path(5).regular_degree(), None);
    }

    #[test]
    fn vertex_set_basics() {
        let mut s = VertexSet::new(70);
        s.insert(69);
        s.insert(0);
        assert_eq!(s.len(), 2);
        assert_eq!(s.complement().len(), 68);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 69]);
    }
}
