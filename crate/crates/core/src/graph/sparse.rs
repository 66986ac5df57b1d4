use super::{Adjacency, Graph};
use crate::{Error, Result};

/// Simple undirected graph in compressed adjacency form, for graphs too
/// large for bit rows. Neighbour lists are sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseGraph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl SparseGraph {
    /// Builds from an edge list; duplicate edges are merged.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        assert!(n <= u32::MAX as usize);
        let mut deg = vec![0usize; n];
        for &(u, v) in edges {
            let (u, v) = (u as usize, v as usize);
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, order: n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            deg[u] += 1;
            deg[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &deg {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0u32; offsets[n]];
        for &(u, v) in edges {
            targets[fill[u as usize]] = v;
            fill[u as usize] += 1;
            targets[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        // sort and dedup each list, then compact
        let mut out_offsets = Vec::with_capacity(n + 1);
        out_offsets.push(0);
        let mut out = Vec::with_capacity(targets.len());
        for v in 0..n {
            let list = &mut targets[offsets[v]..offsets[v + 1]];
            list.sort_unstable();
            let start = out.len();
            for &w in list.iter() {
                if out.len() == start || *out.last().unwrap() != w {
                    out.push(w);
                }
            }
            out_offsets.push(out.len());
        }
        Ok(SparseGraph { offsets: out_offsets, targets: out })
    }

    pub fn order(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn neighbor_slice(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Dense copy; intended for graphs of moderate order.
    pub fn to_dense(&self) -> Graph {
        let mut g = Graph::empty(self.order());
        for v in 0..self.order() {
            for &w in self.neighbor_slice(v) {
                g.add_edge_unchecked(v, w as usize);
            }
        }
        g
    }

    /// Subgraph induced by `verts` as a dense graph; vertex `i` is `verts[i]`.
    pub fn induced_dense(&self, verts: &[usize]) -> Graph {
        let mut index = std::collections::HashMap::with_capacity(verts.len());
        for (i, &v) in verts.iter().enumerate() {
            index.insert(v, i);
        }
        let mut g = Graph::empty(verts.len());
        for (i, &v) in verts.iter().enumerate() {
            for &w in self.neighbor_slice(v) {
                if let Some(&j) = index.get(&(w as usize)) {
                    g.add_edge_unchecked(i, j);
                }
            }
        }
        g
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order()).flat_map(move |u| {
            self.neighbor_slice(u).iter().map(|&w| w as usize).filter(move |&w| w > u).map(move |w| (u, w))
        })
    }
}

impl From<&Graph> for SparseGraph {
    fn from(g: &Graph) -> Self {
        let edges: Vec<(u32, u32)> = g.edges().map(|(u, v)| (u as u32, v as u32)).collect();
        SparseGraph::from_edges(g.order(), &edges).expect("edges of a valid graph")
    }
}

impl Adjacency for SparseGraph {
    type Neighbors<'a> = std::iter::Map<std::iter::Copied<std::slice::Iter<'a, u32>>, fn(u32) -> usize>;

    fn order(&self) -> usize {
        SparseGraph::order(self)
    }
    fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }
    fn neighbors(&self, v: usize) -> Self::Neighbors<'_> {
        self.neighbor_slice(v).iter().copied().map(|w| w as usize)
    }
    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && v < self.order() && self.neighbor_slice(u).binary_search(&(v as u32)).is_ok()
    }
    fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }
}
