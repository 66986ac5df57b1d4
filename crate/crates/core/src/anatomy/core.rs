use crate::graph::{Adjacency, SparseGraph, VertexSet};
use crate::tree::{ahu_code, AhuCode, RootedTree};
use std::collections::BTreeMap;
use std::fmt::Write;

/// 2-core of the union of complex components, with the tree hanging from
/// each core vertex.
#[derive(Clone, Debug)]
pub struct CoreDecomposition {
    pub core_vertices: VertexSet,
    /// Edges with both ends in the core, `u < v`, sorted.
    pub core_edges: Vec<(usize, usize)>,
    /// Pendant tree of every core vertex (a single node when nothing hangs there).
    pub pendant: BTreeMap<usize, RootedTree>,
    /// Original labels of the pendant-tree nodes, indexed like the tree's nodes.
    pub pendant_vertices: BTreeMap<usize, Vec<usize>>,
    pub component_labels: Vec<usize>,
    pub complex_flags: Vec<bool>,
}

impl CoreDecomposition {
    pub fn core_order(&self) -> usize {
        self.core_vertices.len()
    }

    /// Pendant trees with at least two nodes.
    pub fn nontrivial_pendants(&self) -> impl Iterator<Item = (usize, &RootedTree)> {
        self.pendant.iter().filter(|(_, t)| t.size() > 1).map(|(&v, t)| (v, t))
    }

    /// The core as a graph on `0..k`, core vertex `i` being the `i`-th smallest label.
    pub fn core_graph(&self) -> SparseGraph {
        let verts: Vec<usize> = self.core_vertices.iter().collect();
        let index: BTreeMap<usize, u32> = verts.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
        let edges: Vec<(u32, u32)> = self.core_edges.iter().map(|(u, v)| (index[u], index[v])).collect();
        SparseGraph::from_edges(verts.len(), &edges).expect("core edges are valid")
    }

    /// Line-based text form:
    ///
    /// ```text
    /// core <vertices> <edges>
    /// vertices <v1> <v2> ...
    /// edge <u> <v>            (one line per core edge)
    /// type <v> <ahu-code>     (one line per core vertex)
    /// ```
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "core {} {}", self.core_order(), self.core_edges.len()).unwrap();
        let verts: Vec<String> = self.core_vertices.iter().map(|v| v.to_string()).collect();
        writeln!(s, "vertices {}", verts.join(" ")).unwrap();
        for (u, v) in &self.core_edges {
            writeln!(s, "edge {u} {v}").unwrap();
        }
        for (v, code) in self.core_vertices.iter().zip(type_tuple(self)) {
            writeln!(s, "type {v} {code}").unwrap();
        }
        s
    }
}

/// Finds components, marks complex ones (edges ≥ vertices + 1), peels
/// vertices of degree ≤ 1 inside them and roots every peeled vertex's tree
/// at the core vertex it hangs from.
pub fn core_decompose<G: Adjacency + ?Sized>(g: &G) -> CoreDecomposition {
    let n = g.order();
    let comps = g.components();
    let mut component_labels = vec![0usize; n];
    let mut complex_flags = Vec::with_capacity(comps.len());
    for (i, comp) in comps.iter().enumerate() {
        let edges: usize = comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
        complex_flags.push(edges > comp.len());
        for &v in comp {
            component_labels[v] = i;
        }
    }
    let mut removed: Vec<bool> = (0..n).map(|v| !complex_flags[component_labels[v]]).collect();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut stack: Vec<usize> = (0..n).filter(|&v| !removed[v] && deg[v] <= 1).collect();
    let mut peeled = vec![false; n];
    while let Some(v) = stack.pop() {
        if removed[v] {
            continue;
        }
        removed[v] = true;
        peeled[v] = true;
        for w in g.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    stack.push(w);
                }
            }
        }
    }
    let core: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    let core_vertices = VertexSet::from_vertices(n, core.iter().copied());
    let mut core_edges = Vec::new();
    let mut pendant = BTreeMap::new();
    let mut pendant_vertices = BTreeMap::new();
    for &v in &core {
        for w in g.neighbors(v) {
            if w > v && !removed[w] {
                core_edges.push((v, w));
            }
        }
        let mut tree = RootedTree::single();
        let mut labels = vec![v];
        let mut parent_label = vec![usize::MAX];
        let mut i = 0;
        while i < labels.len() {
            let x = labels[i];
            for w in g.neighbors(x) {
                // the peeled part is a forest meeting the core in single edges
                if peeled[w] && w != parent_label[i] {
                    tree.add_child(i);
                    labels.push(w);
                    parent_label.push(x);
                }
            }
            i += 1;
        }
        pendant.insert(v, tree);
        pendant_vertices.insert(v, labels);
    }
    core_edges.sort_unstable();
    CoreDecomposition { core_vertices, core_edges, pendant, pendant_vertices, component_labels, complex_flags }
}

/// AHU code of each core vertex's pendant tree, by ascending vertex label.
pub fn type_tuple(dec: &CoreDecomposition) -> Vec<AhuCode> {
    dec.pendant.values().map(ahu_code).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn k4_with_tail(tail: usize) -> Graph {
        let mut g = Graph::empty(4 + tail);
        for (u, v) in Graph::complete(4).edges() {
            g.add_edge(u, v).unwrap();
        }
        for i in 0..tail {
            g.add_edge(if i == 0 { 0 } else { 3 + i }, 4 + i).unwrap();
        }
        g
    }

    #[test]
    fn forests_and_unicyclic_graphs_have_empty_core() {
        let forest = Graph::from_edges(7, [(0, 1), (1, 2), (3, 4)]).unwrap();
        let d = core_decompose(&forest);
        assert_eq!(d.core_order(), 0);
        assert_eq!(d.nontrivial_pendants().count(), 0);
        let two_cycles = Graph::from_edges(8, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 3), (6, 7)]).unwrap();
        assert_eq!(core_decompose(&two_cycles).core_order(), 0);
    }

    #[test]
    fn clique_with_pendant_path() {
        let g = k4_with_tail(2);
        let d = core_decompose(&g);
        assert_eq!(d.core_vertices.iter().collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        let pend: Vec<_> = d.nontrivial_pendants().collect();
        assert_eq!(pend.len(), 1);
        assert_eq!(pend[0].0, 0);
        assert_eq!(ahu_code(pend[0].1), ahu_code(&RootedTree::path(3)));
        assert_eq!(d.pendant_vertices[&0], vec![0, 4, 5]);
        let codes: Vec<String> = type_tuple(&d).into_iter().map(|c| c.0).collect();
        assert_eq!(codes, vec!["((()))", "()", "()", "()"]);
        assert_eq!(
            d.to_text(),
            "core 4 6\nvertices 0 1 2 3\nedge 0 1\nedge 0 2\nedge 0 3\nedge 1 2\nedge 1 3\nedge 2 3\n\
             type 0 ((()))\ntype 1 ()\ntype 2 ()\ntype 3 ()\n"
        );
    }

    #[test]
    fn tuples_distinguish_pendant_shapes() {
        let a = type_tuple(&core_decompose(&k4_with_tail(1)));
        let b = type_tuple(&core_decompose(&k4_with_tail(2)));
        assert_ne!(a, b);
    }
}
