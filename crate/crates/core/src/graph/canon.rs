//! Canonical labelling by colour refinement and individualization.
//!
//! The search tree is explored depth first. Branches are cut with
//! automorphisms: twin transpositions known up front, plus automorphisms
//! discovered when two leaves produce the same adjacency encoding. The
//! certificate is the lexicographically smallest upper-triangle encoding
//! over the explored leaves; pruning only skips subtrees whose leaves are
//! images of explored ones under an automorphism, so the minimum is unchanged.

use super::Graph;
use crate::{Error, Result};
use smallvec::SmallVec;
use std::collections::VecDeque;

/// Hard limit of the word-per-row kernels.
pub const MAX_CANON_ORDER: usize = 64;
/// Default canonicalization cap.
pub const DEFAULT_CANON_CAP: usize = 32;

const MAX_STORED_AUTOMORPHISMS: usize = 128;

/// Byte certificate of an unlabelled graph: the order `n` as one byte,
/// followed by the upper triangle of the canonically relabelled adjacency
/// matrix in row-major order, packed most significant bit first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(SmallVec<[u8; 40]>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0[0] as usize
    }

    /// The canonically labelled representative.
    pub fn to_graph(&self) -> Graph {
        let n = self.order();
        let mut g = Graph::empty(n);
        let mut bit = 0usize;
        for i in 0..n {
            for j in i + 1..n {
                if self.0[1 + bit / 8] >> (7 - bit % 8) & 1 == 1 {
                    g.add_edge_unchecked(i, j);
                }
                bit += 1;
            }
        }
        g
    }
}

impl std::fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CanonicalForm(")?;
        for b in self.0.iter() {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_form_with(g, DEFAULT_CANON_CAP)
}

/// Canonical form with an explicit cap (clamped to [`MAX_CANON_ORDER`]).
pub fn canonical_form_with(g: &Graph, cap: usize) -> Result<CanonicalForm> {
    let cap = cap.min(MAX_CANON_ORDER);
    if g.order() > cap {
        return Err(Error::TooLarge { order: g.order(), cap });
    }
    let rows = g.small_rows().expect("order checked");
    Ok(Canonizer::default().certificate(&rows))
}

/// True when the graphs are isomorphic (both must be within the default cap).
pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> Result<bool> {
    if g1.order() != g2.order() || g1.edge_count() != g2.edge_count() {
        // still validate the cap so the error contract does not depend on the shortcut
        for g in [g1, g2] {
            if g.order() > DEFAULT_CANON_CAP {
                return Err(Error::TooLarge { order: g.order(), cap: DEFAULT_CANON_CAP });
            }
        }
        return Ok(false);
    }
    Ok(canonical_form(g1)? == canonical_form(g2)?)
}

struct Leaf {
    key: Vec<u64>,
    order: Vec<u8>,
    prefix: Vec<u8>,
}

/// Reusable canonicalization state for graphs given as single-word rows.
#[derive(Default)]
pub(crate) struct Canonizer {
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<[u8; 64]>,
    queue: VecDeque<u64>,
    key_buf: Vec<u64>,
}

impl Canonizer {
    /// Certificate of the graph with rows `rows` (`rows.len() ≤ 64`).
    pub fn certificate(&mut self, rows: &[u64]) -> CanonicalForm {
        let n = rows.len();
        let mut bytes: SmallVec<[u8; 40]> = SmallVec::new();
        bytes.push(n as u8);
        if n <= 1 {
            return CanonicalForm(bytes);
        }
        self.run(rows);
        let best = self.best.as_ref().expect("search visits a leaf");
        let total = n * (n - 1) / 2;
        bytes.resize(1 + total.div_ceil(8), 0);
        let mut bit = 0usize;
        for i in 0..n {
            let k = best.key[i];
            for j in i + 1..n {
                if k >> (63 - j) & 1 == 1 {
                    bytes[1 + bit / 8] |= 0x80 >> (bit % 8);
                }
                bit += 1;
            }
        }
        CanonicalForm(bytes)
    }

    fn run(&mut self, rows: &[u64]) {
        let n = rows.len();
        debug_assert!(n <= 64);
        self.first = None;
        self.best = None;
        self.autos.clear();
        self.seed_twin_automorphisms(rows);
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut cells = vec![all];
        self.queue.clear();
        self.queue.push_back(all);
        refine(rows, &mut cells, &mut self.queue);
        let mut prefix = Vec::with_capacity(n);
        if cells.iter().all(|&c| is_twin_cell(rows, c)) {
            // permuting inside twin cells is an automorphism and
            // individualizing splits nothing else, so every leaf has this key
            let mut discrete = Vec::with_capacity(n);
            for &c in &cells {
                let mut rest = c;
                while rest != 0 {
                    discrete.push(rest & rest.wrapping_neg());
                    rest &= rest - 1;
                }
            }
            self.leaf(rows, &discrete, &prefix);
            return;
        }
        self.search(rows, &cells, &mut prefix);
    }

    /// Transpositions of twins (equal open or closed neighbourhoods) are automorphisms.
    fn seed_twin_automorphisms(&mut self, rows: &[u64]) {
        let n = rows.len();
        let mut keyed: SmallVec<[(u64, u8); 64]> = SmallVec::new();
        for closed in [false, true] {
            keyed.clear();
            keyed.extend((0..n).map(|v| (if closed { rows[v] | 1 << v } else { rows[v] }, v as u8)));
            keyed.sort_unstable();
            for w in keyed.windows(2) {
                if w[0].0 == w[1].0 && self.autos.len() < MAX_STORED_AUTOMORPHISMS {
                    let mut perm = identity();
                    perm[w[0].1 as usize] = w[1].1;
                    perm[w[1].1 as usize] = w[0].1;
                    self.autos.push(perm);
                }
            }
        }
    }

    /// Returns `Some(depth)` to unwind the search to the node at that depth.
    fn search(&mut self, rows: &[u64], cells: &[u64], prefix: &mut Vec<u8>) -> Option<usize> {
        let Some(t) = target_cell(cells) else {
            return self.leaf(rows, cells, prefix);
        };
        let depth = prefix.len();
        let tc = cells[t];
        let mut explored = 0u64;
        let mut orbit_autos = usize::MAX;
        let mut orbits = [0u8; 64];
        let mut rest = tc;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if explored != 0 {
                if orbit_autos != self.autos.len() {
                    orbit_autos = self.autos.len();
                    self.orbits_fixing(prefix, rows.len(), &mut orbits);
                }
                let ov = orbits[v];
                let mut e = explored;
                let mut skip = false;
                while e != 0 {
                    let u = e.trailing_zeros() as usize;
                    e &= e - 1;
                    if orbits[u] == ov {
                        skip = true;
                        break;
                    }
                }
                if skip {
                    continue;
                }
            }
            explored |= 1 << v;
            let mut child: SmallVec<[u64; 64]> = SmallVec::from_slice(cells);
            child[t] = tc & !(1 << v);
            child.insert(t, 1 << v);
            let mut child = child.into_vec();
            self.queue.clear();
            self.queue.push_back(1 << v);
            refine(rows, &mut child, &mut self.queue);
            prefix.push(v as u8);
            let r = self.search(rows, &child, prefix);
            prefix.pop();
            if let Some(d) = r {
                if d < depth {
                    return Some(d);
                }
            }
        }
        None
    }

    /// Orbit representatives under stored automorphisms that fix `prefix` pointwise.
    fn orbits_fixing(&self, prefix: &[u8], n: usize, orbits: &mut [u8; 64]) {
        for (v, o) in orbits.iter_mut().enumerate().take(n) {
            *o = v as u8;
        }
        fn find(o: &mut [u8; 64], mut v: usize) -> usize {
            while o[v] as usize != v {
                o[v] = o[o[v] as usize];
                v = o[v] as usize;
            }
            v
        }
        for perm in &self.autos {
            if prefix.iter().any(|&p| perm[p as usize] != p) {
                continue;
            }
            for v in 0..n {
                let a = find(orbits, v);
                let b = find(orbits, perm[v] as usize);
                if a != b {
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    orbits[hi] = lo as u8;
                }
            }
        }
        for v in 0..n {
            let r = find(orbits, v);
            orbits[v] = r as u8;
        }
    }

    fn leaf(&mut self, rows: &[u64], cells: &[u64], prefix: &[u8]) -> Option<usize> {
        let n = rows.len();
        let mut order = [0u8; 64];
        let mut pos = [0u8; 64];
        for (i, &c) in cells.iter().enumerate() {
            let v = c.trailing_zeros() as u8;
            order[i] = v;
            pos[v as usize] = i as u8;
        }
        self.key_buf.clear();
        for i in 0..n {
            let mut r = rows[order[i] as usize];
            let mut pr = 0u64;
            while r != 0 {
                let w = r.trailing_zeros() as usize;
                r &= r - 1;
                pr |= 1 << pos[w];
            }
            let above = if i >= 63 { 0 } else { (1u64 << (63 - i)) - 1 };
            self.key_buf.push(pr.reverse_bits() & above);
        }
        let Some(first) = &self.first else {
            let leaf = Leaf { key: self.key_buf.clone(), order: order[..n].to_vec(), prefix: prefix.to_vec() };
            self.best = Some(Leaf { key: leaf.key.clone(), order: leaf.order.clone(), prefix: leaf.prefix.clone() });
            self.first = Some(leaf);
            return None;
        };
        if first.key == self.key_buf {
            let auto = leaf_map(&first.order, &order[..n]);
            let d = common_prefix(&first.prefix, prefix);
            self.push_auto(auto);
            return Some(d);
        }
        let best = self.best.as_mut().unwrap();
        match self.key_buf.cmp(&best.key) {
            std::cmp::Ordering::Equal => {
                let auto = leaf_map(&best.order, &order[..n]);
                let d = common_prefix(&best.prefix, prefix);
                self.push_auto(auto);
                Some(d)
            }
            std::cmp::Ordering::Less => {
                best.key.clone_from(&self.key_buf);
                best.order.clear();
                best.order.extend_from_slice(&order[..n]);
                best.prefix.clear();
                best.prefix.extend_from_slice(prefix);
                None
            }
            std::cmp::Ordering::Greater => None,
        }
    }

    fn push_auto(&mut self, perm: [u8; 64]) {
        if self.autos.len() < MAX_STORED_AUTOMORPHISMS {
            self.autos.push(perm);
        }
    }
}

/// Cell whose vertices agree outside it and span a clique or an independent set.
fn is_twin_cell(rows: &[u64], cell: u64) -> bool {
    if cell.count_ones() <= 1 {
        return true;
    }
    let v = cell.trailing_zeros() as usize;
    let outside = rows[v] & !cell;
    let inside = rows[v] & cell;
    let clique = inside == cell & !(1 << v);
    if !clique && inside != 0 {
        return false;
    }
    let mut rest = cell & (cell - 1);
    while rest != 0 {
        let w = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let expected_inside = if clique { cell & !(1 << w) } else { 0 };
        if rows[w] & !cell != outside || rows[w] & cell != expected_inside {
            return false;
        }
    }
    true
}

fn identity() -> [u8; 64] {
    std::array::from_fn(|i| i as u8)
}

/// Permutation sending `from[i]` to `to[i]`.
fn leaf_map(from: &[u8], to: &[u8]) -> [u8; 64] {
    let mut perm = identity();
    for (&a, &b) in from.iter().zip(to) {
        perm[a as usize] = b;
    }
    perm
}

fn common_prefix(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// First smallest cell with more than one vertex.
fn target_cell(cells: &[u64]) -> Option<usize> {
    let mut best: Option<(u32, usize)> = None;
    for (i, &c) in cells.iter().enumerate() {
        let s = c.count_ones();
        if s > 1 && best.is_none_or(|(bs, _)| s < bs) {
            best = Some((s, i));
            if s == 2 {
                break;
            }
        }
    }
    best.map(|(_, i)| i)
}

/// Refines the ordered partition `cells` to an equitable one, splitting by
/// the number of neighbours in each splitter. Fragments are ordered by that
/// count, so the result is invariant under relabelling.
pub(crate) fn refine(rows: &[u64], cells: &mut Vec<u64>, queue: &mut VecDeque<u64>) {
    let n = rows.len();
    while let Some(w) = queue.pop_front() {
        if cells.len() == n {
            queue.clear();
            return;
        }
        let mut i = 0;
        while i < cells.len() {
            let c = cells[i];
            if c & c.wrapping_sub(1) == 0 {
                i += 1;
                continue;
            }
            let mut groups: SmallVec<[(u32, u64); 8]> = SmallVec::new();
            let mut m = c;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                let k = (rows[v] & w).count_ones();
                match groups.iter_mut().find(|g| g.0 == k) {
                    Some(g) => g.1 |= 1 << v,
                    None => groups.push((k, 1 << v)),
                }
            }
            if groups.len() == 1 {
                i += 1;
                continue;
            }
            groups.sort_unstable_by_key(|g| g.0);
            cells.splice(i..=i, groups.iter().map(|g| g.1));
            for g in &groups {
                queue.push_back(g.1);
            }
            i += groups.len();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certificate_layout() {
        assert_eq!(canonical_form(&Graph::empty(0)).unwrap().as_bytes(), &[0]);
        assert_eq!(canonical_form(&Graph::empty(1)).unwrap().as_bytes(), &[1]);
        // lex-min encoding of K2 ⊔ K1 puts the edge last: bits (0,1),(0,2),(1,2) = 001
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(canonical_form(&g).unwrap().as_bytes(), &[3, 0b0010_0000]);
        let c = canonical_form(&Graph::complete(4)).unwrap();
        assert_eq!(c.as_bytes(), &[4, 0b1111_1100]);
        assert_eq!(c.to_graph(), Graph::complete(4));
    }

    #[test]
    fn triangle_with_pendant_relabelings_agree() {
        let base = [(0, 1), (1, 2), (0, 2), (2, 3)];
        let mut certs = std::collections::HashSet::new();
        for perm in [[0, 1, 2, 3], [3, 2, 1, 0], [1, 3, 0, 2], [2, 0, 3, 1], [0, 3, 1, 2], [1, 0, 3, 2]] {
            let g = Graph::from_edges(4, base.iter().map(|&(u, v)| (perm[u], perm[v]))).unwrap();
            certs.insert(canonical_form(&g).unwrap());
        }
        assert_eq!(certs.len(), 1);
    }

    #[test]
    fn eleven_graphs_on_four_vertices() {
        let pairs: Vec<(usize, usize)> = (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v))).collect();
        let mut certs = std::collections::HashSet::new();
        for mask in 0u32..64 {
            let g = Graph::from_edges(4, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e)).unwrap();
            certs.insert(canonical_form(&g).unwrap());
        }
        assert_eq!(certs.len(), 11);
    }

    #[test]
    fn isomorphism_examples() {
        let two_triangles = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!are_isomorphic(&Graph::cycle(6), &two_triangles).unwrap());
        let p4 = Graph::path(4);
        assert!(are_isomorphic(&p4, &p4.permuted(&[3, 2, 1, 0])).unwrap());
        assert!(are_isomorphic(&Graph::complete(4), &Graph::complete(4)).unwrap());
        assert_ne!(canonical_form(&Graph::path(3)).unwrap(), canonical_form(&Graph::from_edges(3, [(0, 1)]).unwrap()).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(canonical_form(&Graph::empty(33)), Err(Error::TooLarge { .. })));
        assert!(canonical_form_with(&Graph::empty(64), 64).is_ok());
        assert!(canonical_form_with(&Graph::empty(65), 100).is_err());
    }
}
