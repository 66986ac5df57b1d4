//! Rooted trees: AHU encoding, subtree counting and the Galton–Watson estimator.

pub mod brute;
mod count;
pub(crate) mod gw;

pub use count::{count_subtrees_exact, count_subtrees_per_node, SubtreeCount, SubtreeCounter};
pub use gw::{big_ln, estimate_log_f, product_f_lower_bound, product_ln_f, LogFStats, GW_COUNT_BUDGET};

use crate::{Error, Result};
use std::collections::HashMap;

/// Rooted tree with root `0`; node `v` owns the list of its children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    children: Vec<Vec<u32>>,
}

impl Default for RootedTree {
    fn default() -> Self {
        RootedTree::single()
    }
}

impl RootedTree {
    /// The one-node tree.
    pub fn single() -> Self {
        RootedTree { children: vec![Vec::new()] }
    }

    /// Path on `k ≥ 1` nodes rooted at an endpoint.
    pub fn path(k: usize) -> Self {
        let mut t = RootedTree::single();
        for v in 1..k {
            t.add_child(v - 1);
        }
        t
    }

    /// Star rooted at its centre with `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let mut t = RootedTree::single();
        for _ in 0..leaves {
            t.add_child(0);
        }
        t
    }

    /// Appends a new child of `parent` and returns its index.
    pub fn add_child(&mut self, parent: usize) -> usize {
        let id = self.children.len();
        self.children[parent].push(id as u32);
        self.children.push(Vec::new());
        id
    }

    /// Builds from a parent array: `parents[v]` is the parent of `v`, and
    /// exactly one entry (which becomes node 0 after relabelling) is `-1`.
    /// Nodes are relabelled in breadth-first order from the root.
    pub fn from_parents(parents: &[i64]) -> Result<Self> {
        let n = parents.len();
        let bad = |msg: String| Error::InvalidParameter(msg);
        let mut root = None;
        let mut kids = vec![Vec::new(); n];
        for (v, &p) in parents.iter().enumerate() {
            if p < 0 {
                if p != -1 || root.replace(v).is_some() {
                    return Err(bad("parent array must contain exactly one -1".into()));
                }
            } else if p as usize >= n {
                return Err(bad(format!("parent {p} of node {v} out of range")));
            } else {
                kids[p as usize].push(v);
            }
        }
        let root = root.ok_or_else(|| bad("parent array has no root".into()))?;
        let mut order = vec![root];
        let mut i = 0;
        while i < order.len() {
            order.extend(kids[order[i]].iter().copied());
            i += 1;
        }
        if order.len() != n {
            return Err(bad("parent array contains a cycle".into()));
        }
        let mut label = vec![0usize; n];
        for (new, &old) in order.iter().enumerate() {
            label[old] = new;
        }
        let children = order.iter().map(|&old| kids[old].iter().map(|&c| label[c] as u32).collect()).collect();
        Ok(RootedTree { children })
    }

    /// Parent array with `-1` for the root.
    pub fn parents(&self) -> Vec<i64> {
        let mut p = vec![-1i64; self.size()];
        for (v, cs) in self.children.iter().enumerate() {
            for &c in cs {
                p[c as usize] = v as i64;
            }
        }
        p
    }

    /// Parent array as one whitespace-separated line.
    pub fn to_parent_line(&self) -> String {
        self.parents().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
    }

    pub fn from_parent_line(line: &str) -> Result<Self> {
        let parents = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<i64>().map_err(|_| Error::Parse { line: 1, msg: format!("bad parent `{s}`") }))
            .collect::<Result<Vec<_>>>()?;
        RootedTree::from_parents(&parents)
    }

    pub fn size(&self) -> usize {
        self.children.len()
    }

    pub fn children(&self, v: usize) -> &[u32] {
        &self.children[v]
    }

    /// Nodes in breadth-first order from the root; reversed, it lists every
    /// child before its parent.
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut order = vec![0usize];
        let mut i = 0;
        while i < order.len() {
            order.extend(self.children[order[i]].iter().map(|&c| c as usize));
            i += 1;
        }
        order
    }

    pub fn height(&self) -> usize {
        let mut depth = vec![0usize; self.size()];
        let mut h = 0;
        for v in self.bfs_order() {
            for &c in &self.children[v] {
                depth[c as usize] = depth[v] + 1;
                h = h.max(depth[v] + 1);
            }
        }
        h
    }

    /// Copy with every child list passed through `reorder`.
    pub fn with_child_orders(&self, mut reorder: impl FnMut(&mut Vec<u32>)) -> Self {
        let mut t = self.clone();
        for cs in &mut t.children {
            reorder(cs);
        }
        t
    }

    /// Subtree of all descendants of `v`, rooted at `v`.
    pub fn subtree(&self, v: usize) -> RootedTree {
        let mut t = RootedTree::single();
        let mut stack = vec![(v, 0usize)];
        while let Some((old, new)) = stack.pop() {
            for &c in &self.children[old] {
                let id = t.add_child(new);
                stack.push((c as usize, id));
            }
        }
        t
    }
}

/// Canonical balanced-parenthesis code of a rooted tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AhuCode(pub String);

impl std::fmt::Display for AhuCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// AHU code: the children's codes sorted lexicographically, concatenated and
/// wrapped in one pair of parentheses.
pub fn ahu_code(t: &RootedTree) -> AhuCode {
    let order = t.bfs_order();
    let mut code: Vec<Option<String>> = vec![None; t.size()];
    for &v in order.iter().rev() {
        let mut kids: Vec<String> = t.children(v).iter().map(|&c| code[c as usize].take().unwrap()).collect();
        kids.sort_unstable();
        let mut s = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
        s.push('(');
        for k in kids {
            s.push_str(&k);
        }
        s.push(')');
        code[v] = Some(s);
    }
    AhuCode(code[0].take().unwrap())
}

/// Code of an unrooted tree given by adjacency lists: the smaller of the AHU
/// codes rooted at its (one or two) centres.
pub fn unrooted_tree_code(adj: &[Vec<usize>]) -> AhuCode {
    let n = adj.len();
    if n == 0 {
        return AhuCode(String::new());
    }
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in &adj[v] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.iter().map(|&c| ahu_code(&root_at(adj, c))).min().unwrap()
}

/// Orients an unrooted tree away from `root`.
pub fn root_at(adj: &[Vec<usize>], root: usize) -> RootedTree {
    let mut t = RootedTree::single();
    let mut id: HashMap<usize, usize> = HashMap::from([(root, 0)]);
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        let iv = id[&v];
        for &w in &adj[v] {
            if !id.contains_key(&w) {
                let iw = t.add_child(iv);
                id.insert(w, iw);
                queue.push_back(w);
            }
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ahu_examples() {
        assert_eq!(ahu_code(&RootedTree::single()).0, "()");
        let centre = RootedTree::star(2);
        let end = RootedTree::path(3);
        assert_eq!(ahu_code(&centre).0, "(()())");
        assert_eq!(ahu_code(&end).0, "((()))");
    }

    #[test]
    fn parent_arrays_round_trip() {
        let t = RootedTree::from_parent_line("2 2 -1 0").unwrap();
        assert_eq!(t.size(), 4);
        assert_eq!(ahu_code(&t).0, "((())())");
        let again = RootedTree::from_parent_line(&t.to_parent_line()).unwrap();
        assert_eq!(again, t);
        assert!(RootedTree::from_parents(&[-1, -1]).is_err());
        assert!(RootedTree::from_parents(&[1, 0]).is_err());
        assert!(RootedTree::from_parents(&[-1, 5]).is_err());
    }

    #[test]
    fn unrooted_codes_identify_paths() {
        let p4 = vec![vec![1], vec![0, 2], vec![1, 3], vec![2]];
        let p4b = vec![vec![2], vec![3], vec![0, 3], vec![1, 2]];
        assert_eq!(unrooted_tree_code(&p4), unrooted_tree_code(&p4b));
        let star = vec![vec![1, 2, 3], vec![0], vec![0], vec![0]];
        assert_ne!(unrooted_tree_code(&p4), unrooted_tree_code(&star));
    }
}
