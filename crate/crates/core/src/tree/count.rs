//! Exact number of pairwise non-isomorphic rooted subtrees.
//!
//! A rooted subtree of `T_v` is `v` plus a sub-multiset of rooted subtrees of
//! distinct children, so `f(T_v)` is the number of multisets `M` of subtree
//! types for which some assignment sends every element of `M` to its own
//! child that contains it. Children are grouped into isomorphism classes;
//! a type is characterised by its host set (the child classes containing it).
//!
//! Classes with few subtree types keep the explicit set of type ids. For
//! larger classes only counts are tracked: the number of types with a given
//! host set inside the large classes is recovered by Möbius inversion from
//! `count(B)`, the number of types common to every class of `B`, which is
//! itself computed by the same procedure on the union of their children.

use crate::{Error, Result};
use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use smallvec::SmallVec;
use std::collections::HashMap;
use std::rc::Rc;

use super::RootedTree;

/// Number of non-isomorphic rooted subtrees `f` and `f₊ = f + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubtreeCount {
    pub f: BigUint,
    pub f_plus: BigUint,
}

impl SubtreeCount {
    fn new(f: BigUint) -> Self {
        let f_plus = &f + 1u32;
        SubtreeCount { f, f_plus }
    }
}

/// Default bound on the size of explicitly stored subtree-type sets.
pub const DEFAULT_EXPLICIT_LIMIT: u64 = 1 << 12;

const MAX_LARGE_CLASSES: usize = 64;
const DEEP_TREE: usize = 2_000;

pub fn count_subtrees_exact(t: &RootedTree) -> SubtreeCount {
    with_stack(t, || SubtreeCounter::new(DEFAULT_EXPLICIT_LIMIT).count(t))
        .expect("subtree count within budget")
}

/// `f(T_v)` for every node `v`.
pub fn count_subtrees_per_node(t: &RootedTree) -> Vec<BigUint> {
    with_stack(t, || SubtreeCounter::new(DEFAULT_EXPLICIT_LIMIT).per_node(t)).expect("subtree count within budget")
}

fn with_stack<T: Send>(t: &RootedTree, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    if t.height() < DEEP_TREE {
        return f();
    }
    std::thread::scope(|s| {
        std::thread::Builder::new()
            .stack_size(512 << 20)
            .spawn_scoped(s, f)
            .expect("spawn counting thread")
            .join()
            .expect("counting thread panicked")
    })
}

type Mask = SmallVec<[u64; 2]>;

fn mask_with(len: usize) -> Mask {
    SmallVec::from_elem(0, len.div_ceil(64).max(1))
}
fn mask_set(m: &mut Mask, i: usize) {
    m[i / 64] |= 1 << (i % 64);
}
fn mask_has(m: &Mask, i: usize) -> bool {
    m[i / 64] >> (i % 64) & 1 == 1
}
fn mask_meets(a: &Mask, b: &Mask) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}
fn mask_and(a: &Mask, b: &Mask) -> Mask {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

/// Subtree counter with a shared interner for rooted-tree types, reusable
/// across trees. `explicit_limit` bounds the explicitly stored type sets;
/// `0` forces the counting path everywhere.
pub struct SubtreeCounter {
    explicit_limit: u64,
    ids: HashMap<Box<[u32]>, u32>,
    kids: Vec<Box<[u32]>>,
    size: Vec<u32>,
    upper: HashMap<u32, u64>,
    explicit: HashMap<u32, Rc<[u32]>>,
    counts: HashMap<Vec<u32>, BigUint>,
    embeds: HashMap<(u32, u32), bool>,
    steps: u64,
    budget: u64,
}

impl SubtreeCounter {
    pub fn new(explicit_limit: u64) -> Self {
        SubtreeCounter {
            explicit_limit,
            ids: HashMap::new(),
            kids: Vec::new(),
            size: Vec::new(),
            upper: HashMap::new(),
            explicit: HashMap::new(),
            counts: HashMap::new(),
            embeds: HashMap::new(),
            steps: 0,
            budget: u64::MAX,
        }
    }

    /// Like [`SubtreeCounter::new`], but every count fails with
    /// [`Error::Budget`] once more than `budget` work steps have been spent
    /// since the last successful call.
    pub fn with_budget(explicit_limit: u64, budget: u64) -> Self {
        SubtreeCounter { budget, ..SubtreeCounter::new(explicit_limit) }
    }

    /// Work steps spent by the last call.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    fn tick(&mut self, n: u64) -> Result<()> {
        self.steps = self.steps.saturating_add(n);
        if self.steps > self.budget {
            return Err(Error::Budget(format!("more than {} counting steps", self.budget)));
        }
        Ok(())
    }

    /// Count for the whole tree.
    pub fn count(&mut self, t: &RootedTree) -> Result<SubtreeCount> {
        self.steps = 0;
        let classes = self.classify(t);
        self.warm(&classes)?;
        Ok(SubtreeCount::new(self.count_set(&[classes[0]])?))
    }

    /// `f(T_v)` for every node.
    pub fn per_node(&mut self, t: &RootedTree) -> Result<Vec<BigUint>> {
        self.steps = 0;
        let classes = self.classify(t);
        self.warm(&classes)?;
        classes.iter().map(|&c| self.count_set(&[c])).collect()
    }

    /// Number of distinct interned types so far.
    pub fn interned(&self) -> usize {
        self.kids.len()
    }

    fn intern(&mut self, mut kids: Vec<u32>) -> u32 {
        kids.sort_unstable();
        if let Some(&id) = self.ids.get(kids.as_slice()) {
            return id;
        }
        let id = self.kids.len() as u32;
        let size = 1 + kids.iter().map(|&k| self.size[k as usize]).sum::<u32>();
        let boxed: Box<[u32]> = kids.into_boxed_slice();
        self.ids.insert(boxed.clone(), id);
        self.kids.push(boxed);
        self.size.push(size);
        id
    }

    fn classify(&mut self, t: &RootedTree) -> Vec<u32> {
        let mut class = vec![0u32; t.size()];
        for v in t.bfs_order().into_iter().rev() {
            let kids: Vec<u32> = t.children(v).iter().map(|&c| class[c as usize]).collect();
            let id = self.intern(kids);
            if !self.upper.contains_key(&id) {
                let u = self.grouped(id).iter().fold(1u64, |acc, &(k, m)| {
                    let a = self.upper[&k].saturating_add(1);
                    acc.saturating_mul(multichoose_saturating(a, m as u64))
                });
                self.upper.insert(id, u);
            }
            class[v] = id;
        }
        class
    }

    /// Counts every class from the leaves up so that recursion stays shallow.
    fn warm(&mut self, classes: &[u32]) -> Result<()> {
        let mut distinct: Vec<u32> = classes.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        distinct.sort_by_key(|&c| self.size[c as usize]);
        for c in distinct {
            match self.count_set(&[c]) {
                Err(e @ Error::Budget(_)) if self.steps > self.budget => return Err(e),
                _ => {}
            }
        }
        Ok(())
    }

    /// Child classes of `c` with multiplicities.
    fn grouped(&self, c: u32) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &k in self.kids[c as usize].iter() {
            match out.last_mut() {
                Some((last, m)) if *last == k => *m += 1,
                _ => out.push((k, 1)),
            }
        }
        out
    }

    fn is_explicit(&self, c: u32) -> bool {
        self.upper.get(&c).is_some_and(|&u| u <= self.explicit_limit)
    }

    /// Sorted ids of all subtree types of class `c`; `c` must be explicit.
    fn explicit_set(&mut self, c: u32) -> Rc<[u32]> {
        if let Some(s) = self.explicit.get(&c) {
            return s.clone();
        }
        let mut partial: Vec<Vec<u32>> = vec![Vec::new()];
        for (k, m) in self.grouped(c) {
            let options = self.explicit_set(k);
            let mut choices: Vec<Vec<u32>> = Vec::new();
            multisets_up_to(&options, m, &mut Vec::new(), 0, &mut choices);
            let mut next = Vec::with_capacity(partial.len() * choices.len());
            for p in &partial {
                for ch in &choices {
                    let mut v = p.clone();
                    v.extend_from_slice(ch);
                    next.push(v);
                }
            }
            partial = next;
        }
        let mut ids: Vec<u32> = partial.into_iter().map(|k| self.intern(k)).collect();
        ids.sort_unstable();
        ids.dedup();
        let rc: Rc<[u32]> = ids.into();
        self.explicit.insert(c, rc.clone());
        rc
    }

    /// Whether type `t` occurs as a rooted subtree of type `b`.
    fn embeds(&mut self, t: u32, b: u32) -> bool {
        if t == b {
            return true;
        }
        let (tk, bk) = (self.kids[t as usize].clone(), self.kids[b as usize].clone());
        if self.size[t as usize] > self.size[b as usize] || tk.len() > bk.len() {
            return false;
        }
        if tk.is_empty() {
            return true;
        }
        if let Some(&r) = self.embeds.get(&(t, b)) {
            return r;
        }
        let adj: Vec<Vec<usize>> =
            tk.iter().map(|&x| (0..bk.len()).filter(|&j| self.embeds(x, bk[j])).collect()).collect();
        let r = perfect_left_matching(&adj, bk.len());
        self.embeds.insert((t, b), r);
        r
    }

    /// Number of types common to all classes in `set` (sorted, distinct).
    fn count_set(&mut self, set: &[u32]) -> Result<BigUint> {
        if let [c] = set {
            if self.is_explicit(*c) {
                return Ok(BigUint::from(self.explicit_set(*c).len()));
            }
        }
        if let Some(v) = self.counts.get(set) {
            return Ok(v.clone());
        }
        // a class containing another member adds no constraint
        let mut reduced: Vec<u32> = Vec::with_capacity(set.len());
        for (i, &d) in set.iter().enumerate() {
            if !set.iter().enumerate().any(|(j, &c)| j != i && self.embeds(c, d)) {
                reduced.push(d);
            }
        }
        let value = if reduced.len() < set.len() {
            self.count_set(&reduced)?
        } else if let Some(&c) = set.iter().find(|&&c| self.is_explicit(c)) {
            let types = self.explicit_set(c);
            let others: Vec<u32> = set.iter().copied().filter(|&d| d != c).collect();
            BigUint::from(types.iter().filter(|&&t| others.iter().all(|&d| self.embeds(t, d))).count())
        } else {
            self.count_uncached(set)?
        };
        self.counts.insert(set.to_vec(), value.clone());
        Ok(value)
    }

    fn count_uncached(&mut self, set: &[u32]) -> Result<BigUint> {
        self.tick(1)?;
        let groups: Vec<Vec<(u32, usize)>> = set.iter().map(|&x| self.grouped(x)).collect();
        if groups.iter().any(Vec::is_empty) {
            return Ok(BigUint::one());
        }
        let mut y: Vec<u32> = groups.iter().flatten().map(|&(k, _)| k).collect();
        y.sort_unstable();
        y.dedup();
        let pos: HashMap<u32, usize> = y.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let small: Vec<usize> = (0..y.len()).filter(|&i| self.is_explicit(y[i])).collect();
        let big: Vec<usize> = (0..y.len()).filter(|&i| !self.is_explicit(y[i])).collect();
        if big.len() > MAX_LARGE_CLASSES {
            return Err(Error::Budget(format!("{} large sibling classes", big.len())));
        }
        let class_masks: Vec<Mask> = groups
            .iter()
            .map(|g| {
                let mut m = mask_with(y.len());
                for &(k, _) in g {
                    mask_set(&mut m, pos[&k]);
                }
                m
            })
            .collect();

        // host sets of the explicitly known types
        let mut hosts: HashMap<u32, Mask> = HashMap::new();
        for &i in &small {
            for &t in self.explicit_set(y[i]).iter() {
                mask_set(hosts.entry(t).or_insert_with(|| mask_with(y.len())), i);
            }
        }
        let types: Vec<u32> = {
            let mut v: Vec<u32> = hosts.keys().copied().collect();
            v.sort_unstable();
            v
        };
        self.tick((types.len() * big.len()) as u64)?;
        for &t in &types {
            for &i in &big {
                if self.embeds(t, y[i]) {
                    mask_set(hosts.get_mut(&t).unwrap(), i);
                }
            }
        }
        let mut by_host: HashMap<Mask, BigUint> = HashMap::new();
        for t in &types {
            *by_host.entry(hosts[t].clone()).or_default() += 1u32;
        }

        // Types living only in large classes, by exact host set. The residual
        // r(S) = count(S) − #(enumerated types common to S) can only shrink as
        // S grows, so the sets with r > 0 are found level by level and the
        // inversion runs over those alone.
        if !big.is_empty() {
            let nb = big.len();
            let enumerated = |sub: u64| -> u64 {
                by_host
                    .iter()
                    .filter(|(m, _)| (0..nb).all(|j| sub >> j & 1 == 0 || mask_has(m, big[j])))
                    .map(|(_, cnt)| u64::try_from(cnt).unwrap())
                    .sum()
            };
            let mut residual: HashMap<u64, BigInt> = HashMap::new();
            let mut level: Vec<u64> = Vec::new();
            for j in 0..nb {
                let sub = 1u64 << j;
                let r = BigInt::from_biguint(Sign::Plus, self.count_set(&[y[big[j]]])?) - BigInt::from(enumerated(sub));
                if r.sign() == Sign::Plus {
                    residual.insert(sub, r);
                    level.push(sub);
                }
            }
            while !level.is_empty() {
                let mut next = Vec::new();
                for &s in &level {
                    let top = 63 - s.leading_zeros() as usize;
                    for j in top + 1..nb {
                        let cand = s | 1 << j;
                        // every subset one smaller must have survived
                        if (0..nb).any(|i| cand >> i & 1 == 1 && !residual.contains_key(&(cand & !(1 << i)))) {
                            continue;
                        }
                        self.tick(1)?;
                        let mut classes: Vec<u32> = (0..nb).filter(|&i| cand >> i & 1 == 1).map(|i| y[big[i]]).collect();
                        classes.sort_unstable();
                        let r = BigInt::from_biguint(Sign::Plus, self.count_set(&classes)?) - BigInt::from(enumerated(cand));
                        if r.sign() == Sign::Plus {
                            residual.insert(cand, r);
                            next.push(cand);
                        }
                    }
                }
                level = next;
            }
            // exact(S) = r(S) − Σ_{T ⊋ S} exact(T), largest sets first
            let mut order: Vec<u64> = residual.keys().copied().collect();
            order.sort_by_key(|&s| (std::cmp::Reverse(s.count_ones()), s));
            let mut exact: HashMap<u64, BigInt> = residual.clone();
            for &t in &order {
                let k = exact[&t].clone();
                let mut sub = (t - 1) & t;
                while sub != 0 {
                    if let Some(e) = exact.get_mut(&sub) {
                        *e -= &k;
                    }
                    sub = (sub - 1) & t;
                }
            }
            for (sub, k) in exact {
                if k.sign() == Sign::Minus {
                    return Err(Error::Budget("negative class count (inconsistent state)".into()));
                }
                if k.is_zero() {
                    continue;
                }
                let mut m = mask_with(y.len());
                for (j, &b) in big.iter().enumerate() {
                    if sub >> j & 1 == 1 {
                        mask_set(&mut m, b);
                    }
                }
                by_host.insert(m, k.to_biguint().unwrap());
            }
        }

        // variables: host sets usable by every member, merged when equivalent
        let mut vars: HashMap<Vec<Mask>, BigUint> = HashMap::new();
        for (m, k) in by_host {
            if class_masks.iter().all(|cm| mask_meets(&m, cm)) {
                let key: Vec<Mask> = class_masks.iter().map(|cm| mask_and(&m, cm)).collect();
                *vars.entry(key).or_default() += k;
            }
        }
        let mut vars: Vec<(Vec<Mask>, BigUint)> = vars.into_iter().collect();
        vars.sort_by(|a, b| a.0.cmp(&b.0));

        // per member: local class list with capacities and each variable's local mask
        let mut members = Vec::with_capacity(set.len());
        for g in &groups {
            if g.len() > 64 {
                return Err(Error::Budget(format!("{} distinct child classes", g.len())));
            }
            let caps: Vec<usize> = g.iter().map(|&(_, m)| m).collect();
            members.push((g.clone(), caps));
        }
        let allowed: Vec<Vec<u64>> = vars
            .iter()
            .map(|(key, _)| {
                members
                    .iter()
                    .enumerate()
                    .map(|(xi, (g, _))| {
                        g.iter()
                            .enumerate()
                            .filter(|(_, &(k, _))| mask_has(&key[xi], pos[&k]))
                            .fold(0u64, |acc, (li, _)| acc | 1 << li)
                    })
                    .collect()
            })
            .collect();
        let caps: Vec<Vec<usize>> = members.iter().map(|(_, c)| c.clone()).collect();
        let max_total = caps.iter().map(|c| c.iter().sum::<usize>()).min().unwrap_or(0);
        let ks: Vec<BigUint> = vars.into_iter().map(|(_, k)| k).collect();
        let limit = self.budget.saturating_sub(self.steps);
        let mut search =
            VectorSearch { allowed: &allowed, caps: &caps, ks: &ks, amounts: vec![0; ks.len()], max_total, steps: 0, limit };
        let value = search.run(0, 0);
        self.tick(search.steps)?;
        Ok(value)
    }
}

struct VectorSearch<'a> {
    allowed: &'a [Vec<u64>],
    caps: &'a [Vec<usize>],
    ks: &'a [BigUint],
    amounts: Vec<usize>,
    max_total: usize,
    /// Feasibility checks so far; the search gives up past `limit`.
    steps: u64,
    limit: u64,
}

impl VectorSearch<'_> {
    /// Sum over feasible amount vectors of the product of multiset counts.
    fn run(&mut self, var: usize, used: usize) -> BigUint {
        if var == self.ks.len() {
            return BigUint::one();
        }
        if self.steps > self.limit {
            return BigUint::zero();
        }
        let mut total = self.run(var + 1, used);
        let mut weight = BigUint::one();
        let mut n = 0usize;
        while used + n < self.max_total {
            n += 1;
            self.amounts[var] = n;
            self.steps += 1;
            if !self.feasible() {
                break;
            }
            // multichoose(K, n) = multichoose(K, n-1) * (K + n - 1) / n
            weight = weight * (&self.ks[var] + (n - 1)) / n;
            total += &weight * self.run(var + 1, used + n);
        }
        self.amounts[var] = 0;
        total
    }

    fn feasible(&self) -> bool {
        (0..self.caps.len()).all(|xi| {
            let demands: Vec<(u64, usize)> = self
                .amounts
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(v, &a)| (self.allowed[v][xi], a))
                .collect();
            transport_feasible(&demands, &self.caps[xi])
        })
    }
}

/// Whether every demand `(allowed mask, amount)` can be routed to the
/// allowed slots without exceeding `caps`.
fn transport_feasible(demands: &[(u64, usize)], caps: &[usize]) -> bool {
    let total: usize = demands.iter().map(|d| d.1).sum();
    if total > caps.iter().sum() {
        return false;
    }
    // unit-by-unit augmenting paths on the small bipartite graph
    let mut flow = vec![vec![0usize; caps.len()]; demands.len()];
    let mut load = vec![0usize; caps.len()];
    for d in 0..demands.len() {
        for _ in 0..demands[d].1 {
            let mut seen = 0u64;
            if !augment(d, demands, caps, &mut flow, &mut load, &mut seen) {
                return false;
            }
        }
    }
    true
}

fn augment(d: usize, demands: &[(u64, usize)], caps: &[usize], flow: &mut [Vec<usize>], load: &mut [usize], seen: &mut u64) -> bool {
    let mut m = demands[d].0 & !*seen;
    while m != 0 {
        let c = m.trailing_zeros() as usize;
        m &= m - 1;
        *seen |= 1 << c;
        if load[c] < caps[c] {
            load[c] += 1;
            flow[d][c] += 1;
            return true;
        }
        for other in 0..demands.len() {
            if flow[other][c] > 0 && augment(other, demands, caps, flow, load, seen) {
                flow[other][c] -= 1;
                flow[d][c] += 1;
                return true;
            }
        }
    }
    false
}

/// Whether every left vertex can be matched (Kuhn's algorithm).
fn perfect_left_matching(adj: &[Vec<usize>], right: usize) -> bool {
    fn try_kuhn(u: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [usize]) -> bool {
        for &r in &adj[u] {
            if !seen[r] {
                seen[r] = true;
                if owner[r] == usize::MAX || try_kuhn(owner[r], adj, seen, owner) {
                    owner[r] = u;
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![usize::MAX; right];
    (0..adj.len()).all(|u| {
        let mut seen = vec![false; right];
        try_kuhn(u, adj, &mut seen, &mut owner)
    })
}

/// All multisets of size at most `m` from `options`, as nondecreasing id lists.
fn multisets_up_to(options: &[u32], m: usize, cur: &mut Vec<u32>, start: usize, out: &mut Vec<Vec<u32>>) {
    out.push(cur.clone());
    if cur.len() == m {
        return;
    }
    for i in start..options.len() {
        cur.push(options[i]);
        multisets_up_to(options, m, cur, i, out);
        cur.pop();
    }
}

fn multichoose_saturating(a: u64, m: u64) -> u64 {
    // C(a + m - 1, m), saturating at u64::MAX
    let mut acc: u128 = 1;
    for i in 0..m {
        acc = acc * (a as u128 + i as u128) / (i as u128 + 1);
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::brute::count_subtrees_bruteforce;

    fn f(t: &RootedTree) -> u64 {
        u64::try_from(&count_subtrees_exact(t).f).unwrap()
    }

    #[test]
    fn small_examples() {
        assert_eq!(f(&RootedTree::single()), 1);
        assert_eq!(f(&RootedTree::star(2)), 3);
        assert_eq!(f(&RootedTree::path(3)), 3);
        assert_eq!(f(&RootedTree::star(3)), 4);
        assert_eq!(f(&RootedTree::path(4)), 4);
        assert_eq!(count_subtrees_exact(&RootedTree::star(3)).f_plus, BigUint::from(5u32));
    }

    #[test]
    fn shared_types_across_child_classes_are_not_double_counted() {
        // root with children: a path of two nodes and a leaf; {R, leaf} arises from both
        let t = RootedTree::from_parents(&[-1, 0, 1, 0]).unwrap();
        assert_eq!(f(&t), 5);
        assert_eq!(f(&t), u64::try_from(&count_subtrees_bruteforce(&t).unwrap().f).unwrap());
    }

    #[test]
    fn counting_path_agrees_with_explicit_sets() {
        let trees = [
            "-1 0 0 0 1 1 2 4 4 5",
            "-1 0 1 2 0 4 0 6 7 7 0",
            "-1 0 0 1 1 2 2 3 4 5 6 0 11 12",
            "-1 0 1 2 3 0 5 6 0 8 0 10 11",
        ];
        for line in trees {
            let t = RootedTree::from_parent_line(line).unwrap();
            let brute = count_subtrees_bruteforce(&t).unwrap().f;
            for limit in [0, 1, 3, 10, DEFAULT_EXPLICIT_LIMIT] {
                let got = SubtreeCounter::new(limit).count(&t).unwrap().f;
                assert_eq!(got, brute, "tree {line} limit {limit}");
            }
        }
    }

    #[test]
    fn multichoose_saturates() {
        assert_eq!(multichoose_saturating(2, 3), 4);
        assert_eq!(multichoose_saturating(5, 0), 1);
        assert_eq!(multichoose_saturating(u64::MAX, 2), u64::MAX);
    }

    #[test]
    fn transport_feasibility() {
        assert!(transport_feasible(&[(0b01, 1), (0b11, 1)], &[1, 1]));
        assert!(!transport_feasible(&[(0b01, 2)], &[1, 5]));
        assert!(transport_feasible(&[(0b01, 1), (0b10, 1), (0b11, 2)], &[2, 2]));
        assert!(!transport_feasible(&[(0b01, 2), (0b11, 1)], &[2, 0]));
    }
}
