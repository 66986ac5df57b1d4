//! Exact automorphism group order.
//!
//! Twin classes are collapsed first (any permutation of a twin class is an
//! automorphism, and twin classes are permuted among themselves by every
//! automorphism), then colour-preserving automorphisms of the quotient are
//! counted by backtracking inside the cells of the equitable partition.

use super::canon::refine;
use super::Graph;
use crate::{Error, Result};
use num_bigint::BigUint;
use std::collections::{HashMap, VecDeque};

/// Default order cap for exact automorphism counting.
pub const DEFAULT_AUTOMORPHISM_CAP: usize = 16;

pub fn automorphism_count(g: &Graph) -> Result<BigUint> {
    automorphism_count_with(g, DEFAULT_AUTOMORPHISM_CAP)
}

/// `|Aut(g)|` for graphs of order at most `min(cap, 64)`.
pub fn automorphism_count_with(g: &Graph, cap: usize) -> Result<BigUint> {
    let cap = cap.min(64);
    if g.order() > cap {
        return Err(Error::TooLarge { order: g.order(), cap });
    }
    let rows = g.small_rows().expect("order checked");
    Ok(count_coloured(rows, vec![0; g.order()]))
}

pub(crate) fn count_coloured(mut rows: Vec<u64>, mut colours: Vec<u32>) -> BigUint {
    let mut factor = BigUint::from(1u32);
    loop {
        let n = rows.len();
        // class key -> members; type 0 = false twins, 1 = true twins
        let mut classes: HashMap<(u32, u64, u8), Vec<usize>> = HashMap::new();
        for v in 0..n {
            classes.entry((colours[v], rows[v], 0)).or_default().push(v);
            classes.entry((colours[v], rows[v] | 1 << v, 1)).or_default().push(v);
        }
        let mut merged: Vec<(usize, Vec<usize>, u8)> = classes
            .into_iter()
            .filter(|(_, m)| m.len() > 1)
            .map(|(k, m)| (m[0], m, k.2))
            .collect();
        if merged.is_empty() {
            break;
        }
        merged.sort();
        let mut keep = vec![true; n];
        let mut new_colour_key: Vec<(u32, usize, u8)> = colours.iter().map(|&c| (c, 1, 2)).collect();
        for (rep, members, kind) in &merged {
            for k in 2..=members.len() {
                factor *= k as u32;
            }
            for &m in &members[1..] {
                keep[m] = false;
            }
            new_colour_key[*rep] = (colours[*rep], members.len(), *kind);
        }
        let kept: Vec<usize> = (0..n).filter(|&v| keep[v]).collect();
        let mut intern: HashMap<(u32, usize, u8), u32> = HashMap::new();
        let mut keys: Vec<(u32, usize, u8)> = kept.iter().map(|&v| new_colour_key[v]).collect();
        keys.sort();
        keys.dedup();
        for (i, k) in keys.into_iter().enumerate() {
            intern.insert(k, i as u32);
        }
        let new_rows: Vec<u64> = kept
            .iter()
            .map(|&v| {
                let mut r = 0u64;
                for (j, &w) in kept.iter().enumerate() {
                    if rows[v] >> w & 1 == 1 {
                        r |= 1 << j;
                    }
                }
                r
            })
            .collect();
        colours = kept.iter().map(|&v| intern[&new_colour_key[v]]).collect();
        rows = new_rows;
    }
    factor * BigUint::from(backtrack_count(&rows, &colours))
}

/// Number of colour-preserving automorphisms by backtracking.
fn backtrack_count(rows: &[u64], colours: &[u32]) -> u64 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    let mut palette: Vec<u32> = colours.to_vec();
    palette.sort_unstable();
    palette.dedup();
    let mut cells: Vec<u64> = palette
        .iter()
        .map(|&c| (0..n).filter(|&v| colours[v] == c).fold(0u64, |m, v| m | 1 << v))
        .collect();
    let mut queue: VecDeque<u64> = cells.iter().copied().collect();
    refine(rows, &mut cells, &mut queue);
    let mut cell_of = vec![0u64; n];
    for &c in &cells {
        let mut m = c;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            cell_of[v] = c;
        }
    }
    // breadth-first order so that most vertices have an already-mapped neighbour
    let mut order = Vec::with_capacity(n);
    let mut seen = 0u64;
    for s in 0..n {
        if seen >> s & 1 == 1 {
            continue;
        }
        seen |= 1 << s;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            order.push(v);
            let mut r = rows[v] & !seen;
            while r != 0 {
                let w = r.trailing_zeros() as usize;
                r &= r - 1;
                seen |= 1 << w;
                q.push_back(w);
            }
        }
    }
    let mut image = vec![usize::MAX; n];
    extend(rows, &cell_of, &order, 0, &mut image, 0)
}

fn extend(rows: &[u64], cell_of: &[u64], order: &[usize], depth: usize, image: &mut [usize], used: u64) -> u64 {
    if depth == order.len() {
        return 1;
    }
    let v = order[depth];
    let mut total = 0;
    let mut cand = cell_of[v] & !used;
    while cand != 0 {
        let w = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        let ok = order[..depth].iter().all(|&u| (rows[u] >> v & 1) == (rows[image[u]] >> w & 1));
        if ok {
            image[v] = w;
            total += extend(rows, cell_of, order, depth + 1, image, used | 1 << w);
        }
    }
    image[v] = usize::MAX;
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::brute;

    #[test]
    fn small_examples() {
        assert_eq!(automorphism_count(&Graph::complete(4)).unwrap(), BigUint::from(24u32));
        assert_eq!(automorphism_count(&Graph::path(3)).unwrap(), BigUint::from(2u32));
        assert_eq!(automorphism_count(&Graph::cycle(5)).unwrap(), BigUint::from(10u32));
        assert_eq!(automorphism_count(&Graph::empty(0)).unwrap(), BigUint::from(1u32));
        assert_eq!(automorphism_count(&Graph::empty(10)).unwrap(), BigUint::from(3628800u32));
        // Petersen graph
        let mut pet = Graph::empty(10);
        for i in 0..5 {
            pet.add_edge(i, (i + 1) % 5).unwrap();
            pet.add_edge(i, i + 5).unwrap();
            pet.add_edge(5 + i, 5 + (i + 2) % 5).unwrap();
        }
        assert_eq!(automorphism_count(&pet).unwrap(), BigUint::from(120u32));
        assert!(automorphism_count(&Graph::empty(17)).is_err());
    }

    #[test]
    fn matches_permutation_oracle_on_all_graphs_up_to_five() {
        for n in 0..=5usize {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for mask in 0u32..(1 << pairs.len()) {
                let g = Graph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e)).unwrap();
                let expect = brute::automorphism_count(&g);
                assert_eq!(automorphism_count(&g).unwrap(), BigUint::from(expect), "{g:?}");
            }
        }
    }
}
