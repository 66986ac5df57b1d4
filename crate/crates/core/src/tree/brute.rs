//! Exhaustive subtree enumeration, used as an oracle for the exact counter.

use super::{RootedTree, SubtreeCount};
use crate::{Error, Result};
use num_bigint::BigUint;
use std::collections::HashSet;

/// Largest tree accepted by [`count_subtrees_bruteforce`].
pub const BRUTE_FORCE_CAP: usize = 20;

/// Enumerates every connected node set containing the root and counts the
/// distinct AHU codes.
pub fn count_subtrees_bruteforce(t: &RootedTree) -> Result<SubtreeCount> {
    let n = t.size();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::TooLarge { order: n, cap: BRUTE_FORCE_CAP });
    }
    let parent = t.parents();
    let mut codes = HashSet::new();
    for rest in 0u32..1 << (n - 1) {
        let mask = rest << 1 | 1;
        let closed = (1..n).all(|v| mask >> v & 1 == 0 || mask >> parent[v] & 1 == 1);
        if closed {
            codes.insert(code_within(t, 0, mask));
        }
    }
    let f = BigUint::from(codes.len());
    Ok(SubtreeCount { f_plus: &f + 1u32, f })
}

fn code_within(t: &RootedTree, v: usize, mask: u32) -> String {
    let mut kids: Vec<String> =
        t.children(v).iter().filter(|&&c| mask >> c & 1 == 1).map(|&c| code_within(t, c as usize, mask)).collect();
    kids.sort();
    format!("({})", kids.concat())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_examples() {
        let f = |t: &RootedTree| count_subtrees_bruteforce(t).unwrap().f;
        assert_eq!(f(&RootedTree::single()), BigUint::from(1u32));
        assert_eq!(f(&RootedTree::path(4)), BigUint::from(4u32));
        assert_eq!(f(&RootedTree::star(2)), BigUint::from(3u32));
        assert_eq!(f(&RootedTree::star(3)), BigUint::from(4u32));
        assert!(count_subtrees_bruteforce(&RootedTree::path(21)).is_err());
    }
}
