//! Colour refinement for graphs of any order.

use super::Adjacency;

/// Stable colouring of 1-dimensional Weisfeiler–Leman refinement, starting
/// from the uniform colouring. Colours are numbered `0..k` in an order that
/// depends only on the isomorphism-invariant refinement history.
pub fn color_refinement<G: Adjacency + ?Sized>(g: &G) -> Vec<u32> {
    let n = g.order();
    let mut colour = vec![0u32; n];
    let mut classes = if n == 0 { 0 } else { 1 };
    loop {
        let mut sigs: Vec<(u32, Vec<u32>, usize)> = (0..n)
            .map(|v| {
                let mut s: Vec<u32> = g.neighbors(v).map(|w| colour[w]).collect();
                s.sort_unstable();
                (colour[v], s, v)
            })
            .collect();
        sigs.sort_unstable();
        let mut next = vec![0u32; n];
        let mut k = 0u32;
        for i in 0..sigs.len() {
            if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                k += 1;
            }
            next[sigs[i].2] = k;
        }
        let count = if n == 0 { 0 } else { k as usize + 1 };
        colour = next;
        if count == classes {
            return colour;
        }
        classes = count;
    }
}

/// Upper bound on `log2 |Aut(g)|`: automorphisms preserve the stable
/// colouring, so `|Aut(g)| ≤ ∏ |class|!`.
pub fn automorphism_log2_upper_bound<G: Adjacency + ?Sized>(g: &G) -> f64 {
    let colour = color_refinement(g);
    let mut sizes = std::collections::HashMap::new();
    for c in colour {
        *sizes.entry(c).or_insert(0usize) += 1;
    }
    sizes.values().map(|&s| (2..=s).map(|k| (k as f64).log2()).sum::<f64>()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn refinement_separates_path_positions() {
        let c = color_refinement(&Graph::path(5));
        assert_eq!(c[0], c[4]);
        assert_eq!(c[1], c[3]);
        assert_ne!(c[0], c[1]);
        assert_ne!(c[1], c[2]);
        assert!((automorphism_log2_upper_bound(&Graph::path(5)) - 2.0).abs() < 1e-12);
        let k4 = automorphism_log2_upper_bound(&Graph::complete(4));
        assert!((k4 - 24f64.log2()).abs() < 1e-12);
    }
}
