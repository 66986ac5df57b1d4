use crate::formulas::{alpha_n, beta_n};
use crate::graph::Graph;
use crate::{Error, Real, Result};
use rayon::prelude::*;
use serde::Serialize;

/// At most this many maximizing pairs (the lexicographically smallest) are kept.
pub const MAX_RECORDED_MAXIMIZERS: usize = 1024;

/// Distribution of `ξ_{x,x′}`, the number of vertices other than `x, x′`
/// adjacent to both or to neither.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct XiStats<F> {
    pub alpha: F,
    pub beta: F,
    pub xi_max: usize,
    /// Lexicographically first pair attaining `xi_max`.
    pub argmax_pair: (usize, usize),
    /// `histogram[k]` = number of pairs with `ξ = k`, for `k` in `0..=n−2`.
    pub histogram: Vec<u64>,
    pub maximizer_count: u64,
    /// Smallest maximizing pairs, at most [`MAX_RECORDED_MAXIMIZERS`].
    pub maximizers: Vec<(usize, usize)>,
}

struct Partial {
    hist: Vec<u64>,
    max: usize,
    count: u64,
    pairs: Vec<(usize, usize)>,
}

impl Partial {
    fn new(n: usize) -> Self {
        Partial { hist: vec![0; n.saturating_sub(1)], max: 0, count: 0, pairs: Vec::new() }
    }

    fn merge(mut self, other: Partial) -> Partial {
        for (a, b) in self.hist.iter_mut().zip(&other.hist) {
            *a += b;
        }
        match self.max.cmp(&other.max) {
            std::cmp::Ordering::Less => {
                self.max = other.max;
                self.count = other.count;
                self.pairs = other.pairs;
            }
            std::cmp::Ordering::Equal => {
                self.count += other.count;
                self.pairs.extend(other.pairs);
                self.pairs.sort_unstable();
                self.pairs.truncate(MAX_RECORDED_MAXIMIZERS);
            }
            std::cmp::Ordering::Greater => {}
        }
        self
    }
}

/// Scans all pairs with word-parallel XOR and popcount:
/// `ξ_{x,x′} = n − 2 − |N(x) △ N(x′)| + 2·[x ~ x′]`.
pub fn xi_stats<F: Real>(g: &Graph, p: F) -> Result<XiStats<F>> {
    let n = g.order();
    if n < 2 {
        return Err(Error::InvalidParameter("ξ statistics need at least two vertices".into()));
    }
    let total = (0..n - 1)
        .into_par_iter()
        .fold(
            || Partial::new(n),
            |mut acc, x| {
                let rx = g.row(x);
                for y in x + 1..n {
                    let diff: usize = rx.iter().zip(g.row(y)).map(|(a, b)| (a ^ b).count_ones() as usize).sum();
                    let xi = n + 2 * g.has_edge(x, y) as usize - 2 - diff;
                    acc.hist[xi] += 1;
                    if xi > acc.max || acc.count == 0 {
                        acc.max = xi;
                        acc.count = 0;
                        acc.pairs.clear();
                    }
                    if xi == acc.max {
                        acc.count += 1;
                        if acc.pairs.len() < MAX_RECORDED_MAXIMIZERS {
                            acc.pairs.push((x, y));
                        }
                    }
                }
                acc
            },
        )
        .reduce(|| Partial::new(n), Partial::merge);
    Ok(XiStats {
        alpha: alpha_n(n, p),
        beta: beta_n(n, p),
        xi_max: total.max,
        argmax_pair: total.pairs[0],
        histogram: total.hist,
        maximizer_count: total.count,
        maximizers: total.pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{sample_gnp, Seed};

    /// Direct count from the definition.
    fn xi_naive(g: &Graph, x: usize, y: usize) -> usize {
        (0..g.order()).filter(|&v| v != x && v != y && g.has_edge(v, x) == g.has_edge(v, y)).count()
    }

    #[test]
    fn cliques_and_empty_graphs() {
        for g in [Graph::complete(9), Graph::empty(9)] {
            let s: XiStats<f64> = xi_stats(&g, 0.5).unwrap();
            assert_eq!(s.xi_max, 7);
            assert_eq!(s.histogram[7], 36);
            assert_eq!(s.maximizer_count, 36);
            assert_eq!(s.argmax_pair, (0, 1));
        }
        assert!(xi_stats(&Graph::empty(1), 0.5f64).is_err());
    }

    #[test]
    fn matches_definition_on_random_graphs() {
        for seed in 0..5 {
            let g = sample_gnp(70, 0.4, Seed::new(seed)).unwrap();
            let s: XiStats<f64> = xi_stats(&g, 0.4).unwrap();
            let mut hist = vec![0u64; 69];
            let mut best = (0, (0, 0));
            for x in 0..70 {
                for y in x + 1..70 {
                    let v = xi_naive(&g, x, y);
                    hist[v] += 1;
                    if v > best.0 {
                        best = (v, (x, y));
                    }
                }
            }
            assert_eq!(s.histogram, hist);
            assert_eq!((s.xi_max, s.argmax_pair), best);
            assert_eq!(s.histogram.iter().sum::<u64>(), 70 * 69 / 2);
        }
    }
}
