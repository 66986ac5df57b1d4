use super::count::{SubtreeCounter, DEFAULT_EXPLICIT_LIMIT};
use super::{count_subtrees_exact, RootedTree};
use crate::random::{sample_gw_tree, GwConfig, Seed};
use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

/// Natural log of a big integer from its top 64 bits and bit length.
pub fn big_ln(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return (u64::try_from(x).unwrap() as f64).ln();
    }
    let shift = bits - 64;
    let top = u64::try_from(x >> shift).unwrap();
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Sample statistics of `ln f(T)` over Galton–Watson trees.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LogFStats {
    pub mean: f64,
    pub stderr: f64,
    /// Replicas that hit `max_nodes`; excluded from `mean`.
    pub truncated_count: usize,
    pub used: usize,
    /// Replicas whose exact count exceeded [`GW_COUNT_BUDGET`]; they enter
    /// `mean` with the lower bound `max f(T_u)` over descendants `u` that fit
    /// the budget, so `mean` can only be underestimated.
    pub lower_bounded: usize,
}

const CHUNK: usize = 256;

/// Work budget (in [`SubtreeCounter`] steps, roughly 10⁷ per second) for the
/// exact count of one sampled tree.
pub const GW_COUNT_BUDGET: u64 = 20_000_000;

/// Failed descendant attempts before a lower bound settles for what it has.
const FALLBACK_ATTEMPTS: usize = 4;

/// `ln f` of one sampled tree.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum LogF {
    Exact(f64),
    Lower(f64),
    Truncated,
}

impl LogF {
    pub fn value(self) -> Option<f64> {
        match self {
            LogF::Exact(x) | LogF::Lower(x) => Some(x),
            LogF::Truncated => None,
        }
    }
}

/// Estimates `E ln f(T)` for `T ~ GW(Pois(λ))`. Replica `i` uses
/// `seed.derive(i)`; runs on the current rayon pool.
pub fn estimate_log_f(cfg: &GwConfig, replicas: usize, seed: Seed) -> LogFStats {
    let values = sample_log_f(cfg, replicas, seed);
    summarize(&values)
}

pub(crate) fn sample_log_f(cfg: &GwConfig, replicas: usize, seed: Seed) -> Vec<LogF> {
    let chunks: Vec<Vec<LogF>> = (0..replicas.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut counter = SubtreeCounter::with_budget(DEFAULT_EXPLICIT_LIMIT, GW_COUNT_BUDGET);
            (c * CHUNK..((c + 1) * CHUNK).min(replicas))
                .map(|i| {
                    let s = sample_gw_tree(cfg, seed.derive(i as u64));
                    if s.truncated {
                        LogF::Truncated
                    } else if s.tree.height() >= 1_000 {
                        LogF::Exact(big_ln(&count_subtrees_exact(&s.tree).f))
                    } else {
                        match counter.count(&s.tree) {
                            Ok(c) => LogF::Exact(big_ln(&c.f)),
                            Err(_) => LogF::Lower(descendant_lower_bound(&mut counter, &s.tree)),
                        }
                    }
                })
                .collect()
        })
        .collect();
    chunks.into_iter().flatten().collect()
}

/// `ln max(height + 1, f(T_u))` over descendants `u` counted within budget,
/// searched from the root downwards. Prefixing the root to a rooted subtree
/// of `T_u` gives a rooted subtree of `T`, so each term bounds `f(T)`.
fn descendant_lower_bound(counter: &mut SubtreeCounter, t: &RootedTree) -> f64 {
    let mut best = ((t.height() + 1) as f64).ln();
    let mut queue: std::collections::VecDeque<usize> = t.children(0).iter().map(|&c| c as usize).collect();
    let mut failures = 0;
    while let Some(u) = queue.pop_front() {
        let sub = t.subtree(u);
        match counter.count(&sub) {
            Ok(c) => best = best.max(big_ln(&c.f)),
            Err(_) => {
                failures += 1;
                if failures >= FALLBACK_ATTEMPTS {
                    break;
                }
                queue.extend(t.children(u).iter().map(|&c| c as usize));
            }
        }
    }
    best
}

pub(crate) fn summarize(values: &[LogF]) -> LogFStats {
    let used: Vec<f64> = values.iter().filter_map(|v| v.value()).collect();
    let truncated_count = values.len() - used.len();
    let lower_bounded = values.iter().filter(|v| matches!(v, LogF::Lower(_))).count();
    let n = used.len();
    if n == 0 {
        return LogFStats { mean: f64::NAN, stderr: f64::NAN, truncated_count, used: 0, lower_bounded };
    }
    let mean = used.iter().sum::<f64>() / n as f64;
    let var = if n > 1 { used.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64 } else { 0.0 };
    LogFStats { mean, stderr: (var / n as f64).sqrt(), truncated_count, used: n, lower_bounded }
}

/// `∏ f(T_i)` exactly.
pub fn product_f_lower_bound(trees: &[RootedTree]) -> BigUint {
    let mut counter = SubtreeCounter::new(DEFAULT_EXPLICIT_LIMIT);
    trees.iter().fold(BigUint::one(), |acc, t| {
        let f = if t.height() >= 1_000 { count_subtrees_exact(t).f } else { counter.count(t).expect("within budget").f };
        acc * f
    })
}

/// `Σ ln f(T_i)`.
pub fn product_ln_f(trees: &[RootedTree]) -> f64 {
    let mut counter = SubtreeCounter::new(DEFAULT_EXPLICIT_LIMIT);
    trees
        .iter()
        .map(|t| big_ln(&if t.height() >= 1_000 { count_subtrees_exact(t).f } else { counter.count(t).expect("within budget").f }))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_of_big_integers() {
        assert_eq!(big_ln(&BigUint::from(1u32)), 0.0);
        let x = BigUint::from(3u32).pow(200);
        assert!((big_ln(&x) - 200.0 * 3f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn products() {
        assert_eq!(product_f_lower_bound(&[]), BigUint::from(1u32));
        assert_eq!(product_f_lower_bound(&[RootedTree::single(), RootedTree::single()]), BigUint::from(1u32));
        assert_eq!(product_f_lower_bound(&[RootedTree::star(2), RootedTree::star(2)]), BigUint::from(9u32));
        assert!((product_ln_f(&[RootedTree::star(2), RootedTree::star(2)]) - 9f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn budget_fallback_is_a_lower_bound() {
        let cfg = GwConfig::new(0.9, 10_000).unwrap();
        let mut checked = 0;
        for i in 0..200 {
            let t = sample_gw_tree(&cfg, Seed::new(3).derive(i)).tree;
            let exact = big_ln(&count_subtrees_exact(&t).f);
            let mut tight = SubtreeCounter::with_budget(DEFAULT_EXPLICIT_LIMIT, 0);
            if tight.count(&t).is_ok() {
                continue;
            }
            checked += 1;
            let lower = descendant_lower_bound(&mut SubtreeCounter::with_budget(DEFAULT_EXPLICIT_LIMIT, 50), &t);
            assert!(lower <= exact + 1e-9, "{lower} > {exact}");
            assert!(lower >= ((t.height() + 1) as f64).ln() - 1e-12);
        }
        assert!(checked > 0);
    }

    #[test]
    fn tiny_lambda_gives_zero_mean() {
        let cfg = GwConfig::new(1e-9, 100).unwrap();
        let s = estimate_log_f(&cfg, 100, Seed::new(1));
        assert_eq!(s.mean, 0.0);
        assert_eq!(s.truncated_count, 0);
    }
}
