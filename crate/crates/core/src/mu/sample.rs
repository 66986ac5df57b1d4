use super::{Bound, MuConfig, MuReport};
use crate::graph::{CanonicalForm, Canonizer, Graph, MAX_CANON_ORDER};
use crate::random::{subset_from_rng, Seed};
use crate::{Error, Result};
use rayon::prelude::*;
use std::collections::HashMap;
use std::time::Instant;

const REJECTION_BUDGET: usize = 10_000;

/// Lower bounds on μ from `samples` uniform vertex subsets.
///
/// * `distinct`: log2 of the number of distinct isomorphism types seen
///   (certified; it only grows along a longer run with the same seed).
/// * `collision`: log2(1/Ĉ) where Ĉ is the unbiased pair-collision rate of
///   the sampled types. Since Σ pᵢ² ≥ 1/|support| this estimates a lower
///   bound; it is marked as an estimate and carries a delta-method standard
///   error from the U-statistic variance (4/s)(Σpᵢ³ − (Σpᵢ²)²).
///
/// When `n` exceeds the canonicalization cap, subsets larger than the cap are
/// redrawn, which biases the sample toward small subsets.
pub fn mu_sample_lower(g: &Graph, samples: usize, seed: Seed, cfg: &MuConfig) -> Result<MuReport> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be positive".into()));
    }
    let n = g.order();
    let cap = cfg.canon_cap.min(MAX_CANON_ORDER);
    let start = Instant::now();
    let mut rng = seed.rng();
    let mut subsets = Vec::with_capacity(samples);
    let mut rejected = 0usize;
    while subsets.len() < samples {
        let s = subset_from_rng(n, &mut rng);
        if s.len() > cap {
            rejected += 1;
            if rejected > REJECTION_BUDGET.saturating_mul(samples) {
                return Err(Error::RetryLimit(rejected));
            }
            continue;
        }
        subsets.push(s);
    }
    let forms: Vec<CanonicalForm> = subsets
        .par_iter()
        .map_init(Canonizer::default, |canon, s| {
            let rows = g.induced_subgraph(s).small_rows().expect("subset within cap");
            canon.certificate(&rows)
        })
        .collect();
    let mut freq: HashMap<&CanonicalForm, u64> = HashMap::new();
    for f in &forms {
        *freq.entry(f).or_insert(0) += 1;
    }

    let mut report = MuReport::new(n);
    report.lower_bounds.push(Bound::certified("distinct", (freq.len() as f64).log2()));
    let s = samples as f64;
    let pairs: f64 = freq.values().map(|&m| (m * m.saturating_sub(1)) as f64).sum();
    let triples: f64 = freq.values().map(|&m| (m * m.saturating_sub(1) * m.saturating_sub(2)) as f64).sum();
    if samples < 2 {
        report.notes.push("collision: needs at least two samples".into());
    } else if pairs == 0.0 {
        report.notes.push("collision: no repeated type among the samples".into());
    } else {
        let c = pairs / (s * (s - 1.0));
        let p3 = if samples >= 3 { triples / (s * (s - 1.0) * (s - 2.0)) } else { c * c };
        let var = (4.0 / s * (p3 - c * c)).max(0.0);
        let stderr = var.sqrt() / (c * std::f64::consts::LN_2);
        report.lower_bounds.push(Bound::estimate("collision", -c.log2(), stderr));
    }
    if rejected > 0 {
        report.notes.push(format!("redrew {rejected} subsets larger than the canonicalization cap {cap}"));
    }
    report.subsets_enumerated = samples as u64;
    report.elapsed = start.elapsed().as_secs_f64();
    report.finish()
}
