use super::{Outcome, Resolver};
use crate::formulas::{gw_main_bound, gw_many_bound};
use crate::random::{GwConfig, Seed};
use crate::tree::gw::{sample_log_f, summarize};
use crate::{Error, Result};

pub(crate) struct Params {
    epsilons: Vec<f64>,
    replicas: usize,
    max_nodes: usize,
    sigmas: f64,
    forest_size: usize,
    forest_replicas: usize,
    forest_fraction: f64,
}

impl Params {
    pub fn resolve(r: &mut Resolver<'_>) -> Result<Self> {
        let p = Params {
            epsilons: r.f64_list("epsilon_list", "0.05,0.1,0.2")?,
            replicas: r.replicas(100_000)?,
            max_nodes: r.usize("max_nodes", crate::random::DEFAULT_MAX_NODES)?,
            sigmas: r.f64("sigmas", 5.0)?,
            forest_size: r.usize("forest_size", 1000)?,
            forest_replicas: r.usize("forest_replicas", 10)?,
            forest_fraction: r.f64("forest_fraction", 0.9)?,
        };
        if p.epsilons.iter().any(|&e| !(e > 0.0 && e <= 0.5)) {
            return Err(Error::InvalidParameter("every ε must lie in (0, 0.5]".into()));
        }
        Ok(p)
    }
}

/// `E ln f(T)` for Pois(1 − ε) Galton–Watson trees against `0.003/ε`, and the
/// share of forests of `forest_size` trees with `Σ ln f ≥ 0.002·size/ε`.
/// One row per ε.
pub(crate) fn run(params: &Params, seed: Seed) -> Result<Outcome> {
    let mut out = Outcome::new(&[
        "epsilon",
        "lambda",
        "replicas",
        "used",
        "truncated",
        "lower_bounded",
        "mean_ln_f",
        "stderr",
        "bound",
        "margin",
        "forest_share",
        "forest_bound",
    ]);
    let mut all_main = true;
    let mut all_forest = true;
    for (ei, &eps) in params.epsilons.iter().enumerate() {
        let cfg = GwConfig::new(1.0 - eps, params.max_nodes)?;
        let base = seed.derive(ei as u64);
        let stats = summarize(&sample_log_f(&cfg, params.replicas, base.derive(0)));
        let bound = gw_main_bound(eps);
        let margin = stats.mean - params.sigmas * stats.stderr - bound;
        all_main &= margin > 0.0;

        let forest_bound = gw_many_bound(params.forest_size, eps);
        let mut hits = 0usize;
        let mut complete = 0usize;
        for f in 0..params.forest_replicas {
            let values = sample_log_f(&cfg, params.forest_size, base.derive(1).derive(f as u64));
            if values.iter().all(|v| v.value().is_some()) {
                complete += 1;
                hits += (values.iter().filter_map(|v| v.value()).sum::<f64>() >= forest_bound) as usize;
            } else {
                out.failures.push(format!("ε={eps} forest {f}: truncated tree"));
            }
        }
        let share = if complete > 0 { hits as f64 / complete as f64 } else { f64::NAN };
        if params.forest_replicas > 0 {
            all_forest &= share >= params.forest_fraction;
        }
        out.push_row(vec![
            eps.into(),
            (1.0 - eps).into(),
            params.replicas.into(),
            stats.used.into(),
            stats.truncated_count.into(),
            stats.lower_bounded.into(),
            stats.mean.into(),
            stats.stderr.into(),
            bound.into(),
            margin.into(),
            share.into(),
            forest_bound.into(),
        ]);
    }
    out.verdict("mean_above_bound", all_main, format!("mean − {}·stderr > 0.003/ε for every ε", params.sigmas));
    if params.forest_replicas > 0 {
        out.verdict(
            "forests_above_bound",
            all_forest,
            format!("share of forests with Σ ln f ≥ 0.002·N/ε at least {}", params.forest_fraction),
        );
    }
    Ok(out)
}
