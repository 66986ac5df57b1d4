use super::{mean, replicas, stderr, Outcome, Resolver};
use crate::anatomy::{build_contiguous_model, conjugate_lambda, core_decompose};
use crate::formulas::{gw_progeny_mean, two_core_fraction};
use crate::graph::automorphism_count_with;
use crate::mu::{log2_big, type_tuple_certificate};
use crate::random::{sample_gnp_sparse, Seed};
use super::Cell;
use crate::{Error, Result};

pub(crate) struct Params {
    lambda: f64,
    n: usize,
    replicas: usize,
    tolerance: f64,
    aut_cap: usize,
    verdict_min_lambda: f64,
}

impl Params {
    pub fn resolve(r: &mut Resolver<'_>) -> Result<Self> {
        let p = Params {
            lambda: r.f64("lambda", 2.0)?,
            n: r.usize("n", 10_000)?,
            replicas: r.replicas(20)?,
            tolerance: r.f64("tolerance", 0.05)?,
            aut_cap: r.usize("aut_cap", 16)?,
            verdict_min_lambda: r.f64("verdict_min_lambda", 1.1)?,
        };
        if !(p.lambda > 1.0 && p.lambda <= 3.0) {
            return Err(Error::InvalidParameter(format!("λ must lie in (1, 3], got {}", p.lambda)));
        }
        if p.n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        Ok(p)
    }
}

/// 2-core of G(n, λ/n) against the limiting fraction, its automorphism count,
/// the type-tuple certificate, and pendant-tree sizes against the contiguous
/// model grown on the same core.
pub(crate) fn run(params: &Params, seed: Seed) -> Result<Outcome> {
    let n = params.n;
    let lambda = params.lambda;
    let lp: f64 = conjugate_lambda(lambda)?;
    let target: f64 = two_core_fraction(lambda)?;
    let rows = replicas(params.replicas, |i| -> Result<_> {
        let s = seed.derive(i as u64);
        let g = sample_gnp_sparse(n, lambda / n as f64, s.derive(0))?;
        let dec = core_decompose(&g);
        let k = dec.core_order();
        let aut = if k > 0 && k <= params.aut_cap {
            Some(log2_big(&automorphism_count_with(&dec.core_graph().to_dense(), params.aut_cap)?))
        } else {
            None
        };
        let cert = type_tuple_certificate(&dec, params.aut_cap)?;
        let real_sizes: Vec<f64> = dec.pendant.values().map(|t| t.size() as f64).collect();
        let model_sizes: Vec<f64> = if k > 0 {
            let m = build_contiguous_model(&dec.core_graph(), lp, s.derive(1))?;
            m.tree_sizes.iter().map(|&x| x as f64).collect()
        } else {
            Vec::new()
        };
        Ok((s, k, dec.core_edges.len(), aut, cert, real_sizes, model_sizes))
    });
    let mut out = Outcome::new(&[
        "replica",
        "seed",
        "core_order",
        "core_edges",
        "core_fraction",
        "aut_log2",
        "certificate_log2",
        "certificate_aut_exact",
        "mean_pendant_size",
        "mean_model_pendant_size",
    ]);
    let mut fractions = Vec::new();
    let (mut real_all, mut model_all) = (Vec::new(), Vec::new());
    let mut aut_skipped = 0usize;
    for (i, row) in rows.into_iter().enumerate() {
        let (s, k, e, aut, cert, real_sizes, model_sizes) = match row {
            Ok(v) => v,
            Err(e) => {
                out.failures.push(format!("replica {i}: {e}"));
                continue;
            }
        };
        let fraction = k as f64 / n as f64;
        fractions.push(fraction);
        aut_skipped += (k > 0 && aut.is_none()) as usize;
        out.push_row(vec![
            i.into(),
            s.to_string().into(),
            k.into(),
            e.into(),
            fraction.into(),
            aut.into(),
            cert.as_ref().map(|c| c.value).into(),
            cert.as_ref().map(|c| c.aut_exact).map(Cell::Bool).unwrap_or(Cell::Missing),
            mean(&real_sizes).into(),
            mean(&model_sizes).into(),
        ]);
        real_all.extend(real_sizes);
        model_all.extend(model_sizes);
    }
    let mean_fraction = mean(&fractions);
    out.put("lambda_prime", lp);
    out.put("core_fraction_limit", target);
    out.put("mean_core_fraction", mean_fraction);
    out.put("aut_skipped", aut_skipped);
    let (mr, mm) = (mean(&real_all), mean(&model_all));
    let se = (stderr(&real_all).powi(2) + stderr(&model_all).powi(2)).sqrt();
    out.put("pendant_size_mean", mr);
    out.put("model_pendant_size_mean", mm);
    out.put("pendant_size_z", (mr - mm) / se);
    out.put("progeny_mean", gw_progeny_mean(lp));
    if lambda >= params.verdict_min_lambda {
        let gap = (mean_fraction - target).abs();
        out.verdict(
            "core_fraction",
            gap <= params.tolerance,
            format!("mean |V(H)|/n = {mean_fraction:.6} vs {target:.6}, gap {gap:.6}, tolerance {}", params.tolerance),
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use crate::experiments::{run_experiment, Cell, ExperimentSpec};

    #[test]
    fn small_run_reports_the_limit() {
        let spec = ExperimentSpec::parse("lambda = 2\nn = 2000\nreplicas = 3\ntolerance = 0.1").unwrap();
        let r = run_experiment("anatomy", &spec).unwrap();
        assert_eq!(r.row_count, 3);
        match r.summary["lambda_prime"] {
            Cell::Real(x) => assert!((x - 0.40637).abs() < 1e-5),
            ref c => panic!("{c:?}"),
        }
        assert!(r.passed(), "{:?}", r.verdicts);
    }

    #[test]
    fn near_critical_is_descriptive() {
        let spec = ExperimentSpec::parse("lambda = 1.01\nn = 500\nreplicas = 2").unwrap();
        let r = run_experiment("anatomy", &spec).unwrap();
        assert!(r.verdicts.is_empty());
    }
}
