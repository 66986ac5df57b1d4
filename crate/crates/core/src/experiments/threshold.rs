use super::{median, replicas, Cell, Outcome, Resolver};
use crate::mu::{log2_big, mu_exact, mu_lower_certificates, mu_upper_subcritical, CertificateConfig};
use crate::random::{sample_gnp, sample_gnp_sparse, Seed};
use crate::{Error, Result};

pub(crate) struct Params {
    n_exact: usize,
    n_cert: usize,
    cs: Vec<f64>,
    replicas: usize,
    cert_replicas: usize,
    epsilon: f64,
    upper_exponent: f64,
    path_tries: usize,
}

impl Params {
    pub fn resolve(r: &mut Resolver<'_>) -> Result<Self> {
        let p = Params {
            n_exact: r.usize("n_exact", 16)?,
            n_cert: r.usize("n_cert", 100_000)?,
            cs: r.f64_list("c_list", "0.2,0.5,1,1.5,2,3,5")?,
            replicas: r.replicas(5)?,
            cert_replicas: r.usize("cert_replicas", 2)?,
            epsilon: r.f64("epsilon", 0.5)?,
            upper_exponent: r.f64("upper_exponent", 0.99)?,
            path_tries: r.usize("path_tries", 10)?,
        };
        if p.cs.windows(2).any(|w| w[0] >= w[1]) || p.cs.iter().any(|&c| c < 0.0) {
            return Err(Error::InvalidParameter("c_list must be non-negative and increasing".into()));
        }
        Ok(p)
    }
}

fn regime(c: f64) -> &'static str {
    if c < 0.9 {
        "subcritical"
    } else if c <= 1.1 {
        "near-critical (open)"
    } else {
        "supercritical"
    }
}

struct Row {
    exact: Option<f64>,
    best_lower: (String, f64),
    tree_cert: Option<f64>,
    upper: (f64, f64),
}

/// μ of G(n, c/n) across a grid of `c`: exact values at small `n`, and
/// certified lower and upper bounds at large `n`.
pub(crate) fn run(params: &Params, seed: Seed) -> Result<Outcome> {
    let mut grid = Vec::new();
    for (ci, &c) in params.cs.iter().enumerate() {
        for rep in 0..params.replicas {
            grid.push(("exact", ci, c, rep, params.n_exact));
        }
        for rep in 0..params.cert_replicas {
            grid.push(("certificate", ci, c, rep, params.n_cert));
        }
    }
    let cfg = CertificateConfig { path_tries: params.path_tries, ..Default::default() };
    let rows = replicas(grid.len(), |i| -> Result<(Seed, Row)> {
        let (track, _, c, _, n) = grid[i];
        let s = seed.derive(i as u64);
        let p = (c / n as f64).min(1.0);
        let (exact, lower, upper) = if track == "exact" {
            let g = sample_gnp(n, p, s)?;
            let exact = log2_big(mu_exact(&g)?.exact.as_ref().expect("exact run"));
            (Some(exact), mu_lower_certificates(&g, s.derive(1), &cfg)?, mu_upper_subcritical(&g, None)?)
        } else {
            let g = sample_gnp_sparse(n, p, s)?;
            (None, mu_lower_certificates(&g, s.derive(1), &cfg)?, mu_upper_subcritical(&g, None)?)
        };
        let best = lower.best_lower().expect("sizes bound is always present");
        let tree_cert = lower.lower_bounds.iter().find(|b| b.method == "tree_components").map(|b| b.log2);
        let up = |m: &str| upper.upper_bounds.iter().find(|b| b.method == m).expect("both methods reported").log2;
        Ok((s, Row { exact, best_lower: (best.method.clone(), best.log2), tree_cert, upper: (up("otter"), up("exact_census")) }))
    });
    let mut out = Outcome::new(&[
        "track",
        "c",
        "replica",
        "n",
        "seed",
        "regime",
        "log2_mu",
        "best_lower_method",
        "best_lower",
        "tree_components",
        "upper_otter",
        "upper_census",
        "log2_mu_over_n",
        "lower_over_n",
        "upper_over_n",
    ]);
    let k = params.cs.len();
    let (mut exact_by_c, mut tree_by_c, mut upper_by_c) = (vec![vec![]; k], vec![vec![]; k], vec![vec![]; k]);
    for (i, row) in rows.into_iter().enumerate() {
        let (track, ci, c, rep, n) = grid[i];
        let (s, r) = match row {
            Ok(v) => v,
            Err(e) => {
                out.failures.push(format!("{track} c={c} replica {rep}: {e}"));
                continue;
            }
        };
        let nf = n as f64;
        let best_upper = r.upper.0.min(r.upper.1);
        match r.exact {
            Some(e) => exact_by_c[ci].push(e),
            None => {
                tree_by_c[ci].push(r.tree_cert.unwrap_or(0.0));
                upper_by_c[ci].push(best_upper);
            }
        }
        out.push_row(vec![
            track.into(),
            c.into(),
            rep.into(),
            n.into(),
            s.to_string().into(),
            regime(c).into(),
            r.exact.into(),
            r.best_lower.0.into(),
            r.best_lower.1.into(),
            r.tree_cert.into(),
            r.upper.0.into(),
            r.upper.1.into(),
            r.exact.map(|e| e / nf).into(),
            (r.best_lower.1 / nf).into(),
            (best_upper / nf).into(),
        ]);
    }

    let exact_medians: Vec<f64> = exact_by_c.iter().filter(|v| !v.is_empty()).map(|v| median(v)).collect();
    for (c, v) in params.cs.iter().zip(&exact_by_c) {
        if !v.is_empty() {
            out.put(&format!("median_log2_mu_c{c}"), median(v));
        }
    }
    if exact_medians.len() >= 2 {
        let ok = exact_medians.windows(2).all(|w| w[1] >= w[0]);
        let shown: Vec<String> = exact_medians.iter().map(|m| format!("{m:.3}")).collect();
        out.verdict("exact_medians_monotone", ok, format!("medians of log2 μ along c: {}", shown.join(" ")));
    }
    let n_cert = params.n_cert as f64;
    let mut super_rows = Vec::new();
    let mut sub_rows = Vec::new();
    for (ci, &c) in params.cs.iter().enumerate() {
        if c >= 1.0 + params.epsilon && !tree_by_c[ci].is_empty() {
            super_rows.push((c, median(&tree_by_c[ci])));
        }
        if c < 1.0 && !upper_by_c[ci].is_empty() {
            sub_rows.push((c, median(&upper_by_c[ci])));
        }
    }
    if !super_rows.is_empty() {
        let ok = super_rows.iter().all(|&(_, m)| m >= 1.0);
        let detail: Vec<String> = super_rows.iter().map(|(c, m)| format!("c={c}: {m:.3}")).collect();
        out.verdict("tree_certificate_supercritical", ok, format!("median tree-component bound ≥ 1; {}", detail.join(", ")));
    }
    if !sub_rows.is_empty() {
        let cap = n_cert.powf(params.upper_exponent);
        let ok = sub_rows.iter().all(|&(_, m)| m <= cap);
        let detail: Vec<String> = sub_rows.iter().map(|(c, m)| format!("c={c}: {m:.1}")).collect();
        out.verdict(
            "upper_sublinear_subcritical",
            ok,
            format!("median upper bound ≤ n^{} = {cap:.1}; {}", params.upper_exponent, detail.join(", ")),
        );
    }
    out.put("n_cert", Cell::from(params.n_cert));
    Ok(out)
}
