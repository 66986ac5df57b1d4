use super::{median, replicas, EdgeProb, Outcome, Resolver};
use crate::anatomy::xi_stats;
use crate::formulas::degree_window;
use crate::mu::mu_exact;
use crate::random::{sample_gnp, Seed};
use crate::Result;

pub(crate) struct XiParams {
    n: usize,
    p: EdgeProb,
    replicas: usize,
    window: (f64, f64),
}

impl XiParams {
    pub fn resolve(r: &mut Resolver<'_>) -> Result<Self> {
        Ok(XiParams {
            n: r.usize("n", 2000)?,
            p: r.prob("p", "0.3")?,
            replicas: r.replicas(5)?,
            window: (r.f64("window_lo", 0.5)?, r.f64("window_hi", 1.3)?),
        })
    }
}

/// `(ξ − α_n)/β_n` per replica of G(n, p), with the share of maximizing pairs
/// whose degrees both fall in the window `np ± √(2np(1−p) ln n)`.
pub(crate) fn run_xi(params: &XiParams, seed: Seed) -> Result<Outcome> {
    let n = params.n;
    let p = params.p.at(n)?;
    let (dlo, dhi) = degree_window::<f64>(n, p);
    let rows = replicas(params.replicas, |i| -> Result<_> {
        let s = seed.derive(i as u64);
        let g = sample_gnp(n, p, s)?;
        let st = xi_stats(&g, p)?;
        let in_window = |v: usize| (dlo..=dhi).contains(&(g.degree(v) as f64));
        let good = st.maximizers.iter().filter(|&&(x, y)| in_window(x) && in_window(y)).count();
        let share = good as f64 / st.maximizers.len() as f64;
        Ok((s, st, share))
    });
    let mut out = Outcome::new(&[
        "replica",
        "seed",
        "n",
        "p",
        "alpha",
        "beta",
        "xi_max",
        "normalized",
        "argmax_x",
        "argmax_y",
        "maximizer_count",
        "degree_window_share",
    ]);
    let mut normalized = Vec::new();
    for (i, row) in rows.into_iter().enumerate() {
        let (s, st, share) = match row {
            Ok(v) => v,
            Err(e) => {
                out.failures.push(format!("replica {i}: {e}"));
                continue;
            }
        };
        let z = (st.xi_max as f64 - st.alpha) / st.beta;
        normalized.push(z);
        out.push_row(vec![
            i.into(),
            s.to_string().into(),
            n.into(),
            p.into(),
            st.alpha.into(),
            st.beta.into(),
            st.xi_max.into(),
            z.into(),
            st.argmax_pair.0.into(),
            st.argmax_pair.1.into(),
            st.maximizer_count.into(),
            share.into(),
        ]);
    }
    let (lo, hi) = params.window;
    let inside = |z: &f64| (lo..=hi).contains(z);
    let med = median(&normalized);
    out.put("median_normalized", med);
    out.put("degree_window_lo", dlo);
    out.put("degree_window_hi", dhi);
    out.verdict("median_in_window", inside(&med), format!("median {med:.6} against [{lo}, {hi}]"));
    let all = !normalized.is_empty() && normalized.iter().all(inside);
    out.verdict(
        "all_in_window",
        all,
        format!("{} of {} replicas inside [{lo}, {hi}]", normalized.iter().filter(|z| inside(z)).count(), params.replicas),
    );
    Ok(out)
}

pub(crate) struct SecondOrderParams {
    ns: Vec<usize>,
    ps: Vec<EdgeProb>,
    replicas: usize,
}

impl SecondOrderParams {
    pub fn resolve(r: &mut Resolver<'_>) -> Result<Self> {
        let ns = r.usize_list("n_list", "14,15,16,17,18,19,20")?;
        let raw = r.f64_list("p_list", "0.1,0.3,0.5")?;
        Ok(SecondOrderParams { ns, ps: raw.into_iter().map(EdgeProb::Const).collect(), replicas: r.replicas(1)? })
    }
}

/// Exact `log2(2^n − μ)` against `α_n + β_n` on a small grid. Two subsets
/// `W ∪ {x}` and `W ∪ {x′}` with `W ⊆ N⁺ ∪ N⁻(x, x′)` induce isomorphic
/// graphs, so `2^n − μ ≥ 2^{ξ_max}` holds for every graph; when also
/// `ξ_max ≥ α_n` this gives `log2(2^n − μ) ≥ α_n`. Both are checked.
pub(crate) fn run_second_order(params: &SecondOrderParams, seed: Seed) -> Result<Outcome> {
    let mut grid = Vec::new();
    for &n in &params.ns {
        for p in &params.ps {
            for rep in 0..params.replicas {
                grid.push((n, *p, rep));
            }
        }
    }
    let rows = replicas(grid.len(), |i| -> Result<_> {
        let (n, p, _) = grid[i];
        let p = p.at(n)?;
        let s = seed.derive(i as u64);
        let g = sample_gnp(n, p, s)?;
        let mu: u64 = mu_exact(&g)?.exact.expect("exact run").try_into().expect("μ ≤ 2^n fits");
        let st = xi_stats(&g, p)?;
        Ok((s, p, mu, st))
    });
    let mut out = Outcome::new(&[
        "n",
        "p",
        "replica",
        "seed",
        "mu",
        "log2_gap",
        "xi_max",
        "alpha",
        "beta",
        "alpha_plus_beta",
        "gap_ratio",
    ]);
    let (mut xi_ok, mut alpha_ok, mut alpha_rows) = (true, true, 0usize);
    for (i, row) in rows.into_iter().enumerate() {
        let (n, _, rep) = grid[i];
        let (s, p, mu, st) = match row {
            Ok(v) => v,
            Err(e) => {
                out.failures.push(format!("n={n} replica {rep}: {e}"));
                continue;
            }
        };
        let gap = (1u64 << n) - mu;
        let log2_gap = if gap == 0 { f64::NEG_INFINITY } else { (gap as f64).log2() };
        xi_ok &= log2_gap >= st.xi_max as f64 - 1e-9;
        if st.xi_max as f64 >= st.alpha {
            alpha_rows += 1;
            alpha_ok &= log2_gap >= st.alpha - 1e-9;
        }
        let ab = st.alpha + st.beta;
        out.push_row(vec![
            n.into(),
            p.into(),
            rep.into(),
            s.to_string().into(),
            mu.into(),
            log2_gap.into(),
            st.xi_max.into(),
            st.alpha.into(),
            st.beta.into(),
            ab.into(),
            (log2_gap / ab).into(),
        ]);
    }
    out.verdict("gap_at_least_xi", xi_ok, "log2(2^n − μ) ≥ ξ_max on every row".into());
    out.verdict(
        "gap_at_least_alpha",
        alpha_ok,
        format!("log2(2^n − μ) ≥ α_n on the {alpha_rows} rows with ξ_max ≥ α_n"),
    );
    Ok(out)
}
