use super::{median, replicas, Outcome, Resolver};
use crate::anatomy::{find_comb, second_eigenvalue};
use crate::formulas::regular_spectral_bound;
use crate::graph::{Graph, VertexSet};
use crate::mu::{edge_concentration, log2_big, mu_exact, Expectation};
use crate::random::{sample_gnp, sample_regular_sparse, Seed};
use crate::{Error, Result};

pub(crate) struct RegularParams {
    n: usize,
    d: usize,
    replicas: usize,
    iterations: usize,
    path_tries: usize,
    c_floor: f64,
    pass_fraction: f64,
    trials: usize,
    min_fraction: f64,
}

impl RegularParams {
    pub fn resolve(r: &mut Resolver<'_>) -> Result<Self> {
        let p = RegularParams {
            n: r.usize("n", 1000)?,
            d: r.usize("d", 3)?,
            replicas: r.replicas(10)?,
            iterations: r.usize("iterations", 10_000)?,
            path_tries: r.usize("path_tries", 50)?,
            c_floor: r.f64("c_floor", 0.02)?,
            pass_fraction: r.f64("pass_fraction", 0.8)?,
            trials: r.usize("trials", 200)?,
            min_fraction: r.f64("min_fraction", 0.3)?,
        };
        if p.d < 3 || p.d >= p.n || (p.n * p.d) % 2 == 1 {
            return Err(Error::InvalidParameter(format!("need 3 ≤ d < n with n·d even, got n = {}, d = {}", p.n, p.d)));
        }
        Ok(p)
    }
}

/// Per replica of G(n, d): the second eigenvalue against `2√(d−1) + 1`,
/// edge counts of large subsets against `d|W|²/(2n)`, and the comb
/// certificate `log2 μ ≥ |U*| − 1`.
pub(crate) fn run_regular(params: &RegularParams, seed: Seed) -> Result<Outcome> {
    let (n, d) = (params.n, params.d);
    let bound: f64 = regular_spectral_bound(d);
    let min_size = ((params.min_fraction * n as f64).ceil() as usize).clamp(2, n);
    let rows = replicas(params.replicas, |i| -> Result<_> {
        let s = seed.derive(i as u64);
        let g = sample_regular_sparse(n, d, s.derive(0))?;
        let lambda2 = second_eigenvalue::<f64, _>(&g, params.iterations)?;
        let conc = edge_concentration::<f64, _>(&g, &VertexSet::full(n), min_size, params.trials, Expectation::Regular(d), s.derive(1))?;
        let comb = find_comb(&g, params.path_tries, s.derive(2));
        let (path_len, u_star) = match &comb {
            Ok(c) => (c.path.len(), c.u_star_size),
            Err(_) => (0, 0),
        };
        Ok((s, lambda2, conc, path_len, u_star))
    });
    let mut out = Outcome::new(&[
        "replica",
        "seed",
        "n",
        "d",
        "second_eigenvalue",
        "converged",
        "min_ratio",
        "max_ratio",
        "path_length",
        "u_star_size",
        "certificate_log2",
        "c_empirical",
    ]);
    let (mut spectral_ok, mut conc_ok, mut comb_ok, mut done) = (0usize, 0usize, 0usize, 0usize);
    let mut cs = Vec::new();
    for (i, row) in rows.into_iter().enumerate() {
        let (s, lambda2, conc, path_len, u_star) = match row {
            Ok(v) => v,
            Err(e) => {
                out.failures.push(format!("replica {i}: {e}"));
                continue;
            }
        };
        done += 1;
        let cert = u_star.saturating_sub(1);
        let c = cert as f64 / n as f64;
        cs.push(c);
        spectral_ok += (lambda2.value < bound) as usize;
        conc_ok += (conc.min_ratio >= 0.5 && conc.max_ratio <= 1.5) as usize;
        comb_ok += (c >= params.c_floor) as usize;
        out.push_row(vec![
            i.into(),
            s.to_string().into(),
            n.into(),
            d.into(),
            lambda2.value.into(),
            lambda2.converged.into(),
            conc.min_ratio.into(),
            conc.max_ratio.into(),
            path_len.into(),
            u_star.into(),
            cert.into(),
            c.into(),
        ]);
    }
    out.put("spectral_bound", bound);
    out.put("median_c_empirical", median(&cs));
    let reps = params.replicas;
    out.verdict(
        "spectral",
        done == reps && spectral_ok == reps,
        format!("{spectral_ok} of {reps} estimates below {bound:.6}"),
    );
    out.verdict(
        "concentration",
        done == reps && conc_ok == reps,
        format!("{conc_ok} of {reps} replicas keep every tested |W| ≥ {min_size} within ±d|W|²/(4n)"),
    );
    out.verdict(
        "comb",
        comb_ok as f64 >= params.pass_fraction * reps as f64,
        format!("{comb_ok} of {reps} replicas reach log2 μ ≥ {}·n (need {})", params.c_floor, params.pass_fraction),
    );
    Ok(out)
}

pub(crate) struct BoundedParams {
    n: usize,
    max_degree: usize,
    p: f64,
    replicas: usize,
    delta: f64,
}

impl BoundedParams {
    pub fn resolve(r: &mut Resolver<'_>) -> Result<Self> {
        let p = BoundedParams {
            n: r.usize("n", 16)?,
            max_degree: r.usize("max_degree", 3)?,
            p: r.prob("p", "0.2")?.constant(),
            replicas: r.replicas(10)?,
            delta: r.f64("delta", 0.1)?,
        };
        if p.n > crate::mu::DEFAULT_EXACT_CAP {
            return Err(Error::TooLarge { order: p.n, cap: crate::mu::DEFAULT_EXACT_CAP });
        }
        if !(0.0..=1.0).contains(&p.p) {
            return Err(Error::InvalidParameter(format!("p must lie in [0, 1], got {}", p.p)));
        }
        Ok(p)
    }
}

const REJECTION_TRIES: usize = 10_000;

fn bounded_gnp(n: usize, p: f64, cap: usize, seed: Seed) -> Result<Graph> {
    for t in 0..REJECTION_TRIES {
        let g = sample_gnp(n, p, seed.derive(t as u64))?;
        if (0..n).all(|v| g.degree(v) <= cap) {
            return Ok(g);
        }
    }
    Err(Error::RetryLimit(REJECTION_TRIES))
}

enum Instance {
    Random(Seed),
    Fixed(Graph),
}

fn matching(n: usize) -> Graph {
    Graph::from_edges(n, (0..n / 2).map(|i| (2 * i, 2 * i + 1))).expect("valid edges")
}

/// Exact `log2 μ / n` on random graphs of maximum degree at most `C` and on
/// structured bounded-degree families, against `1 − δ`.
pub(crate) fn run_bounded(params: &BoundedParams, seed: Seed) -> Result<Outcome> {
    let n = params.n;
    let mut instances: Vec<(String, Instance)> =
        (0..params.replicas).map(|i| (format!("gnp_{i}"), Instance::Random(seed.derive(i as u64)))).collect();
    instances.push(("path".into(), Instance::Fixed(Graph::path(n))));
    instances.push(("cycle".into(), Instance::Fixed(Graph::cycle(n))));
    instances.push(("matching".into(), Instance::Fixed(matching(n))));
    instances.push(("empty".into(), Instance::Fixed(Graph::empty(n))));
    if n.is_multiple_of(2) && n >= 2 {
        instances.push(("comb".into(), Instance::Fixed(Graph::comb(n / 2))));
    }
    let cap = params.max_degree;
    let results = replicas(instances.len(), |i| -> Result<_> {
        let g = match &instances[i].1 {
            Instance::Random(s) => bounded_gnp(n, params.p, cap, *s)?,
            Instance::Fixed(g) => g.clone(),
        };
        let max_deg = (0..n).map(|v| g.degree(v)).max().unwrap_or(0);
        let mu = mu_exact(&g)?.exact.expect("exact count present");
        Ok((max_deg, g.edge_count(), mu.to_string(), log2_big(&mu)))
    });
    let mut out = Outcome::new(&["instance", "seed", "n", "max_degree", "edges", "mu", "log2_mu_over_n"]);
    let limit = 1.0 - params.delta;
    let mut worst: f64 = 0.0;
    let mut all_below = true;
    for ((name, inst), res) in instances.iter().zip(results) {
        let seed_cell = match inst {
            Instance::Random(s) => s.to_string(),
            Instance::Fixed(_) => String::new(),
        };
        match res {
            Ok((max_deg, edges, mu, l2)) => {
                let ratio = if n == 0 { 0.0 } else { l2 / n as f64 };
                worst = worst.max(ratio);
                all_below &= ratio < limit;
                out.push_row(vec![
                    name.as_str().into(),
                    seed_cell.into(),
                    n.into(),
                    max_deg.into(),
                    edges.into(),
                    mu.into(),
                    ratio.into(),
                ]);
            }
            Err(e) => out.failures.push(format!("{name}: {e}")),
        }
    }
    out.put("worst_log2_mu_over_n", worst);
    out.verdict(
        "below_one_minus_delta",
        all_below,
        format!("max log2 μ / n = {worst:.6} against 1 − δ = {limit}"),
    );
    Ok(out)
}
