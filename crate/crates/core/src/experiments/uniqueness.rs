use super::{mean, replicas, EdgeProb, Outcome, Resolver};
use crate::formulas::{expected_outside_isolated, subset_window};
use crate::graph::Adjacency;
use crate::random::{sample_gnp_sparse, subset_from_rng, Seed};
use crate::{Error, Result};

const SUBSET_RETRIES: usize = 10_000;

pub(crate) struct Params {
    n: usize,
    p: EdgeProb,
    replicas: usize,
    fraction: f64,
}

impl Params {
    pub fn resolve(r: &mut Resolver<'_>) -> Result<Self> {
        Ok(Params {
            n: r.usize("n", 10_000)?,
            p: r.prob("p", "1.5*ln(n)/n")?,
            replicas: r.replicas(50)?,
            fraction: r.f64("fraction", 0.9)?,
        })
    }
}

/// Isolated vertices inside (`η`) and outside (`η′`) a uniform subset `U`
/// whose size is forced into `n/2 ± √(n ln n)` by rejection. Below
/// `p = 2 ln n / n` the share of replicas with `η ≥ 1` and `η′ ≥ ln n` is the
/// verdict; above it `η′` is only compared with `(n − |U|)(1 − p)^{|U|}`.
pub(crate) fn run(params: &Params, seed: Seed) -> Result<Outcome> {
    let n = params.n;
    let p = params.p.at(n)?;
    let ln_n = (n as f64).ln();
    let (lo, hi) = subset_window::<f64>(n);
    let rows = replicas(params.replicas, |i| -> Result<_> {
        let s = seed.derive(i as u64);
        let g = sample_gnp_sparse(n, p, s.derive(0))?;
        let mut rng = s.derive(1).rng();
        let u = (0..SUBSET_RETRIES)
            .map(|_| subset_from_rng(n, &mut rng))
            .find(|u| (lo..=hi).contains(&(u.len() as f64)))
            .ok_or(Error::RetryLimit(SUBSET_RETRIES))?;
        let no_nbr_in_u = |v: usize| g.neighbors(v).all(|w| !u.contains(w));
        let eta = u.iter().filter(|&v| no_nbr_in_u(v)).count();
        let eta_prime = (0..n).filter(|&v| !u.contains(v) && no_nbr_in_u(v)).count();
        Ok((s, u.len(), eta, eta_prime))
    });
    let mut out = Outcome::new(&[
        "replica",
        "seed",
        "subset_size",
        "eta",
        "eta_prime",
        "ln_n",
        "expected_eta_prime",
        "both_hold",
    ]);
    let (mut both, mut etas, mut expected) = (0usize, Vec::new(), Vec::new());
    for (i, row) in rows.into_iter().enumerate() {
        let (s, m, eta, eta_prime) = match row {
            Ok(v) => v,
            Err(e) => {
                out.failures.push(format!("replica {i}: {e}"));
                continue;
            }
        };
        let e = expected_outside_isolated::<f64>(n, m, p);
        let ok = eta >= 1 && eta_prime as f64 >= ln_n;
        both += ok as usize;
        etas.push(eta_prime as f64);
        expected.push(e);
        out.push_row(vec![
            i.into(),
            s.to_string().into(),
            m.into(),
            eta.into(),
            eta_prime.into(),
            ln_n.into(),
            e.into(),
            ok.into(),
        ]);
    }
    let share = both as f64 / params.replicas as f64;
    let c = p * n as f64 / ln_n;
    out.put("p", p);
    out.put("np_over_ln_n", c);
    out.put("share_both", share);
    out.put("mean_eta_prime", mean(&etas));
    out.put("mean_expected_eta_prime", mean(&expected));
    if c < 2.0 {
        out.verdict(
            "share_both",
            share >= params.fraction,
            format!("{both} of {} replicas have η ≥ 1 and η′ ≥ ln n; need share ≥ {}", params.replicas, params.fraction),
        );
    }
    Ok(out)
}
