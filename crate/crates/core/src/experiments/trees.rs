use super::{mean, replicas, stderr, EdgeProb, Outcome, Resolver};
use crate::formulas::expected_tree_components;
use crate::graph::Adjacency;
use crate::random::{sample_gnp_sparse, Seed};
use crate::tree::unrooted_tree_code;
use crate::{Error, Result};
use std::collections::HashMap;

pub(crate) struct Params {
    n: usize,
    p: EdgeProb,
    replicas: usize,
    ks: Vec<usize>,
    k_unique: usize,
    sigmas: f64,
    unique_fraction: f64,
}

impl Params {
    pub fn resolve(r: &mut Resolver<'_>) -> Result<Self> {
        let n = r.usize("n", 10_000)?;
        let default_unique = ((3.0 * (n.max(2) as f64).ln()).floor() as usize).max(1);
        let p = Params {
            n,
            p: r.prob("p", "0.5/n")?,
            replicas: r.replicas(1000)?,
            ks: r.usize_list("k_list", "1,2,3")?,
            k_unique: r.usize("k_unique", default_unique)?,
            sigmas: r.f64("sigmas", 4.0)?,
            unique_fraction: r.f64("unique_fraction", 0.99)?,
        };
        if p.ks.contains(&0) || p.k_unique == 0 {
            return Err(Error::InvalidParameter("tree sizes must be positive".into()));
        }
        Ok(p)
    }
}

/// Counts `X_k` of tree components on `k` vertices against the closed-form
/// expectation, and `Y`, the number of pairs of isomorphic tree components on
/// `k_unique` vertices.
pub(crate) fn run(params: &Params, seed: Seed) -> Result<Outcome> {
    let n = params.n;
    let p = params.p.at(n)?;
    let ks = &params.ks;
    let ku = params.k_unique;
    let rows = replicas(params.replicas, |i| -> Result<_> {
        let s = seed.derive(i as u64);
        let g = sample_gnp_sparse(n, p, s)?;
        let mut counts = vec![0usize; ks.len()];
        let mut unique_types: HashMap<String, usize> = HashMap::new();
        let mut local = vec![usize::MAX; n];
        for comp in g.components() {
            let edges: usize = comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
            if edges + 1 != comp.len() {
                continue;
            }
            for (j, &k) in ks.iter().enumerate() {
                counts[j] += (comp.len() == k) as usize;
            }
            if comp.len() == ku {
                for (j, &v) in comp.iter().enumerate() {
                    local[v] = j;
                }
                let adj: Vec<Vec<usize>> = comp.iter().map(|&v| g.neighbors(v).map(|w| local[w]).collect()).collect();
                *unique_types.entry(unrooted_tree_code(&adj).0).or_insert(0) += 1;
            }
        }
        let x_unique: usize = unique_types.values().sum();
        let y: usize = unique_types.values().map(|&m| m * (m - 1) / 2).sum();
        Ok((s, counts, x_unique, y))
    });
    let mut columns: Vec<String> = vec!["replica".into(), "seed".into()];
    columns.extend(ks.iter().map(|k| format!("x_{k}")));
    columns.extend([format!("x_{ku}_unique"), format!("y_{ku}")]);
    let mut out = Outcome { columns, ..Default::default() };
    let mut per_k: Vec<Vec<f64>> = vec![Vec::new(); ks.len()];
    let mut y_zero = 0usize;
    for (i, row) in rows.into_iter().enumerate() {
        let (s, counts, x_unique, y) = match row {
            Ok(v) => v,
            Err(e) => {
                out.failures.push(format!("replica {i}: {e}"));
                continue;
            }
        };
        let mut cells = vec![i.into(), s.to_string().into()];
        for (j, &c) in counts.iter().enumerate() {
            per_k[j].push(c as f64);
            cells.push(c.into());
        }
        cells.push(x_unique.into());
        cells.push(y.into());
        y_zero += (y == 0) as usize;
        out.push_row(cells);
    }
    for (j, &k) in ks.iter().enumerate() {
        let expected = expected_tree_components::<f64>(n, k, p);
        let (m, se) = (mean(&per_k[j]), stderr(&per_k[j]));
        out.put(&format!("mean_x_{k}"), m);
        out.put(&format!("stderr_x_{k}"), se);
        out.put(&format!("expected_x_{k}"), expected);
        let ok = if se > 0.0 { (m - expected).abs() <= params.sigmas * se } else { (m - expected).abs() <= 1e-9 * expected.max(1.0) };
        out.verdict(
            &format!("x_{k}_matches_expectation"),
            ok,
            format!("mean {m:.4} vs expected {expected:.4}, |diff| / stderr = {:.3}", (m - expected).abs() / se),
        );
    }
    let share = y_zero as f64 / params.replicas as f64;
    out.put(&format!("share_y_{ku}_zero"), share);
    out.verdict(
        &format!("y_{ku}_zero"),
        share >= params.unique_fraction,
        format!("{y_zero} of {} replicas have no two isomorphic tree components on {ku} vertices", params.replicas),
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use crate::experiments::{run_experiment, Cell, ExperimentSpec};

    #[test]
    fn empty_graph_counts() {
        let spec = ExperimentSpec::parse("n = 50\np = 0\nreplicas = 2\nk_list = 1,3\nk_unique = 1").unwrap();
        let r = run_experiment("tree-components", &spec).unwrap();
        for row in &r.rows {
            assert_eq!(row[2], Cell::Int(50));
            assert_eq!(row[3], Cell::Int(0));
            assert_eq!(row[5], Cell::Int(50 * 49 / 2));
        }
    }
}
