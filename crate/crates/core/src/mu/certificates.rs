use super::{log2_big, Bound, MuReport};
use crate::anatomy::{core_decompose, find_comb, CoreDecomposition};
use crate::graph::{automorphism_count_with, automorphism_log2_upper_bound, Adjacency};
use crate::random::Seed;
use crate::tree::{count_subtrees_exact, unrooted_tree_code};
use crate::Result;
use std::collections::HashMap;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertificateConfig {
    /// Restarts of the induced-path search behind the comb certificate.
    pub path_tries: usize,
    /// Cores up to this order get an exact automorphism count; larger ones
    /// use the colour-refinement bound.
    pub exact_aut_cap: usize,
}

impl Default for CertificateConfig {
    fn default() -> Self {
        CertificateConfig { path_tries: 20, exact_aut_cap: 16 }
    }
}

/// Constructive lower bounds on log2 μ(G), each tagged:
///
/// * `sizes`: induced subgraphs of different orders differ, so μ ≥ n+1.
/// * `tree_components`: unions of whole tree components with different type
///   multisets are non-isomorphic, so μ ≥ ∏ₜ (mₜ + 1) over tree types `t`
///   with multiplicity `mₜ`.
/// * `comb`: a comb with teeth `U*` on an induced path has at least
///   2^{|U*|−1} non-isomorphic induced subcombs.
/// * `type_tuple`: keeping the core of the complex part and a root-containing
///   subtree of each pendant tree gives ∏ f(T_v) graphs; two of them are
///   isomorphic only via a core automorphism, so μ ≥ ∏ f(T_v) / |Aut(core)|.
///
/// Inapplicable certificates are listed in `notes`.
pub fn mu_lower_certificates<G: Adjacency>(g: &G, seed: Seed, cfg: &CertificateConfig) -> Result<MuReport> {
    let start = Instant::now();
    let n = g.order();
    let mut report = MuReport::new(n);
    report.lower_bounds.push(Bound::certified("sizes", ((n + 1) as f64).log2()));

    match tree_component_certificate(g) {
        Some(v) => report.lower_bounds.push(Bound::certified("tree_components", v)),
        None => report.notes.push("tree_components: no tree component".into()),
    }

    match find_comb(g, cfg.path_tries, seed.derive(1)) {
        Ok(ex) if ex.u_star_size > 0 => {
            report.lower_bounds.push(Bound::certified("comb", (ex.u_star_size - 1) as f64));
        }
        Ok(ex) => report.notes.push(format!("comb: no admissible tooth on a path of {} vertices", ex.path.len())),
        Err(e) => report.notes.push(format!("comb: {e}")),
    }

    let dec = core_decompose(g);
    match type_tuple_certificate(&dec, cfg.exact_aut_cap)? {
        Some(tt) => {
            if !tt.aut_exact {
                report.notes.push("type_tuple: |Aut(core)| bounded by colour refinement".into());
            }
            report.lower_bounds.push(Bound::certified("type_tuple", tt.value));
        }
        None => report.notes.push("type_tuple: no complex component".into()),
    }
    report.elapsed = start.elapsed().as_secs_f64();
    report.finish()
}

/// Parts of the type-tuple certificate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TypeTupleCertificate {
    /// `Σ_v log2 f(T_v) − log2|Aut(core)|` (or minus its upper bound).
    pub value: f64,
    /// `Σ_v log2 f(T_v)`.
    pub choices_log2: f64,
    pub aut_log2: f64,
    /// Whether `aut_log2` is exact or the colour-refinement upper bound.
    pub aut_exact: bool,
}

/// `None` when the graph has no complex component.
pub fn type_tuple_certificate(dec: &CoreDecomposition, exact_aut_cap: usize) -> Result<Option<TypeTupleCertificate>> {
    if dec.core_order() == 0 {
        return Ok(None);
    }
    let core = dec.core_graph();
    let aut_exact = dec.core_order() <= exact_aut_cap;
    let aut_log2 = if aut_exact {
        log2_big(&automorphism_count_with(&core.to_dense(), exact_aut_cap)?)
    } else {
        automorphism_log2_upper_bound(&core)
    };
    let choices_log2: f64 = dec.nontrivial_pendants().map(|(_, t)| log2_big(&count_subtrees_exact(t).f)).sum();
    Ok(Some(TypeTupleCertificate { value: choices_log2 - aut_log2, choices_log2, aut_log2, aut_exact }))
}

/// Σₜ log2(mₜ + 1) over isomorphism types of tree components.
pub fn tree_component_certificate<G: Adjacency>(g: &G) -> Option<f64> {
    let mut types: HashMap<String, usize> = HashMap::new();
    let mut local = vec![usize::MAX; g.order()];
    for comp in g.components() {
        let edges: usize = comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
        if edges + 1 != comp.len() {
            continue;
        }
        for (i, &v) in comp.iter().enumerate() {
            local[v] = i;
        }
        let adj: Vec<Vec<usize>> = comp.iter().map(|&v| g.neighbors(v).map(|w| local[w]).collect()).collect();
        *types.entry(unrooted_tree_code(&adj).0).or_insert(0) += 1;
    }
    (!types.is_empty()).then(|| types.values().map(|&m| ((m + 1) as f64).log2()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn value(r: &MuReport, method: &str) -> Option<f64> {
        r.lower_bounds.iter().find(|b| b.method == method).map(|b| b.log2)
    }

    #[test]
    fn forest_of_distinct_trees() {
        // paths on 1..=5 vertices side by side
        let mut edges = Vec::new();
        let mut base = 0;
        for k in 1..=5 {
            edges.extend((1..k).map(|i| (base + i - 1, base + i)));
            base += k;
        }
        let g = Graph::from_edges(base, edges).unwrap();
        let r = mu_lower_certificates(&g, Seed::new(1), &CertificateConfig::default()).unwrap();
        assert!((value(&r, "tree_components").unwrap() - 5.0).abs() < 1e-12);
        assert!(value(&r, "type_tuple").is_none());
    }

    #[test]
    fn comb_certificate_on_a_comb() {
        let r = mu_lower_certificates(&Graph::comb(20), Seed::new(3), &CertificateConfig::default()).unwrap();
        assert!(value(&r, "comb").unwrap_or(-1.0) >= 15.0, "{:?} {:?}", r.lower_bounds, r.notes);
    }

    #[test]
    fn type_tuple_on_decorated_clique() {
        // K4 with a pendant edge at every vertex: f(P₂ rooted at an end) = 2
        let mut g = Graph::complete(8);
        for u in 4..8 {
            for v in 0..8 {
                if u != v {
                    g.remove_edge(u, v);
                }
            }
        }
        for i in 0..4 {
            g.add_edge(i, i + 4).unwrap();
        }
        let r = mu_lower_certificates(&g, Seed::new(1), &CertificateConfig::default()).unwrap();
        let want = 4.0 - 24f64.log2();
        assert!((value(&r, "type_tuple").unwrap() - want).abs() < 1e-12);
    }
}
