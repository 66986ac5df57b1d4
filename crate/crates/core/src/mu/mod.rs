//! μ(G), the number of pairwise non-isomorphic induced subgraphs (the empty
//! one included): exact enumeration, a permutation-search oracle, sampling
//! estimates, constructive lower bounds and a component-census upper bound.

mod certificates;
mod concentration;
mod exact;
mod mckay;
mod sample;
mod upper;

pub use certificates::{
    mu_lower_certificates, tree_component_certificate, type_tuple_certificate, CertificateConfig, TypeTupleCertificate,
};
pub use concentration::{edge_concentration, EdgeConcentrationReport, Expectation};
pub use exact::{mu_exact, mu_exact_with, mu_oracle_naive, NAIVE_ORACLE_CAP};
pub use mckay::mckay_log_prob;
pub use sample::mu_sample_lower;
pub use upper::{default_threshold, mu_upper_subcritical, MAX_CENSUS_COMPONENT};

use crate::graph::DEFAULT_CANON_CAP;
use crate::{Error, Result};
use num_bigint::BigUint;
use serde::{Serialize, Serializer};
use std::fmt::Write;

/// Default order limit for exhaustive enumeration.
pub const DEFAULT_EXACT_CAP: usize = 24;

const SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MuConfig {
    /// Largest order accepted by [`mu_exact_with`].
    pub exact_cap: usize,
    /// Largest induced subgraph canonicalized by the sampler.
    pub canon_cap: usize,
}

impl Default for MuConfig {
    fn default() -> Self {
        MuConfig { exact_cap: DEFAULT_EXACT_CAP, canon_cap: DEFAULT_CANON_CAP }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// Holds deterministically.
    Certified,
    /// Statistical estimate; carries a standard error and is not checked
    /// against the other bounds.
    Estimate,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bound {
    pub method: String,
    pub log2: f64,
    pub kind: BoundKind,
    pub stderr: Option<f64>,
}

impl Bound {
    pub fn certified(method: &str, log2: f64) -> Self {
        Bound { method: method.into(), log2, kind: BoundKind::Certified, stderr: None }
    }

    pub fn estimate(method: &str, log2: f64, stderr: f64) -> Self {
        Bound { method: method.into(), log2, kind: BoundKind::Estimate, stderr: Some(stderr) }
    }
}

/// Everything known about μ(G) for one graph. Built through
/// [`MuReport::finish`], which rejects certified bounds that contradict each
/// other or the exact value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MuReport {
    pub order: usize,
    #[serde(serialize_with = "decimal")]
    pub exact: Option<BigUint>,
    pub lower_bounds: Vec<Bound>,
    pub upper_bounds: Vec<Bound>,
    pub subsets_enumerated: u64,
    /// Wall-clock seconds; left out of [`MuReport::record`].
    pub elapsed: f64,
    /// Reasons for omitted bounds and other caveats.
    pub notes: Vec<String>,
}

fn decimal<S: Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

impl MuReport {
    pub fn new(order: usize) -> Self {
        MuReport {
            order,
            exact: None,
            lower_bounds: Vec::new(),
            upper_bounds: Vec::new(),
            subsets_enumerated: 0,
            elapsed: 0.0,
            notes: Vec::new(),
        }
    }

    pub fn finish(self) -> Result<Self> {
        let certified = |b: &&Bound| b.kind == BoundKind::Certified;
        let exact = self.exact.as_ref().map(log2_big);
        for lo in self.lower_bounds.iter().filter(certified) {
            if let Some(e) = exact {
                if lo.log2 > e + SLACK {
                    return Err(Error::InconsistentReport(format!("lower bound {} exceeds exact value", lo.method)));
                }
            }
            for up in self.upper_bounds.iter().filter(certified) {
                if lo.log2 > up.log2 + SLACK {
                    return Err(Error::InconsistentReport(format!("{} exceeds {}", lo.method, up.method)));
                }
            }
        }
        if let Some(e) = exact {
            if let Some(up) = self.upper_bounds.iter().filter(certified).find(|u| e > u.log2 + SLACK) {
                return Err(Error::InconsistentReport(format!("exact value exceeds {}", up.method)));
            }
        }
        Ok(self)
    }

    /// Largest certified lower bound.
    pub fn best_lower(&self) -> Option<&Bound> {
        best(&self.lower_bounds, |a, b| a > b)
    }

    /// Smallest certified upper bound.
    pub fn best_upper(&self) -> Option<&Bound> {
        best(&self.upper_bounds, |a, b| a < b)
    }

    /// Single-line `key=value` record with fixed 9-digit fractions, e.g.
    /// `n=5 exact=6 subsets=32 lower=sizes:2.584962501 upper=`.
    pub fn record(&self) -> String {
        let mut s = format!("n={} exact=", self.order);
        if let Some(e) = &self.exact {
            write!(s, "{e}").unwrap();
        }
        write!(s, " subsets={}", self.subsets_enumerated).unwrap();
        for (key, list) in [("lower", &self.lower_bounds), ("upper", &self.upper_bounds)] {
            write!(s, " {key}=").unwrap();
            let parts: Vec<String> = list
                .iter()
                .map(|b| match b.stderr {
                    Some(se) => format!("{}:{:.9}~{:.9}", b.method, b.log2, se),
                    None => format!("{}:{:.9}", b.method, b.log2),
                })
                .collect();
            s.push_str(&parts.join(";"));
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn best(list: &[Bound], better: impl Fn(f64, f64) -> bool) -> Option<&Bound> {
    list.iter()
        .filter(|b| b.kind == BoundKind::Certified)
        .fold(None, |acc: Option<&Bound>, b| match acc {
            Some(a) if !better(b.log2, a.log2) => Some(a),
            _ => Some(b),
        })
}

/// `log2` of a big integer to double precision.
pub fn log2_big(x: &BigUint) -> f64 {
    crate::tree::big_ln(x) / std::f64::consts::LN_2
}
