//! Desk-scale experiments. Each experiment reads a [`ExperimentSpec`],
//! runs its replicas in parallel on independent seed streams, and returns an
//! [`ExperimentResult`]: one CSV row per replica (or grid point), a JSON
//! summary with pass/fail verdicts, and the resolved spec with its hash.
//!
//! Results are a pure function of the spec: replica `i` always uses
//! `seed.derive(i)`, rows are collected in index order, and summaries are
//! reduced sequentially, so output files are byte-identical for any number
//! of worker threads. Timings are never written.

mod anatomy;
mod boring;
mod degree;
mod gw;
mod spec;
mod threshold;
mod trees;
mod uniqueness;
mod xi;

pub use boring::{check_boring_inequality, BoringCheck};
pub use spec::{spec_hash, EdgeProb, ExperimentSpec, Resolver};

use crate::{Error, Result};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt::Write;

/// Experiment identifiers accepted by [`run_experiment`].
pub const EXPERIMENTS: [&str; 9] = [
    "xi",
    "second-order",
    "uniqueness",
    "threshold",
    "tree-components",
    "gw",
    "anatomy",
    "regular",
    "bounded-degree",
];

/// One table cell. Reals print with 9 fractional digits in CSV.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
    Bool(bool),
    Missing,
}

impl Cell {
    pub fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => fmt_real(*v),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Missing => String::new(),
        }
    }
}

/// Fixed 9-digit formatting; non-finite values print as `inf`, `-inf`, `nan`.
pub fn fmt_real(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{v:.9}")
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Cell::Int(v) => s.serialize_i64(*v),
            Cell::Real(v) if v.is_finite() => s.serialize_f64(*v),
            Cell::Real(v) => s.serialize_str(&fmt_real(*v)),
            Cell::Text(t) => s.serialize_str(t),
            Cell::Bool(b) => s.serialize_bool(*b),
            Cell::Missing => s.serialize_none(),
        }
    }
}

macro_rules! cell_from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Cell {
            fn from(v: $t) -> Self {
                Cell::Int(i64::try_from(v).expect("count fits in i64"))
            }
        }
    )*};
}
cell_from_int!(i64, u64, usize, u32);

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Missing, Into::into)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(name: &str, passed: bool, detail: String) -> Self {
        Verdict { name: name.into(), passed, detail }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Provenance {
    pub spec_hash: String,
    pub version: String,
    pub seed: String,
    /// Every parameter the experiment read, defaults included.
    pub resolved: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentResult {
    pub experiment: String,
    pub columns: Vec<String>,
    #[serde(skip)]
    pub rows: Vec<Vec<Cell>>,
    pub row_count: usize,
    pub summary: BTreeMap<String, Cell>,
    pub verdicts: Vec<Verdict>,
    /// Replicas that failed (e.g. no simple graph within the retry budget),
    /// with their reason; they are not resampled.
    pub failures: Vec<String>,
    pub provenance: Provenance,
}

impl ExperimentResult {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    /// Header comments with hash and seed, then the column line and rows.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        writeln!(s, "# experiment={} spec_hash={} seed={}", self.experiment, self.provenance.spec_hash, self.provenance.seed)
            .unwrap();
        writeln!(s, "{}", self.columns.join(",")).unwrap();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(s, "{}", cells.join(",")).unwrap();
        }
        s
    }

    /// Pretty-printed summary, verdicts, failures and provenance.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("result serializes");
        s.push('\n');
        s
    }
}

/// What a runner produces before provenance is attached.
#[derive(Default)]
pub(crate) struct Outcome {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: BTreeMap<String, Cell>,
    pub verdicts: Vec<Verdict>,
    pub failures: Vec<String>,
}

impl Outcome {
    pub fn new(columns: &[&str]) -> Self {
        Outcome { columns: columns.iter().map(|c| c.to_string()).collect(), ..Default::default() }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn put(&mut self, key: &str, v: impl Into<Cell>) {
        self.summary.insert(key.to_string(), v.into());
    }

    pub fn verdict(&mut self, name: &str, passed: bool, detail: String) {
        self.verdicts.push(Verdict::new(name, passed, detail));
    }
}

/// Runs `name` (or the spec's own `experiment` key) on the current rayon pool.
pub fn run_experiment(name: &str, spec: &ExperimentSpec) -> Result<ExperimentResult> {
    if let Some(own) = &spec.name {
        if own != name {
            return Err(Error::InvalidParameter(format!("spec is for `{own}`, not `{name}`")));
        }
    }
    let mut r = Resolver::new(spec);
    let seed = r.seed(1)?;
    let (outcome, resolved) = match name {
        "xi" => go(r, xi::XiParams::resolve, |p| xi::run_xi(p, seed)),
        "second-order" => go(r, xi::SecondOrderParams::resolve, |p| xi::run_second_order(p, seed)),
        "uniqueness" => go(r, uniqueness::Params::resolve, |p| uniqueness::run(p, seed)),
        "threshold" => go(r, threshold::Params::resolve, |p| threshold::run(p, seed)),
        "tree-components" => go(r, trees::Params::resolve, |p| trees::run(p, seed)),
        "gw" => go(r, gw::Params::resolve, |p| gw::run(p, seed)),
        "anatomy" => go(r, anatomy::Params::resolve, |p| anatomy::run(p, seed)),
        "regular" => go(r, degree::RegularParams::resolve, |p| degree::run_regular(p, seed)),
        "bounded-degree" => go(r, degree::BoundedParams::resolve, |p| degree::run_bounded(p, seed)),
        other => Err(Error::UnknownExperiment(other.to_string())),
    }?;
    Ok(ExperimentResult {
        experiment: name.to_string(),
        columns: outcome.columns,
        row_count: outcome.rows.len(),
        rows: outcome.rows,
        summary: outcome.summary,
        verdicts: outcome.verdicts,
        failures: outcome.failures,
        provenance: Provenance {
            spec_hash: spec_hash(name, &resolved),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed: seed.to_string(),
            resolved,
        },
    })
}

/// Runs the experiment on a dedicated pool with `workers` threads.
pub fn run_experiment_with_workers(name: &str, spec: &ExperimentSpec, workers: usize) -> Result<ExperimentResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    pool.install(|| run_experiment(name, spec))
}

/// Resolves parameters, rejects unknown keys, then runs.
fn go<'a, P>(
    mut r: Resolver<'a>,
    resolve: impl FnOnce(&mut Resolver<'a>) -> Result<P>,
    run: impl FnOnce(&P) -> Result<Outcome>,
) -> Result<(Outcome, BTreeMap<String, String>)> {
    let params = resolve(&mut r)?;
    let resolved = r.finish()?;
    Ok((run(&params)?, resolved))
}

/// Runs `f(i)` for `i in 0..count` on the rayon pool, results in index order.
pub(crate) fn replicas<T: Send>(count: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    (0..count).into_par_iter().map(f).collect()
}

pub(crate) fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Standard error of the mean (sample standard deviation over √len).
pub(crate) fn stderr(xs: &[f64]) -> f64 {
    let n = xs.len();
    if n < 2 {
        return 0.0;
    }
    let m = mean(xs);
    let var = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1) as f64;
    (var / n as f64).sqrt()
}

pub(crate) fn median(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let k = v.len();
    if k % 2 == 1 {
        v[k / 2]
    } else {
        0.5 * (v[k / 2 - 1] + v[k / 2])
    }
}
