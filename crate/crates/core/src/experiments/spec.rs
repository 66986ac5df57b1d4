use crate::random::Seed;
use crate::{Error, Result};
use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A parsed `key = value` experiment description.
///
/// Lines are `key = value`; `#` starts a comment; blank lines are ignored.
/// The key `experiment` names the experiment, every other key is a parameter
/// read by that experiment's resolver.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExperimentSpec {
    pub name: Option<String>,
    pub values: BTreeMap<String, String>,
}

impl ExperimentSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut spec = ExperimentSpec::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(Error::Parse { line: i + 1, msg: format!("expected key = value, got `{line}`") });
            };
            spec.set(k.trim(), v.trim()).map_err(|msg| Error::Parse { line: i + 1, msg })?;
        }
        Ok(spec)
    }

    /// Sets one key, rejecting duplicates.
    pub fn set(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        if key.is_empty() || value.is_empty() {
            return Err("empty key or value".into());
        }
        if key == "experiment" {
            if self.name.replace(value.to_string()).is_some() {
                return Err("experiment given twice".into());
            }
        } else if self.values.insert(key.to_string(), value.to_string()).is_some() {
            return Err(format!("key `{key}` given twice"));
        }
        Ok(())
    }

    /// Adds `key=value` pairs on top of the spec; later pairs replace earlier values.
    pub fn with_overrides<'a>(mut self, pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Self {
        for (k, v) in pairs {
            if k == "experiment" {
                self.name = Some(v.to_string());
            } else {
                self.values.insert(k.to_string(), v.to_string());
            }
        }
        self
    }
}

/// Edge probability as a function of `n`: `c`, `c/n` or `c*ln(n)/n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EdgeProb {
    Const(f64),
    OverN(f64),
    LogOverN(f64),
}

impl EdgeProb {
    pub fn parse(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::InvalidParameter(format!("cannot read edge probability `{s}`"));
        let num = |x: &str| x.parse::<f64>().map_err(|_| bad());
        let p = if let Some(head) = t.strip_suffix("ln(n)/n") {
            match head {
                "" => EdgeProb::LogOverN(1.0),
                _ => EdgeProb::LogOverN(num(head.strip_suffix('*').ok_or_else(bad)?)?),
            }
        } else if let Some(head) = t.strip_suffix("/n") {
            EdgeProb::OverN(num(head)?)
        } else {
            EdgeProb::Const(num(&t)?)
        };
        Ok(p)
    }

    /// Probability for `n` vertices, validated to lie in `[0, 1]`.
    pub fn at(&self, n: usize) -> Result<f64> {
        let nf = n as f64;
        let p = match *self {
            EdgeProb::Const(c) => c,
            EdgeProb::OverN(c) => c / nf,
            EdgeProb::LogOverN(c) => c * nf.ln() / nf,
        };
        if (0.0..=1.0).contains(&p) {
            Ok(p)
        } else {
            Err(Error::InvalidParameter(format!("edge probability {p} at n = {n} is outside [0, 1]")))
        }
    }

    /// `np / ln n` style constant, if the form carries one.
    pub fn constant(&self) -> f64 {
        match *self {
            EdgeProb::Const(c) | EdgeProb::OverN(c) | EdgeProb::LogOverN(c) => c,
        }
    }
}

impl fmt::Display for EdgeProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeProb::Const(c) => write!(f, "{c}"),
            EdgeProb::OverN(c) => write!(f, "{c}/n"),
            EdgeProb::LogOverN(c) => write!(f, "{c}*ln(n)/n"),
        }
    }
}

/// Reads typed parameters from a spec, falling back to defaults, and records
/// every resolved value so results can echo the full configuration.
pub struct Resolver<'a> {
    spec: &'a ExperimentSpec,
    resolved: BTreeMap<String, String>,
    used: BTreeSet<String>,
}

impl<'a> Resolver<'a> {
    pub fn new(spec: &'a ExperimentSpec) -> Self {
        Resolver { spec, resolved: BTreeMap::new(), used: BTreeSet::new() }
    }

    fn raw(&mut self, key: &str, default: &str) -> String {
        self.used.insert(key.to_string());
        let v = self.spec.values.get(key).cloned().unwrap_or_else(|| default.to_string());
        self.resolved.insert(key.to_string(), v.clone());
        v
    }

    fn parsed<T: std::str::FromStr>(&mut self, key: &str, default: &str) -> Result<T> {
        let v = self.raw(key, default);
        v.parse().map_err(|_| Error::InvalidParameter(format!("`{key}` = `{v}` is not valid")))
    }

    pub fn usize(&mut self, key: &str, default: usize) -> Result<usize> {
        self.parsed(key, &default.to_string())
    }

    pub fn f64(&mut self, key: &str, default: f64) -> Result<f64> {
        let v: f64 = self.parsed(key, &default.to_string())?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::InvalidParameter(format!("`{key}` must be finite")))
        }
    }

    pub fn prob(&mut self, key: &str, default: &str) -> Result<EdgeProb> {
        EdgeProb::parse(&self.raw(key, default))
    }

    pub fn usize_list(&mut self, key: &str, default: &str) -> Result<Vec<usize>> {
        self.list(key, default)
    }

    pub fn f64_list(&mut self, key: &str, default: &str) -> Result<Vec<f64>> {
        self.list(key, default)
    }

    fn list<T: std::str::FromStr>(&mut self, key: &str, default: &str) -> Result<Vec<T>> {
        let v = self.raw(key, default);
        let items: Option<Vec<T>> = v.split(',').map(|x| x.trim().parse().ok()).collect();
        match items {
            Some(xs) if !xs.is_empty() => Ok(xs),
            _ => Err(Error::InvalidParameter(format!("`{key}` = `{v}` is not a comma-separated list"))),
        }
    }

    /// `seed = V` or `seed = V:S` (value and stream).
    pub fn seed(&mut self, default: u64) -> Result<Seed> {
        let v = self.raw("seed", &default.to_string());
        let bad = || Error::InvalidParameter(format!("seed `{v}` is not `value` or `value:stream`"));
        match v.split_once(':') {
            Some((a, b)) => Ok(Seed::with_stream(a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?)),
            None => Ok(Seed::new(v.parse().map_err(|_| bad())?)),
        }
    }

    /// Replica count, at least one.
    pub fn replicas(&mut self, default: usize) -> Result<usize> {
        let r = self.usize("replicas", default)?;
        if r == 0 {
            return Err(Error::InvalidParameter("replicas must be at least 1".into()));
        }
        Ok(r)
    }

    /// Fails on spec keys nobody asked for; returns the resolved map.
    pub fn finish(self) -> Result<BTreeMap<String, String>> {
        let unknown: Vec<&String> = self.spec.values.keys().filter(|k| !self.used.contains(*k)).collect();
        if !unknown.is_empty() {
            let names: Vec<&str> = unknown.iter().map(|s| s.as_str()).collect();
            return Err(Error::InvalidParameter(format!("unknown keys: {}", names.join(", "))));
        }
        Ok(self.resolved)
    }
}

/// SHA-256 over `experiment=<name>` and the sorted resolved pairs, hex encoded.
pub fn spec_hash(name: &str, resolved: &BTreeMap<String, String>) -> String {
    let mut h = Sha256::new();
    h.update(format!("experiment={name}\n"));
    for (k, v) in resolved {
        h.update(format!("{k}={v}\n"));
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}
