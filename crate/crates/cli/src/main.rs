//! `mu-lab` command-line front end.
//!
//! Exit codes: 0 on success, 1 when an experiment or check reports a failed
//! verdict, 2 on usage or input errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use mu_lab::anatomy::{conjugate_lambda, core_decompose};
use mu_lab::experiments::{check_boring_inequality, run_experiment, ExperimentSpec, EXPERIMENTS};
use mu_lab::graph::io::{parse_graphs, to_edge_list, to_graph6};
use mu_lab::mu::{mu_exact_with, mu_lower_certificates, mu_sample_lower, mu_upper_subcritical, CertificateConfig};
use mu_lab::random::{sample_gnp, sample_regular};
use mu_lab::tree::{count_subtrees_exact, RootedTree};
use mu_lab::{Graph, MuConfig, MuReport, Seed};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "mu-lab", version, about = "Count non-isomorphic induced subgraphs and run the random-graph experiments")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Worker threads for the parallel kernels (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Seed as `value` or `value:stream`.
    #[arg(long, global = true)]
    seed: Option<String>,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// μ(G) for every graph in a graph6 or edge-list file (`-` for stdin).
    Mu {
        #[command(subcommand)]
        op: MuOp,
    },
    /// Generate a graph; graph6 on stdout unless `--edges`.
    Gen {
        #[command(subcommand)]
        model: GenModel,
        /// Emit an edge list instead of graph6.
        #[arg(long, global = true)]
        edges: bool,
    },
    Tree {
        #[command(subcommand)]
        op: TreeOp,
    },
    Anatomy {
        #[command(subcommand)]
        op: AnatomyOp,
    },
    /// Run a named experiment from a `key = value` spec file.
    Exp {
        name: String,
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Override one spec entry; repeatable.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
        /// Also write the JSON summary here when the main output is CSV.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    Check {
        #[command(subcommand)]
        op: CheckOp,
    },
}

#[derive(Subcommand)]
enum MuOp {
    /// Exact count by enumeration of all vertex subsets.
    Exact { file: PathBuf },
    /// Certified lower bound from random subsets, plus a collision estimate.
    Sample {
        file: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Structural lower certificates and the subcritical upper bound.
    Bounds {
        file: PathBuf,
        #[arg(long, default_value_t = 20)]
        path_tries: usize,
        /// Component-size threshold of the upper bound.
        #[arg(long)]
        threshold: Option<usize>,
    },
}

#[derive(Subcommand)]
enum GenModel {
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
    },
    Regular {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Path on `n` vertices with a pendant vertex at each.
    Comb {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum TreeOp {
    /// f and f₊ for each tree, one parent array per line (`-1` marks the root).
    CountSubtrees { file: PathBuf },
}

#[derive(Subcommand)]
enum AnatomyOp {
    /// 2-core with the pendant-tree type of every core vertex.
    Core { file: PathBuf },
    /// Conjugate parameter λ′ < 1 of λ > 1.
    LambdaPrime {
        #[arg(long)]
        lambda: f64,
    },
}

#[derive(Subcommand)]
enum CheckOp {
    /// Scan the inequality 1 + (1−p)^5.4 < 2^(1−2p(1−p)) over (0, 1/2].
    Boring {
        #[arg(long, default_value_t = 1_000_000)]
        grid: usize,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure { code: 2, msg: msg.to_string() }
}

impl From<mu_lab::Error> for Failure {
    fn from(e: mu_lab::Error) -> Self {
        usage(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        usage(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(w) = cli.global.workers {
        if w == 0 {
            eprintln!("error: --workers must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(w).build_global().expect("thread pool configured once");
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn parse_seed(s: Option<&str>) -> Result<Seed, Failure> {
    let Some(s) = s else { return Ok(Seed::new(1)) };
    let bad = || usage(format!("bad seed `{s}`; expected `value` or `value:stream`"));
    match s.split_once(':') {
        Some((v, st)) => Ok(Seed::with_stream(v.parse().map_err(|_| bad())?, st.parse().map_err(|_| bad())?)),
        None => Ok(Seed::new(s.parse().map_err(|_| bad())?)),
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

fn read_graphs(path: &Path) -> Result<Vec<Graph>, Failure> {
    let graphs = parse_graphs(&read_input(path)?)?;
    if graphs.is_empty() {
        return Err(usage(format!("{}: no graph found", path.display())));
    }
    Ok(graphs)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn reports(list: &[MuReport], format: Option<Format>, line: impl Fn(&MuReport) -> String) -> String {
    let mut s = String::new();
    for r in list {
        s.push_str(&if format == Some(Format::Json) { r.to_json() } else { line(r) });
        s.push('\n');
    }
    s
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let g = &cli.global;
    let out = g.out.as_deref();
    match cli.command {
        Command::Mu { op } => {
            let cfg = MuConfig::default();
            let text = match op {
                MuOp::Exact { file } => {
                    let rs = read_graphs(&file)?.iter().map(|x| mu_exact_with(x, &cfg)).collect::<Result<Vec<_>, _>>()?;
                    reports(&rs, g.format, |r| r.exact.as_ref().map(|e| e.to_string()).unwrap_or_default())
                }
                MuOp::Sample { file, samples } => {
                    let seed = parse_seed(g.seed.as_deref())?;
                    let rs = read_graphs(&file)?
                        .iter()
                        .map(|x| mu_sample_lower(x, samples, seed, &cfg))
                        .collect::<Result<Vec<_>, _>>()?;
                    reports(&rs, g.format, MuReport::record)
                }
                MuOp::Bounds { file, path_tries, threshold } => {
                    let seed = parse_seed(g.seed.as_deref())?;
                    let cert = CertificateConfig { path_tries, ..CertificateConfig::default() };
                    let mut rs = Vec::new();
                    for x in read_graphs(&file)? {
                        let mut r = mu_lower_certificates(&x, seed, &cert)?;
                        let up = mu_upper_subcritical(&x, threshold)?;
                        r.upper_bounds.extend(up.upper_bounds);
                        r.notes.extend(up.notes);
                        r.elapsed += up.elapsed;
                        rs.push(r.finish()?);
                    }
                    reports(&rs, g.format, MuReport::record)
                }
            };
            emit(out, &text)?;
            Ok(0)
        }
        Command::Gen { model, edges } => {
            let seed = parse_seed(g.seed.as_deref())?;
            let graph = match model {
                GenModel::Gnp { n, p } => sample_gnp(n, p, seed)?,
                GenModel::Regular { n, d } => sample_regular(n, d, seed)?,
                GenModel::Comb { n } => Graph::comb(n),
            };
            let text = if edges { to_edge_list(&graph) } else { to_graph6(&graph) + "\n" };
            emit(out, &text)?;
            Ok(0)
        }
        Command::Tree { op: TreeOp::CountSubtrees { file } } => {
            let mut s = String::new();
            for (i, line) in read_input(&file)?.lines().enumerate() {
                if line.trim().is_empty() || line.trim_start().starts_with('#') {
                    continue;
                }
                let t = RootedTree::from_parent_line(line).map_err(|e| usage(format!("line {}: {e}", i + 1)))?;
                let c = count_subtrees_exact(&t);
                s.push_str(&format!("{} {}\n", c.f, c.f_plus));
            }
            emit(out, &s)?;
            Ok(0)
        }
        Command::Anatomy { op } => {
            let text = match op {
                AnatomyOp::Core { file } => {
                    read_graphs(&file)?.iter().map(|x| core_decompose(x).to_text()).collect::<Vec<_>>().join("\n")
                }
                AnatomyOp::LambdaPrime { lambda } => format!("{:.12}\n", conjugate_lambda::<f64>(lambda)?),
            };
            emit(out, &text)?;
            Ok(0)
        }
        Command::Exp { name, spec, overrides, summary } => {
            if !EXPERIMENTS.contains(&name.as_str()) {
                return Err(usage(format!("unknown experiment `{name}`; available: {}", EXPERIMENTS.join(", "))));
            }
            let mut parsed = match &spec {
                Some(p) => ExperimentSpec::parse(&read_input(p)?)?,
                None => ExperimentSpec::default(),
            };
            let mut pairs: Vec<(&str, &str)> = Vec::new();
            if let Some(s) = &g.seed {
                pairs.push(("seed", s.as_str()));
            }
            for o in &overrides {
                let (k, v) = o.split_once('=').ok_or_else(|| usage(format!("--set expects KEY=VALUE, got `{o}`")))?;
                pairs.push((k.trim(), v.trim()));
            }
            parsed = parsed.with_overrides(pairs);
            let result = run_experiment(&name, &parsed)?;
            for (k, v) in &result.provenance.resolved {
                eprintln!("{k} = {v}");
            }
            let main = if g.format == Some(Format::Json) { result.to_json() } else { result.to_csv() };
            emit(out, &main)?;
            if let Some(p) = summary {
                std::fs::write(&p, result.to_json()).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            }
            for v in &result.verdicts {
                eprintln!("{} {}: {}", if v.passed { "PASS" } else { "FAIL" }, v.name, v.detail);
            }
            for f in &result.failures {
                eprintln!("failed replica: {f}");
            }
            Ok(if result.passed() { 0 } else { 1 })
        }
        Command::Check { op: CheckOp::Boring { grid } } => {
            let c = check_boring_inequality(grid)?;
            let text = if g.format == Some(Format::Json) {
                serde_json::to_string_pretty(&c).expect("check serializes") + "\n"
            } else {
                format!(
                    "passed={} points={} worst_margin={:.6e} worst_p={:.6e} majorant_margin={:.6e} direct_margin={:.6e}\n",
                    c.passed, c.points, c.worst_margin, c.worst_p, c.majorant_worst_margin, c.direct_worst_margin
                )
            };
            emit(out, &text)?;
            Ok(if c.passed { 0 } else { 1 })
        }
    }
}
