use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mu-lab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exact_count_of_k5_from_graph6() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k5.g6");
    std::fs::write(&path, "D~{\n").unwrap();
    let o = run(&["mu", "exact", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "6");
}

#[test]
fn edge_lists_are_detected() {
    let o = run_with_stdin(&["mu", "exact", "-"], b"# n=3\n0 1\n1 2\n");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "5");
}

#[test]
fn generated_graph_round_trips_through_mu_exact() {
    let gen = run(&["gen", "gnp", "--n", "10", "--p", "0.4", "--seed", "7"]);
    assert_eq!(gen.status.code(), Some(0));
    let g = mu_lab::graph::io::from_graph6(stdout(&gen).trim()).unwrap();
    let direct = mu_lab::random::sample_gnp(10, 0.4, mu_lab::Seed::new(7)).unwrap();
    assert_eq!(g, direct);
    let o = run_with_stdin(&["mu", "exact", "-"], &gen.stdout);
    let expected = mu_lab::mu::mu_exact(&direct).unwrap().exact.unwrap();
    assert_eq!(stdout(&o).trim(), expected.to_string());
}

#[test]
fn lambda_prime_and_boring_check() {
    let o = run(&["anatomy", "lambda-prime", "--lambda", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - 0.40637).abs() < 1e-5);
    let o = run(&["check", "boring", "--grid", "10000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("passed=true"));
    assert_eq!(run(&["anatomy", "lambda-prime", "--lambda", "0.5"]).status.code(), Some(2));
}

#[test]
fn subtree_counts() {
    let o = run_with_stdin(&["tree", "count-subtrees", "-"], b"-1\n-1 0 0 1\n");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 2\n5 6\n");
}

#[test]
fn anatomy_core_of_theta_graph_with_tail() {
    // two triangles sharing edge 0-1, plus a tail 2-4-5
    let o = run_with_stdin(&["anatomy", "core", "-"], b"0 1\n0 2\n1 2\n0 3\n1 3\n2 4\n4 5\n");
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("core 4 5\nvertices 0 1 2 3\n"), "{text}");
}

#[test]
fn bounds_are_consistent() {
    let o = run(&["gen", "comb", "--n", "8"]);
    let b = run_with_stdin(&["mu", "bounds", "-", "--format", "json"], &o.stdout);
    assert_eq!(b.status.code(), Some(0), "{}", String::from_utf8_lossy(&b.stderr));
    let v: serde_json::Value = serde_json::from_str(stdout(&b).trim()).unwrap();
    assert_eq!(v["order"], 16);
    assert!(v["lower_bounds"].as_array().unwrap().iter().any(|x| x["method"] == "comb"));
}

#[test]
fn experiment_outputs_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("xi.spec");
    std::fs::write(&spec, "# small run\nexperiment = xi\nn = 150\nreplicas = 2\n").unwrap();
    let csv = dir.path().join("out.csv");
    let json = dir.path().join("out.json");
    let args = |out: &str| {
        vec![
            "exp".to_string(),
            "xi".into(),
            "--spec".into(),
            spec.to_str().unwrap().into(),
            "--seed".into(),
            "3".into(),
            "--out".into(),
            out.into(),
            "--summary".into(),
            json.to_str().unwrap().into(),
        ]
    };
    let a: Vec<String> = args(csv.to_str().unwrap());
    let o = bin().args(&a).output().unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let first = std::fs::read_to_string(&csv).unwrap();
    assert!(first.starts_with("# experiment=xi spec_hash="));
    assert_eq!(first.lines().count(), 4);
    let summary: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(summary["provenance"]["resolved"]["seed"], "3");
    assert!(String::from_utf8_lossy(&o.stderr).contains("n = 150"));

    // same spec on one worker: identical bytes
    let mut a1 = a.clone();
    a1.extend(["--workers".into(), "1".into()]);
    let csv1 = dir.path().join("out1.csv");
    a1[7] = csv1.to_str().unwrap().into();
    assert_eq!(bin().args(&a1).output().unwrap().status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&csv1).unwrap(), first);

    let failing = run(&["exp", "uniqueness", "--set", "n=300", "--set", "replicas=2"]);
    assert_eq!(failing.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["mu", "exact"]).status.code(), Some(2));
    assert_eq!(run(&["exp", "no-such-experiment"]).status.code(), Some(2));
    assert_eq!(run(&["exp", "xi", "--set", "bogus_key=1"]).status.code(), Some(2));
    assert_eq!(run(&["mu", "exact", "/nonexistent/graph.txt"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "gnp", "--n", "5", "--p", "0.5", "--unknown"]).status.code(), Some(2));
}
