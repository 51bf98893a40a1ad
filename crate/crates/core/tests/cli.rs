use std::path::Path;
use std::process::{Command, Output};

use nlgs::gh::GhTable;
use nlgs::space::GraphSpace;
use nlgs::synthetic::ObjectiveTable;

fn nlgs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nlgs")).args(args).output().expect("spawn nlgs")
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

fn ok(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn pipeline_from_table_to_traces() {
    let dir = tempfile::tempdir().unwrap();
    let (table, graph, bench, trace) =
        (path(dir.path(), "gh.json"), path(dir.path(), "g.json"), path(dir.path(), "b.json"), path(dir.path(), "t.csv"));

    ok(&nlgs(&["gh", "table", "--mode", "paper", "--out", &table]));
    let t = GhTable::load(table.as_ref()).unwrap();
    assert_eq!(t, GhTable::paper_preset());

    ok(&nlgs(&["space", "build", "--fixed-size", "13", "--gh-table", &table, "--out", &graph]));
    let g = GraphSpace::load(graph.as_ref()).unwrap();
    assert_eq!((g.len(), g.edges().len()), (105, 273));

    let stats = ok(&nlgs(&["space", "stats", "--graph", &graph]));
    assert!(stats.contains("105"), "{stats}");

    let o = nlgs(&["bench", "synth", "--truth", "H,H,H,H,H,H,H,S,S,S,S,S,S", "--seed", "3", "--out", &bench]);
    ok(&o);
    let b = ObjectiveTable::load(bench.as_ref()).unwrap();
    assert_eq!(b.values.len(), 105);
    assert_eq!(b.values["H,H,H,H,H,H,H,S,S,S,S,S,S"], 0.0);

    let out = ok(&nlgs(&[
        "search", "run", "--graph", &graph, "--objective", &bench, "--methods", "gh-bo,random", "--seeds", "0,1",
        "--budget", "12", "--out", &trace,
    ]));
    assert!(out.contains("gh_bo") && out.contains("random"), "{out}");
    let csv = std::fs::read_to_string(&trace).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("run_id,method,seed,iteration,node_index,signature,objective,best_so_far"));
    assert_eq!(lines.count(), 2 * 2 * 12);
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = path(dir.path(), "run.json");
    std::fs::write(
        &cfg,
        r#"{"schema_version": 1, "space": {"fixed_size": 4, "variant": "complete"}, "bench": {"truth": "E,E,H,S", "seed": 9}, "search": {"budget": 7, "seeds": [4], "methods": ["naive_bo"]}}"#,
    )
    .unwrap();
    let (graph, bench, trace) = (path(dir.path(), "g.json"), path(dir.path(), "b.json"), path(dir.path(), "t.csv"));
    ok(&nlgs(&["--config", &cfg, "space", "build", "--out", &graph]));
    let g = GraphSpace::load(graph.as_ref()).unwrap();
    assert_eq!(g.len(), 15);
    assert_eq!(g.edges().len(), 15 * 14 / 2);

    ok(&nlgs(&["--config", &cfg, "bench", "synth", "--factors", "4", "--out", &bench]));
    assert_eq!(ObjectiveTable::load(bench.as_ref()).unwrap().seed, 9);

    ok(&nlgs(&["--config", &cfg, "search", "run", "--graph", &graph, "--objective", &bench, "--out", &trace]));
    let csv = std::fs::read_to_string(&trace).unwrap();
    assert_eq!(csv.lines().count(), 1 + 7);
    assert!(csv.lines().skip(1).all(|l| l.starts_with("naive_bo-4,")));

    // The flag wins over the file.
    ok(&nlgs(&["--config", &cfg, "search", "run", "--graph", &graph, "--objective", &bench, "--budget", "5", "--out", &trace]));
    assert_eq!(std::fs::read_to_string(&trace).unwrap().lines().count(), 1 + 5);
}

#[test]
fn usage_and_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let graph = path(dir.path(), "g.json");
    assert_eq!(nlgs(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(nlgs(&["space", "build", "--variant", "gh", "--out", &graph]).status.code(), Some(2));
    assert!(!Path::new(&graph).exists());

    let bad = path(dir.path(), "bad.json");
    std::fs::write(&bad, r#"{"schema_version": 7}"#).unwrap();
    let o = nlgs(&["--config", &bad, "gh", "analytic-es"]);
    assert_ne!(o.status.code(), Some(0));

    ok(&nlgs(&["space", "build", "--max-factors", "3", "--variant", "unweighted", "--out", &graph]));
    let bench = path(dir.path(), "b.json");
    ok(&nlgs(&["bench", "synth", "--factors", "2", "--truth", "E,H", "--out", &bench]));
    let o = nlgs(&["search", "run", "--graph", &graph, "--objective", &bench, "--budget", "5", "--out", &path(dir.path(), "t.csv")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("E,E,E"));
}

#[test]
fn gh_commands() {
    let out = ok(&nlgs(&["gh", "analytic-es"]));
    assert!(out.contains("0.229849") && out.contains("0.257184"), "{out}");

    let out = ok(&nlgs(&["gh", "constants"]));
    assert!(out.contains("0.14132"), "{out}");

    let dir = tempfile::tempdir().unwrap();
    let est = path(dir.path(), "e.json");
    ok(&nlgs(&[
        "gh", "estimate", "--pair", "e-h", "--res-r", "20", "--res-t", "20", "--sphere-res", "10", "--offset-steps", "4",
        "--diameter", "--out", &est,
    ]));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&est).unwrap()).unwrap();
    let value = v["value"].as_f64().unwrap();
    assert!(value > 0.0 && value <= v["diameter_bound"].as_f64().unwrap());
}

#[test]
fn diagnostics() {
    ok(&nlgs(&["diag", "eig", "--size", "30", "--seed", "2"]));
    let out = ok(&nlgs(&["diag", "embed", "--samples", "20"]));
    assert!(out.to_lowercase().contains("deviation"), "{out}");
}
