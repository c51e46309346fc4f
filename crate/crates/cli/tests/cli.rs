use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_flagcollapse"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

const OCTAHEDRON: &str = "6 12\n0 2\n0 3\n0 4\n0 5\n1 2\n1 3\n1 4\n1 5\n2 4\n2 5\n3 4\n3 5\n";

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn check_reports_octahedron_witness() {
    let dir = tempfile::tempdir().unwrap();
    let oct = write(dir.path(), "oct.txt", OCTAHEDRON);
    let out = run(&["check", "--in", &oct, "--k", "1"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["status"], "violated");
    assert_eq!(v["witness"]["facets"].as_array().unwrap().len(), 8);

    let out = run(&["check", "--in", &oct, "--k", "1", "--mode", "prefilter"]);
    assert_eq!(stdout_json(&out)["verdict"], "inconclusive");
}

#[test]
fn collapse_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    let cert = dir.path().join("cert.json");
    let g = graph.to_str().unwrap();
    let c = cert.to_str().unwrap();
    assert!(
        run(&["sample", "--n", "40", "--alpha", "0.6", "--seed", "9", "--out", g])
            .status
            .success()
    );

    let out = run(&[
        "collapse",
        "--in",
        g,
        "--k",
        "1",
        "--strategy",
        "theorem",
        "--cert-out",
        c,
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let summary = stdout_json(&out);
    assert_eq!(summary["status"], "success");

    let out = run(&["verify", "--in", g, "--cert", c]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["valid"], true);

    // tamper with the certificate: replay the first step at the end
    let mut json: Value = serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    let steps = json["steps"].as_array_mut().unwrap();
    let len = steps.len();
    assert!(len > 0);
    let first = steps[0].clone();
    steps.push(first);
    fs::write(&cert, json.to_string()).unwrap();
    let out = run(&["verify", "--in", g, "--cert", c]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["valid"], false);
    assert_eq!(v["step"], len);
}

#[test]
fn collapse_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let oct = write(dir.path(), "oct.txt", OCTAHEDRON);
    let out = run(&["collapse", "--in", &oct, "--k", "1", "--strategy", "greedy"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["status"], "failure");
}

#[test]
fn homology_of_json_and_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let rp2 = write(
        dir.path(),
        "rp2.json",
        r#"{"n":6,"faces":[[0,1,2],[0,2,3],[0,3,4],[0,4,5],[0,1,5],[1,2,4],[1,3,4],[1,3,5],[2,3,5],[2,4,5]]}"#,
    );
    let v = stdout_json(&run(&["homology", "--in", &rp2]));
    assert_eq!(v["betti"], serde_json::json!([1, 0, 0]));
    assert_eq!(v["torsion"], serde_json::json!([[], [2], []]));

    let c4 = write(dir.path(), "c4.txt", "4 4\n0 1\n1 2\n2 3\n0 3\n");
    let v = stdout_json(&run(&["homology", "--in", &c4, "--max-dim", "2"]));
    assert_eq!(v["betti"], serde_json::json!([1, 1, 0]));
}

#[test]
fn sample_is_deterministic_and_json_loads() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for p in [&a, &b] {
        assert!(run(&[
            "sample",
            "--n",
            "25",
            "--p",
            "0.3",
            "--seed",
            "5",
            "--out",
            p.to_str().unwrap()
        ])
        .status
        .success());
    }
    assert_eq!(
        fs::read_to_string(&a).unwrap(),
        fs::read_to_string(&b).unwrap()
    );

    let j = dir.path().join("x.json");
    let js = j.to_str().unwrap();
    assert!(
        run(&["sample", "--n", "25", "--p", "0.3", "--seed", "5", "--out", js])
            .status
            .success()
    );
    let out = run(&["check", "--in", js, "--k", "1"]);
    let from_edges = run(&["check", "--in", a.to_str().unwrap(), "--k", "1"]);
    assert_eq!(stdout_json(&out), stdout_json(&from_edges));
}

#[test]
fn bad_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "3 1\n0 0\n");
    let out = run(&["check", "--in", &bad, "--k", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("self-loop"));
    let out = run(&[
        "sample",
        "--n",
        "5",
        "--p",
        "1.5",
        "--seed",
        "1",
        "--out",
        "/dev/null",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn experiment_writes_results() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "cfg.json",
        r#"{"k":0,"alphas":[1.2],"ns":[30,60],"trials":5,"master_seed":3,"strategy":"theorem","measure_homology":true}"#,
    );
    let out_dir = dir.path().join("out");
    let out = run(&[
        "experiment",
        "--config",
        &cfg,
        "--out-dir",
        out_dir.to_str().unwrap(),
        "--workers",
        "2",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = fs::read_to_string(out_dir.join("results.csv")).unwrap();
    assert_eq!(csv.lines().count(), 11);
    let summary: Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["cells"].as_array().unwrap().len(), 2);

    let zero = write(
        dir.path(),
        "zero.json",
        r#"{"k":0,"alphas":[1.2],"ns":[30],"trials":0,"master_seed":3}"#,
    );
    let out = run(&[
        "experiment",
        "--config",
        &zero,
        "--out-dir",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}
