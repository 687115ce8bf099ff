//! End-to-end tests of the binary: file in, JSON/CSV out, exit codes.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use immersion_core::graph::formats::{write_dimacs, write_graph6};
use immersion_core::graph::generators::{complete, cycle};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_immersion"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad json: {e}\nstdout: {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn write_corpus_graph(dir: &Path) -> std::path::PathBuf {
    let g = cycle(5).join(&complete(4));
    let path = dir.join("c5_join_k4.g6");
    fs::write(&path, write_graph6(&g)).unwrap();
    path
}

#[test]
fn chi_reports_exact_value() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_corpus_graph(dir.path());
    let out = run(&["chi", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["chromatic_number"], 7);
    assert_eq!(v["coloring"].as_array().unwrap().len(), 9);
}

#[test]
fn chi_accepts_dimacs_too() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c5.col");
    fs::write(&path, write_dimacs(&cycle(5))).unwrap();
    let out = run(&["chi", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["chromatic_number"], 3);
    // Extension-free files work with an explicit format.
    let bare = dir.path().join("edges");
    fs::write(&bare, write_dimacs(&cycle(5))).unwrap();
    let out = run(&["chi", bare.to_str().unwrap(), "--format", "dimacs"]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["chromatic_number"], 3);
}

#[test]
fn critical_strips_padding() {
    let dir = tempfile::tempdir().unwrap();
    // C5 plus a pendant vertex.
    let mut b = immersion_core::graph::SimpleGraph::builder(6);
    for v in 0..5 {
        b.add_edge(v, (v + 1) % 5).unwrap();
    }
    b.add_edge(0, 5).unwrap();
    let path = dir.path().join("pendant.g6");
    fs::write(&path, write_graph6(&b.build())).unwrap();
    let out = run(&["critical", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["n"], 5);
    assert_eq!(v["vertices"], serde_json::json!([0, 1, 2, 3, 4]));
}

#[test]
fn immerse_then_verify_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_corpus_graph(dir.path());
    let cert = dir.path().join("cert.json");
    let out = run(&[
        "immerse",
        graph.to_str().unwrap(),
        "--k",
        "7",
        "--strategy",
        "arbitrary",
        "--seed",
        "0",
        "--out",
        cert.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json_of(&out)["verified"], true);

    let out = run(&["verify", graph.to_str().unwrap(), "--cert", cert.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["passed"], true);

    // Tamper with one path: reroute it through a non-edge.
    let mut v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    v["paths"][0]["vertices"] = serde_json::json!([0, 2]);
    fs::write(&cert, serde_json::to_string(&v).unwrap()).unwrap();
    let out = run(&["verify", graph.to_str().unwrap(), "--cert", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "tampered certificate must fail verification");
    assert_eq!(json_of(&out)["passed"], false);
}

#[test]
fn gallai_prints_parts() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_corpus_graph(dir.path());
    let out = run(&["gallai", graph.to_str().unwrap(), "--k", "7"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["verified"], true);
    assert_eq!(v["parts"].as_array().unwrap().len(), 5);
    assert_eq!(v["parts"][0]["k_i"], 3);
}

#[test]
fn degree_bound_prints_the_maximum() {
    let out = run(&["degree-bound", "--delta", "1.125"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert!((v["max_value"].as_f64().unwrap() - 0.5625).abs() < 1e-9);
    assert!((v["stationary_value"].as_f64().unwrap() - 0.55).abs() < 1e-9);
}

#[test]
fn bounds_subcommands() {
    let out = run(&["bounds", "hill", "--k", "7"]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["hill"], "9");

    let out = run(&["bounds", "lower", "complete", "--k", "100"]);
    assert_eq!(json_of(&out)["asymptotic_caveat"], true);

    let out = run(&["bounds", "lower", "crossing-lemma", "--n", "100", "--m", "600"]);
    assert_eq!(out.status.code(), Some(2), "precondition violation maps to exit 2");

    let out = run(&["bounds", "aux", "sampled-edges", "--n", "10", "--m", "20", "--a", "5"]);
    let v = json_of(&out);
    assert!((v["value"].as_f64().unwrap() - 40.0 / 9.0).abs() < 1e-9);

    let out = run(&["bounds", "case", "--k", "6", "--n", "6", "--parts", "1:1,1:1,1:1,1:1,1:1,1:1"]);
    assert_eq!(json_of(&out)["case_label"], "base");
}

#[test]
fn experiment_is_deterministic_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(
        &cfg,
        r#"{"generator":{"kind":"near_regular"},"k_list":[10,14],"trials_per_k":2}"#,
    )
    .unwrap();
    let a = run(&["experiment", "--config", cfg.to_str().unwrap(), "--seed", "4"]);
    let b = run(&["experiment", "--config", cfg.to_str().unwrap(), "--seed", "4", "--jobs", "2"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "same seed must give identical CSV regardless of jobs");
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("k,n,seed,delta_H,mu_H,colors,ell,ratio_delta,ratio_mu,ms\n"));
    assert_eq!(text.lines().count(), 5);

    let svg = dir.path().join("plot.svg");
    let out = run(&[
        "experiment",
        "--config",
        cfg.to_str().unwrap(),
        "--seed",
        "4",
        "--plot",
        svg.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let plot = fs::read_to_string(&svg).unwrap();
    assert!(plot.starts_with("<svg"));
    assert_eq!(plot.matches("<circle").count(), 4);
}

#[test]
fn usage_and_precondition_errors_exit_2() {
    let out = run(&["chi", "/nonexistent/file.g6"]);
    assert_eq!(out.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let graph = write_corpus_graph(dir.path());
    // Wrong k: precondition error.
    let out = run(&["immerse", graph.to_str().unwrap(), "--k", "6"]);
    assert_eq!(out.status.code(), Some(2));
    // Unknown subcommand: clap usage error.
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn chi_cap_env_override_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("big.g6");
    fs::write(&path, write_graph6(&complete(66))).unwrap();
    let out = run(&["chi", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "above the default cap");
    let out = bin()
        .args(["chi", path.to_str().unwrap()])
        .env("IMMERSION_CHI_CAP", "70")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(json_of(&out)["chromatic_number"], 66);
}
