use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use oriograph::format::{parse_bundle, parse_graph, parse_parts};
use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oriograph")).args(args).env_remove("ORIOGRAPH_THREADS").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is one JSON document")
}

fn gen(dir: &TempDir, name: &str, family: &[&str]) -> PathBuf {
    let path = dir.path().join(name);
    let mut args = vec!["generate"];
    args.extend_from_slice(family);
    args.extend_from_slice(&["-o", path.to_str().unwrap()]);
    let o = run(&args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_writes_graph_and_parts() {
    let dir = TempDir::new().unwrap();
    let f2 = gen(&dir, "f2.dg", &["f-r", "2"]);
    let g = parse_graph(&std::fs::read_to_string(&f2).unwrap()).unwrap();
    assert_eq!(g.n(), 9);
    assert!(!dir.path().join("f2.parts").exists());

    let d = gen(&dir, "d.dg", &["d-abc", "1", "2", "3"]);
    let g = parse_graph(&std::fs::read_to_string(&d).unwrap()).unwrap();
    let p = parse_parts(&std::fs::read_to_string(dir.path().join("d.parts")).unwrap(), g.n()).unwrap();
    assert_eq!(p.sizes(), vec![1, 2, 3]);

    let o = run(&["generate", "rotational", "7", "1,2,4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(parse_graph(&String::from_utf8(o.stdout).unwrap()).unwrap().edge_count(), 21);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["bogus"])), 2);
    assert_eq!(code(&run(&["embed", "--nope"])), 2);
    assert_eq!(code(&run(&["generate", "d-abc", "0", "1", "1"])), 2);
    assert_eq!(code(&run(&["embed", "--pattern", "/nonexistent.dg", "--host", "/nonexistent.dg"])), 2);
    assert_eq!(code(&run(&["verify-paper", "--profile", "slow"])), 2);
    assert_eq!(code(&run(&["--help"])), 0);
    let o = Command::new(env!("CARGO_BIN_EXE_oriograph"))
        .args(["verify-paper", "--profile", "fast"])
        .env("ORIOGRAPH_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn embed_exit_codes() {
    let dir = TempDir::new().unwrap();
    let c62 = gen(&dir, "c62.dg", &["cycle-power", "6", "2"]);
    let t7 = gen(&dir, "t7.dg", &["rotational", "7", "1,2,4"]);
    assert_eq!(code(&run(&["embed", "--pattern", s(&c62), "--host", s(&t7)])), 1);

    let f2 = gen(&dir, "f2.dg", &["f-r", "2"]);
    let sg = gen(&dir, "s.dg", &["s"]);
    let o = run(&["embed", "--pattern", s(&sg), "--host", s(&f2), "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["status"], "found");
    assert_eq!(v["map"].as_array().unwrap().len(), 5);

    let t7b = gen(&dir, "t7b.dg", &["blow-up", s(&t7), "2"]);
    let o = run(&["embed", "--pattern", s(&c62), "--host", s(&t7b), "--budget", "3"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn embed_count_and_vectors() {
    let dir = TempDir::new().unwrap();
    let c3 = gen(&dir, "c3.dg", &["cycle-power", "3", "1"]);
    let host = gen(&dir, "b.dg", &["c3-barrier", "3"]);
    let o = run(&["embed", "--pattern", s(&c3), "--host", s(&c3), "--count"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap().trim(), "3");
    let parts = dir.path().join("b.parts");
    let o = run(&["embed", "--pattern", s(&c3), "--host", s(&host), "--parts", s(&parts), "--vectors", "--json"]);
    assert_eq!(code(&o), 0);
    let allowed = [[3, 0, 0], [0, 3, 0], [0, 0, 3], [1, 1, 1]].map(|v| serde_json::json!(v));
    let vectors = json(&o)["vectors"].as_array().unwrap().clone();
    assert!(!vectors.is_empty());
    assert!(vectors.iter().all(|v| allowed.contains(v)), "{vectors:?}");
}

#[test]
fn tile_certificates() {
    let dir = TempDir::new().unwrap();
    let d2 = gen(&dir, "d2.dg", &["d-abc", "2", "2", "2"]);
    let t20 = gen(&dir, "t20.dg", &["t-sk", "2", "0"]);
    let cert = dir.path().join("cert.json");
    let o = run(&["tile", "--pattern", s(&d2), "--host", s(&t20), "--certificate", s(&cert)]);
    assert_eq!(code(&o), 1);
    let c: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(c["mode"], "refuted-exhaustive");

    let parts = dir.path().join("t20.parts");
    let o = run(&["tile", "--pattern", s(&d2), "--host", s(&t20), "--parts", s(&parts), "--json"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["mode"], "refuted-lattice");

    let c3 = gen(&dir, "c3.dg", &["cycle-power", "3", "1"]);
    let b = gen(&dir, "b.dg", &["blow-up", s(&c3), "2"]);
    let o = run(&["tile", "--pattern", s(&c3), "--host", s(&b), "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["mode"], "found");
    assert_eq!(v["copies"].as_array().unwrap().len(), 2);
    let o = run(&["tile", "--pattern", s(&c3), "--host", s(&b), "--greedy"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn lattice_membership() {
    let gens = "2,2,2;4,1,1;1,4,1;1,1,4;3,3,0;3,0,3;0,3,3";
    let o = run(&["lattice", "--generators", gens, "--mod", "6", "--target", "1,2,3", "--json"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["target_in_lattice"], false);
    let o = run(&["lattice", "--generators", gens, "--mod", "6", "--target", "3,3,0"]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&run(&["lattice", "--generators", gens, "--target", "3,3,0"])), 2);
}

#[test]
fn lattice_from_host() {
    let dir = TempDir::new().unwrap();
    let c3 = gen(&dir, "c3.dg", &["cycle-power", "3", "1"]);
    let host = gen(&dir, "b.dg", &["c3-barrier", "3"]);
    let parts = dir.path().join("b.parts");
    let o = run(&["lattice", "--host", s(&host), "--parts", s(&parts), "--pattern", s(&c3), "--reach", "1", "--json"]);
    assert_eq!(code(&o), 1, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["transferrals"].as_array().unwrap().len(), 0);
    assert_eq!(v["family_g"]["reverse_edges"].as_array().unwrap().len(), 0);
    assert!(v["reachability"].is_object());
    assert_eq!(v["target"], serde_json::json!([2, 3, 4]));
}

#[test]
fn analyze_modes() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "g.dg", &["near-regular", "13"]);
    let o = run(&["analyze", "--host", s(&g), "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["vertices"].as_array().unwrap().len(), 13);

    let c3 = gen(&dir, "c3.dg", &["cycle-power", "3", "1"]);
    let b = gen(&dir, "b.dg", &["blow-up", s(&c3), "3"]);
    let o = run(&["analyze", "--host", s(&b), "--stats", "extremal", "--gamma", "0.1", "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["report"]["extremal"], true);
    let o = run(&["analyze", "--host", s(&b), "--parts", s(&dir.path().join("b.parts")), "--stats", "extremal"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn search_commands() {
    let dir = TempDir::new().unwrap();
    let bundle = dir.path().join("rt7.dg");
    let o = run(&["search", "enumerate-rt", "--n", "7", "-o", s(&bundle)]);
    assert_eq!(code(&o), 0);
    assert_eq!(parse_bundle(&std::fs::read_to_string(&bundle).unwrap()).unwrap().len(), 3);
    assert_eq!(code(&run(&["search", "enumerate-rt", "--n", "8"])), 2);

    let sg = gen(&dir, "s.dg", &["s"]);
    let o = run(&["search", "probe", "--pattern", s(&sg), "--mode", "exhaustive", "--n", "5,7", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["entries"][1]["hosts"], 3);

    let d = gen(&dir, "d112.dg", &["d-abc", "1", "1", "2"]);
    let t20 = gen(&dir, "t20.dg", &["t-sk", "2", "0"]);
    let inject = format!("{}:{}", s(&t20), s(&dir.path().join("t20.parts")));
    let o =
        run(&["search", "tile-probe", "--pattern", s(&d), "--n", "8,12", "--samples", "5", "--seed", "1", "--json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let o = run(&["search", "tile-probe", "--pattern", s(&d), "--n", "8", "--samples", "2", "--inject", &inject]);
    assert!([0, 1].contains(&code(&o)));
}

#[test]
fn verify_paper_json_is_stable() {
    let a = run(&["verify-paper", "--profile", "fast", "--json", "--threads", "1"]);
    let b = Command::new(env!("CARGO_BIN_EXE_oriograph"))
        .args(["verify-paper", "--profile", "fast", "--json", "--threads", "1"])
        .env("ORIOGRAPH_THREADS", "4")
        .output()
        .unwrap();
    assert!([0, 1].contains(&code(&a)));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 15);
    assert!(checks.iter().all(|c| c["status"] != "FAIL"), "{v}");

    let human = run(&["verify-paper", "--profile", "fast"]);
    let text = String::from_utf8(human.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS") || l.starts_with("INCONCLUSIVE")).count(), 15);
}
