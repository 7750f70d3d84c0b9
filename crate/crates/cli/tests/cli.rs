use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ecgraph"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn golden(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    std::fs::read_to_string(p).unwrap()
}

fn fixture(name: &str) -> String {
    stdout(&run(&["fixture", name], None))
}

#[test]
fn golden_outputs() {
    assert_eq!(fixture("efig"), golden("efig.json"));
    let efig = fixture("efig");
    assert_eq!(stdout(&run(&["analyze", "-", "--json"], Some(&efig))), golden("analyze_efig.json"));
    let g = fixture("needall_g");
    assert_eq!(stdout(&run(&["analyze", "-"], Some(&g))), golden("analyze_needall_g.txt"));
    let h = run(&["hamiltonian", "-"], Some(&fixture("halfm")));
    assert_eq!(h.status.code(), Some(3));
    assert_eq!(stdout(&h), golden("hamiltonian_halfm.json"));
}

#[test]
fn analyze_reports() {
    let r = json(&run(&["analyze", "-", "--json"], Some(&fixture("efig"))));
    let se = r["entries"].as_array().unwrap().iter().find(|e| e["question"] == "supereulerian").unwrap();
    assert_eq!(se["answer"], "true");
    assert_eq!(se["witness"]["edges"].as_array().unwrap().len(), 8);

    let r = json(&run(&["analyze", "-", "--json"], Some(&fixture("cmg_example"))));
    let answer = |q: &str| r["entries"].as_array().unwrap().iter().find(|e| e["question"] == q).unwrap()["answer"].clone();
    assert_eq!(answer("colour_connected"), "true");
    assert_eq!(answer("cycle_factor"), "true");
    assert_eq!(answer("supereulerian"), "false");

    let g = stdout(&run(&["random", "--model", "mclosed_blowup", "--seed", "1", "--n", "6"], None));
    let r = json(&run(&["analyze", "-", "--json"], Some(&g)));
    assert_eq!(r["entries"][1]["question"], "extension_of_m_closed");
    assert_eq!(r["entries"][1]["answer"], "true");
}

#[test]
fn reduction_pipeline_matches_hamiltonicity() {
    // an alternating 4-cycle and halfm
    let square = r#"{"vertices":["a","b","c","d"],"edges":[
        {"id":"e1","u":"a","v":"b","colour":"red"},{"id":"e2","u":"b","v":"c","colour":"blue"},
        {"id":"e3","u":"c","v":"d","colour":"red"},{"id":"e4","u":"d","v":"a","colour":"blue"}]}"#;
    for g in [square.to_string(), fixture("halfm")] {
        let reduced = stdout(&run(&["transform", "np-reduce", "-"], Some(&g)));
        let se = run(&["oracle", "supereulerian", "-", "--max-n", "30", "--max-edges", "40"], Some(&reduced));
        let ham = run(&["oracle", "ham", "-"], Some(&g));
        assert_eq!(json(&se)["answer"], json(&ham)["answer"]);
        assert_eq!(se.status.code(), ham.status.code());
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["fixture", "nope"], None).status.code(), Some(2));
    assert_eq!(run(&["analyze", "-"], Some("{not json")).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"], None).status.code(), Some(2));
    // negative with a certificate
    let o = run(&["supereulerian", "-"], Some(&fixture("needall_g")));
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["answer"], "false");
    // outside the class and too large for the oracle
    let big = stdout(&run(&["random", "--model", "random_2ec", "--n", "30", "--p", "0.2", "--seed", "4"], None));
    let o = run(&["supereulerian", "-"], Some(&big));
    assert_eq!(o.status.code(), Some(4));
    // small enough in vertices, over the edge budget
    let dense = stdout(&run(&["random", "--model", "random_2ec", "--n", "9", "--p", "1", "--parallel", "1", "--seed", "2"], None));
    assert_eq!(run(&["oracle", "supereulerian", "-"], Some(&dense)).status.code(), Some(5));
    // success
    let o = run(&["supereulerian", "-"], Some(&fixture("efig")));
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn random_is_deterministic() {
    let args = ["random", "--model", "complete_multipartite", "--parts", "2,3,1", "--seed", "9"];
    assert_eq!(stdout(&run(&args, None)), stdout(&run(&args, None)));
    let g = json(&run(&["random", "--model", "complete_bipartite", "--a", "3", "--b", "3", "--seed", "7"], None));
    assert_eq!(g["edges"].as_array().unwrap().len(), 9);
}

#[test]
fn transforms_round_trip() {
    let k = stdout(&run(&["random", "--model", "complete_bipartite", "--a", "2", "--b", "3", "--seed", "1"], None));
    let d = stdout(&run(&["transform", "bb-to-digraph", "-"], Some(&k)));
    let back = stdout(&run(&["transform", "bb-from-digraph", "-"], Some(&d)));
    assert_eq!(json(&run(&["analyze", "-", "--json"], Some(&back))), json(&run(&["analyze", "-", "--json"], Some(&k))));
    assert_eq!(run(&["transform", "bb-to-digraph", "-"], Some(&fixture("efig"))).status.code(), Some(4));

    let g = fixture("needall_g");
    let blown = stdout(&run(&["transform", "blowup", "-", "--mult", "2,1,1,1,1,1"], Some(&g)));
    let q = json(&run(&["transform", "quotient", "-"], Some(&blown)));
    assert_eq!(q["vertices"].as_array().unwrap().len(), 6);
    assert_eq!(run(&["transform", "blowup", "-", "--mult", "2"], Some(&g)).status.code(), Some(2));

    let closed = stdout(&run(&["transform", "mclosure", "-", "--seed", "3"], Some(&fixture("efig"))));
    let r = json(&run(&["analyze", "-", "--json"], Some(&closed)));
    assert_eq!(r["entries"][0]["answer"], "true");
}

#[test]
fn connectivity_and_verify() {
    let efig = fixture("efig");
    let o = run(&["connectivity", "-", "--trail", "--from", "v1", "--to", "v6", "--start", "blue", "--end", "blue"], Some(&efig));
    assert_eq!(o.status.code(), Some(0));
    let trail = serde_json::to_string(&json(&o)["witness"]).unwrap();
    let dir = std::env::temp_dir().join(format!("ecgraph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (gp, wp) = (dir.join("g.json"), dir.join("w.json"));
    std::fs::write(&gp, &efig).unwrap();
    std::fs::write(&wp, trail).unwrap();
    let v = run(&["verify", gp.to_str().unwrap(), wp.to_str().unwrap()], None);
    assert_eq!(json(&v)["valid"], true);
    let f = run(&["factor", gp.to_str().unwrap()], None);
    assert_eq!(json(&f)["answer"], "true");
    std::fs::remove_dir_all(&dir).unwrap();
}
