use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use univgraph::io;
use univgraph::universal::EmbeddingCertificate;

fn univgraph(args: &[&str], stdin: Option<&str>) -> Output {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_univgraph"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    let text = stdin.unwrap_or("").to_owned();
    let mut pipe = child.stdin.take().unwrap();
    std::thread::spawn(move || pipe.write_all(text.as_bytes()));
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn gen_formats_parse_back() {
    let g6 = univgraph(&["gen", "O", "5"], None);
    assert!(g6.status.success());
    let o5 = io::from_graph6(stdout(&g6).trim()).unwrap();
    assert_eq!((o5.order(), o5.size()), (10, 15));

    let edges = univgraph(&["gen", "K", "3", "3", "--format", "edges"], None);
    assert_eq!(io::from_edge_list(&stdout(&edges)).unwrap().size(), 9);

    let j = univgraph(&["gen", "W", "4", "--format", "json"], None);
    assert_eq!(io::from_json(&stdout(&j)).unwrap().graph().order(), 5);

    let dot = univgraph(&["gen", "Cnm", "3", "4", "--format", "dot"], None);
    assert!(stdout(&dot).starts_with("graph"));
}

#[test]
fn minor_exit_codes_follow_the_outcome() {
    let found = univgraph(&["minor", "--pattern", "K4"], Some("W 5\n"));
    assert_eq!(found.status.code(), Some(1), "W 5 is not a graph file");

    let w5 = stdout(&univgraph(&["gen", "W", "5"], None));
    let found = univgraph(&["minor", "--pattern", "W4"], Some(&w5));
    assert_eq!(found.status.code(), Some(0));
    assert_eq!(json(&found)["found"], true);

    let absent = univgraph(&["minor", "--pattern", "K5"], Some(&w5));
    assert_eq!(absent.status.code(), Some(1));
    assert_eq!(json(&absent)["found"], false);

    let tiny = univgraph(&["--budget", "1", "minor", "--pattern", "K4"], Some(&w5));
    assert_eq!(tiny.status.code(), Some(2));
}

#[test]
fn decompositions_are_written_and_verified() {
    let dir = tempfile::tempdir().unwrap();
    let g = stdout(&univgraph(&["gen", "Cnm", "4", "5", "--format", "edges"], None));
    let gpath = write(dir.path(), "g.txt", &g);
    let t = univgraph(&["decomp", "tutte", "--in", &gpath], None);
    assert!(t.status.success());
    let tpath = write(dir.path(), "t.json", &stdout(&t));
    let v = univgraph(&["decomp", "verify", "--in", &gpath, "--decomp", &tpath], None);
    assert!(v.status.success(), "{}", stdout(&v));

    let b = univgraph(&["decomp", "blocks", "--in", &gpath], None);
    assert!(b.status.success());
}

#[test]
fn unavoidable_subcommands_certify() {
    let o6 = stdout(&univgraph(&["gen", "O", "6"], None));
    for args in [
        vec!["unavoidable", "cycle", "--n", "3"],
        vec!["unavoidable", "cyclepair", "--n", "3", "--m", "3"],
        vec!["unavoidable", "wheel", "--k", "3"],
    ] {
        let o = univgraph(&args, Some(&o6));
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    assert!(univgraph(&["unavoidable", "facts", "--k", "3"], None).status.success());
}

#[test]
fn universal_state_survives_between_invocations() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("host.json");
    let state = state.to_str().unwrap();
    assert!(
        univgraph(&["universal", "build", "--forbid", "W3", "--state", state], None)
            .status
            .success()
    );

    let theta = "6 7\n0 1\n1 5\n0 2\n2 5\n0 3\n3 4\n4 5\n";
    let cert_path = dir.path().join("cert.json");
    let e = univgraph(
        &[
            "universal",
            "embed",
            "--state",
            state,
            "--cert",
            cert_path.to_str().unwrap(),
        ],
        Some(theta),
    );
    assert!(e.status.success(), "{}", String::from_utf8_lossy(&e.stderr));
    let cert: EmbeddingCertificate = serde_json::from_str(&std::fs::read_to_string(&cert_path).unwrap()).unwrap();
    assert!(cert.verify());
    assert_eq!(cert.guest, io::from_edge_list(theta).unwrap());

    let k4 = stdout(&univgraph(&["gen", "K", "4", "--format", "edges"], None));
    let rejected = univgraph(&["universal", "embed", "--state", state], Some(&k4));
    assert_eq!(rejected.status.code(), Some(1));

    let v = univgraph(&["universal", "verify", "--state", state, "--pad", "300"], None);
    assert!(v.status.success());
    let report = json(&v);
    assert_eq!(report["truncation_order"], 300);
    assert_eq!(report["violations"], Value::Array(vec![]));
}

#[test]
fn pipeline_bundles_everything_or_returns_the_model() {
    let sp = "6 7\n0 1\n1 2\n2 3\n3 0\n0 4\n4 2\n2 5\n";
    let ok = univgraph(&["pipeline", "--forbid", "W3", "--pad", "60"], Some(sp));
    assert!(ok.status.success());
    let bundle = json(&ok);
    assert_eq!(bundle["membership"]["in_class"], true);
    assert_eq!(bundle["certificate_verified"], true);
    let cert: EmbeddingCertificate = serde_json::from_value(bundle["certificate"].clone()).unwrap();
    assert!(cert.verify());

    let c5 = "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n";
    let bad = univgraph(&["pipeline", "--forbid", "C5"], Some(c5));
    assert_eq!(bad.status.code(), Some(1));
    let bundle = json(&bad);
    assert_eq!(bundle["membership"]["in_class"], false);
    assert!(bundle["membership"]["model"].is_object());
}

#[test]
fn corpus_reports_are_jsonl_and_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.jsonl");
    let a = univgraph(
        &[
            "--seed",
            "9",
            "corpus",
            "--suite",
            "lemma-2con",
            "--out",
            out.to_str().unwrap(),
        ],
        None,
    );
    assert!(a.status.success());
    let written = std::fs::read_to_string(&out).unwrap();
    let b = univgraph(&["--seed", "9", "corpus", "--suite", "lemma-2con"], None);
    assert_eq!(stdout(&b), written);
    let lines: Vec<Value> = written.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.last().unwrap()["seed"], 9);

    let m = univgraph(&["corpus", "--suite", "ell", "--inject-mutant"], None);
    assert_eq!(m.status.code(), Some(1));
}

#[test]
fn closed_stdout_is_not_a_crash() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_univgraph"))
        .args(["unavoidable", "facts", "--k", "3"])
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    drop(child.stdout.take());
    let o = child.wait_with_output().unwrap();
    assert!(!String::from_utf8_lossy(&o.stderr).contains("panicked"));
}
