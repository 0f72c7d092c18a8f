use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rangepairs"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> Output {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn engine_and_oracle_agree_through_files() {
    let dir = tempfile::tempdir().unwrap();
    for (kind, n) in [("segments", "200"), ("rects", "150"), ("boxes", "120"), ("cubes", "80"), ("fatboxes:4", "80"), ("disks", "80")] {
        let inst = path(dir.path(), "inst.jsonl");
        let (a, b) = (path(dir.path(), "engine.jsonl"), path(dir.path(), "oracle.jsonl"));
        ok(&["gen", "--kind", kind, "--n", n, "--seed", "5", "--queries", "40", "--out", &inst]);
        ok(&["query", "--in", &inst, "--out", &a, "--engine"]);
        ok(&["query", "--in", &inst, "--out", &b, "--oracle"]);
        let (ea, eb) = (fs::read_to_string(&a).unwrap(), fs::read_to_string(&b).unwrap());
        assert_eq!(ea, eb, "{kind}");
        assert_eq!(ea.lines().count(), 40);
        assert!(ea.lines().next().unwrap().starts_with("{\"q\":0,\"pairs\":["));
    }
}

#[test]
fn gen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (path(dir.path(), "a.jsonl"), path(dir.path(), "b.jsonl"));
    for out in [&a, &b] {
        ok(&["gen", "--kind", "disks", "--n", "60", "--seed", "3", "--queries", "10", "--out", out]);
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert!(text.starts_with("{\"kind\":\"disks\",\"n\":60,\"seed\":3}\n{\"disk\":["));
}

#[test]
fn repeated_checks_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for kind in ["segments", "rects", "boxes", "cubes", "fatboxes", "disks"] {
        let (a, b) = (path(dir.path(), "a.jsonl"), path(dir.path(), "b.jsonl"));
        let mut stdouts = Vec::new();
        for out in [&a, &b] {
            let o = ok(&["check", "--kind", kind, "--n", "150", "--queries", "50", "--seed", "11", "--out", out]);
            stdouts.push(o.stdout);
        }
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap(), "{kind}");
        assert_eq!(stdouts[0], stdouts[1]);
        assert!(String::from_utf8_lossy(&stdouts[0]).trim_end().ends_with(" ok"));
    }
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = path(dir.path(), "report.csv");
    ok(&["bench", "--kind", "rects", "--sizes", "100,200", "--queries", "20", "--out", &csv, "--fixed-k"]);
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.contains("query_median_us") && header.ends_with("oracle_match"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.starts_with("rects,") && r.ends_with(",true")));
}

#[test]
fn disk_tolerance_from_environment() {
    let out = bin()
        .env("RANGE_PAIR_EPS", "1e-10")
        .args(["check", "--kind", "disks", "--n", "60", "--queries", "20", "--seed", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["check", "--kind", "spheres", "--n", "5"]).status.code(), Some(2));
    let missing = path(dir.path(), "missing.jsonl");
    let out = path(dir.path(), "out.jsonl");
    assert_eq!(run(&["query", "--in", &missing, "--out", &out]).status.code(), Some(2));
    let bad = path(dir.path(), "bad.jsonl");
    fs::write(&bad, "{\"kind\":\"rects\",\"n\":2,\"seed\":0}\n{\"rect\":[0,1,0,1]}\n").unwrap();
    assert_eq!(run(&["query", "--in", &bad, "--out", &out]).status.code(), Some(2));
    assert_ne!(run(&["query", "--in", &bad, "--out", &out, "--engine", "--oracle"]).status.code(), Some(0));
}
