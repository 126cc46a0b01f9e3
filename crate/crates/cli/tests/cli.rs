use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_gradlab");

fn shipped(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../presentations")
        .join(name)
}

fn run_in(cache: &Path, args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env("GRADLAB_CACHE", cache)
        .env_remove("GRADLAB_MAX_COSETS")
        .env_remove("GRADLAB_SEED")
        .output()
        .expect("gradlab runs")
}

fn run(args: &[&str]) -> Output {
    let cache = tempfile::tempdir().unwrap();
    run_in(cache.path(), args)
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn normalized(levels: &Value) -> Vec<String> {
    levels
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l["normalized"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn h1_examples() {
    let a2 = shipped("a-squared.pres");
    let v = stdout_json(&run(&["h1", a2.to_str().unwrap(), "--integral"]));
    assert_eq!(v["free_rank"], 1);
    assert_eq!(v["torsion"], serde_json::json!([2]));

    let f2 = shipped("free2.pres");
    let v = stdout_json(&run(&["h1", f2.to_str().unwrap(), "--p", "2"]));
    assert_eq!(v["fp"]["2"], 2);

    let s = shipped("surface2.pres");
    let v = stdout_json(&run(&["h1", s.to_str().unwrap(), "--integral"]));
    assert_eq!(v["free_rank"], 4);

    // family names resolve too
    let v = stdout_json(&run(&["h1", "surface:2", "--integral"]));
    assert_eq!(v["free_rank"], 4);
}

#[test]
fn chain_examples() {
    let v = stdout_json(&run(&["chain", "free:2", "--p", "2", "--depth", "2"]));
    assert_eq!(normalized(&v["levels"]), ["2/1", "5/4", "129/128"]);
    assert_eq!(v["rg_estimate"]["value"], "129/128");

    let a2 = shipped("a-squared.pres");
    let v = stdout_json(&run(&["chain", a2.to_str().unwrap(), "--p", "2", "--depth", "1"]));
    assert_eq!(normalized(&v["levels"]), ["2/1", "3/4"]);

    let z = shipped("integers.pres");
    let v = stdout_json(&run(&["chain", z.to_str().unwrap(), "--p", "3", "--depth", "2"]));
    assert_eq!(normalized(&v["levels"]), ["1/1", "1/3", "1/9"]);
    assert!(v["levels"].as_array().unwrap().iter().all(|l| l["h1"] == 1));
}

#[test]
fn chain_truncates_at_cap() {
    let cache = tempfile::tempdir().unwrap();
    let out = Command::new(BIN)
        .args(["chain", "free:2", "--p", "2", "--depth", "3"])
        .env("GRADLAB_CACHE", cache.path())
        .env("GRADLAB_MAX_COSETS", "100")
        .output()
        .unwrap();
    let v = stdout_json(&out);
    assert_eq!(v["stop"], "truncated");
    assert_eq!(v["levels"].as_array().unwrap().len(), 2);
    assert_eq!(v["cap"], 100);
}

#[test]
fn lowindex_examples() {
    let v = stdout_json(&run(&["lowindex", "free:2", "--max-index", "3"]));
    assert_eq!(v["subgroups"].as_array().unwrap().len(), 17);
    assert_eq!(v["min_proper_normalized"], "4/3");

    let v = stdout_json(&run(&["lowindex", "free:2", "--max-index", "2", "--normal-only"]));
    let rows = v["subgroups"].as_array().unwrap();
    let proper: Vec<&Value> = rows.iter().filter(|r| r["index"] == 2).collect();
    assert_eq!(proper.len(), 3);
    assert!(proper.iter().all(|r| r["normalized"] == "3/2"));

    let z = shipped("integers.pres");
    let v = stdout_json(&run(&["lowindex", z.to_str().unwrap(), "--max-index", "4"]));
    assert_eq!(normalized(&v["subgroups"]), ["1/1", "1/2", "1/3", "1/4"]);
}

#[test]
fn certificates_and_finite() {
    let v = stdout_json(&run(&[
        "cert",
        "sp",
        "--d",
        "2",
        "--p",
        "2",
        "--exponents",
        "3,3",
    ]));
    assert_eq!(v["threshold"], "3/4");
    assert_eq!(v["pass"], true);

    let v = stdout_json(&run(&[
        "cert", "prop21", "--d", "2", "--g", "ab", "--p", "2", "--k", "2",
    ]));
    assert_eq!(v["threshold"], "3/4");
    assert_eq!(v["pass"], true);

    let v = stdout_json(&run(&[
        "finite",
        "sym:3",
        "--chop",
        "2",
        "--lemma32",
        "2",
        "--lemma31",
    ]));
    assert_eq!(v["order"], 6);
    assert_eq!(v["chop"]["dimensions"], serde_json::json!([1, 1, 2, 2]));
    assert_eq!(v["lemma32"]["pass"], true);
    assert_eq!(v["lemma31"].as_array().unwrap().len(), 6);
}

#[test]
fn check_prints_one_line_per_case() {
    let out = run(&["check", "--suite", "sp", "--jobs", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.iter().filter(|l| l.starts_with("PASS ")).count(), 4);
    assert!(lines.last().unwrap().ends_with(": pass"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code().unwrap();
    assert_eq!(code(&["h1", "no-such-file.pres", "--integral"]), 2);
    assert_eq!(code(&["check", "--suite", "nonsense"]), 2);
    assert_eq!(code(&["check", "--suite", "sp", "--corpus", "nonsense"]), 2);
    assert_eq!(code(&["finite", "sym:6", "--chop", "2"]), 3);
    assert_eq!(code(&["chain", "free:2", "--p", "4", "--depth", "1"]), 2);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.pres");
    std::fs::write(&bad, "gens: a b\nrel: a^2\nrel: (ab\n").unwrap();
    let out = run(&["h1", bad.to_str().unwrap(), "--integral"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn json_manifest_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = run(&[
        "chain",
        "free:2",
        "--p",
        "2",
        "--depth",
        "1",
        "--json",
        path.to_str().unwrap(),
    ]);
    let printed = stdout_json(&out);
    let m: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(m["command"], "chain");
    assert_eq!(m["parameters"]["depth"], 1);
    assert_eq!(m["payload"], printed);
    assert_eq!(m["payload_hash"].as_str().unwrap().len(), 64);
    assert_eq!(m["input_hash"].as_str().unwrap().len(), 64);
    assert!(m["timestamp"].as_u64().unwrap() > 0);
}

#[test]
fn manifests_reproduce_and_track_inputs() {
    let hash = |args: &[&str]| {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        let mut a = args.to_vec();
        a.extend(["--json", path.to_str().unwrap()]);
        assert!(run(&a).status.success());
        let m: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        (m["input_hash"].clone(), m["payload_hash"].clone())
    };
    let a = hash(&["lowindex", "free:2", "--max-index", "3"]);
    let b = hash(&["lowindex", "free:2", "--max-index", "3"]);
    assert_eq!(a, b);
    // the same group from a file and by name has the same normalized input
    let f2 = shipped("free2.pres");
    let c = hash(&["lowindex", f2.to_str().unwrap(), "--max-index", "3"]);
    assert_eq!(a, c);
    let d = hash(&["lowindex", "free:2", "--max-index", "2"]);
    assert_ne!(a.0, d.0);
}

#[test]
fn chain_resumes_from_cache() {
    let cache = tempfile::tempdir().unwrap();
    let shallow = stdout_json(&run_in(
        cache.path(),
        &["chain", "sp:2,2,3,3", "--p", "2", "--depth", "1"],
    ));
    let entries = std::fs::read_dir(cache.path().join("chains")).unwrap().count();
    assert_eq!(entries, 1);
    let deep = stdout_json(&run_in(
        cache.path(),
        &["chain", "sp:2,2,3,3", "--p", "2", "--depth", "2"],
    ));
    let fresh = stdout_json(&run(&[
        "--no-cache",
        "chain",
        "sp:2,2,3,3",
        "--p",
        "2",
        "--depth",
        "2",
    ]));
    assert_eq!(deep, fresh);
    assert_eq!(
        normalized(&deep["levels"])[..2],
        normalized(&shallow["levels"])[..]
    );
    // a shallower request after a deeper one is served from the prefix
    let again = stdout_json(&run_in(
        cache.path(),
        &["chain", "sp:2,2,3,3", "--p", "2", "--depth", "1"],
    ));
    assert_eq!(again, shallow);

    // a corrupt entry is ignored rather than trusted
    for e in std::fs::read_dir(cache.path().join("chains")).unwrap() {
        std::fs::write(e.unwrap().path(), "{\"levels\": 7}").unwrap();
    }
    let after = stdout_json(&run_in(
        cache.path(),
        &["chain", "sp:2,2,3,3", "--p", "2", "--depth", "2"],
    ));
    assert_eq!(after, fresh);
}

#[test]
fn no_cache_writes_nothing() {
    let cache = tempfile::tempdir().unwrap();
    let out = run_in(cache.path(), &["--no-cache", "h1", "free:2", "--integral"]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_dir(cache.path()).unwrap().count(), 0);
    let out = run_in(cache.path(), &["h1", "free:2", "--integral"]);
    assert!(out.status.success());
    assert!(cache.path().join("manifests").is_dir());
}
