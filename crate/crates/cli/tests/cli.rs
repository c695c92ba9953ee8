use std::path::PathBuf;
use std::process::{Command, Output};

use hasse_core::pairs::{classify, PairJson, PairRecord};
use serde_json::Value;

fn modpoly_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/modpoly")
}

fn hasse(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hasse"))
        .arg("--modpoly-dir")
        .arg(modpoly_dir())
        .args(args)
        .env_remove("HASSE_MODPOLY_DIR")
        .output()
        .unwrap()
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).unwrap()
}

#[test]
fn classify_statuses() {
    for (q1, q2, e1, e2) in [
        ("3", "7", "supersingular", "ordinary"),
        ("256", "243", "empty", "empty"),
        ("49", "43", "empty", "ordinary"),
        ("16", "11", "empty", "ordinary"),
        ("8", "7", "empty", "supersingular"),
    ] {
        let out = hasse(&["classify", q1, q2]);
        assert_eq!(out.status.code(), Some(0));
        let v = &lines(&out)[0];
        assert_eq!((v["e1"]["status"].as_str(), v["e2"]["status"].as_str()), (Some(e1), Some(e2)), "{q1} {q2}");
    }
}

#[test]
fn classify_round_trips_and_keeps_key_order() {
    let out = hasse(&["classify", "625", "587"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let parsed: PairJson = serde_json::from_str(&text).unwrap();
    assert_eq!(PairRecord::try_from(&parsed).unwrap(), classify(625, 587).unwrap());
    let keys: Vec<String> = serde_json::from_str::<serde_json::Map<String, Value>>(&text)
        .unwrap()
        .keys()
        .cloned()
        .collect();
    let expected = [
        "q1", "q2", "p1", "a1", "p2", "a2", "t1", "t2", "delta", "conductor", "fundamental_discriminant", "e1", "e2",
        "table_cell", "splits",
    ];
    assert_eq!(keys, expected);
    assert!(text.find("\"q1\"").unwrap() < text.find("\"splits\"").unwrap());
}

#[test]
fn classify_with_curves() {
    let v = &lines(&hasse(&["classify", "4", "7", "--curves"]))[0];
    assert_eq!(v["e1"]["js"], serde_json::json!(["0"]));
    assert_eq!(v["e1"]["count"], 2);
    assert_eq!(v["e2"]["js"], serde_json::json!(["0", "2"]));
    let v = &lines(&hasse(&["classify", "587", "625", "--curves"]))[0];
    assert_eq!(v["e1"]["js"], serde_json::json!(["22", "203", "279", "354", "415", "427", "477", "576"]));
    assert_eq!(v["e2"]["count"], 8);
}

fn dot_sides(text: &str) -> Vec<(usize, Vec<String>)> {
    text.split("digraph G {")
        .skip(1)
        .map(|block| {
            let vertices = block.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count();
            let edges = block.lines().filter(|l| l.contains("->")).map(str::to_string).collect();
            (vertices, edges)
        })
        .collect()
}

#[test]
fn graph_dot_outputs() {
    let out = hasse(&["graph", "625", "587", "--degrees", "5,7,11"]);
    assert_eq!(out.status.code(), Some(0));
    let sides = dot_sides(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(sides.len(), 2);
    for (n, edges) in &sides {
        assert_eq!(*n, 8);
        assert!(edges.iter().all(|e| e.contains("dir=none")));
        let of = |c: &str| edges.iter().filter(|e| e.contains(&format!("color={c},"))).count();
        assert_eq!((of("blue"), of("red"), of("darkgreen")), (8, 8, 4));
    }
    let out = hasse(&["graph", "1021", "1069", "--degrees", "3,5"]);
    let sides = dot_sides(&String::from_utf8(out.stdout).unwrap());
    assert!(sides.iter().all(|(n, _)| *n == 13));
    let out = hasse(&["graph", "4", "7", "--degrees", "2"]);
    let sides = dot_sides(&String::from_utf8(out.stdout).unwrap());
    assert_eq!((sides[0].0, sides[1].0), (2, 2));
    assert_eq!(sides[1].1.len(), 3);
}

#[test]
fn graph_json_output() {
    let out = hasse(&["graph", "1021", "1069", "--degrees", "3,5", "--format", "json"]);
    let sides = lines(&out);
    assert_eq!(sides.len(), 2);
    for side in &sides {
        assert_eq!(side["vertices"].as_array().unwrap().len(), 13);
        let triple = side["edges"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|e| e["from"] == "0" && e["degree"] == 5 && e["mult"] == 3)
            .count();
        assert_eq!(triple, 2);
        let loop3 = side["edges"].as_array().unwrap().iter().filter(|e| e["from"] == "0" && e["to"] == "0" && e["degree"] == 3);
        assert_eq!(loop3.map(|e| e["mult"].as_u64().unwrap()).sum::<u64>(), 1);
    }
}

#[test]
fn graph_rejects_unsupported_supersingular() {
    let out = hasse(&["graph", "4", "7", "--degrees", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(lines(&out)[0]["type"], "unsupported");
}

#[test]
fn verify_iso_outcomes() {
    let out = hasse(&["verify-iso", "625", "587"]);
    assert_eq!(out.status.code(), Some(0));
    let v = &lines(&out)[0];
    assert_eq!(v["type"], "isomorphic");
    assert_eq!(v["bijection"].as_array().unwrap().len(), 8);
    let out = hasse(&["verify-iso", "22801", "22501", "--degrees", "3,17,19"]);
    assert_eq!(out.status.code(), Some(0));
    let out = hasse(&["verify-iso", "4", "7", "--allow-ss"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(lines(&out)[0]["type"], "non-isomorphic");
    let out = hasse(&["verify-iso", "4", "7"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(lines(&out)[0]["type"], "unsupported");
}

#[test]
fn search_empty_finds_one_pair() {
    let out = hasse(&["search-empty", "--max", "10000"]);
    assert_eq!(out.status.code(), Some(0));
    let v = lines(&out);
    assert_eq!(v.len(), 2);
    assert_eq!((v[0]["q1"].as_u64(), v[0]["q2"].as_u64()), (Some(243), Some(256)));
    assert_eq!(v[1]["type"], "summary");
    assert_eq!(v[1]["findings"], 1);
    assert!(v[1].get("wall_ms").is_none());
}

#[test]
fn andrica_and_partners() {
    let out = hasse(&["andrica", "--max", "1000000", "--over", "prime-powers"]);
    assert_eq!(out.status.code(), Some(0));
    let v = lines(&out);
    assert_eq!(v.last().unwrap()["violations"], 0);
    let out = hasse(&["partners", "--max", "200"]);
    assert_eq!(out.status.code(), Some(0));
    let v = lines(&out);
    let p101 = v.iter().find(|x| x["p"] == 101).unwrap();
    assert_eq!(p101["count"], 7);
    assert_eq!(v.last().unwrap()["primes"], 46);
}

#[test]
fn enumerate_filters_cells() {
    let out = hasse(&["enumerate", "--max", "300", "--filter", "ordinary-ordinary"]);
    let v = lines(&out);
    let (pairs, summary) = v.split_at(v.len() - 1);
    assert!(pairs.iter().all(|p| p["table_cell"] == "ordinary-ordinary"));
    assert!(pairs.iter().any(|p| p["q1"] == 5 && p["q2"] == 7));
    assert_eq!(summary[0]["emitted"].as_u64().unwrap() as usize, pairs.len());
}

#[test]
fn output_is_independent_of_jobs() {
    for args in [
        vec!["enumerate", "--max", "50000"],
        vec!["search-empty", "--max", "20000"],
        vec!["partners", "--max", "5000"],
        vec!["andrica", "--max", "100000"],
    ] {
        let runs: Vec<Vec<u8>> = ["1", "4", "4"]
            .iter()
            .map(|j| {
                let mut a = vec!["--jobs", j];
                a.extend(&args);
                hasse(&a).stdout
            })
            .collect();
        assert_eq!(runs[0], runs[1], "{args:?}");
        assert_eq!(runs[1], runs[2], "{args:?}");
    }
}

#[test]
fn timing_is_opt_in() {
    let v = lines(&hasse(&["--timing", "search-empty", "--max", "100"]));
    assert!(v.last().unwrap()["wall_ms"].is_u64());
}

#[test]
fn usage_errors_exit_two_with_json() {
    for args in [
        vec!["classify", "4", "4"],
        vec!["classify", "6", "7"],
        vec!["classify", "2", "100"],
        vec!["graph", "5", "7", "--degrees", "23"],
        vec!["bogus"],
        vec!["classify", "x", "7"],
        vec!["--jobs", "0", "classify", "3", "7"],
        vec!["enumerate", "--max", "100", "--filter", "odd-even"],
    ] {
        let out = hasse(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        let err = stderr_json(&out);
        assert_eq!(err["type"], "error");
        assert_eq!(err["kind"], "usage");
    }
}

#[test]
fn modpoly_directory_resolution() {
    let empty = tempfile::tempdir().unwrap();
    let run = |flag: Option<&std::path::Path>, env: Option<&std::path::Path>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_hasse"));
        cmd.current_dir(empty.path()).env_remove("HASSE_MODPOLY_DIR");
        if let Some(f) = flag {
            cmd.arg("--modpoly-dir").arg(f);
        }
        if let Some(e) = env {
            cmd.env("HASSE_MODPOLY_DIR", e);
        }
        cmd.args(["graph", "7", "4", "--degrees", "2"]).output().unwrap()
    };
    let missing = run(None, None);
    assert_eq!(missing.status.code(), Some(2));
    assert_eq!(stderr_json(&missing)["kind"], "environment");
    assert_eq!(run(None, Some(&modpoly_dir())).status.code(), Some(0));
    assert_eq!(run(Some(&modpoly_dir()), Some(empty.path())).status.code(), Some(0));
    assert_eq!(run(Some(empty.path()), Some(&modpoly_dir())).status.code(), Some(2));
}
