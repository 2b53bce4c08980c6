use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(id: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus", &format!("{id}.json")]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn jordan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jordan"))
        .args(args)
        .env_remove("JORDAN_BUDGET")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

#[test]
fn rj_holds_on_e2() {
    let o = jordan(&["--json", "check", "--property", "rj", &corpus("e2_f3")]);
    assert_eq!(code(&o), 0);
    let j = json(&o);
    assert_eq!(j["outcome"], "holds");
    assert_eq!(j["mode"], "exhaustive");
    assert_eq!(j["idempotent_map"].as_array().unwrap().len(), 9);
}

#[test]
fn rj_fails_on_m3_with_a_verifiable_witness() {
    let o = jordan(&["--json", "check", "--property", "rj", &corpus("m3_f3")]);
    assert_eq!(code(&o), 1);
    let j = json(&o);
    assert_eq!(j["outcome"], "fails");
    assert_eq!(j["witness"]["kind"], "no_idempotent_for_element");

    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.json");
    std::fs::write(&w, &o.stdout).unwrap();
    let v = jordan(&["check", &corpus("m3_f3"), "--verify-witness", w.to_str().unwrap()]);
    assert_eq!(code(&v), 0, "{}", String::from_utf8_lossy(&v.stdout));
}

#[test]
fn bj_over_rationals_is_three_valued() {
    let o = jordan(&["--json", "check", "--property", "bj", &corpus("e2_q")]);
    let j = json(&o);
    assert!(["unknown", "holds"].contains(&j["outcome"].as_str().unwrap()));
    assert_eq!(j["mode"], "symbolic");
    assert!(!j["method"].as_str().unwrap().is_empty());
    assert_eq!(code(&o), if j["outcome"] == "holds" { 0 } else { 2 });
}

#[test]
fn bj_routes_agree() {
    for id in ["e2_f3", "nu_3_f3", "m2_f3"] {
        let direct = json(&jordan(&["--json", "check", "--property", "bj", &corpus(id)]));
        let lattice = json(&jordan(&["--json", "check", "--property", "bj", "--route", "lattice", &corpus(id)]));
        assert_eq!(direct["outcome"], lattice["outcome"], "{id}");
        assert_eq!(lattice["method"], "lattice");
    }
}

#[test]
fn every_printed_witness_reverifies() {
    let dir = tempfile::tempdir().unwrap();
    let ids = ["e2_f3", "e2_f5", "e3_2_f3", "nu_2_f3", "nu_3_f3", "m2_f3", "m2_f5", "h2_f3", "h2_f5", "seq2_h2_f3"];
    for id in ids {
        for p in ["rj", "bj", "rickart", "baer", "nondeg", "quad-nondeg", "nil-sqrt"] {
            let o = jordan(&["--json", "check", "--property", p, &corpus(id)]);
            let j = json(&o);
            if j.get("witness").is_none() && j.get("idempotent_map").is_none() {
                continue;
            }
            let w = dir.path().join(format!("{id}-{p}.json"));
            std::fs::write(&w, &o.stdout).unwrap();
            let v = jordan(&["--json", "check", &corpus(id), "--verify-witness", w.to_str().unwrap()]);
            assert_eq!(code(&v), 0, "{id} {p}: {}", String::from_utf8_lossy(&v.stdout));
            assert_eq!(json(&v)["verified"], true);
        }
    }
}

#[test]
fn tampered_witness_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.json");
    std::fs::write(&w, r#"{"kind":"trivial_element","z":["0","1"]}"#).unwrap();
    assert_eq!(code(&jordan(&["check", &corpus("e2_f3"), "--verify-witness", w.to_str().unwrap()])), 0);
    std::fs::write(&w, r#"{"kind":"trivial_element","z":["1","0"]}"#).unwrap();
    assert_eq!(code(&jordan(&["check", &corpus("e2_f3"), "--verify-witness", w.to_str().unwrap()])), 1);
    std::fs::write(&w, r#"{"kind":"trivial_element","z":["1"]}"#).unwrap();
    assert_eq!(code(&jordan(&["check", &corpus("e2_f3"), "--verify-witness", w.to_str().unwrap()])), 3);
}

#[test]
fn json_is_byte_stable_across_thread_counts() {
    for args in [
        vec!["check", "--property", "bj", &corpus("m2_f5")],
        vec!["lattice", &corpus("m2_f3")],
        vec!["radical", "--kind", "rad", &corpus("e3_2_f3")],
        vec!["corpus", "run", "--filter", "e2-f3"],
    ] {
        let mut one = vec!["--json", "--threads", "1"];
        one.extend(&args);
        let mut four = vec!["--json", "--threads", "4"];
        four.extend(&args);
        let a = jordan(&one);
        let b = jordan(&four);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stdout, jordan(&one).stdout);
    }
}

#[test]
fn usage_and_input_errors_exit_3() {
    assert_eq!(code(&jordan(&["check", "--property", "xx", &corpus("e2_f3")])), 3);
    assert_eq!(code(&jordan(&["check", &corpus("e2_f3")])), 3);
    assert_eq!(code(&jordan(&["frobnicate"])), 3);
    let missing = jordan(&["info", "no/such/file.json"]);
    assert_eq!(code(&missing), 3);
    assert!(String::from_utf8_lossy(&missing.stderr).contains("no/such/file.json"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"name":"x","field":{"kind":"Q"},"dim":1,"basis":["a"],"products":[{"i":0,"j":0,"v":[["1",1]]}]}"#)
        .unwrap();
    let o = jordan(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("products[0]"));

    assert_eq!(code(&jordan(&["--mode", "exhaustive", "check", "--property", "rj", &corpus("e2_q")])), 3);
    assert_eq!(code(&jordan(&["--help"])), 0);
}

#[test]
fn budget_flag_and_environment() {
    let small = jordan(&["--json", "--budget", "10", "check", "--property", "rj", &corpus("m2_f3")]);
    assert_eq!(json(&small)["mode"], "symbolic");
    let env = Command::new(env!("CARGO_BIN_EXE_jordan"))
        .args(["--json", "check", "--property", "rj", &corpus("m2_f3")])
        .env("JORDAN_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(json(&env)["budget"], 10);
    let flag_wins = Command::new(env!("CARGO_BIN_EXE_jordan"))
        .args(["--json", "--budget", "1000", "check", "--property", "rj", &corpus("m2_f3")])
        .env("JORDAN_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(json(&flag_wins)["mode"], "exhaustive");
    let garbage = Command::new(env!("CARGO_BIN_EXE_jordan"))
        .args(["info", &corpus("e2_f3")])
        .env("JORDAN_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(code(&garbage), 3);
}

#[test]
fn validate_info_and_structure_commands() {
    let v = jordan(&["--json", "validate", &corpus("m3_f3")]);
    assert_eq!(code(&v), 0);
    assert_eq!(json(&v)["valid"], true);

    let i = json(&jordan(&["--json", "info", &corpus("nu_2_f3")]));
    assert_eq!(i["idempotents"], 1);
    assert_eq!(i["squares_span"]["dim"], 0);
    assert!(i.get("unit").is_none());

    let r = jordan(&["--json", "radical", "--kind", "nil", &corpus("e2_f3")]);
    assert_eq!(code(&r), 0);
    assert_eq!(json(&r)["subspace"]["basis"], serde_json::json!([["0", "1"]]));

    let l = json(&jordan(&["--json", "lattice", &corpus("e2_f3")]));
    assert_eq!(l["elements"], serde_json::json!([["0", "0"], ["1", "0"]]));
    assert_eq!(l["complete"], true);

    let p = jordan(&["--json", "peirce", &corpus("m2_f3"), "--idempotent", "1,0,0,0"]);
    let p = json(&p);
    assert_eq!(
        [&p["one"]["dim"], &p["half"]["dim"], &p["zero"]["dim"]],
        [&Value::from(1), &Value::from(2), &Value::from(1)]
    );
    assert_eq!(code(&jordan(&["peirce", &corpus("m2_f3"), "--idempotent", "0,1,0,0"])), 3);

    let a = json(&jordan(&["--json", "annihilator", &corpus("e2_f3"), "--element", "1,0"]));
    assert_eq!(a["subspace"]["dim"], 0);
    assert_eq!(a["matching_idempotent"], serde_json::json!(["0", "0"]));

    let neg = json(&jordan(&["--json", "annihilator", &corpus("e2_f3"), "--element", "-2,3"]));
    assert_eq!(neg, a);
}

#[test]
fn random_generation_is_seeded() {
    let a = jordan(&["random", "--seed", "0"]);
    let b = jordan(&["random", "--seed", "0"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("r.json");
    assert_eq!(code(&jordan(&["random", "--seed", "0", "-o", f.to_str().unwrap()])), 0);
    assert_eq!(std::fs::read(&f).unwrap(), a.stdout);
    assert_eq!(code(&jordan(&["validate", f.to_str().unwrap()])), 0);
}

#[test]
fn corpus_commands() {
    let run = jordan(&["--json", "corpus", "run", "--filter", "nilpotent-square-root"]);
    assert_eq!(code(&run), 0);
    let j = json(&run);
    let ids: Vec<&str> = j["claims"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert!(!ids.is_empty());
    assert!(ids.iter().all(|id| id.starts_with("m3-")));

    let list = json(&jordan(&["--json", "corpus", "list"]));
    assert!(list["algebras"].as_array().unwrap().iter().any(|e| e["id"] == "h3_oct_q"));

    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&jordan(&["corpus", "export", dir.path().to_str().unwrap()])), 0);
    for e in list["algebras"].as_array().unwrap() {
        let id = e["id"].as_str().unwrap();
        let exported = std::fs::read_to_string(dir.path().join(format!("{id}.json"))).unwrap();
        assert_eq!(exported, std::fs::read_to_string(corpus(id)).unwrap(), "{id}");
    }
}
