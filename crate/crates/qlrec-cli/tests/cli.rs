use std::process::{Command, Output};

use serde_json::Value;

fn qlrec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlrec")).args(args).output().expect("spawn")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn doc(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json")
}

#[test]
fn derive_symbolic() {
    let o = qlrec(&["derive", "--triples", "(0,-1),(0,0),(1,0)", "--json"]);
    assert_eq!(code(&o), 0);
    let d = doc(&o);
    assert_eq!(d["schema"], "qlattice-rec/1");
    assert_eq!(d["status"], "pass");
    assert_eq!(d["payload"]["A"].as_array().unwrap().len(), 3);
    assert_eq!(d["payload"]["normalization"], "k=1");
    assert_eq!(d["payload"]["residual_check"], true);
}

#[test]
fn derive_degenerate_and_malformed() {
    let o = qlrec(&["derive", "--triples", "(0,0),(0,0),(0,0)", "--json"]);
    assert_eq!(code(&o), 1);
    let d = doc(&o);
    assert_eq!(d["status"], "error");
    assert!(d["diagnostics"][0].as_str().unwrap().contains("degenerate"));
    assert_eq!(code(&qlrec(&["derive", "--triples", "(0,0),(0,0)"])), 2);
    assert_eq!(code(&qlrec(&["derive"])), 2);
    assert_eq!(code(&qlrec(&["derive", "--triples", "(0,0),(0,1),(1,1)", "--mode", "family"])), 2);
}

#[test]
fn derive_family_mode() {
    let o = qlrec(&["derive", "--triples", "(0,0),(0,1),(1,1)", "--mode", "family", "--family", "alsalam1", "--n", "3", "--json"]);
    assert_eq!(code(&o), 0);
    let d = doc(&o);
    let vars: Vec<&str> = d["payload"]["A"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|a| a["num"]["vars"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()))
        .collect();
    assert!(!vars.contains(&"u") && !vars.contains(&"f"));
}

#[test]
fn derive_writes_out_file() {
    let dir = std::env::temp_dir().join(format!("qlrec-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("rel.json");
    let o = qlrec(&["derive", "--triples", "(0,-1),(0,0),(1,0)", "--out", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["command"], "derive");
    assert!(String::from_utf8_lossy(&o.stdout).contains("status: pass"));
}

#[test]
fn eval_examples() {
    let v = |args: &[&str]| doc(&qlrec(args))["payload"]["value"].as_str().unwrap().to_owned();
    assert_eq!(v(&["eval", "--family", "alsalam1", "--n", "0", "--x", "1/2", "--q", "1/3", "--param", "a=2", "--json"]), "1/1");
    assert_eq!(v(&["eval", "--family", "alsalam1", "--n", "1", "--x", "1/2", "--q", "1/3", "--param", "a=2", "--json"]), "-5/2");
    // independent value from the basic hypergeometric representation
    let o = qlrec(&["eval", "--family", "big-q-jacobi", "--n", "3", "--x", "1", "--q", "2/5", "--param", "a=1/3,b=1/4,c=1/5", "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(doc(&o)["payload"]["value"], "581655897251/821234761363");
    let text = String::from_utf8(qlrec(&["eval", "--family", "alsalam1", "--n", "1", "--x", "1/2", "--q", "1/3", "--param", "a=2"]).stdout).unwrap();
    assert!(text.contains("-5/2") && text.contains("-2.5"));
}

#[test]
fn eval_bad_input() {
    assert_eq!(code(&qlrec(&["eval", "--family", "alsalam1", "--n", "1", "--x", "1/0", "--q", "1/3", "--param", "a=2"])), 2);
    assert_eq!(code(&qlrec(&["eval", "--family", "alsalam1", "--n", "1", "--x", "x", "--q", "1/3", "--param", "a=2"])), 2);
    assert_eq!(code(&qlrec(&["eval", "--family", "alsalam1", "--n", "1", "--x", "1", "--q", "1", "--param", "a=2"])), 2);
    assert_eq!(code(&qlrec(&["eval", "--family", "alsalam1", "--n", "1", "--x", "1", "--q", "1/2"])), 2);
    assert_eq!(code(&qlrec(&["eval", "--family", "nope", "--n", "1", "--x", "1", "--q", "1/2"])), 2);
}

#[test]
fn verify_usage_errors() {
    assert_eq!(code(&qlrec(&["verify", "--suite", "nope"])), 2);
    assert_eq!(code(&qlrec(&["verify", "--suite", "difeq", "--n-max", "0"])), 2);
    assert_eq!(code(&qlrec(&["bogus"])), 2);
}

#[test]
fn verify_is_byte_stable_and_thread_independent() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_qlrec"))
            .args(["verify", "--suite", "difeq", "--n-max", "4", "--json", "--seed", "5"])
            .env("QLREC_THREADS", threads)
            .output()
            .unwrap()
    };
    let a = run("1");
    let b = run("4");
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let d = doc(&a);
    let checks = d["payload"]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 3);
    assert!(checks.iter().all(|c| c["results"].as_array().unwrap().len() == 5));
}

#[test]
fn verify_with_fixed_parameters() {
    let o = qlrec(&["verify", "--suite", "difeq", "--n-max", "3", "--param", "a=2/7", "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(doc(&o)["payload"]["params"]["a"], "2/7");
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir().join(format!("qlrec-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("cfg.json");
    std::fs::write(&p, r#"{"family":"alsalam1","n":1,"x":"1/2","q":"1/3","params":{"a":"2"},"json":true}"#).unwrap();
    let o = qlrec(&["eval", "--config", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(doc(&o)["payload"]["value"], "-5/2");
    let o = qlrec(&["eval", "--config", p.to_str().unwrap(), "--n", "0"]);
    assert_eq!(doc(&o)["payload"]["value"], "1/1");
    std::fs::write(&p, "[1]").unwrap();
    assert_eq!(code(&qlrec(&["eval", "--config", p.to_str().unwrap()])), 2);
}
