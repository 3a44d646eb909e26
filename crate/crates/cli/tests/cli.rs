use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn nclogic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nclogic")).args(args).env_remove("NCLOGIC_BUDGET").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn file(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

const MODEL: &str = r#"{
    "domain": ["a", "b"],
    "relations": {"R": {"arity": 1, "pos": [["a"]], "neg": [["a"]]}},
    "eq_neg": [["a", "b"], ["b", "a"]]
}"#;

#[test]
fn table_and() {
    let o = nclogic(&["table", "and"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row_b: Vec<&str> = text.lines().find(|l| l.trim_start().starts_with("b |")).unwrap().split_whitespace().collect();
    // columns 1, b, n, 0 follow "b |"
    assert_eq!(&row_b[2..], ["b", "b", "0", "0"]);
}

#[test]
fn table_bang_json() {
    let o = nclogic(&["table", "bang", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let col: Vec<&str> = v["rows"].as_array().unwrap().iter().map(|r| r[0].as_str().unwrap()).collect();
    assert_eq!(col, ["1", "1", "0", "0"]);
}

#[test]
fn unknown_connective_is_a_usage_error() {
    let o = nclogic(&["table", "xor"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("xor"));
}

#[test]
fn eval_values() {
    let m = file(MODEL);
    let path = m.path().to_str().unwrap();
    for (phi, want) in [("bot", "0"), ("exists x. R(x)", "1"), ("forall x. R(x)", "0"), ("R(y)", "n")] {
        let o = nclogic(&["eval", path, phi, "--assign", "y=b"]);
        assert_eq!(o.status.code(), Some(0), "{phi}");
        assert_eq!(stdout(&o).trim(), want, "{phi}");
    }
    let o = nclogic(&["eval", path, "R(y)", "-a", "y=a"]);
    assert_eq!(stdout(&o).trim(), "b");
    let o = nclogic(&["eval", path, "forall x. (R(x) <-> !R(x))"]);
    // designated but not classical: the instance at a is b
    assert_eq!(stdout(&o).trim(), "b");
}

#[test]
fn eval_input_errors() {
    let m = file(MODEL);
    let path = m.path().to_str().unwrap();
    for args in [
        vec!["eval", path, "R(x"],
        vec!["eval", path, "R(x)"],
        vec!["eval", path, "Q(a)"],
        vec!["eval", "/nonexistent/model.json", "bot"],
    ] {
        assert_eq!(nclogic(&args).status.code(), Some(2), "{args:?}");
    }
    let broken = file("{\"domain\": [\"a\"], \"eq_neg\": [[\"a\", \"b\"]]}");
    assert_eq!(nclogic(&["eval", broken.path().to_str().unwrap(), "bot"]).status.code(), Some(2));
    let garbage = file("not json");
    assert_eq!(nclogic(&["eval", garbage.path().to_str().unwrap(), "bot"]).status.code(), Some(2));
}

#[test]
fn check_proof_exit_codes() {
    let good = file(
        r#"{"lines": [
            {"formula": "p() -> (q() -> p())", "just": {"axiom": 1, "inst": {"phi": "p()", "psi": "q()"}}}
        ]}"#,
    );
    let o = nclogic(&["check-proof", good.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("accepted"));
    let bad = file(
        r#"{"lines": [
            {"formula": "q() -> (q() -> p())", "just": {"axiom": 1, "inst": {"phi": "p()", "psi": "q()"}}}
        ]}"#,
    );
    let o = nclogic(&["check-proof", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("line 0"));
}

#[test]
fn consequence_verdicts() {
    let o = nclogic(&["consequence", "q()", "-p", "p()", "-p", "p() -> q()", "--max-size", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let o = nclogic(&["consequence", "q()", "-p", "p()", "-p", "~p()", "--max-size", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "countermodel");
    let o = nclogic(&["consequence", "R(x)", "--max-size", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_nclogic"))
        .args(["consequence", "forall x. forall y. S(x, y) -> S(x, y)", "--max-size", "2"])
        .env("NCLOGIC_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn universe_commands() {
    assert_eq!(stdout(&nclogic(&["universe", "level", "3", "--count"])).trim(), "256");
    assert_eq!(stdout(&nclogic(&["universe", "level", "2"])).lines().count(), 4);
    assert_eq!(nclogic(&["universe", "level", "9"]).status.code(), Some(2));

    let omega = stdout(&nclogic(&["universe", "omega"]));
    let mut names: Vec<&str> = omega.lines().map(|l| l.split_whitespace().next().unwrap()).collect();
    names.sort();
    assert_eq!(names, ["0", "1", "b", "n"]);

    let o = nclogic(&["universe", "inspect", "<[<[],[]>],[]>", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["consistent"], false);
    assert_eq!(v["complete"], true);
    assert_eq!(v["realm"], "<[<[],[]>],[<[],[]>]>");
    assert_eq!(nclogic(&["universe", "inspect", "<[],"]).status.code(), Some(2));

    let o = nclogic(&["universe", "acla", "<[<[],[]>],[<[],[]>]>", "<[],[]>"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "<[<[],[]>],[]>");

    assert_eq!(nclogic(&["universe", "axiom", "pairing"]).status.code(), Some(0));
    assert_eq!(nclogic(&["universe", "axiom", "choice"]).status.code(), Some(2));
}

#[test]
fn embed_and_tarski() {
    assert_eq!(nclogic(&["embed", "check", "--level", "3"]).status.code(), Some(0));
    assert_eq!(nclogic(&["embed", "hat", "--level", "7"]).status.code(), Some(2));

    let m = file(MODEL);
    let o = nclogic(&["tarski", "from-tf", m.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let fv = file(&stdout(&o));
    let back = nclogic(&["tarski", "to-tf", fv.path().to_str().unwrap()]);
    let a: serde_json::Value = serde_json::from_str(MODEL).unwrap();
    let b: serde_json::Value = serde_json::from_slice(&back.stdout).unwrap();
    assert_eq!(a["relations"], b["relations"]);
    assert_eq!(a["eq_neg"], b["eq_neg"]);
    let o = nclogic(&["tarski", "value", fv.path().to_str().unwrap(), "forall x. R(x)"]);
    assert_eq!(stdout(&o).trim(), "0");

    let o = nclogic(&["tarski", "classify", "p() | ~p()", "--class", "CompleteOnly"]);
    assert_eq!(o.status.code(), Some(0));
    let o = nclogic(&["tarski", "classify", "p() | ~p()", "--class", "ConsistentOnly"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(nclogic(&["tarski", "classify", "p()", "--class", "Weird"]).status.code(), Some(2));
}

#[test]
fn verify_all_subset_is_deterministic() {
    let a = nclogic(&["verify-all", "--only", "1,2,4,10", "--format", "json", "--seed", "3"]);
    let b = nclogic(&["verify-all", "--only", "1,2,4,10", "--format", "json", "--seed", "3", "--jobs", "1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(nclogic(&["verify-all", "--only", "12"]).status.code(), Some(2));
}
