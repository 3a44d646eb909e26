use nclogic::hilbert::{check_proof, soundness_harness, ProofFile};

const IDENTITY: &str = r#"{
    "lines": [
        {"formula": "p() -> ((p() -> p()) -> p())", "just": {"axiom": 1, "inst": {"phi": "p()", "psi": "p() -> p()"}}},
        {"formula": "(p() -> ((p() -> p()) -> p())) -> ((p() -> (p() -> p())) -> (p() -> p()))",
         "just": {"axiom": 2, "inst": {"phi": "p()", "psi": "p() -> p()", "chi": "p()"}}},
        {"formula": "(p() -> (p() -> p())) -> (p() -> p())", "just": {"mp": [0, 1]}},
        {"formula": "p() -> (p() -> p())", "just": {"axiom": 1, "inst": {"phi": "p()", "psi": "p()"}}},
        {"formula": "p() -> p()", "just": {"mp": [3, 2]}}
    ]
}"#;

fn load(text: &str) -> nclogic::hilbert::Proof {
    serde_json::from_str::<ProofFile>(text).unwrap().to_proof().unwrap()
}

#[test]
fn identity_proof_is_accepted() {
    let r = check_proof(&load(IDENTITY));
    assert!(r.accepted, "{r:?}");
    assert_eq!(r.lines_checked, 5);
    assert_eq!(r.conclusion.as_deref(), Some("p() -> p()"));
}

#[test]
fn tampered_proofs_are_rejected() {
    let bad_mp = IDENTITY.replace(r#""mp": [3, 2]"#, r#""mp": [2, 3]"#);
    let r = check_proof(&load(&bad_mp));
    assert!(!r.accepted);
    assert_eq!(r.error.unwrap().line, 4);

    let forward = IDENTITY.replace(r#""mp": [0, 1]"#, r#""mp": [0, 4]"#);
    assert_eq!(check_proof(&load(&forward)).error.unwrap().line, 2);

    let wrong_inst = IDENTITY.replacen(r#""psi": "p()"}"#, r#""psi": "q()"}"#, 1);
    assert_eq!(check_proof(&load(&wrong_inst)).error.unwrap().line, 3);
}

#[test]
fn generalization_side_condition() {
    let text = r#"{
        "hypotheses": ["R(x) -> S(x)"],
        "lines": [
            {"formula": "R(x) -> S(x)", "just": {"hyp": 0}},
            {"formula": "R(x) -> (forall x. S(x))", "just": {"gen_imp": 0}}
        ]
    }"#;
    let r = check_proof(&load(text));
    assert!(!r.accepted);
    assert_eq!(r.error.unwrap().line, 1);
}

#[test]
fn small_soundness_run() {
    let r = soundness_harness(60, 3, 7);
    assert!(r.passed(), "{:?}", r.counterexamples);
    assert_eq!(r.schemas.len(), 22);
    assert!(r.rules.iter().all(|s| s.applicable > 0));
}
