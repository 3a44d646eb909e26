use nclogic::formula::{parse, parse_open, Signature};
use nclogic::semantics::{consequence_bounded, eval, validity_bounded, Assignment, TFModel, TruthValue, Verdict, DEFAULT_BUDGET};

fn model() -> TFModel {
    serde_json::from_str(
        r#"{
            "domain": ["a", "b"],
            "constants": {"c": "a"},
            "relations": {
                "R": {"arity": 1, "pos": [["a"]], "neg": [["a"], ["b"]]},
                "p": {"arity": 0, "pos": [[]], "neg": []}
            },
            "eq_neg": [["a", "b"], ["b", "a"], ["b", "b"]]
        }"#,
    )
    .unwrap()
}

fn value(text: &str) -> TruthValue {
    let m = model();
    m.validate().unwrap();
    eval(&m, &parse(text, &m.signature()).unwrap(), &Assignment::new()).unwrap()
}

#[test]
fn values_in_a_fixed_model() {
    assert_eq!(value("bot"), TruthValue::ZERO);
    assert_eq!(value("R(c)"), TruthValue::BOTH);
    assert_eq!(value("exists x. R(x)"), TruthValue::BOTH);
    assert_eq!(value("forall x. R(x)"), TruthValue::ZERO);
    assert_eq!(value("p()"), TruthValue::ONE);
    assert_eq!(value("~p()"), TruthValue::ZERO);
    assert_eq!(value("R(c) -> bot"), TruthValue::ZERO);
    assert_eq!(value("?R(c)"), TruthValue::ZERO);
    assert_eq!(value("!R(c)"), TruthValue::ONE);
    assert_eq!(value("o R(c)"), TruthValue::ZERO);
    // b = b is true (identity) and false (listed in eq_neg); every instance
    // is also false, so the existential is both
    assert_eq!(value("exists x. (x = x & ~(x = x))"), TruthValue::BOTH);
    assert_eq!(value("exists x. !(x = x & ~(x = x))"), TruthValue::ONE);
    assert_eq!(value("c = c"), TruthValue::ONE);
}

#[test]
fn asymmetric_eq_neg_is_rejected() {
    let mut m = model();
    m.eq_neg.remove(&("b".to_string(), "a".to_string()));
    assert!(m.validate().is_err());
}

#[test]
fn bounded_consequence() {
    let sig = Signature::new().with_relation("p", 0).with_relation("q", 0);
    let f = |t: &str| parse(t, &sig).unwrap();
    let mp = consequence_bounded(&[f("p()"), f("p() -> q()")], &f("q()"), 1, &sig, DEFAULT_BUDGET).unwrap();
    assert!(mp.holds());
    // explosion fails for native negation
    let ex = consequence_bounded(&[f("p()"), f("~p()")], &f("q()"), 1, &sig, DEFAULT_BUDGET).unwrap();
    match ex {
        Verdict::Countermodel { model } => {
            let r = &model.relations["p"];
            assert!(!r.pos.is_empty() && !r.neg.is_empty());
        }
        v => panic!("{v:?}"),
    }
    // but holds for classical negation
    assert!(consequence_bounded(&[f("p()"), f("not p()")], &f("q()"), 1, &sig, DEFAULT_BUDGET).unwrap().holds());
}

#[test]
fn excluded_middle_has_a_gap_countermodel() {
    let (phi, sig) = parse_open("forall x. (R(x) | ~R(x))").unwrap();
    assert!(!validity_bounded(&phi, 2, &sig, DEFAULT_BUDGET).unwrap().holds());
    let (phi, sig) = parse_open("forall x. (R(x) | not R(x))").unwrap();
    assert!(validity_bounded(&phi, 2, &sig, DEFAULT_BUDGET).unwrap().holds());
}

#[test]
fn budget_is_enforced() {
    let (phi, sig) = parse_open("forall x. forall y. forall z. T(x, y, z) -> T(x, y, z)").unwrap();
    assert!(validity_bounded(&phi, 3, &sig, 1000).is_err());
}
