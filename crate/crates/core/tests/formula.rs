use std::collections::BTreeMap;

use proptest::prelude::*;

use nclogic::formula::{desugar, free_vars, parse, substitute, Formula, Signature, Term};
use nclogic::gen::{random_structure, stream_rng, FormulaGen};
use nclogic::semantics::{eval_structure, Assignment};

fn sig() -> Signature {
    Signature::new().with_relation("p", 0).with_relation("P", 1).with_relation("Q", 2).with_constant("c")
}

fn sugared() -> FormulaGen {
    FormulaGen { sugar: true, ..FormulaGen::new(&sig(), &["x", "y", "z"]) }
}

fn all_assignments(vars: &[String], size: usize) -> Vec<Assignment> {
    let names = nclogic::semantics::element_names(size);
    let mut out = vec![BTreeMap::new()];
    for v in vars {
        out = out
            .into_iter()
            .flat_map(|rho| {
                names.iter().map(move |a| {
                    let mut r = rho.clone();
                    r.insert(v.clone(), a.clone());
                    r
                })
            })
            .collect();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn render_then_parse_is_identity(seed in any::<u64>(), depth in 0usize..6) {
        let f = sugared().formula(&mut stream_rng(seed, 0), depth);
        let text = f.to_string();
        prop_assert_eq!(parse(&text, &sig()).unwrap(), f, "{}", text);
    }

    #[test]
    fn desugar_keeps_values(seed in any::<u64>(), size in 1usize..4) {
        let mut rng = stream_rng(seed, 1);
        let f = sugared().formula(&mut rng, 4);
        let d = desugar(&f);
        prop_assert!(d.is_primitive());
        let s = random_structure(&mut rng, &sig(), size);
        let fv: Vec<String> = free_vars(&f).into_iter().collect();
        for rho in all_assignments(&fv, size) {
            prop_assert_eq!(eval_structure(&s, &f, &rho).unwrap(), eval_structure(&s, &d, &rho).unwrap());
        }
    }

    // [[phi[t/x]]] under rho equals [[phi]] under rho with x sent to [[t]].
    #[test]
    fn substitution_lemma(seed in any::<u64>(), size in 1usize..4, target in 0usize..3) {
        let mut rng = stream_rng(seed, 2);
        let g = sugared();
        let f = g.formula(&mut rng, 4);
        let t = [Term::var("y"), Term::var("z"), Term::constant("c")][target].clone();
        let g_f = substitute(&f, "x", &t);
        let s = random_structure(&mut rng, &sig(), size);
        let mut vars: Vec<String> = free_vars(&f).union(&free_vars(&g_f)).cloned().collect();
        vars.retain(|v| v != "x");
        if let Term::Var(v) = &t {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        let m = s.to_tf();
        for rho in all_assignments(&vars, size) {
            let mut shifted = rho.clone();
            let val = match &t {
                Term::Var(v) => rho[v].clone(),
                Term::Const(c) => m.constants[c].clone(),
            };
            shifted.insert("x".into(), val);
            prop_assert_eq!(eval_structure(&s, &g_f, &rho).unwrap(), eval_structure(&s, &f, &shifted).unwrap(), "{} / {}", f, g_f);
        }
    }
}

#[test]
fn capture_is_avoided() {
    let (f, _) = nclogic::formula::parse_open("forall y. Q(x, y)").unwrap();
    let g = substitute(&f, "x", &Term::var("y"));
    match &g {
        Formula::Forall(b, _) => assert_ne!(b, "y"),
        other => panic!("{other}"),
    }
    assert!(free_vars(&g).contains("y"));
}

#[test]
fn malformed_input_is_an_error() {
    for bad in ["", "p(", "forall . p()", "x = ", "P(x) &", "in(x)", "P(x, y)"] {
        assert!(parse(bad, &sig()).is_err(), "{bad}");
    }
}
