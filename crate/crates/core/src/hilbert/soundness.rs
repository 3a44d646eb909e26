//! Randomized soundness harness: schema instances must be designated under
//! every assignment, and the rules must preserve designation.

use serde::Serialize;

use super::schema::{instantiate_schema, metavariables, Inst, Part, SCHEMA_COUNT};
use crate::formula::{free_vars, Formula, Signature, Term};
use crate::gen::{random_structure, stream_rng, FormulaGen};
use crate::par;
use crate::semantics::{assignments, Compiled, Structure};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchemaStats {
    pub schema: u8,
    pub instances: u64,
    pub assignments: u64,
    pub failures: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleStats {
    pub rule: &'static str,
    pub derivations: u64,
    /// Derivations whose premises held, so the conclusion was tested.
    pub applicable: u64,
    pub failures: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub what: String,
    pub formula: String,
    pub model: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SoundnessReport {
    pub trials: u64,
    pub max_model_size: usize,
    pub seed: u64,
    pub schemas: Vec<SchemaStats>,
    pub rules: Vec<RuleStats>,
    pub counterexamples: Vec<Counterexample>,
}

impl SoundnessReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Vocabulary of the random instances.
pub fn harness_signature() -> Signature {
    Signature::new().with_relation("p", 0).with_relation("P", 1).with_relation("Q", 2).with_constant("c")
}

const VARS: [&str; 3] = ["x", "y", "z"];
const DEPTH: usize = 3;

/// Values of `f` under every assignment of its free variables, as
/// (number of assignments, all designated).
fn valid_in(f: &Formula, s: &Structure) -> (u64, bool) {
    let fv = free_vars(f);
    let params: Vec<&str> = fv.iter().map(String::as_str).collect();
    let c = Compiled::new(f, s, &params).expect("harness formulas use the harness signature");
    let mut env = Vec::new();
    let mut n = 0;
    for args in assignments(s.size, params.len()) {
        n += 1;
        if !c.eval_in(s, &mut env, &args).is_true {
            return (n, false);
        }
    }
    (n, true)
}

fn random_inst(g: &FormulaGen, rng: &mut rand_chacha::ChaCha8Rng, id: u8) -> Inst {
    let mut inst = Inst::new();
    for &name in metavariables(id).expect("valid schema id") {
        let part = match name {
            "phi" | "psi" | "chi" => Part::Formula(g.formula(rng, DEPTH)),
            "x" if matches!(id, 11 | 12 | 14 | 20 | 21) => Part::Term(Term::Var(g.var(rng))),
            _ => Part::Term(g.term(rng)),
        };
        inst.insert(name.to_string(), part);
    }
    inst
}

fn describe(s: &Structure) -> String {
    serde_json::to_string(&s.to_tf()).unwrap_or_default()
}

/// Runs `trials` random instances per schema and `trials` random
/// applications per rule, over models of size `1..=max_size`.
pub fn soundness_harness(trials: u64, max_size: usize, seed: u64) -> SoundnessReport {
    let sig = harness_signature();
    let g = FormulaGen::new(&sig, &VARS);
    let max_size = max_size.clamp(1, 4);
    let mut counterexamples = Vec::new();

    let mut schemas = Vec::new();
    for id in 1..=SCHEMA_COUNT {
        let results = par::range_map(trials, |t| {
            let mut rng = stream_rng(seed, (id as u64) << 32 | t);
            let inst = random_inst(&g, &mut rng, id);
            let f = instantiate_schema(id, &inst).expect("all metavariables supplied");
            let size = rand::Rng::random_range(&mut rng, 1..=max_size);
            let s = random_structure(&mut rng, &sig, size);
            let (n, ok) = valid_in(&f, &s);
            (n, (!ok).then(|| Counterexample { what: format!("schema {id}"), formula: f.to_string(), model: describe(&s) }))
        });
        let mut st = SchemaStats { schema: id, instances: trials, assignments: 0, failures: 0 };
        for (n, cx) in results {
            st.assignments += n;
            if let Some(cx) = cx {
                st.failures += 1;
                counterexamples.push(cx);
            }
        }
        schemas.push(st);
    }

    let mut rules = Vec::new();
    for (r, name) in ["modus_ponens", "gen_imp", "gen_exists"].into_iter().enumerate() {
        let results = par::range_map(trials, |t| {
            let mut rng = stream_rng(seed, (100 + r as u64) << 32 | t);
            let size = rand::Rng::random_range(&mut rng, 1..=max_size);
            let s = random_structure(&mut rng, &sig, size);
            rule_trial(r, &g, &mut rng, &s)
        });
        let mut st = RuleStats { rule: name, derivations: trials, applicable: 0, failures: 0 };
        for res in results {
            match res {
                RuleOutcome::Vacuous => {}
                RuleOutcome::Held => st.applicable += 1,
                RuleOutcome::Failed(cx) => {
                    st.applicable += 1;
                    st.failures += 1;
                    counterexamples.push(cx);
                }
            }
        }
        rules.push(st);
    }
    SoundnessReport { trials, max_model_size: max_size, seed, schemas, rules, counterexamples }
}

enum RuleOutcome {
    Vacuous,
    Held,
    Failed(Counterexample),
}

/// Premise candidates are biased towards validity: half of the time the
/// consequent is a disjunction containing the antecedent.
fn rule_trial(rule: usize, g: &FormulaGen, rng: &mut rand_chacha::ChaCha8Rng, s: &Structure) -> RuleOutcome {
    use rand::Rng;
    let mut phi = g.formula(rng, DEPTH);
    let mut psi = g.formula(rng, DEPTH);
    let x = g.var(rng);
    // keep x out of the formula the side condition is about
    let fresh = Term::Var("w".into());
    match rule {
        1 => phi = crate::formula::substitute(&phi, &x, &fresh),
        2 => psi = crate::formula::substitute(&psi, &x, &fresh),
        _ => {}
    }
    if rng.random_bool(0.5) {
        match rule {
            2 => phi = Formula::and(psi.clone(), phi),
            _ => psi = Formula::or(phi.clone(), psi),
        }
    }
    let premise_imp = Formula::imp(phi.clone(), psi.clone());
    match rule {
        0 => {
            // pointwise: phi and phi -> psi designated under an assignment
            // force psi designated under it
            let fv = free_vars(&premise_imp);
            let params: Vec<&str> = fv.iter().map(String::as_str).collect();
            let (a, i, c) = (
                Compiled::new(&phi, s, &params).expect("harness signature"),
                Compiled::new(&premise_imp, s, &params).expect("harness signature"),
                Compiled::new(&psi, s, &params).expect("harness signature"),
            );
            let mut applicable = false;
            for args in assignments(s.size, params.len()) {
                if a.eval(s, &args).is_true && i.eval(s, &args).is_true {
                    applicable = true;
                    if !c.eval(s, &args).is_true {
                        return RuleOutcome::Failed(Counterexample {
                            what: "modus ponens".into(),
                            formula: premise_imp.to_string(),
                            model: describe(s),
                        });
                    }
                }
            }
            if applicable {
                RuleOutcome::Held
            } else {
                RuleOutcome::Vacuous
            }
        }
        _ => {
            // validity in the model is preserved
            if !valid_in(&premise_imp, s).1 {
                return RuleOutcome::Vacuous;
            }
            let concl = if rule == 1 {
                Formula::imp(phi, Formula::forall(x, psi))
            } else {
                Formula::imp(Formula::exists(x, phi), psi)
            };
            if valid_in(&concl, s).1 {
                RuleOutcome::Held
            } else {
                RuleOutcome::Failed(Counterexample {
                    what: if rule == 1 { "gen_imp" } else { "gen_exists" }.into(),
                    formula: concl.to_string(),
                    model: describe(s),
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_and_is_deterministic() {
        let a = soundness_harness(40, 3, 5);
        assert!(a.passed(), "{:?}", a.counterexamples);
        assert_eq!(a, soundness_harness(40, 3, 5));
        assert!(a.rules.iter().all(|r| r.applicable > 0), "{:?}", a.rules);
    }
}
