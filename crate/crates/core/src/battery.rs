//! The acceptance batteries, one function per criterion, and the aggregate
//! report behind `verify-all`.
//!
//! Reports carry counts and verdicts only, never timings, so two runs with
//! the same seed serialize to the same bytes.

use serde::Serialize;
use serde_json::{json, Value};

use crate::formula::{free_vars, substitute, Formula, Signature, Term};
use crate::gen::{random_structure, stream_rng, FormulaGen};
use crate::hilbert::soundness_harness;
use crate::interp::{verify_check_iso, verify_hat_iso, verify_hclw_equals_vcheck, verify_w_relativized_to_hcl};
use crate::par;
use crate::semantics::{assignments, truth_table, Compiled, Connective, ModelSpace, Restriction, Structure, TruthValue};
use crate::tarski::{separation_matrix, sweep};
use crate::universe::{
    tiny_classical_sets, verify_acla_pairs, verify_all_axioms, verify_extension_laws, verify_omega,
    verify_structure_laws, w2_classical_sets, Universe,
};

/// Outcome of one criterion.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub summary: String,
    pub details: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FullReport {
    pub seed: u64,
    pub budget: u64,
    pub passed: bool,
    pub criteria: Vec<CriterionReport>,
}

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "truth tables"),
    (2, "provable statements"),
    (3, "calculus soundness"),
    (4, "W level sizes"),
    (5, "axioms and laws over W_3"),
    (6, "ACLA construction"),
    (7, "Omega and truth values"),
    (8, "interpretability"),
    (9, "Tarski / T-F sweep"),
    (10, "class separation"),
];

/// Runs criterion `id` (1 to 10).
pub fn run_criterion(id: u8, seed: u64, budget: u64) -> Option<CriterionReport> {
    Some(match id {
        1 => truth_tables(),
        2 => provable_statements(seed),
        3 => soundness(seed),
        4 => level_sizes(),
        5 => axioms_and_laws(),
        6 => acla(),
        7 => omega(seed),
        8 => interpretability(),
        9 => tarski_sweep(budget),
        10 => separation(budget),
        _ => return None,
    })
}

pub fn verify_all(seed: u64, budget: u64) -> FullReport {
    let criteria: Vec<CriterionReport> =
        CRITERIA.iter().map(|&(id, _)| run_criterion(id, seed, budget).expect("known id")).collect();
    FullReport { seed, budget, passed: criteria.iter().all(|c| c.passed), criteria }
}

fn report(id: u8, passed: bool, summary: String, details: Value) -> CriterionReport {
    let name = CRITERIA[id as usize - 1].1;
    CriterionReport { id, name, passed, summary, details }
}

// Transcribed tables, rows and columns in the order 1, b, n, 0.

const O: TruthValue = TruthValue::ONE;
const B: TruthValue = TruthValue::BOTH;
const N: TruthValue = TruthValue::NEITHER;
const Z: TruthValue = TruthValue::ZERO;

const EXPECTED_BINARY: [(Connective, [[TruthValue; 4]; 4]); 4] = [
    (Connective::And, [[O, B, N, Z], [B, B, Z, Z], [N, Z, N, Z], [Z, Z, Z, Z]]),
    (Connective::Or, [[O, O, O, O], [O, B, O, B], [O, O, N, N], [O, B, N, Z]]),
    (Connective::Imp, [[O, B, N, Z], [O, B, N, Z], [O, O, O, O], [O, O, O, O]]),
    (Connective::Iff, [[O, B, N, Z], [B, B, N, Z], [N, N, O, O], [Z, Z, O, O]]),
];

const EXPECTED_UNARY_FIRST: (Connective, [TruthValue; 4]) = (Connective::Neg, [Z, B, N, O]);

const EXPECTED_UNARY_SECOND: [(Connective, [TruthValue; 4]); 4] = [
    (Connective::Neg, [Z, B, N, O]),
    (Connective::ClassNeg, [Z, Z, O, O]),
    (Connective::Bang, [O, O, Z, Z]),
    (Connective::Quest, [O, Z, O, Z]),
];

pub fn truth_tables() -> CriterionReport {
    let mut entries = 0u64;
    let mut mismatches = Vec::new();
    let mut unary = |c: Connective, want: &[TruthValue; 4]| {
        let t = truth_table(c);
        for (a, w) in TruthValue::ALL.iter().zip(want) {
            entries += 1;
            let got = t.get(*a, None);
            if got != *w {
                mismatches.push(format!("{} {a}: got {got}, expected {w}", c.symbol()));
            }
        }
    };
    unary(EXPECTED_UNARY_FIRST.0, &EXPECTED_UNARY_FIRST.1);
    for (c, want) in &EXPECTED_UNARY_SECOND {
        unary(*c, want);
    }
    for (c, want) in &EXPECTED_BINARY {
        let t = truth_table(*c);
        for (i, a) in TruthValue::ALL.iter().enumerate() {
            for (j, b) in TruthValue::ALL.iter().enumerate() {
                entries += 1;
                let got = t.get(*a, Some(*b));
                if got != want[i][j] {
                    mismatches.push(format!("{a} {} {b}: got {got}, expected {}", c.symbol(), want[i][j]));
                }
            }
        }
    }
    let summary = format!("{entries} entries, {} mismatches", mismatches.len());
    report(1, mismatches.is_empty(), summary, json!({ "entries": entries, "mismatches": mismatches }))
}

/// The six statements as functions of their formula arguments. `phi_y` is
/// `phi` with `y` put for `x` and only matters for the third.
fn statements(phi: &Formula, psi: &Formula, phi_y: &Formula) -> [Formula; 6] {
    let (p, q) = (phi.clone(), psi.clone());
    let eq = Formula::eq(Term::var("x"), Term::var("y"));
    [
        Formula::iff(p.clone(), Formula::bang(p.clone())),
        Formula::iff(Formula::neg(p.clone()), Formula::neg(Formula::quest(p.clone()))),
        Formula::imp(eq, Formula::strong_iff(p.clone(), phi_y.clone())),
        Formula::imp(
            Formula::circ(p.clone()),
            Formula::and(
                Formula::strong_iff(p.clone(), Formula::bang(p.clone())),
                Formula::strong_iff(p.clone(), Formula::quest(p.clone())),
            ),
        ),
        Formula::imp(Formula::circ(p.clone()), Formula::strong_iff(Formula::neg(p.clone()), Formula::class_neg(p.clone()))),
        Formula::imp(
            Formula::and(Formula::circ(p.clone()), Formula::circ(q.clone())),
            Formula::strong_iff(Formula::imp(p.clone(), q.clone()), Formula::strong_imp(p, q)),
        ),
    ]
}

/// Number of assignments tried, and the first failing one if any.
fn designated_everywhere(f: &Formula, s: &Structure) -> (u64, Option<Vec<usize>>) {
    let fv = free_vars(f);
    let params: Vec<&str> = fv.iter().map(String::as_str).collect();
    let c = Compiled::new(f, s, &params).expect("battery formulas fit the signature");
    let mut env = Vec::new();
    let mut n = 0;
    for args in assignments(s.size, params.len()) {
        n += 1;
        if !c.eval_in(s, &mut env, &args).is_true {
            return (n, Some(args));
        }
    }
    (n, None)
}

pub const STATEMENT_SAMPLES: u64 = 500;
const MODELS_PER_SAMPLE: u64 = 4;

pub fn provable_statements(seed: u64) -> CriterionReport {
    let mut failures: Vec<String> = Vec::new();
    let mut checks = [0u64; 3];

    // Propositional: every valuation of p and q.
    let props = Signature::new().with_relation("p", 0).with_relation("q", 0);
    let (p, q) = (Formula::prop("p"), Formula::prop("q"));
    let prop_space = ModelSpace::new(&props, 1, Restriction::default()).expect("tiny space");
    for (k, f) in statements(&p, &q, &p).iter().enumerate() {
        for i in 0..prop_space.count().unwrap_or(0) {
            let s = prop_space.model(i);
            checks[0] += 1;
            if let (_, Some(_)) = designated_everywhere(f, &s) {
                failures.push(format!("statement {} propositional: {}", k + 1, serde_json::to_string(&s.to_tf()).unwrap_or_default()));
            }
        }
    }

    // Atomic first-order instances over every model of size at most 2.
    let sig = Signature::new().with_relation("R", 1).with_relation("S", 2);
    let r = |v: &str| Formula::atom("R", vec![Term::var(v)]);
    let sxy = Formula::atom("S", vec![Term::var("x"), Term::var("y")]);
    let atomic = statements(&r("x"), &sxy, &r("y"));
    let mut atomic_models = 0u64;
    for size in 1..=2 {
        let space = ModelSpace::new(&sig, size, Restriction::default()).expect("small space");
        let n = space.count().unwrap_or(0) as u64;
        atomic_models += n;
        let bad = par::range_map(n, |i| {
            let s = space.model(i as u128);
            atomic.iter().enumerate().filter(|(_, f)| designated_everywhere(f, &s).1.is_some()).map(|(k, _)| k + 1).next()
        });
        checks[1] += n * atomic.len() as u64;
        for (i, k) in bad.iter().enumerate() {
            if let Some(k) = k {
                failures.push(format!("statement {k} atomic, model {i} of size {size}"));
            }
        }
    }

    // Sampled instantiations: random phi, psi over R and S, each checked in
    // a few random models of size at most 3 under every assignment.
    let gen = FormulaGen::new(&sig, &["x", "y", "z"]);
    let rows = par::range_map(STATEMENT_SAMPLES, |t| {
        let mut rng = stream_rng(seed, t);
        let phi = gen.formula(&mut rng, 3);
        let psi = gen.formula(&mut rng, 3);
        let phi_y = substitute(&phi, "x", &Term::var("y"));
        let fs = statements(&phi, &psi, &phi_y);
        let mut n = 0u64;
        let mut bad = Vec::new();
        for _ in 0..MODELS_PER_SAMPLE {
            let size = rand::Rng::random_range(&mut rng, 1..=3);
            let s = random_structure(&mut rng, &sig, size);
            for (k, f) in fs.iter().enumerate() {
                n += 1;
                if designated_everywhere(f, &s).1.is_some() {
                    bad.push(format!("statement {} sample {t}: {f}", k + 1));
                }
            }
        }
        (n, bad)
    });
    for (n, bad) in rows {
        checks[2] += n;
        failures.extend(bad);
    }

    let total = checks.iter().sum::<u64>();
    let summary = format!("{total} (statement, model) checks, {} failures", failures.len());
    failures.truncate(10);
    report(
        2,
        failures.is_empty(),
        summary,
        json!({
            "propositional_checks": checks[0],
            "atomic_models": atomic_models,
            "atomic_checks": checks[1],
            "samples": STATEMENT_SAMPLES,
            "sampled_checks": checks[2],
            "failures": failures,
        }),
    )
}

pub fn soundness(seed: u64) -> CriterionReport {
    let r = soundness_harness(1000, 4, seed);
    let instances: u64 = r.schemas.iter().map(|s| s.instances).sum();
    let derivations: u64 = r.rules.iter().map(|s| s.derivations).sum();
    let summary = format!(
        "{} schemas, {instances} instances, {derivations} rule applications, {} counterexamples",
        r.schemas.len(),
        r.counterexamples.len()
    );
    report(3, r.passed(), summary, serde_json::to_value(&r).unwrap_or(Value::Null))
}

pub const LEVEL_SIZES: [usize; 4] = [0, 1, 4, 256];

pub fn level_sizes() -> CriterionReport {
    let u = Universe::new();
    // W_{n+1} consists of all pairs of subsets of W_n.
    let mut oracle = vec![0usize];
    for n in 0..3 {
        oracle.push(1usize << (2 * oracle[n]));
    }
    let mut sizes = Vec::new();
    let mut problems = Vec::new();
    for n in 0..=3u32 {
        let level = u.enumerate_level(n).expect("supported level");
        let mut sorted = level.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != level.len() {
            problems.push(format!("W_{n} repeats a set"));
        }
        if level.iter().any(|&x| u.rank(x) >= n) {
            problems.push(format!("W_{n} contains a set of rank >= {n}"));
        }
        sizes.push(level.len());
    }
    let ok = sizes == oracle && sizes == LEVEL_SIZES && problems.is_empty();
    let summary = format!("sizes {sizes:?}, expected {LEVEL_SIZES:?}");
    report(4, ok, summary, json!({ "sizes": sizes, "oracle": oracle, "problems": problems }))
}

pub fn axioms_and_laws() -> CriterionReport {
    let u = Universe::new();
    let axioms = verify_all_axioms(&u);
    let laws = verify_extension_laws(&u, 3).expect("level 3 supported");
    let structure = verify_structure_laws(&u);
    let failed: Vec<String> = axioms
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.axiom.to_string())
        .chain(laws.iter().chain(&structure).filter(|r| !r.passed()).map(|r| r.law.clone()))
        .collect();
    let checks: u64 = axioms.iter().map(|r| r.checks).sum::<u64>()
        + laws.iter().chain(&structure).map(|r| r.checks).sum::<u64>();
    let summary = format!(
        "{} axioms, {} laws, {checks} checks, {} failing",
        axioms.len(),
        laws.len() + structure.len(),
        failed.len()
    );
    report(
        5,
        failed.is_empty(),
        summary,
        json!({ "axioms": axioms, "extension_laws": laws, "structure_laws": structure }),
    )
}

pub fn acla() -> CriterionReport {
    let u = Universe::new();
    let reports = [
        verify_acla_pairs(&u, "classical sets over {0, {0}}", &tiny_classical_sets(&u)),
        verify_acla_pairs(&u, "classical sets over W_2", &w2_classical_sets(&u)),
    ];
    let checks: u64 = reports.iter().map(|r| r.checks).sum();
    let failures: u64 = reports.iter().map(|r| r.failures).sum();
    let summary = format!("{checks} pairs, {failures} failures");
    report(6, failures == 0, summary, json!(reports))
}

pub const OMEGA_SENTENCES: usize = 50;

pub fn omega(seed: u64) -> CriterionReport {
    let u = Universe::new();
    let reports = verify_omega(&u, OMEGA_SENTENCES, seed);
    let failures: u64 = reports.iter().map(|r| r.failures).sum();
    let summary = format!("{OMEGA_SENTENCES} sentences, {failures} failures");
    report(7, failures == 0, summary, json!(reports))
}

pub fn interpretability() -> CriterionReport {
    let u = Universe::new();
    let reports = [
        verify_check_iso(&u, 4),
        verify_hclw_equals_vcheck(&u, 3),
        verify_hat_iso(&u, 2),
        verify_w_relativized_to_hcl(&u, 2),
    ]
    .map(|r| r.expect("levels within bounds"));
    let sides_ok = reports[1].sides == [[1, 1], [2, 2], [4, 4]];
    let failures: usize = reports.iter().map(|r| r.failures.len()).sum();
    let pairs: u64 = reports.iter().map(|r| r.pairs_checked).sum();
    let summary = format!("{} checks, {pairs} pairs, {failures} mismatches", reports.len());
    report(8, failures == 0 && sides_ok, summary, json!(reports))
}

pub fn tarski_sweep(budget: u64) -> CriterionReport {
    match sweep(2, budget) {
        Ok(r) => {
            let ok = r.passed() && r.pairs >= 10_000 && r.validity_agreements == r.formulas as u64;
            let summary = format!(
                "{} models x {} formulas = {} pairs, {} evaluations, validity agrees on {}",
                r.models, r.formulas, r.pairs, r.evaluations, r.validity_agreements
            );
            report(9, ok, summary, serde_json::to_value(&r).unwrap_or(Value::Null))
        }
        Err(e) => report(9, false, e.to_string(), Value::Null),
    }
}

pub fn separation(budget: u64) -> CriterionReport {
    match separation_matrix(3, budget) {
        Ok(entries) => {
            let wrong = entries.iter().filter(|e| !e.passed()).count();
            let summary = format!("{} verdicts, {wrong} wrong", entries.len());
            report(10, wrong == 0, summary, json!(entries))
        }
        Err(e) => report(10, false, e.to_string(), Value::Null),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transcribed_tables_match_the_clauses() {
        // Second oracle: the bit-pair clauses.
        for (i, a) in TruthValue::ALL.iter().enumerate() {
            assert_eq!(EXPECTED_UNARY_FIRST.1[i], a.neg());
            assert_eq!(EXPECTED_UNARY_SECOND[1].1[i], a.class_neg());
            assert_eq!(EXPECTED_UNARY_SECOND[2].1[i], a.bang());
            assert_eq!(EXPECTED_UNARY_SECOND[3].1[i], a.quest());
            for (j, b) in TruthValue::ALL.iter().enumerate() {
                assert_eq!(EXPECTED_BINARY[0].1[i][j], a.and(*b));
                assert_eq!(EXPECTED_BINARY[1].1[i][j], a.or(*b));
                assert_eq!(EXPECTED_BINARY[2].1[i][j], a.imp(*b));
                assert_eq!(EXPECTED_BINARY[3].1[i][j], a.iff(*b));
            }
        }
    }

    #[test]
    fn criterion_one_counts_84_entries() {
        let r = truth_tables();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.details["entries"], 84);
    }

    #[test]
    fn strong_connectives_by_hand() {
        let t = truth_table(Connective::StrongImp);
        assert_eq!(t.get(O, Some(B)), Z);
        assert_eq!(t.get(O, Some(N)), N);
        assert_eq!(t.get(B, Some(B)), B);
        assert_eq!(t.get(Z, Some(B)), O);
        let t = truth_table(Connective::StrongIff);
        assert_eq!(t.get(N, Some(Z)), N);
        assert_eq!(t.get(B, Some(B)), B);
    }

    #[test]
    fn a_wrong_statement_is_caught() {
        // phi <-> ?phi is not provable: it fails at b.
        let s = {
            let sig = Signature::new().with_relation("p", 0);
            let mut s = random_structure(&mut stream_rng(0, 0), &sig, 1);
            s.set_atom(0, 0, B);
            s
        };
        let p = Formula::prop("p");
        assert!(designated_everywhere(&Formula::iff(p.clone(), Formula::quest(p)), &s).1.is_some());
    }

    #[test]
    fn levels_and_tables_pass() {
        assert!(level_sizes().passed);
    }
}
