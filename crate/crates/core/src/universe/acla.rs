//! The anti-classicality construction and the set of truth values Ω.

use thiserror::Error;

use super::axioms::{formula, LawReport};
use super::fragment::Fragment;
use super::store::{SetId, Universe};
use crate::formula::{Formula, Signature};
use crate::gen::{stream_rng, FormulaGen};
use crate::semantics::TruthValue;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AclaError {
    #[error("{0} is not classical")]
    NotClassical(String),
    #[error("witness ({0}, {1}) does not have membership value b")]
    WitnessB(String, String),
    #[error("witness ({0}, {1}) does not have membership value n")]
    WitnessN(String, String),
    #[error("construction produced {got}, expected {expected}")]
    Mismatch { got: String, expected: String },
}

fn classical_op(u: &Universe, a: SetId, b: SetId, f: impl Fn(bool, bool) -> bool) -> SetId {
    let (na, nb) = (u.get(a), u.get(b));
    let mut ms: Vec<SetId> = na.pos.iter().chain(&nb.pos).copied().collect();
    ms.sort();
    ms.dedup();
    ms.retain(|m| f(na.pos.binary_search(m).is_ok(), nb.pos.binary_search(m).is_ok()));
    u.classical_enum_set(&ms)
}

/// Builds the set with !-extension `u` and ?-extension `v` by comprehension
/// over the realm of both, using a `b`-valued membership `a ∈ b` and an
/// `n`-valued membership `c ∈ d` as the only non-classical ingredients.
pub fn acla_construct(
    univ: &Universe,
    u: SetId,
    v: SetId,
    witness_b: (SetId, SetId),
    witness_n: (SetId, SetId),
) -> Result<SetId, AclaError> {
    for s in [u, v] {
        if !univ.is_classical(s) {
            return Err(AclaError::NotClassical(univ.literal(s)));
        }
    }
    let (a, b) = witness_b;
    if univ.mem_value(a, b) != TruthValue::BOTH {
        return Err(AclaError::WitnessB(univ.literal(a), univ.literal(b)));
    }
    let (c, d) = witness_n;
    if univ.mem_value(c, d) != TruthValue::NEITHER {
        return Err(AclaError::WitnessN(univ.literal(c), univ.literal(d)));
    }
    let inter = classical_op(univ, u, v, |x, y| x && y);
    let left = classical_op(univ, u, v, |x, y| x && !y);
    let right = classical_op(univ, u, v, |x, y| !x && y);
    let realm = classical_op(univ, u, v, |x, y| x || y);
    let frag = Fragment::closure(univ, &[u, v, inter, left, right, realm, a, b, c, d]);
    let body = formula("z in i | (z in l & a in b) | (z in r & c in d)", &Signature::membership());
    let env = [("i", inter), ("l", left), ("r", right), ("a", a), ("b", b), ("c", c), ("d", d)];
    let x = frag.comprehend(univ, realm, "z", &body, &env).expect("construction formula is well formed");
    let expected = univ.intern(univ.get(u).pos.clone(), univ.get(v).pos.clone());
    if x != expected || univ.bang_ext(x) != u || univ.quest_ext(x) != v {
        return Err(AclaError::Mismatch { got: univ.literal(x), expected: univ.literal(expected) });
    }
    Ok(x)
}

/// The standard witnesses: `∅ ∈ ({∅}, ∅)` is `b` and `∅ ∈ (∅, {∅})` is `n`.
pub fn standard_witnesses(u: &Universe) -> ((SetId, SetId), (SetId, SetId)) {
    let e = u.empty();
    ((e, u.intern(vec![e], vec![])), (e, u.intern(vec![], vec![e])))
}

/// `P^!({∅})`: the four sets with extensions drawn from `{∅}`.
pub fn omega_set(u: &Universe) -> SetId {
    u.powerset_bang(u.classical_singleton(u.empty()))
}

/// The member of Ω standing for `v`: `∅` is a positive member iff `v` is
/// designated and a ?-member iff `v` is not false.
pub fn truth_value_set(u: &Universe, v: TruthValue) -> SetId {
    let e = u.empty();
    let side = |keep: bool| if keep { vec![e] } else { Vec::new() };
    u.intern(side(v.is_true), side(!v.is_false))
}

/// The truth value named by a member of Ω.
pub fn omega_name(u: &Universe, x: SetId) -> Option<TruthValue> {
    let e = u.empty();
    let n = u.get(x);
    let flag = |side: &[SetId]| match side {
        [] => Some(false),
        [m] if *m == e => Some(true),
        _ => None,
    };
    Some(TruthValue::new(flag(&n.pos)?, !flag(&n.quest)?))
}

/// `[[φ]]` for a sentence evaluated over `frag`.
pub fn truth_value_of(u: &Universe, phi: &Formula, frag: &Fragment, env: &[(&str, SetId)]) -> Result<SetId, super::FragmentError> {
    Ok(truth_value_set(u, frag.eval(u, phi, env)?))
}

/// The 4 classical sets with members drawn from `{∅, {∅}}`.
pub fn tiny_classical_sets(u: &Universe) -> Vec<SetId> {
    let e = u.empty();
    let one = u.classical_singleton(e);
    vec![u.classical_enum_set(&[]), u.classical_enum_set(&[e]), u.classical_enum_set(&[one]), u.classical_pair(e, one)]
}

/// The 16 classical sets with members drawn from `W_2`.
pub fn w2_classical_sets(u: &Universe) -> Vec<SetId> {
    let w2 = u.enumerate_level(2).expect("W_2");
    (0u32..16)
        .map(|m| {
            let ms: Vec<SetId> = w2.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &s)| s).collect();
            u.classical_enum_set(&ms)
        })
        .collect()
}

/// Runs the construction on every pair from `sets`.
pub fn verify_acla_pairs(u: &Universe, label: &str, sets: &[SetId]) -> LawReport {
    let (wb, wn) = standard_witnesses(u);
    let mut rep = LawReport { law: label.to_string(), checks: 0, failures: 0, first_failure: None };
    for &a in sets {
        for &b in sets {
            rep.checks += 1;
            if let Err(e) = acla_construct(u, a, b, wb, wn) {
                rep.failures += 1;
                rep.first_failure.get_or_insert_with(|| e.to_string());
            }
        }
    }
    rep
}

/// Fixed sentences checked over `W_3`.
pub const OMEGA_FIXED: [&str; 6] = [
    "bot",
    "~bot",
    "exists x. x in x",
    "forall x. exists y. x in y",
    "exists x. ~(x = x)",
    "exists x. exists y. (x = y & ~(x = y))",
];

/// Checks that Ω has exactly the four named members and that
/// `[[∅ ∈ [[φ]]]] = [[φ]]` for `count` sentences: the fixed ones over
/// `W_3` and seeded random ones over `W_2`.
pub fn verify_omega(u: &Universe, count: usize, seed: u64) -> Vec<LawReport> {
    let mut out = Vec::new();
    let omega = u.get(omega_set(u));
    let mut names: Vec<TruthValue> = omega.pos.iter().filter_map(|&m| omega_name(u, m)).collect();
    names.sort();
    let mut all = TruthValue::ALL.to_vec();
    all.sort();
    let shape_ok = u.is_classical(omega_set(u)) && omega.pos.len() == 4 && names == all;
    out.push(LawReport {
        law: "Omega is classical with exactly the members 1, b, n, 0".into(),
        checks: 1,
        failures: u64::from(!shape_ok),
        first_failure: (!shape_ok).then(|| u.literal(omega_set(u))),
    });

    let sig = Signature::membership();
    let w3 = Fragment::level(u, 3).expect("W_3");
    let w2 = Fragment::level(u, 2).expect("W_2");
    let mut sentences: Vec<(Formula, &Fragment)> =
        OMEGA_FIXED.iter().map(|t| (formula(t, &sig), &w3)).collect();
    let gen = FormulaGen::new(&sig, &["x", "y"]);
    let mut stream = 0u64;
    while sentences.len() < count {
        let mut rng = stream_rng(seed, stream);
        stream += 1;
        let mut phi = gen.formula(&mut rng, 3);
        for x in crate::formula::free_vars(&phi) {
            phi = if stream.is_multiple_of(2) { Formula::forall(x, phi) } else { Formula::exists(x, phi) };
        }
        sentences.push((phi, &w2));
    }
    sentences.truncate(count);
    let e = u.empty();
    let mem = formula("e in t", &sig);
    let mut rep = LawReport {
        law: format!("[[0 in [[phi]]]] = [[phi]] for {count} sentences"),
        checks: 0,
        failures: 0,
        first_failure: None,
    };
    for (phi, frag) in &sentences {
        let t = truth_value_of(u, phi, frag, &[]).expect("sentence");
        let back = truth_value_of(u, &mem, frag, &[("e", e), ("t", t)]).expect("in fragment");
        rep.checks += 1;
        if t != back || omega.pos.binary_search(&t).is_err() {
            rep.failures += 1;
            rep.first_failure.get_or_insert_with(|| phi.to_string());
        }
    }
    out.push(rep);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn acla_examples() {
        let u = Universe::new();
        let (wb, wn) = standard_witnesses(&u);
        let e = u.empty();
        let one = u.classical_singleton(e);
        let x = acla_construct(&u, one, e, wb, wn).unwrap();
        assert_eq!(omega_name(&u, x), Some(TruthValue::BOTH));
        for &s in &tiny_classical_sets(&u) {
            assert_eq!(acla_construct(&u, s, s, wb, wn).unwrap(), s);
        }
        let bad = u.intern(vec![e], vec![]);
        assert!(matches!(acla_construct(&u, bad, e, wb, wn), Err(AclaError::NotClassical(_))));
        assert!(matches!(acla_construct(&u, e, e, wn, wn), Err(AclaError::WitnessB(..))));
        assert!(matches!(acla_construct(&u, e, e, wb, wb), Err(AclaError::WitnessN(..))));
    }

    #[test]
    fn acla_batteries() {
        let u = Universe::new();
        let small = verify_acla_pairs(&u, "tiny", &tiny_classical_sets(&u));
        assert_eq!((small.checks, small.failures), (16, 0));
        let big = verify_acla_pairs(&u, "w2", &w2_classical_sets(&u));
        assert_eq!((big.checks, big.failures), (256, 0));
    }

    #[test]
    fn omega_naming() {
        let u = Universe::new();
        let e = u.empty();
        let b = u.intern(vec![e], vec![]);
        assert_eq!(omega_name(&u, b), Some(TruthValue::BOTH));
        assert_eq!(omega_name(&u, u.classical_singleton(e)), Some(TruthValue::ONE));
        assert_eq!(omega_name(&u, e), Some(TruthValue::ZERO));
        assert_eq!(omega_name(&u, u.intern(vec![], vec![e])), Some(TruthValue::NEITHER));
        let w2 = Fragment::level(&u, 2).unwrap();
        let sig = Signature::membership();
        let bot = truth_value_of(&u, &Formula::Bot, &w2, &[]).unwrap();
        assert_eq!(omega_name(&u, bot), Some(TruthValue::ZERO));
        let t = truth_value_of(&u, &formula("~bot", &sig), &w2, &[]).unwrap();
        assert_eq!(omega_name(&u, t), Some(TruthValue::ONE));
        let m = truth_value_of(&u, &formula("w in x", &sig), &w2, &[("w", e), ("x", b)]).unwrap();
        assert_eq!(omega_name(&u, m), Some(TruthValue::BOTH));
        for r in verify_omega(&u, 50, 0) {
            assert!(r.passed(), "{r:?}");
        }
    }
}
