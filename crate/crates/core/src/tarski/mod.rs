//! Tarski semantics read in a four-valued meta-theory, the transformations
//! between Tarski models and T/F-models, and validity over the four model
//! classes.

mod model;

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use model::{from_tf, tarski_value, to_tf, tuple_key, FVRelation, FVTarskiModel, Indexed, TarskiError};

use crate::formula::{free_vars, parse, Formula, Signature, Term};
use crate::gen::{random_value, stream_rng, FormulaGen};
use crate::par;
use crate::semantics::{
    element_names, spaces, validity_bounded, Compiled, ModelSpace, PairRule, RawModel, Restriction, SearchError,
    TruthValue,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelClass {
    Full,
    ConsistentOnly,
    CompleteOnly,
    Classical,
}

impl ModelClass {
    pub const ALL: [ModelClass; 4] =
        [ModelClass::Full, ModelClass::ConsistentOnly, ModelClass::CompleteOnly, ModelClass::Classical];

    pub fn name(self) -> &'static str {
        match self {
            ModelClass::Full => "Full",
            ModelClass::ConsistentOnly => "ConsistentOnly",
            ModelClass::CompleteOnly => "CompleteOnly",
            ModelClass::Classical => "Classical",
        }
    }

    /// Consistent models have no `b` values and no reflexive `≠`; complete
    /// models have no `n` values and `≠` on every pair of distinct elements.
    pub fn restriction(self) -> Restriction {
        let (o, b, n, z) = (TruthValue::ONE, TruthValue::BOTH, TruthValue::NEITHER, TruthValue::ZERO);
        let (atom_values, diagonal, off_diagonal) = match self {
            ModelClass::Full => (vec![o, b, n, z], PairRule::Free, PairRule::Free),
            ModelClass::ConsistentOnly => (vec![o, n, z], PairRule::Never, PairRule::Free),
            ModelClass::CompleteOnly => (vec![o, b, z], PairRule::Free, PairRule::Always),
            ModelClass::Classical => (vec![o, z], PairRule::Never, PairRule::Always),
        };
        Restriction { atom_values, diagonal, off_diagonal }
    }

    pub fn contains(self, m: &Indexed) -> bool {
        let r = self.restriction();
        let n = m.size();
        let values_ok = m.rels.iter().all(|(_, vs)| vs.iter().all(|v| r.atom_values.contains(v)));
        let pairs_ok = (0..n).all(|a| {
            (0..n).all(|b| {
                let rule = if a == b { r.diagonal } else { r.off_diagonal };
                match rule {
                    PairRule::Free => true,
                    PairRule::Never => !m.diseq[a * n + b],
                    PairRule::Always => m.diseq[a * n + b],
                }
            })
        });
        values_ok && pairs_ok
    }
}

impl fmt::Display for ModelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown model class `{0}` (known: full, consistent, complete, classical)")]
pub struct UnknownClass(pub String);

impl FromStr for ModelClass {
    type Err = UnknownClass;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "full" | "bs4" => Ok(ModelClass::Full),
            "consistent" | "consistentonly" | "k3" => Ok(ModelClass::ConsistentOnly),
            "complete" | "completeonly" | "lfi1" => Ok(ModelClass::CompleteOnly),
            "classical" | "fol" => Ok(ModelClass::Classical),
            _ => Err(UnknownClass(s.to_string())),
        }
    }
}

/// Builds the Tarski model for one point of a model space.
pub fn indexed_from_raw(space: &ModelSpace, raw: &RawModel) -> Indexed {
    Indexed {
        names: element_names(space.size),
        constants: space.constants.iter().cloned().zip(raw.constants.iter().copied()).collect(),
        rel_names: space.relations.iter().map(|(r, _)| r.clone()).collect(),
        rels: space.relations.iter().map(|(_, k)| *k).zip(raw.values.iter().cloned()).collect(),
        diseq: raw.diseq.clone(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ClassVerdict {
    ValidUpToBound { class: ModelClass, max_size: usize, models_checked: u64 },
    Countermodel { class: ModelClass, model: FVTarskiModel },
}

impl ClassVerdict {
    pub fn valid(&self) -> bool {
        matches!(self, ClassVerdict::ValidUpToBound { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Tarski(#[from] TarskiError),
}

/// Whether `phi` is true in every Tarski model of `cls` with domain size at
/// most `max_size`. Models are visited in size and index order.
pub fn classify_validity(
    phi: &Formula,
    cls: ModelClass,
    max_size: usize,
    sig: &Signature,
    budget: u64,
) -> Result<ClassVerdict, ClassifyError> {
    if !free_vars(phi).is_empty() {
        return Err(SearchError::NotSentence(phi.to_string()).into());
    }
    let mut checked = 0;
    for (space, count) in spaces(sig, max_size, &cls.restriction(), budget)? {
        // surface vocabulary errors once, before the parallel scan
        indexed_from_raw(&space, &space.decode(0)).value(phi, &mut Vec::new())?;
        let hit = par::find_first(count, |i| {
            let m = indexed_from_raw(&space, &space.decode(i as u128));
            let v = m.value(phi, &mut Vec::new()).expect("checked on the first model");
            (!v.designated()).then_some(m)
        });
        if let Some((_, m)) = hit {
            return Ok(ClassVerdict::Countermodel { class: cls, model: m.to_model() });
        }
        checked += count;
    }
    Ok(ClassVerdict::ValidUpToBound { class: cls, max_size, models_checked: checked })
}

/// The signature of the sweep: one unary and one binary relation.
pub fn sweep_signature() -> Signature {
    Signature::new().with_relation("R", 1).with_relation("S", 2)
}

/// A fixed battery of formulas in `x`, `y` of depth at most 3: every
/// depth-1 formula over six leaves, each non-atomic one under `~`, `forall x`
/// and `exists y`, and each binary one under both two-quantifier prefixes.
pub fn formula_battery() -> Vec<Formula> {
    let (x, y) = (|| Term::var("x"), || Term::var("y"));
    let leaves = vec![
        Formula::atom("R", vec![x()]),
        Formula::atom("R", vec![y()]),
        Formula::atom("S", vec![x(), y()]),
        Formula::atom("S", vec![y(), x()]),
        Formula::eq(x(), y()),
        Formula::Bot,
    ];
    let mut d1: Vec<Formula> = Vec::new();
    let mut binary: Vec<Formula> = Vec::new();
    for l in &leaves {
        d1.push(Formula::neg(l.clone()));
        d1.push(Formula::forall("x", l.clone()));
        d1.push(Formula::exists("y", l.clone()));
    }
    for a in &leaves {
        for b in &leaves {
            binary.push(Formula::and(a.clone(), b.clone()));
            binary.push(Formula::or(a.clone(), b.clone()));
            binary.push(Formula::imp(a.clone(), b.clone()));
            binary.push(Formula::iff(a.clone(), b.clone()));
        }
    }
    d1.extend(binary.iter().cloned());
    let mut out = leaves;
    out.extend(d1.iter().cloned());
    for f in &d1 {
        out.push(Formula::neg(f.clone()));
        out.push(Formula::forall("x", f.clone()));
        out.push(Formula::exists("y", f.clone()));
    }
    for f in &binary {
        out.push(Formula::forall("y", Formula::exists("x", f.clone())));
        out.push(Formula::exists("x", Formula::forall("y", f.clone())));
    }
    out
}

/// Universal closure over the free variables in name order.
pub fn closure(phi: &Formula) -> Formula {
    free_vars(phi).into_iter().rev().fold(phi.clone(), |acc, x| Formula::forall(x, acc))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub max_size: usize,
    pub formulas: usize,
    pub models: u64,
    /// (model, formula) pairs; each is checked under every assignment.
    pub pairs: u64,
    pub evaluations: u64,
    pub to_tf_equivalence_failures: u64,
    pub from_tf_equivalence_failures: u64,
    pub tarski_roundtrip_failures: u64,
    pub tf_roundtrip_failures: u64,
    pub validity_agreements: u64,
    pub validity_disagreements: u64,
    pub monotonicity_checks: u64,
    pub monotonicity_failures: u64,
    pub examples: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.to_tf_equivalence_failures == 0
            && self.from_tf_equivalence_failures == 0
            && self.tarski_roundtrip_failures == 0
            && self.tf_roundtrip_failures == 0
            && self.validity_disagreements == 0
            && self.monotonicity_failures == 0
    }

    fn note(&mut self, msg: impl FnOnce() -> String) {
        if self.examples.len() < 5 {
            self.examples.push(msg());
        }
    }
}

#[derive(Default)]
struct Chunk {
    models: u64,
    evaluations: u64,
    to_tf: u64,
    from_tf: u64,
    rt_tarski: u64,
    rt_tf: u64,
    valid: Vec<bool>,
    examples: Vec<String>,
}

/// Exhaustive sweep over every Full-class model of size at most `max_size`
/// for [`sweep_signature`] and every formula of [`formula_battery`].
pub fn sweep(max_size: usize, budget: u64) -> Result<SweepReport, ClassifyError> {
    let sig = sweep_signature();
    let battery = formula_battery();
    let closed: Vec<Formula> = battery.iter().map(closure).collect();
    let mut rep = SweepReport { max_size, formulas: battery.len(), ..SweepReport::default() };
    let mut valid = vec![true; battery.len()];
    const CHUNK: u64 = 256;
    for (space, count) in spaces(&sig, max_size, &Restriction::default(), budget)? {
        let probe = space.model(0);
        let open: Vec<Compiled> = battery
            .iter()
            .map(|f| Compiled::new(f, &probe, &["x", "y"]))
            .collect::<Result<_, _>>()
            .map_err(SearchError::from)?;
        let n = space.size;
        let chunks = par::range_map(count.div_ceil(CHUNK), |c| {
            let mut out = Chunk { valid: vec![true; battery.len()], ..Chunk::default() };
            let mut env = Vec::new();
            let mut tenv: Vec<(String, usize)> = vec![("x".into(), 0), ("y".into(), 0)];
            for i in c * CHUNK..((c + 1) * CHUNK).min(count) {
                let raw = space.decode(i as u128);
                let m = indexed_from_raw(&space, &raw);
                let s = space.structure(&raw);
                out.models += 1;
                let m_tf = m.to_tf();
                let s_back = Indexed::from_tf(&s);
                if Indexed::from_tf(&m_tf) != m {
                    out.rt_tarski += 1;
                }
                if s_back.to_tf() != s {
                    out.rt_tf += 1;
                }
                // the conversions link m and s, so one comparison per
                // assignment covers both directions
                let linked = m_tf == s && s_back == m;
                for (k, phi) in battery.iter().enumerate() {
                    for a in 0..n {
                        for b in 0..n {
                            tenv[0].1 = a;
                            tenv[1].1 = b;
                            let tv = m.value(phi, &mut tenv).expect("battery fits the signature");
                            let fv = open[k].eval_in(&s, &mut env, &[a, b]);
                            out.evaluations += 1;
                            if tv != fv || !linked {
                                out.to_tf += 1;
                                out.from_tf += 1;
                                if out.examples.len() < 3 {
                                    out.examples.push(format!("model #{i} size {n}, `{phi}` at x={a}, y={b}: tarski {tv}, t/f {fv}"));
                                }
                            }
                        }
                    }
                    if out.valid[k] && !m.value(&closed[k], &mut Vec::new()).expect("closed").designated() {
                        out.valid[k] = false;
                    }
                }
            }
            out
        });
        for ch in chunks {
            rep.models += ch.models;
            rep.evaluations += ch.evaluations;
            rep.to_tf_equivalence_failures += ch.to_tf;
            rep.from_tf_equivalence_failures += ch.from_tf;
            rep.tarski_roundtrip_failures += ch.rt_tarski;
            rep.tf_roundtrip_failures += ch.rt_tf;
            for (v, cv) in valid.iter_mut().zip(&ch.valid) {
                *v &= cv;
            }
            for e in ch.examples {
                rep.note(|| e);
            }
        }
    }
    rep.pairs = rep.models * battery.len() as u64;

    let agree = par::map(&closed, |phi| validity_bounded(phi, max_size, &sig, budget).map(|v| v.holds()));
    for (k, tf_valid) in agree.into_iter().enumerate() {
        if tf_valid? == valid[k] {
            rep.validity_agreements += 1;
        } else {
            rep.validity_disagreements += 1;
            rep.note(|| format!("validity of `{}`: tarski {}, t/f {}", closed[k], valid[k], !valid[k]));
        }
    }
    for (k, phi) in closed.iter().enumerate() {
        if !valid[k] {
            continue;
        }
        for cls in &ModelClass::ALL[1..] {
            rep.monotonicity_checks += 1;
            if !classify_validity(phi, *cls, max_size, &sig, budget)?.valid() {
                rep.monotonicity_failures += 1;
                rep.note(|| format!("`{phi}` valid on Full but not on {cls}"));
            }
        }
    }
    Ok(rep)
}

/// One entry of the class-separation matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationEntry {
    pub formula: String,
    pub class: ModelClass,
    pub expected_valid: bool,
    pub valid: bool,
}

impl SeparationEntry {
    pub fn passed(&self) -> bool {
        self.expected_valid == self.valid
    }
}

/// The separator formulas with the classes on which each is valid.
pub const SEPARATORS: [(&str, [bool; 4]); 3] = [
    // Full, ConsistentOnly, CompleteOnly, Classical
    ("(p() & ~p()) -> bot", [false, true, false, true]),
    ("p() | ~p()", [false, false, true, true]),
    ("p() | not p()", [true, true, true, true]),
];

pub fn separation_matrix(max_size: usize, budget: u64) -> Result<Vec<SeparationEntry>, ClassifyError> {
    let sig = Signature::new().with_relation("p", 0);
    let mut out = Vec::new();
    for (text, expect) in SEPARATORS {
        let phi = parse(text, &sig).expect("separator parses");
        for (cls, exp) in ModelClass::ALL.into_iter().zip(expect) {
            let v = classify_validity(&phi, cls, max_size, &sig, budget)?;
            out.push(SeparationEntry { formula: text.to_string(), class: cls, expected_valid: exp, valid: v.valid() });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RoundtripReport {
    pub max_size: usize,
    pub depth: usize,
    pub samples: u64,
    pub seed: u64,
    pub tarski_roundtrip_failures: u64,
    pub tf_roundtrip_failures: u64,
    pub equivalence_checks: u64,
    pub equivalence_failures: u64,
    pub validity_checks: u64,
    pub validity_disagreements: u64,
    pub examples: Vec<String>,
}

impl RoundtripReport {
    pub fn passed(&self) -> bool {
        self.tarski_roundtrip_failures == 0
            && self.tf_roundtrip_failures == 0
            && self.equivalence_failures == 0
            && self.validity_disagreements == 0
    }
}

/// Sampled version of [`sweep`]: random models of size at most `max_size`
/// and random formulas of depth at most `depth`, plus validity agreement on
/// a set of known sentences.
pub fn roundtrip_report(max_size: usize, depth: usize, samples: u64, seed: u64) -> RoundtripReport {
    let sig = sweep_signature();
    let gen = FormulaGen { sugar: true, ..FormulaGen::new(&sig, &["x", "y"]) };
    let rows = par::range_map(samples, |t| {
        let mut rng = stream_rng(seed, t);
        let size = rng.random_range(1..=max_size.max(1));
        let s = crate::gen::random_structure(&mut rng, &sig, size);
        let mut m = Indexed::from_tf(&s);
        for (_, vals) in m.rels.iter_mut() {
            for v in vals.iter_mut() {
                *v = random_value(&mut rng);
            }
        }
        let phi = gen.formula(&mut rng, depth);
        let tf = m.to_tf();
        let a = rng.random_range(0..size);
        let b = rng.random_range(0..size);
        let tv = m.value(&phi, &mut vec![("x".into(), a), ("y".into(), b)]).expect("fits");
        let c = Compiled::new(&phi, &tf, &["x", "y"]).expect("fits");
        let fv = c.eval(&tf, &[a, b]);
        let back = Indexed::from_tf(&s);
        let back_fv = c.eval(&s, &[a, b]);
        let back_tv = back.value(&phi, &mut vec![("x".into(), a), ("y".into(), b)]).expect("fits");
        (Indexed::from_tf(&tf) == m, back.to_tf() == s, tv == fv && back_tv == back_fv, phi)
    });
    let mut rep = RoundtripReport { max_size, depth, samples, seed, ..RoundtripReport::default() };
    for (rt1, rt2, eq, phi) in rows {
        rep.tarski_roundtrip_failures += u64::from(!rt1);
        rep.tf_roundtrip_failures += u64::from(!rt2);
        rep.equivalence_checks += 1;
        if !eq {
            rep.equivalence_failures += 1;
            if rep.examples.len() < 5 {
                rep.examples.push(phi.to_string());
            }
        }
    }
    let props = Signature::new().with_relation("p", 0).with_relation("q", 0);
    for text in ["p() -> p()", "p() | ~p()", "p() | not p()", "(p() & q()) -> p()", "~~p() <-> p()", "bot -> q()"] {
        let phi = parse(text, &props).expect("parses");
        let tarski = classify_validity(&phi, ModelClass::Full, max_size.min(2), &props, crate::semantics::DEFAULT_BUDGET)
            .map(|v| v.valid());
        let tf = validity_bounded(&phi, max_size.min(2), &props, crate::semantics::DEFAULT_BUDGET).map(|v| v.holds());
        rep.validity_checks += 1;
        if tarski.ok() != tf.ok() {
            rep.validity_disagreements += 1;
            rep.examples.push(format!("validity of `{text}` differs"));
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_open;

    #[test]
    fn separators() {
        for e in separation_matrix(3, crate::semantics::DEFAULT_BUDGET).unwrap() {
            assert!(e.passed(), "{e:?}");
        }
    }

    #[test]
    fn countermodels_name_the_value() {
        let sig = Signature::new().with_relation("p", 0);
        let phi = parse("(p() & ~p()) -> bot", &sig).unwrap();
        let v = classify_validity(&phi, ModelClass::Full, 1, &sig, 1 << 20).unwrap();
        let ClassVerdict::Countermodel { model, .. } = v else { panic!("expected countermodel") };
        assert_eq!(model.relations["p"].values["()"], TruthValue::BOTH);
        let phi = parse("p() | ~p()", &sig).unwrap();
        let ClassVerdict::Countermodel { model, .. } = classify_validity(&phi, ModelClass::Full, 1, &sig, 1 << 20).unwrap()
        else {
            panic!("expected countermodel")
        };
        assert_eq!(model.relations["p"].values["()"], TruthValue::NEITHER);
    }

    #[test]
    fn class_parsing_and_membership() {
        assert_eq!("consistent".parse::<ModelClass>().unwrap(), ModelClass::ConsistentOnly);
        assert_eq!("CompleteOnly".parse::<ModelClass>().unwrap(), ModelClass::CompleteOnly);
        assert!("nope".parse::<ModelClass>().is_err());
        let sig = sweep_signature();
        for cls in ModelClass::ALL {
            for (space, count) in spaces(&sig, 2, &cls.restriction(), 1 << 20).unwrap() {
                for i in 0..count.min(50) {
                    let m = indexed_from_raw(&space, &space.decode(i as u128));
                    assert!(cls.contains(&m));
                    assert!(ModelClass::Full.contains(&m));
                }
            }
        }
    }

    #[test]
    fn defined_connectives_are_classical() {
        // the defined connectives commute with satisfaction
        let gen = FormulaGen::new(&sweep_signature(), &["x", "y"]);
        for t in 0..200 {
            let mut rng = stream_rng(7, t);
            let s = crate::gen::random_structure(&mut rng, &sweep_signature(), 2);
            let m = Indexed::from_tf(&s);
            let phi = gen.formula(&mut rng, 3);
            let mut env = vec![("x".to_string(), 0), ("y".to_string(), 1)];
            let v = m.value(&phi, &mut env).unwrap();
            for (wrapped, expect) in [
                (Formula::class_neg(phi.clone()), v.class_neg()),
                (Formula::bang(phi.clone()), v.bang()),
                (Formula::quest(phi.clone()), v.quest()),
            ] {
                let w = m.value(&wrapped, &mut env).unwrap();
                assert_eq!(w, expect);
                assert!(w.is_classical());
            }
            assert_eq!(m.value(&Formula::neg(phi.clone()), &mut env).unwrap(), v.neg());
        }
    }

    #[test]
    fn single_element_roundtrips() {
        for v in TruthValue::ALL {
            let m: FVTarskiModel = serde_json::from_value(serde_json::json!({
                "domain": ["a"], "relations": {"R": {"arity": 1, "values": {"(a)": v}}}, "diseq": []
            }))
            .unwrap();
            assert_eq!(from_tf(&to_tf(&m).unwrap()).unwrap(), m);
            let tf = to_tf(&m).unwrap();
            assert_eq!(to_tf(&from_tf(&tf).unwrap()).unwrap(), tf);
        }
    }

    #[test]
    fn battery_shape() {
        let b = formula_battery();
        assert!(b.iter().all(|f| f.depth() <= 3), "{:?}", b.iter().map(|f| f.depth()).max());
        assert!(b.len() >= 500);
        assert_eq!(closure(&parse_open("R(y) & S(x, y)").unwrap().0).to_string(), "forall x. forall y. R(y) & S(x, y)");
    }

    #[test]
    fn sampled_roundtrips() {
        let r = roundtrip_report(3, 3, 300, 1);
        assert!(r.passed(), "{r:?}");
    }
}
