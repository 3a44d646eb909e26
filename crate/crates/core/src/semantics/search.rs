//! Exhaustive enumeration of finite models and bounded consequence search.
//!
//! Models over a signature and a domain size are numbered by a mixed-radix
//! index: constants first, then one digit per relation tuple (the value of
//! the atom), then one bit per unordered pair for negative equality. The
//! enumeration is raw over labelled models and fails with an explicit error
//! when the number of models exceeds the budget.

use serde::Serialize;
use thiserror::Error;

use super::eval::{Compiled, EvalError};
use super::model::{tuple_count, Bits, Structure, TFModel};
use super::value::TruthValue;
use crate::formula::{free_vars, Formula, Signature};
use crate::par;

/// Default cap on the number of models one search may visit.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("`{0}` is not a sentence")]
    NotSentence(String),
    #[error("search needs {needed} models, budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("domain size must be at least 1")]
    ZeroSize,
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// What negative equality may contain, separately for diagonal and
/// off-diagonal pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairRule {
    Free,
    Never,
    Always,
}

/// Restrictions on a model space. The unrestricted space allows all four
/// atom values and any symmetric negative equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub atom_values: Vec<TruthValue>,
    pub diagonal: PairRule,
    pub off_diagonal: PairRule,
}

impl Default for Restriction {
    fn default() -> Self {
        Restriction { atom_values: TruthValue::ALL.to_vec(), diagonal: PairRule::Free, off_diagonal: PairRule::Free }
    }
}

/// A model in raw form: atom values per relation tuple and a symmetric
/// negative-equality matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawModel {
    pub size: usize,
    pub values: Vec<Vec<TruthValue>>,
    pub diseq: Vec<bool>,
    pub constants: Vec<usize>,
}

/// All models of one domain size over a signature.
#[derive(Clone, Debug)]
pub struct ModelSpace {
    pub size: usize,
    pub relations: Vec<(String, usize)>,
    pub constants: Vec<String>,
    pub restriction: Restriction,
    tuples: Vec<usize>,
    free_pairs: Vec<(usize, usize)>,
}

pub fn element_names(size: usize) -> Vec<String> {
    (0..size)
        .map(|i| if i < 26 { ((b'a' + i as u8) as char).to_string() } else { format!("e{i}") })
        .collect()
}

impl ModelSpace {
    pub fn new(sig: &Signature, size: usize, restriction: Restriction) -> Result<Self, SearchError> {
        if size == 0 {
            return Err(SearchError::ZeroSize);
        }
        let relations: Vec<(String, usize)> = sig.relations.iter().map(|(r, &k)| (r.clone(), k)).collect();
        let mut tuples = Vec::new();
        for (_, k) in &relations {
            tuples.push(tuple_count(size, *k).ok_or_else(|| SearchError::BudgetExceeded {
                needed: "an unindexable number of".into(),
                budget: 0,
            })?);
        }
        let mut free_pairs = Vec::new();
        for a in 0..size {
            for b in a..size {
                let rule = if a == b { restriction.diagonal } else { restriction.off_diagonal };
                if rule == PairRule::Free {
                    free_pairs.push((a, b));
                }
            }
        }
        Ok(ModelSpace {
            size,
            relations,
            constants: sig.constants.iter().cloned().collect(),
            restriction,
            tuples,
            free_pairs,
        })
    }

    /// Number of models, or `None` if it does not fit in a `u128`.
    pub fn count(&self) -> Option<u128> {
        let mut n: u128 = 1;
        let base = self.restriction.atom_values.len() as u128;
        for _ in 0..self.constants.len() {
            n = n.checked_mul(self.size as u128)?;
        }
        for &t in &self.tuples {
            for _ in 0..t {
                n = n.checked_mul(base)?;
            }
        }
        n.checked_mul(1u128.checked_shl(self.free_pairs.len() as u32)?)
    }

    pub fn decode(&self, mut idx: u128) -> RawModel {
        let n = self.size;
        let constants = (0..self.constants.len())
            .map(|_| {
                let c = (idx % n as u128) as usize;
                idx /= n as u128;
                c
            })
            .collect();
        let base = self.restriction.atom_values.len() as u128;
        let values = self
            .tuples
            .iter()
            .map(|&t| {
                (0..t)
                    .map(|_| {
                        let v = self.restriction.atom_values[(idx % base) as usize];
                        idx /= base;
                        v
                    })
                    .collect()
            })
            .collect();
        let mut diseq = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                let rule = if a == b { self.restriction.diagonal } else { self.restriction.off_diagonal };
                diseq[a * n + b] = rule == PairRule::Always;
            }
        }
        for &(a, b) in &self.free_pairs {
            let bit = idx & 1 == 1;
            idx >>= 1;
            diseq[a * n + b] = bit;
            diseq[b * n + a] = bit;
        }
        RawModel { size: n, values, diseq, constants }
    }

    pub fn structure(&self, raw: &RawModel) -> Structure {
        let mut s = Structure::empty(element_names(self.size), &self.relations)
            .expect("tuple counts were checked when the space was built");
        for (r, vals) in raw.values.iter().enumerate() {
            for (i, &v) in vals.iter().enumerate() {
                s.set_atom(r, i, v);
            }
        }
        let mut eq = Bits::new(self.size * self.size);
        for (i, &d) in raw.diseq.iter().enumerate() {
            eq.set(i, d);
        }
        s.eq_neg = eq;
        s.constants = self.constants.iter().cloned().zip(raw.constants.iter().copied()).collect();
        s
    }

    pub fn model(&self, idx: u128) -> Structure {
        self.structure(&self.decode(idx))
    }
}

/// Spaces for sizes `1..=max_size`, after checking the total against the
/// budget.
pub fn spaces(
    sig: &Signature,
    max_size: usize,
    restriction: &Restriction,
    budget: u64,
) -> Result<Vec<(ModelSpace, u64)>, SearchError> {
    if max_size == 0 {
        return Err(SearchError::ZeroSize);
    }
    let mut out = Vec::new();
    let mut total: u128 = 0;
    for size in 1..=max_size {
        let space = ModelSpace::new(sig, size, restriction.clone())?;
        let count = space.count();
        total = count.and_then(|c| total.checked_add(c)).unwrap_or(u128::MAX);
        if total > budget as u128 {
            let needed = if total == u128::MAX { "more than 2^128".to_string() } else { total.to_string() };
            return Err(SearchError::BudgetExceeded { needed, budget });
        }
        out.push((space, count.unwrap_or(0) as u64));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    NoCountermodelUpToBound { max_size: usize, models_checked: u64 },
    Countermodel { model: TFModel },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::NoCountermodelUpToBound { .. })
    }
}

fn check_sentence(phi: &Formula) -> Result<(), SearchError> {
    if free_vars(phi).is_empty() {
        Ok(())
    } else {
        Err(SearchError::NotSentence(phi.to_string()))
    }
}

/// Looks for a model (domain size at most `max_size`) in which every premise
/// is true and the conclusion is not. Models are visited in size order and
/// then index order, so the reported countermodel is deterministic.
pub fn consequence_bounded(
    premises: &[Formula],
    conclusion: &Formula,
    max_size: usize,
    sig: &Signature,
    budget: u64,
) -> Result<Verdict, SearchError> {
    for f in premises.iter().chain(std::iter::once(conclusion)) {
        check_sentence(f)?;
    }
    let mut checked = 0;
    for (space, count) in spaces(sig, max_size, &Restriction::default(), budget)? {
        let probe = space.model(0);
        let prem: Vec<Compiled> =
            premises.iter().map(|f| Compiled::new(f, &probe, &[])).collect::<Result<_, _>>()?;
        let concl = Compiled::new(conclusion, &probe, &[])?;
        let hit = par::find_first(count, |i| {
            let s = space.model(i as u128);
            (prem.iter().all(|p| p.eval(&s, &[]).is_true) && !concl.eval(&s, &[]).is_true).then_some(s)
        });
        if let Some((_, s)) = hit {
            return Ok(Verdict::Countermodel { model: s.to_tf() });
        }
        checked += count;
    }
    Ok(Verdict::NoCountermodelUpToBound { max_size, models_checked: checked })
}

pub fn validity_bounded(phi: &Formula, max_size: usize, sig: &Signature, budget: u64) -> Result<Verdict, SearchError> {
    consequence_bounded(&[], phi, max_size, sig, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_open;

    fn f(text: &str) -> Formula {
        parse_open(text).unwrap().0
    }

    fn props(names: &[&str]) -> Signature {
        names.iter().fold(Signature::new(), |s, n| s.with_relation(*n, 0))
    }

    #[test]
    fn counts() {
        let sig = Signature::new().with_relation("R", 1).with_relation("S", 2);
        let space = ModelSpace::new(&sig, 2, Restriction::default()).unwrap();
        assert_eq!(space.count(), Some(4u128.pow(2 + 4) * 8));
        let classical = Restriction {
            atom_values: vec![TruthValue::ONE, TruthValue::ZERO],
            diagonal: PairRule::Never,
            off_diagonal: PairRule::Always,
        };
        let space = ModelSpace::new(&sig, 2, classical).unwrap();
        assert_eq!(space.count(), Some(2u128.pow(6)));
        let m = space.model(0);
        assert!(m.eq_neg(0, 1) && !m.eq_neg(0, 0));
    }

    #[test]
    fn decoded_models_are_valid_and_distinct() {
        let sig = Signature::new().with_relation("R", 1).with_constant("c");
        let space = ModelSpace::new(&sig, 2, Restriction::default()).unwrap();
        let n = space.count().unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for i in 0..n {
            let m = space.model(i).to_tf();
            m.validate().unwrap();
            assert!(seen.insert(serde_json::to_string(&m).unwrap()));
        }
    }

    #[test]
    fn explosion_has_a_countermodel() {
        let v = consequence_bounded(&[f("p() & ~p()")], &Formula::Bot, 1, &props(&["p"]), DEFAULT_BUDGET).unwrap();
        let Verdict::Countermodel { model } = v else { panic!("expected countermodel") };
        assert_eq!(model.atom_value("p", &[]), Some(TruthValue::BOTH));
    }

    #[test]
    fn validity_examples() {
        let sig = props(&["p", "q"]);
        for text in ["p() | (p() -> q())", "~~p() <-> p()", "p() | not p()"] {
            assert!(validity_bounded(&f(text), 2, &sig, DEFAULT_BUDGET).unwrap().holds(), "{text}");
        }
        let v = validity_bounded(&f("p() | ~p()"), 2, &sig, DEFAULT_BUDGET).unwrap();
        let Verdict::Countermodel { model } = v else { panic!("expected countermodel") };
        assert_eq!(model.atom_value("p", &[]), Some(TruthValue::NEITHER));
        assert!(consequence_bounded(&[f("p()")], &f("p()"), 2, &sig, DEFAULT_BUDGET).unwrap().holds());
    }

    #[test]
    fn errors() {
        let sig = Signature::new().with_relation("R", 2);
        assert!(matches!(
            validity_bounded(&f("forall x. R(x, x)"), 4, &sig, 1000),
            Err(SearchError::BudgetExceeded { .. })
        ));
        assert!(matches!(validity_bounded(&f("R(x, x)"), 1, &sig, 1000), Err(SearchError::NotSentence(_))));
    }
}
