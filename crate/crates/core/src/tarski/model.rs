//! Four-valued Tarski models, their satisfaction recursion, and the two
//! transformations to and from T/F-models.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{Formula, Term};
use crate::semantics::tables::{and, iff, imp, neg, or};
use crate::semantics::{Bits, Structure, TFModel, TruthValue};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct FVRelation {
    pub arity: usize,
    /// Keyed by the tuple written `(a,b)`.
    pub values: BTreeMap<String, TruthValue>,
}

/// A Tarski model whose relations take four-valued meta truth values.
/// `diseq` holds the pairs for which the meta statement `a ≠ b` is true.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVTarskiModel {
    pub domain: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub constants: BTreeMap<String, String>,
    #[serde(default)]
    pub relations: BTreeMap<String, FVRelation>,
    #[serde(default)]
    pub diseq: BTreeSet<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TarskiError {
    #[error("domain empty")]
    EmptyDomain,
    #[error("duplicate domain element `{0}`")]
    DuplicateElement(String),
    #[error("relation `{relation}`: bad tuple key `{key}`")]
    BadTuple { relation: String, key: String },
    #[error("relation `{relation}` has no value for {key}")]
    Partial { relation: String, key: String },
    #[error("diseq not symmetric: ({0}, {1}) present without ({1}, {0})")]
    Asymmetric(String, String),
    #[error("`{0}` is not a domain element")]
    UnknownElement(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("relation `{relation}` has arity {arity} but is applied to {found} terms")]
    ArityMismatch { relation: String, arity: usize, found: usize },
}

pub fn tuple_key(names: &[&str]) -> String {
    format!("({})", names.join(","))
}

/// The indexed form used for evaluation and conversion. Tuple `t` of arity
/// `k` sits at `t0 + t1·n + …`, matching [`Structure`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Indexed {
    pub names: Vec<String>,
    pub constants: BTreeMap<String, usize>,
    pub rel_names: Vec<String>,
    pub rels: Vec<(usize, Vec<TruthValue>)>,
    /// `diseq[a * n + b]`.
    pub diseq: Vec<bool>,
}

impl FVTarskiModel {
    pub fn indexed(&self) -> Result<Indexed, TarskiError> {
        if self.domain.is_empty() {
            return Err(TarskiError::EmptyDomain);
        }
        let mut index = HashMap::new();
        for (i, a) in self.domain.iter().enumerate() {
            if index.insert(a.as_str(), i).is_some() {
                return Err(TarskiError::DuplicateElement(a.clone()));
            }
        }
        let n = self.domain.len();
        let elem = |a: &str| index.get(a).copied().ok_or_else(|| TarskiError::UnknownElement(a.to_string()));
        let mut rels = Vec::new();
        for (r, rel) in &self.relations {
            let count = n.pow(rel.arity as u32);
            let mut vals: Vec<Option<TruthValue>> = vec![None; count];
            for (key, &v) in &rel.values {
                let bad = || TarskiError::BadTuple { relation: r.clone(), key: key.clone() };
                let inner = key.strip_prefix('(').and_then(|k| k.strip_suffix(')')).ok_or_else(bad)?;
                let parts: Vec<&str> = if inner.is_empty() { Vec::new() } else { inner.split(',').map(str::trim).collect() };
                if parts.len() != rel.arity {
                    return Err(bad());
                }
                let mut i = 0;
                for p in parts.iter().rev() {
                    i = i * n + elem(p)?;
                }
                vals[i] = Some(v);
            }
            let mut full = Vec::with_capacity(count);
            for (i, v) in vals.into_iter().enumerate() {
                match v {
                    Some(v) => full.push(v),
                    None => {
                        let names: Vec<&str> = decode(i, rel.arity, n).into_iter().map(|e| self.domain[e].as_str()).collect();
                        return Err(TarskiError::Partial { relation: r.clone(), key: tuple_key(&names) });
                    }
                }
            }
            rels.push((rel.arity, full));
        }
        let mut diseq = vec![false; n * n];
        for (a, b) in &self.diseq {
            if !self.diseq.contains(&(b.clone(), a.clone())) {
                return Err(TarskiError::Asymmetric(a.clone(), b.clone()));
            }
            diseq[elem(a)? * n + elem(b)?] = true;
        }
        let constants = self.constants.iter().map(|(c, a)| Ok((c.clone(), elem(a)?))).collect::<Result<_, TarskiError>>()?;
        Ok(Indexed { names: self.domain.clone(), constants, rel_names: self.relations.keys().cloned().collect(), rels, diseq })
    }

    pub fn validate(&self) -> Result<(), TarskiError> {
        self.indexed().map(|_| ())
    }
}

fn decode(mut i: usize, arity: usize, n: usize) -> Vec<usize> {
    (0..arity)
        .map(|_| {
            let e = i % n;
            i /= n;
            e
        })
        .collect()
}

impl Indexed {
    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn to_model(&self) -> FVTarskiModel {
        let n = self.size();
        let relations = self
            .rel_names
            .iter()
            .zip(&self.rels)
            .map(|(r, (arity, vals))| {
                let values = vals
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| {
                        let names: Vec<&str> = decode(i, *arity, n).into_iter().map(|e| self.names[e].as_str()).collect();
                        (tuple_key(&names), v)
                    })
                    .collect();
                (r.clone(), FVRelation { arity: *arity, values })
            })
            .collect();
        let mut diseq = BTreeSet::new();
        for a in 0..n {
            for b in 0..n {
                if self.diseq[a * n + b] {
                    diseq.insert((self.names[a].clone(), self.names[b].clone()));
                }
            }
        }
        FVTarskiModel {
            domain: self.names.clone(),
            constants: self.constants.iter().map(|(c, &a)| (c.clone(), self.names[a].clone())).collect(),
            relations,
            diseq,
        }
    }

    /// The T/F-model simulating this Tarski model: a tuple is in the
    /// positive part when its value is true (`!R`) and in the negative part
    /// when its value is false (`¬?R`); negative equality is `diseq`.
    pub fn to_tf(&self) -> Structure {
        let pairs: Vec<(String, usize)> = self.rel_names.iter().cloned().zip(self.rels.iter().map(|r| r.0)).collect();
        let mut s = Structure::empty(self.names.clone(), &pairs).expect("relation sizes already materialized");
        for (ri, (_, vals)) in self.rels.iter().enumerate() {
            for (i, v) in vals.iter().enumerate() {
                s.rels[ri].pos.set(i, v.is_true);
                s.rels[ri].neg.set(i, v.is_false);
            }
        }
        let mut eq = Bits::new(self.diseq.len());
        for (i, &d) in self.diseq.iter().enumerate() {
            eq.set(i, d);
        }
        s.eq_neg = eq;
        s.constants = self.constants.clone();
        s
    }

    /// The Tarski model simulating a T/F-model. Positive equality is
    /// identity, so every equivalence block is a single element and the
    /// quotient keeps the carrier; `a ≠ b` holds exactly on negative
    /// equality.
    pub fn from_tf(s: &Structure) -> Indexed {
        let n = s.size;
        let rels = s
            .rels
            .iter()
            .map(|r| {
                let count = n.pow(r.arity as u32);
                (r.arity, (0..count).map(|i| TruthValue::new(r.pos.get(i), r.neg.get(i))).collect())
            })
            .collect();
        Indexed {
            names: s.names.clone(),
            constants: s.constants.clone(),
            rel_names: s.rel_names.clone(),
            rels,
            diseq: (0..n * n).map(|i| s.eq_neg.get(i)).collect(),
        }
    }

    /// The value of "M satisfies phi" under `env`, by the Tarski clauses
    /// read with four-valued meta connectives.
    pub fn value(&self, phi: &Formula, env: &mut Vec<(String, usize)>) -> Result<TruthValue, TarskiError> {
        let n = self.size();
        Ok(match phi {
            Formula::Bot => TruthValue::ZERO,
            Formula::Eq(a, b) => {
                let (a, b) = (self.term(a, env)?, self.term(b, env)?);
                TruthValue::new(a == b, self.diseq[a * n + b])
            }
            Formula::Atom(r, ts) => {
                let ri = self.rel_names.iter().position(|x| x == r).ok_or_else(|| TarskiError::UnknownRelation(r.clone()))?;
                let (arity, vals) = &self.rels[ri];
                if *arity != ts.len() {
                    return Err(TarskiError::ArityMismatch { relation: r.clone(), arity: *arity, found: ts.len() });
                }
                let mut i = 0;
                for t in ts.iter().rev() {
                    i = i * n + self.term(t, env)?;
                }
                vals[i]
            }
            Formula::Neg(a) => neg(self.value(a, env)?),
            Formula::And(a, b) => and(self.value(a, env)?, self.value(b, env)?),
            Formula::Or(a, b) => or(self.value(a, env)?, self.value(b, env)?),
            Formula::Imp(a, b) => imp(self.value(a, env)?, self.value(b, env)?),
            Formula::Iff(a, b) => iff(self.value(a, env)?, self.value(b, env)?),
            Formula::Forall(x, a) => self.quantify(x, a, env, TruthValue::ONE, and)?,
            Formula::Exists(x, a) => self.quantify(x, a, env, TruthValue::ZERO, or)?,
            Formula::StrongImp(a, b) => {
                let (a, b) = (self.value(a, env)?, self.value(b, env)?);
                and(imp(a, b), imp(neg(b), neg(a)))
            }
            Formula::StrongIff(a, b) => {
                let (a, b) = (self.value(a, env)?, self.value(b, env)?);
                and(iff(a, b), iff(neg(a), neg(b)))
            }
            Formula::ClassNeg(a) => imp(self.value(a, env)?, TruthValue::ZERO),
            Formula::Bang(a) => neg(imp(self.value(a, env)?, TruthValue::ZERO)),
            Formula::Quest(a) => imp(neg(self.value(a, env)?), TruthValue::ZERO),
            Formula::Circ(a) => {
                let v = self.value(a, env)?;
                iff(neg(imp(v, TruthValue::ZERO)), imp(neg(v), TruthValue::ZERO))
            }
        })
    }

    fn quantify(
        &self,
        x: &str,
        body: &Formula,
        env: &mut Vec<(String, usize)>,
        unit: TruthValue,
        op: fn(TruthValue, TruthValue) -> TruthValue,
    ) -> Result<TruthValue, TarskiError> {
        let mut acc = unit;
        env.push((x.to_string(), 0));
        for a in 0..self.size() {
            env.last_mut().expect("pushed").1 = a;
            match self.value(body, env) {
                Ok(v) => acc = op(acc, v),
                Err(e) => {
                    env.pop();
                    return Err(e);
                }
            }
        }
        env.pop();
        Ok(acc)
    }

    fn term(&self, t: &Term, env: &[(String, usize)]) -> Result<usize, TarskiError> {
        match t {
            Term::Var(x) => env
                .iter()
                .rev()
                .find(|(y, _)| y == x)
                .map(|&(_, a)| a)
                .ok_or_else(|| TarskiError::UnboundVariable(x.clone())),
            Term::Const(c) => self.constants.get(c).copied().ok_or_else(|| TarskiError::UnknownConstant(c.clone())),
        }
    }
}

/// The value of "M satisfies phi" under the assignment `rho`.
pub fn tarski_value(m: &FVTarskiModel, phi: &Formula, rho: &BTreeMap<String, String>) -> Result<TruthValue, TarskiError> {
    let ix = m.indexed()?;
    let mut env = Vec::new();
    for (x, a) in rho {
        let i = ix.names.iter().position(|b| b == a).ok_or_else(|| TarskiError::UnknownElement(a.clone()))?;
        env.push((x.clone(), i));
    }
    ix.value(phi, &mut env)
}

pub fn to_tf(m: &FVTarskiModel) -> Result<TFModel, TarskiError> {
    Ok(m.indexed()?.to_tf().to_tf())
}

pub fn from_tf(n: &TFModel) -> Result<FVTarskiModel, crate::semantics::ModelError> {
    Ok(Indexed::from_tf(&Structure::from_tf(n)?).to_model())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_open;

    const SAMPLE: &str = r#"{"domain":["a"],"relations":{"R":{"arity":1,"values":{"(a)":"b"}}},"diseq":[]}"#;

    fn f(t: &str) -> Formula {
        parse_open(t).unwrap().0
    }

    fn rho(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs.iter().map(|(x, a)| (x.to_string(), a.to_string())).collect()
    }

    #[test]
    fn json_shape() {
        let m: FVTarskiModel = serde_json::from_str(SAMPLE).unwrap();
        assert_eq!(serde_json::to_string(&m).unwrap(), SAMPLE);
        m.validate().unwrap();
    }

    #[test]
    fn glut_satisfies_contradiction() {
        let m: FVTarskiModel = serde_json::from_str(SAMPLE).unwrap();
        let v = tarski_value(&m, &f("R(x) & ~R(x)"), &rho(&[("x", "a")])).unwrap();
        assert_eq!(v, TruthValue::BOTH);
        assert_eq!(tarski_value(&m, &Formula::Bot, &rho(&[])).unwrap(), TruthValue::ZERO);
    }

    #[test]
    fn conversions() {
        let m: FVTarskiModel = serde_json::from_str(SAMPLE).unwrap();
        let tf = to_tf(&m).unwrap();
        let r = &tf.relations["R"];
        assert!(r.pos.contains(&vec!["a".to_string()]) && r.neg.contains(&vec!["a".to_string()]));
        assert_eq!(from_tf(&tf).unwrap(), m);

        let n: TFModel = serde_json::from_str(
            r#"{"domain":["a","b"],"relations":{},"eq_neg":[["a","b"],["b","a"]]}"#,
        )
        .unwrap();
        let back = from_tf(&n).unwrap();
        let v = tarski_value(&back, &f("x = y"), &rho(&[("x", "a"), ("y", "b")])).unwrap();
        assert_eq!(v, TruthValue::ZERO);
    }

    #[test]
    fn invalid_models() {
        let mut m: FVTarskiModel = serde_json::from_str(SAMPLE).unwrap();
        m.domain.push("b".into());
        assert!(matches!(m.validate(), Err(TarskiError::Partial { .. })));
        m.relations.get_mut("R").unwrap().values.insert("(b)".into(), TruthValue::ONE);
        m.validate().unwrap();
        m.diseq.insert(("a".into(), "b".into()));
        assert!(matches!(m.validate(), Err(TarskiError::Asymmetric(..))));
        m.domain.clear();
        assert_eq!(m.validate(), Err(TarskiError::EmptyDomain));
    }
}
