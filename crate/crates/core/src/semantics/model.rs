//! Finite T/F-models and their indexed form.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::value::TruthValue;
use crate::formula::Signature;

/// Interpretation of one relation: positive and negative extensions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelInterp {
    pub arity: usize,
    #[serde(default)]
    pub pos: BTreeSet<Vec<String>>,
    #[serde(default)]
    pub neg: BTreeSet<Vec<String>>,
}

/// A finite T/F-model. Positive equality is identity of elements; negative
/// equality is `eq_neg`, which must be symmetric.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TFModel {
    pub domain: Vec<String>,
    #[serde(default)]
    pub constants: BTreeMap<String, String>,
    #[serde(default)]
    pub relations: BTreeMap<String, RelInterp>,
    #[serde(default)]
    pub eq_neg: BTreeSet<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("domain empty")]
    EmptyDomain,
    #[error("domain element `{0}` listed twice")]
    DuplicateElement(String),
    #[error("eq_neg not symmetric: ({0}, {1}) present without ({1}, {0})")]
    AsymmetricEqNeg(String, String),
    #[error("relation `{relation}`: tuple of length {found}, arity is {arity}")]
    ArityMismatch { relation: String, arity: usize, found: usize },
    #[error("`{0}` is not a domain element")]
    UnknownElement(String),
    #[error("constant `{constant}` points to `{target}`, which is not a domain element")]
    DanglingConstant { constant: String, target: String },
    #[error("relation `{0}` is too large to index")]
    TooLarge(String),
}

impl TFModel {
    pub fn validate(&self) -> Result<(), ModelError> {
        if self.domain.is_empty() {
            return Err(ModelError::EmptyDomain);
        }
        let mut seen = BTreeSet::new();
        for a in &self.domain {
            if !seen.insert(a) {
                return Err(ModelError::DuplicateElement(a.clone()));
            }
        }
        for (a, b) in &self.eq_neg {
            for x in [a, b] {
                if !seen.contains(x) {
                    return Err(ModelError::UnknownElement(x.clone()));
                }
            }
            if !self.eq_neg.contains(&(b.clone(), a.clone())) {
                return Err(ModelError::AsymmetricEqNeg(a.clone(), b.clone()));
            }
        }
        for (name, rel) in &self.relations {
            for t in rel.pos.iter().chain(&rel.neg) {
                if t.len() != rel.arity {
                    return Err(ModelError::ArityMismatch {
                        relation: name.clone(),
                        arity: rel.arity,
                        found: t.len(),
                    });
                }
                if let Some(x) = t.iter().find(|x| !seen.contains(x)) {
                    return Err(ModelError::UnknownElement(x.clone()));
                }
            }
        }
        for (c, target) in &self.constants {
            if !seen.contains(target) {
                return Err(ModelError::DanglingConstant { constant: c.clone(), target: target.clone() });
            }
        }
        Ok(())
    }

    /// The signature this model interprets.
    pub fn signature(&self) -> Signature {
        Signature {
            relations: self.relations.iter().map(|(r, i)| (r.clone(), i.arity)).collect(),
            constants: self.constants.keys().cloned().collect(),
        }
    }

    /// The value of an atomic fact as a pair of memberships.
    pub fn atom_value(&self, rel: &str, tuple: &[String]) -> Option<TruthValue> {
        let r = self.relations.get(rel)?;
        Some(TruthValue::new(r.pos.contains(tuple), r.neg.contains(tuple)))
    }
}

/// Largest number of tuples a single relation may have in indexed form.
pub const MAX_TUPLES: usize = 1 << 26;

/// Dense bitset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bits(Vec<u64>);

impl Bits {
    pub fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.0[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        if v {
            self.0[i >> 6] |= 1 << (i & 63);
        } else {
            self.0[i >> 6] &= !(1 << (i & 63));
        }
    }
}

/// One relation in indexed form: tuple `(t0, .., tk-1)` has index
/// `t0 + t1*n + ... + tk-1*n^(k-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexedRel {
    pub arity: usize,
    pub pos: Bits,
    pub neg: Bits,
}

/// A model with elements numbered `0..size`, the form the evaluator runs on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    pub size: usize,
    pub names: Vec<String>,
    pub constants: BTreeMap<String, usize>,
    pub rel_names: Vec<String>,
    pub rels: Vec<IndexedRel>,
    /// `eq_neg[a * size + b]`.
    pub eq_neg: Bits,
}

pub fn tuple_count(size: usize, arity: usize) -> Option<usize> {
    let mut n: usize = 1;
    for _ in 0..arity {
        n = n.checked_mul(size)?;
    }
    (n <= MAX_TUPLES).then_some(n)
}

impl Structure {
    /// An empty structure: no relation or equality facts.
    pub fn empty(names: Vec<String>, relations: &[(String, usize)]) -> Result<Self, ModelError> {
        let size = names.len();
        let mut rels = Vec::with_capacity(relations.len());
        for (r, k) in relations {
            let n = tuple_count(size, *k).ok_or_else(|| ModelError::TooLarge(r.clone()))?;
            rels.push(IndexedRel { arity: *k, pos: Bits::new(n), neg: Bits::new(n) });
        }
        Ok(Structure {
            size,
            names,
            constants: BTreeMap::new(),
            rel_names: relations.iter().map(|(r, _)| r.clone()).collect(),
            rels,
            eq_neg: Bits::new(size * size),
        })
    }

    pub fn from_tf(m: &TFModel) -> Result<Self, ModelError> {
        m.validate()?;
        let index: HashMap<&str, usize> = m.domain.iter().enumerate().map(|(i, a)| (a.as_str(), i)).collect();
        let rels: Vec<(String, usize)> = m.relations.iter().map(|(r, i)| (r.clone(), i.arity)).collect();
        let mut s = Structure::empty(m.domain.clone(), &rels)?;
        for (ri, rel) in m.relations.values().enumerate() {
            for t in &rel.pos {
                let i = s.tuple_index(t.iter().map(|x| index[x.as_str()]));
                s.rels[ri].pos.set(i, true);
            }
            for t in &rel.neg {
                let i = s.tuple_index(t.iter().map(|x| index[x.as_str()]));
                s.rels[ri].neg.set(i, true);
            }
        }
        for (a, b) in &m.eq_neg {
            s.set_eq_neg(index[a.as_str()], index[b.as_str()], true);
        }
        s.constants = m.constants.iter().map(|(c, a)| (c.clone(), index[a.as_str()])).collect();
        Ok(s)
    }

    pub fn to_tf(&self) -> TFModel {
        let mut relations = BTreeMap::new();
        for (ri, name) in self.rel_names.iter().enumerate() {
            let rel = &self.rels[ri];
            let mut interp = RelInterp { arity: rel.arity, ..Default::default() };
            for i in 0..tuple_count(self.size, rel.arity).unwrap_or(0) {
                if rel.pos.get(i) {
                    interp.pos.insert(self.decode_tuple(i, rel.arity));
                }
                if rel.neg.get(i) {
                    interp.neg.insert(self.decode_tuple(i, rel.arity));
                }
            }
            relations.insert(name.clone(), interp);
        }
        let mut eq_neg = BTreeSet::new();
        for a in 0..self.size {
            for b in 0..self.size {
                if self.eq_neg(a, b) {
                    eq_neg.insert((self.names[a].clone(), self.names[b].clone()));
                }
            }
        }
        TFModel {
            domain: self.names.clone(),
            constants: self.constants.iter().map(|(c, &a)| (c.clone(), self.names[a].clone())).collect(),
            relations,
            eq_neg,
        }
    }

    pub fn rel_index(&self, name: &str) -> Option<usize> {
        self.rel_names.iter().position(|r| r == name)
    }

    #[inline]
    pub fn tuple_index(&self, elems: impl DoubleEndedIterator<Item = usize>) -> usize {
        elems.rev().fold(0, |acc, e| acc * self.size + e)
    }

    pub fn decode_tuple(&self, mut i: usize, arity: usize) -> Vec<String> {
        let mut out = Vec::with_capacity(arity);
        for _ in 0..arity {
            out.push(self.names[i % self.size].clone());
            i /= self.size;
        }
        out
    }

    #[inline]
    pub fn eq_neg(&self, a: usize, b: usize) -> bool {
        self.eq_neg.get(a * self.size + b)
    }

    pub fn set_eq_neg(&mut self, a: usize, b: usize, v: bool) {
        self.eq_neg.set(a * self.size + b, v);
        self.eq_neg.set(b * self.size + a, v);
    }

    #[inline]
    pub fn atom(&self, rel: usize, tuple: usize) -> TruthValue {
        let r = &self.rels[rel];
        TruthValue::new(r.pos.get(tuple), r.neg.get(tuple))
    }

    pub fn set_atom(&mut self, rel: usize, tuple: usize, v: TruthValue) {
        self.rels[rel].pos.set(tuple, v.is_true);
        self.rels[rel].neg.set(tuple, v.is_false);
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|a| a == name)
    }
}
