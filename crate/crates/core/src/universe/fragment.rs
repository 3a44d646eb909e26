//! Member-closed finite fragments of W as evaluator structures over `{in: 2}`.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use super::store::{SetId, Universe};
use crate::formula::{free_vars, Formula, MEMBERSHIP};
use crate::semantics::{Compiled, EvalError, Structure, TFModel, TruthValue};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FragmentError {
    #[error("fragment not member-closed: {member} is a member of {set} but not in the fragment")]
    NotMemberClosed { set: String, member: String },
    #[error("{0} is not in the fragment")]
    NotInFragment(String),
    #[error("free variables {found:?} are not covered by {expected:?}")]
    FreeVariables { expected: Vec<String>, found: Vec<String> },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// A member-closed list of sets with its membership structure. Element `i`
/// of the structure is `ids()[i]` and is named by its literal.
#[derive(Clone, Debug)]
pub struct Fragment {
    ids: Vec<SetId>,
    index: HashMap<SetId, usize>,
    structure: Structure,
}

impl Fragment {
    /// Builds the fragment on `ids` in the given order (duplicates dropped).
    pub fn new(u: &Universe, ids: Vec<SetId>) -> Result<Self, FragmentError> {
        let mut index = HashMap::with_capacity(ids.len());
        let mut list = Vec::with_capacity(ids.len());
        for id in ids {
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(id) {
                e.insert(list.len());
                list.push(id);
            }
        }
        for &id in &list {
            let node = u.get(id);
            if let Some(&m) = node.pos.iter().chain(&node.quest).find(|m| !index.contains_key(m)) {
                return Err(FragmentError::NotMemberClosed { set: u.literal(id), member: u.literal(m) });
            }
        }
        let names = list.iter().map(|&id| u.literal(id)).collect();
        let mut s = Structure::empty(names, &[(MEMBERSHIP.to_string(), 2)]).expect("fragment fits");
        let n = list.len();
        for (yi, &y) in list.iter().enumerate() {
            let node = u.get(y);
            for xi in 0..n {
                s.rels[0].neg.set(xi + yi * n, true);
            }
            for m in &node.pos {
                s.rels[0].pos.set(index[m] + yi * n, true);
            }
            for m in &node.quest {
                s.rels[0].neg.set(index[m] + yi * n, false);
            }
        }
        for a in 0..n {
            for b in a..n {
                if u.eq_false(list[a], list[b]) {
                    s.set_eq_neg(a, b, true);
                }
            }
        }
        Ok(Fragment { ids: list, index, structure: s })
    }

    /// The smallest member-closed fragment containing `seeds`, ordered by
    /// rank and then literal.
    pub fn closure(u: &Universe, seeds: &[SetId]) -> Self {
        let mut seen: BTreeSet<SetId> = BTreeSet::new();
        let mut stack: Vec<SetId> = seeds.to_vec();
        while let Some(id) = stack.pop() {
            if seen.insert(id) {
                let node = u.get(id);
                stack.extend(node.pos.iter().chain(&node.quest).filter(|m| !seen.contains(m)));
            }
        }
        let mut keyed: Vec<(u32, String, SetId)> = seen.into_iter().map(|id| (u.rank(id), u.literal(id), id)).collect();
        keyed.sort();
        Fragment::new(u, keyed.into_iter().map(|(_, _, id)| id).collect()).expect("closure is member-closed")
    }

    /// The fragment `W_n` in enumeration order.
    pub fn level(u: &Universe, n: u32) -> Result<Self, super::LevelError> {
        let ids = u.enumerate_level(n)?;
        Ok(Fragment::new(u, ids).expect("levels are member-closed"))
    }

    pub fn ids(&self) -> &[SetId] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, id: SetId) -> bool {
        self.index.contains_key(&id)
    }

    pub fn index_of(&self, id: SetId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    fn require(&self, u: &Universe, id: SetId) -> Result<usize, FragmentError> {
        self.index_of(id).ok_or_else(|| FragmentError::NotInFragment(u.literal(id)))
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn as_tf_model(&self) -> TFModel {
        self.structure.to_tf()
    }

    /// Adds a relation whose value on each tuple of element indices is `f`.
    /// Used to tabulate a formula once and reuse it as an atom.
    pub fn add_relation(&mut self, name: &str, arity: usize, f: impl Fn(&[usize]) -> TruthValue) {
        let n = self.len();
        let mut s = Structure::empty(self.structure.names.clone(), &[(name.to_string(), arity)]).expect("relation fits");
        let count = n.pow(arity as u32);
        let mut tuple = vec![0usize; arity];
        for i in 0..count {
            let mut k = i;
            for slot in tuple.iter_mut() {
                *slot = k % n;
                k /= n;
            }
            s.set_atom(0, i, f(&tuple));
        }
        self.structure.rel_names.push(name.to_string());
        self.structure.rels.push(s.rels.pop().expect("one relation"));
    }

    pub fn compile(&self, phi: &Formula, params: &[&str]) -> Result<Compiled, EvalError> {
        Compiled::new(phi, &self.structure, params)
    }

    /// Evaluates `phi` with its free variables bound by `env`.
    pub fn eval(&self, u: &Universe, phi: &Formula, env: &[(&str, SetId)]) -> Result<TruthValue, FragmentError> {
        let names: Vec<&str> = env.iter().map(|(x, _)| *x).collect();
        let args = env.iter().map(|&(_, id)| self.require(u, id)).collect::<Result<Vec<_>, _>>()?;
        Ok(self.compile(phi, &names)?.eval(&self.structure, &args))
    }

    /// `{z ∈ set : phi(z)}`: the positive side keeps `z ∈ set.pos` where
    /// `phi(z)` is designated, the ?-side keeps `z ∈ set.quest` where it is
    /// not false. Quantifiers in `phi` range over this fragment.
    pub fn comprehend(
        &self,
        u: &Universe,
        set: SetId,
        var: &str,
        phi: &Formula,
        env: &[(&str, SetId)],
    ) -> Result<SetId, FragmentError> {
        let mut expected: Vec<String> = env.iter().map(|(x, _)| x.to_string()).collect();
        expected.push(var.to_string());
        let found: Vec<String> = free_vars(phi).into_iter().collect();
        if found.iter().any(|x| !expected.contains(x)) {
            return Err(FragmentError::FreeVariables { expected, found });
        }
        let mut names: Vec<&str> = vec![var];
        names.extend(env.iter().map(|(x, _)| *x));
        let mut args = vec![0usize];
        for &(_, id) in env {
            args.push(self.require(u, id)?);
        }
        let c = self.compile(phi, &names)?;
        let node = u.get(set);
        let mut buf = Vec::new();
        let mut value = |z: SetId| -> Result<TruthValue, FragmentError> {
            args[0] = self.require(u, z)?;
            Ok(c.eval_in(&self.structure, &mut buf, &args))
        };
        let mut pos = Vec::new();
        for &z in &node.pos {
            if value(z)?.is_true {
                pos.push(z);
            }
        }
        let mut quest = Vec::new();
        for &z in &node.quest {
            if !value(z)?.is_false {
                quest.push(z);
            }
        }
        Ok(u.intern(pos, quest))
    }
}
