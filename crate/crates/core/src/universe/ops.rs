//! Membership, equality, extensions and the classical set constructors.

use thiserror::Error;

use super::store::{SetId, Universe};
use crate::semantics::TruthValue;

/// Highest level that [`Universe::enumerate_level`] will produce.
pub const MAX_LEVEL: u32 = 3;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("level {0} exceeds the enumeration bound {MAX_LEVEL}")]
pub struct LevelError(pub u32);

fn subset(a: &[SetId], b: &[SetId]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

fn disjoint_minus(a: &[SetId], b: &[SetId]) -> bool {
    // a ∖ b ≠ ∅
    !subset(a, b)
}

impl Universe {
    pub fn mem_true(&self, x: SetId, y: SetId) -> bool {
        self.get(y).pos.binary_search(&x).is_ok()
    }

    pub fn mem_false(&self, x: SetId, y: SetId) -> bool {
        self.get(y).quest.binary_search(&x).is_err()
    }

    pub fn mem_value(&self, x: SetId, y: SetId) -> TruthValue {
        TruthValue::new(self.mem_true(x, y), self.mem_false(x, y))
    }

    pub fn eq_true(&self, x: SetId, y: SetId) -> bool {
        x == y
    }

    pub fn eq_false(&self, x: SetId, y: SetId) -> bool {
        let (a, b) = (self.get(x), self.get(y));
        disjoint_minus(&a.pos, &b.quest) || disjoint_minus(&b.pos, &a.quest)
    }

    pub fn eq_value(&self, x: SetId, y: SetId) -> TruthValue {
        TruthValue::new(self.eq_true(x, y), self.eq_false(x, y))
    }

    pub fn bang_ext(&self, x: SetId) -> SetId {
        let p = self.get(x).pos.clone();
        self.intern(p.clone(), p)
    }

    pub fn quest_ext(&self, x: SetId) -> SetId {
        let q = self.get(x).quest.clone();
        self.intern(q.clone(), q)
    }

    pub fn realm(&self, x: SetId) -> SetId {
        let n = self.get(x);
        let all: Vec<SetId> = n.pos.iter().chain(&n.quest).copied().collect();
        self.intern(all.clone(), all)
    }

    pub fn is_classical(&self, x: SetId) -> bool {
        let n = self.get(x);
        n.pos == n.quest
    }

    pub fn is_consistent(&self, x: SetId) -> bool {
        let n = self.get(x);
        subset(&n.pos, &n.quest)
    }

    pub fn is_complete(&self, x: SetId) -> bool {
        let n = self.get(x);
        subset(&n.quest, &n.pos)
    }

    pub fn rank(&self, x: SetId) -> u32 {
        self.get(x).rank
    }

    /// Value of `x ⊆ y` read off the extensions.
    pub fn subset_value(&self, x: SetId, y: SetId) -> TruthValue {
        let (a, b) = (self.get(x), self.get(y));
        let t = subset(&a.pos, &b.pos) && subset(&a.quest, &b.quest);
        let f = disjoint_minus(&a.pos, &b.quest);
        TruthValue::new(t, f)
    }

    /// `{u_0, …, u_n}`: the classical set with exactly these members.
    pub fn classical_enum_set(&self, members: &[SetId]) -> SetId {
        self.intern(members.to_vec(), members.to_vec())
    }

    pub fn classical_singleton(&self, u: SetId) -> SetId {
        self.classical_enum_set(&[u])
    }

    pub fn classical_pair(&self, u: SetId, v: SetId) -> SetId {
        self.classical_enum_set(&[u, v])
    }

    /// `{{u}, {u, v}}` built from classical pairs.
    pub fn kuratowski(&self, u: SetId, v: SetId) -> SetId {
        let a = self.classical_singleton(u);
        let b = self.classical_pair(u, v);
        self.classical_pair(a, b)
    }

    pub fn union_set(&self, u: SetId) -> SetId {
        let n = self.get(u);
        let pos = n.pos.iter().flat_map(|&z| self.get(z).pos.clone()).collect();
        let quest = n.quest.iter().flat_map(|&z| self.get(z).quest.clone()).collect();
        self.intern(pos, quest)
    }

    /// The classical set of all `x` with `x.pos ⊆ u.pos` and `x.quest ⊆ u.quest`.
    pub fn powerset_bang(&self, u: SetId) -> SetId {
        let n = self.get(u);
        let ps = subsets(&n.pos);
        let qs = subsets(&n.quest);
        let mut members = Vec::with_capacity(ps.len() * qs.len());
        for p in &ps {
            for q in &qs {
                members.push(self.intern(p.clone(), q.clone()));
            }
        }
        self.classical_enum_set(&members)
    }

    /// All of `W_n`. Order: the positive-extension mask is the outer loop and
    /// the ?-extension mask the inner one, both over the order of `W_{n-1}`.
    pub fn enumerate_level(&self, n: u32) -> Result<Vec<SetId>, LevelError> {
        if n > MAX_LEVEL {
            return Err(LevelError(n));
        }
        let mut level: Vec<SetId> = Vec::new();
        for _ in 0..n {
            let subs = subsets(&level);
            let mut next = Vec::with_capacity(subs.len() * subs.len());
            for p in &subs {
                for q in &subs {
                    next.push(self.intern(p.clone(), q.clone()));
                }
            }
            level = next;
        }
        Ok(level)
    }
}

/// Subsets of `items` in mask order.
fn subsets(items: &[SetId]) -> Vec<Vec<SetId>> {
    assert!(items.len() < 24, "too many members to enumerate subsets");
    (0u32..1 << items.len())
        .map(|mask| items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &m)| m).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w1(u: &Universe) -> (SetId, SetId) {
        let e = u.empty();
        (e, e)
    }

    #[test]
    fn membership_values() {
        let u = Universe::new();
        let (w, _) = w1(&u);
        let x = u.intern(vec![w], vec![]);
        assert_eq!(u.mem_value(w, x), TruthValue::BOTH);
        assert_eq!(u.mem_value(w, u.intern(vec![], vec![w])), TruthValue::NEITHER);
        assert_eq!(u.mem_value(w, u.intern(vec![w], vec![w])), TruthValue::ONE);
        assert!(u.eq_false(x, u.empty()));
        assert_eq!(u.eq_value(x, x), TruthValue::BOTH);
    }

    #[test]
    fn extensions_and_classes() {
        let u = Universe::new();
        let (w, _) = w1(&u);
        let x = u.intern(vec![w], vec![]);
        assert_eq!(u.bang_ext(x), u.intern(vec![w], vec![w]));
        assert_eq!(u.quest_ext(x), u.empty());
        assert!(u.is_complete(x) && !u.is_consistent(x));
        let y = u.intern(vec![], vec![w]);
        assert!(u.is_consistent(y) && !u.is_complete(y));
        let c = u.intern(vec![w], vec![w]);
        assert_eq!(u.bang_ext(c), c);
        assert_eq!(u.subset_value(c, c), TruthValue::ONE);
        assert!(u.subset_value(c, u.empty()).is_false);
    }

    #[test]
    fn level_sizes() {
        let u = Universe::new();
        assert_eq!(u.enumerate_level(0).unwrap(), Vec::<SetId>::new());
        assert_eq!(u.enumerate_level(1).unwrap(), vec![u.empty()]);
        assert_eq!(u.enumerate_level(2).unwrap().len(), 4);
        let w3 = u.enumerate_level(3).unwrap();
        assert_eq!(w3.len(), 256);
        let mut sorted = w3.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 256);
        assert!(w3.iter().all(|&x| u.rank(x) < 3));
        assert_eq!(u.enumerate_level(4), Err(LevelError(4)));
    }

    #[test]
    fn powerset_counts() {
        let u = Universe::new();
        let p = u.powerset_bang(u.empty());
        assert_eq!(u.get(p).pos, vec![u.empty()]);
        for x in u.enumerate_level(3).unwrap() {
            let n = u.get(x);
            let expect = (1usize << n.pos.len()) * (1usize << n.quest.len());
            let ps = u.powerset_bang(x);
            assert_eq!(u.get(ps).pos.len(), expect);
            assert!(u.is_classical(ps));
        }
    }

    #[test]
    fn kuratowski_pairs_are_injective() {
        let u = Universe::new();
        let w2 = u.enumerate_level(2).unwrap();
        let mut seen = std::collections::HashSet::new();
        for &a in &w2 {
            for &b in &w2 {
                assert!(seen.insert(u.kuratowski(a, b)));
            }
        }
    }
}
