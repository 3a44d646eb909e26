//! Seeded random formulas and models for the sampling batteries.
//!
//! Every sampler takes an explicit RNG. Batteries derive one ChaCha stream
//! per trial from a single seed, so results do not depend on how trials are
//! scheduled across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::{Formula, Signature, Term};
use crate::semantics::{element_names, Structure, TruthValue};

/// The RNG for trial `stream` of a battery seeded with `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Shape of randomly generated formulas.
#[derive(Clone, Debug)]
pub struct FormulaGen {
    pub relations: Vec<(String, usize)>,
    pub vars: Vec<String>,
    pub constants: Vec<String>,
    /// Include equality atoms and `bot` among the leaves.
    pub eq_and_bot: bool,
    pub quantifiers: bool,
    pub sugar: bool,
}

impl FormulaGen {
    pub fn new(sig: &Signature, vars: &[&str]) -> Self {
        FormulaGen {
            relations: sig.relations.iter().map(|(r, &k)| (r.clone(), k)).collect(),
            vars: vars.iter().map(|v| v.to_string()).collect(),
            constants: sig.constants.iter().cloned().collect(),
            eq_and_bot: true,
            quantifiers: true,
            sugar: false,
        }
    }

    pub fn term<R: Rng + ?Sized>(&self, rng: &mut R) -> Term {
        let n = self.vars.len() + self.constants.len();
        let i = rng.random_range(0..n);
        if i < self.vars.len() {
            Term::Var(self.vars[i].clone())
        } else {
            Term::Const(self.constants[i - self.vars.len()].clone())
        }
    }

    pub fn var<R: Rng + ?Sized>(&self, rng: &mut R) -> String {
        self.vars[rng.random_range(0..self.vars.len())].clone()
    }

    pub fn leaf<R: Rng + ?Sized>(&self, rng: &mut R) -> Formula {
        let extra = if self.eq_and_bot { 2 } else { 0 };
        let i = rng.random_range(0..self.relations.len() + extra);
        match i.checked_sub(self.relations.len()) {
            None => {
                let (r, k) = &self.relations[i];
                Formula::atom(r.clone(), (0..*k).map(|_| self.term(rng)).collect())
            }
            Some(0) => Formula::eq(self.term(rng), self.term(rng)),
            Some(_) => Formula::Bot,
        }
    }

    /// A formula of depth at most `depth`.
    pub fn formula<R: Rng + ?Sized>(&self, rng: &mut R, depth: usize) -> Formula {
        if depth == 0 || rng.random_bool(0.25) {
            return self.leaf(rng);
        }
        let d = depth - 1;
        let mut kinds = 5;
        if self.quantifiers {
            kinds += 2;
        }
        let sugar_kinds = if self.sugar { 6 } else { 0 };
        let k = rng.random_range(0..kinds + sugar_kinds);
        match k {
            0 => Formula::neg(self.formula(rng, d)),
            1 => Formula::and(self.formula(rng, d), self.formula(rng, d)),
            2 => Formula::or(self.formula(rng, d), self.formula(rng, d)),
            3 => Formula::imp(self.formula(rng, d), self.formula(rng, d)),
            4 => Formula::iff(self.formula(rng, d), self.formula(rng, d)),
            _ if k < kinds => {
                let x = self.var(rng);
                if k == 5 {
                    Formula::forall(x, self.formula(rng, d))
                } else {
                    Formula::exists(x, self.formula(rng, d))
                }
            }
            _ => match k - kinds {
                0 => Formula::strong_imp(self.formula(rng, d), self.formula(rng, d)),
                1 => Formula::strong_iff(self.formula(rng, d), self.formula(rng, d)),
                2 => Formula::class_neg(self.formula(rng, d)),
                3 => Formula::bang(self.formula(rng, d)),
                4 => Formula::quest(self.formula(rng, d)),
                _ => Formula::circ(self.formula(rng, d)),
            },
        }
    }
}

pub fn random_value<R: Rng + ?Sized>(rng: &mut R) -> TruthValue {
    TruthValue::ALL[rng.random_range(0..4)]
}

/// A uniformly random model of the given size over `sig`.
pub fn random_structure<R: Rng + ?Sized>(rng: &mut R, sig: &Signature, size: usize) -> Structure {
    let rels: Vec<(String, usize)> = sig.relations.iter().map(|(r, &k)| (r.clone(), k)).collect();
    let mut s = Structure::empty(element_names(size), &rels).expect("small random models fit");
    for (ri, (_, k)) in rels.iter().enumerate() {
        for t in 0..size.pow(*k as u32) {
            s.set_atom(ri, t, random_value(rng));
        }
    }
    for a in 0..size {
        for b in a..size {
            s.set_eq_neg(a, b, rng.random_bool(0.5));
        }
    }
    s.constants = sig.constants.iter().map(|c| (c.clone(), rng.random_range(0..size))).collect();
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::free_vars;

    #[test]
    fn deterministic_per_stream() {
        let sig = Signature::new().with_relation("P", 1).with_relation("Q", 2).with_constant("c");
        let g = FormulaGen::new(&sig, &["x", "y"]);
        let a = g.formula(&mut stream_rng(7, 3), 4);
        let b = g.formula(&mut stream_rng(7, 3), 4);
        assert_eq!(a, b);
        assert!(a.depth() <= 4);
        assert!(free_vars(&a).iter().all(|v| v == "x" || v == "y"));
        let m = random_structure(&mut stream_rng(1, 1), &sig, 3);
        m.to_tf().validate().unwrap();
    }
}
