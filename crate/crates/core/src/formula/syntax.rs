//! Terms, formulas and signatures for function-free first-order vocabularies.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

/// A term. There are no function symbols, so a term is either a variable or
/// a constant symbol.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    Const(String),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::Const(name.into())
    }

    pub fn name(&self) -> &str {
        match self {
            Term::Var(n) | Term::Const(n) => n,
        }
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            Term::Var(n) => Some(n),
            Term::Const(_) => None,
        }
    }
}

/// Formula AST. The primitive connectives are `Atom` through `Exists`; the
/// remaining variants are abbreviations kept in the tree so they can be
/// printed and tabulated directly. See [`crate::formula::desugar`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(String, Vec<Term>),
    Eq(Term, Term),
    Bot,
    /// Native negation `~`.
    Neg(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
    /// `=>`: `(a -> b) & (~b -> ~a)`.
    StrongImp(Box<Formula>, Box<Formula>),
    /// `<=>`: `(a <-> b) & (~a <-> ~b)`.
    StrongIff(Box<Formula>, Box<Formula>),
    /// Classical negation `not`: `a -> bot`.
    ClassNeg(Box<Formula>),
    /// Presence of truth `!`.
    Bang(Box<Formula>),
    /// Absence of falsity `?`.
    Quest(Box<Formula>),
    /// Classicality `o`: `!a <-> ?a`.
    Circ(Box<Formula>),
}

// Short constructors. They take ownership and box, which keeps formula
// building in tests and batteries readable.
impl Formula {
    pub fn atom(rel: impl Into<String>, terms: Vec<Term>) -> Self {
        Formula::Atom(rel.into(), terms)
    }

    /// Propositional atom, i.e. a 0-ary relation.
    pub fn prop(rel: impl Into<String>) -> Self {
        Formula::Atom(rel.into(), Vec::new())
    }

    pub fn eq(a: Term, b: Term) -> Self {
        Formula::Eq(a, b)
    }

    /// Membership sugar `a in b`, the binary relation named `in`.
    pub fn mem(a: Term, b: Term) -> Self {
        Formula::Atom(MEMBERSHIP.to_string(), vec![a, b])
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Formula) -> Self {
        Formula::Neg(Box::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(x: impl Into<String>, a: Formula) -> Self {
        Formula::Forall(x.into(), Box::new(a))
    }

    pub fn exists(x: impl Into<String>, a: Formula) -> Self {
        Formula::Exists(x.into(), Box::new(a))
    }

    pub fn strong_imp(a: Formula, b: Formula) -> Self {
        Formula::StrongImp(Box::new(a), Box::new(b))
    }

    pub fn strong_iff(a: Formula, b: Formula) -> Self {
        Formula::StrongIff(Box::new(a), Box::new(b))
    }

    pub fn class_neg(a: Formula) -> Self {
        Formula::ClassNeg(Box::new(a))
    }

    pub fn bang(a: Formula) -> Self {
        Formula::Bang(Box::new(a))
    }

    pub fn quest(a: Formula) -> Self {
        Formula::Quest(Box::new(a))
    }

    pub fn circ(a: Formula) -> Self {
        Formula::Circ(Box::new(a))
    }

    /// Nesting depth: atoms, equalities and `bot` have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(..) | Formula::Eq(..) | Formula::Bot => 0,
            Formula::Neg(a)
            | Formula::ClassNeg(a)
            | Formula::Bang(a)
            | Formula::Quest(a)
            | Formula::Circ(a)
            | Formula::Forall(_, a)
            | Formula::Exists(_, a) => 1 + a.depth(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Imp(a, b)
            | Formula::Iff(a, b)
            | Formula::StrongImp(a, b)
            | Formula::StrongIff(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// True if the formula only uses the primitive connectives.
    pub fn is_primitive(&self) -> bool {
        match self {
            Formula::Atom(..) | Formula::Eq(..) | Formula::Bot => true,
            Formula::Neg(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.is_primitive(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.is_primitive() && b.is_primitive()
            }
            _ => false,
        }
    }

    /// True if the formula mentions neither `->` nor `bot`. Every abbreviation
    /// expands through `->`, so abbreviations count as mentioning it.
    pub fn is_imp_bot_free(&self) -> bool {
        match self {
            Formula::Atom(..) | Formula::Eq(..) => true,
            Formula::Neg(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.is_imp_bot_free(),
            Formula::And(a, b) | Formula::Or(a, b) => a.is_imp_bot_free() && b.is_imp_bot_free(),
            _ => false,
        }
    }

    /// Relation symbols used, with the arities they are used at.
    pub fn relations(&self) -> BTreeSet<(String, usize)> {
        let mut out = BTreeSet::new();
        self.visit_atoms(&mut |f| {
            if let Formula::Atom(r, ts) = f {
                out.insert((r.clone(), ts.len()));
            }
        });
        out
    }

    /// Constant symbols used.
    pub fn constants(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit_atoms(&mut |f| {
            let ts: Vec<&Term> = match f {
                Formula::Atom(_, ts) => ts.iter().collect(),
                Formula::Eq(a, b) => vec![a, b],
                _ => Vec::new(),
            };
            for t in ts {
                if let Term::Const(c) = t {
                    out.insert(c.clone());
                }
            }
        });
        out
    }

    fn visit_atoms(&self, f: &mut impl FnMut(&Formula)) {
        match self {
            Formula::Atom(..) | Formula::Eq(..) | Formula::Bot => f(self),
            Formula::Neg(a)
            | Formula::ClassNeg(a)
            | Formula::Bang(a)
            | Formula::Quest(a)
            | Formula::Circ(a)
            | Formula::Forall(_, a)
            | Formula::Exists(_, a) => a.visit_atoms(f),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Imp(a, b)
            | Formula::Iff(a, b)
            | Formula::StrongImp(a, b)
            | Formula::StrongIff(a, b) => {
                a.visit_atoms(f);
                b.visit_atoms(f);
            }
        }
    }
}

/// Name of the binary relation written infix as `in`.
pub const MEMBERSHIP: &str = "in";

/// Words that cannot be used as relation, constant or variable names.
pub const RESERVED: &[&str] = &["forall", "exists", "not", "o", "in", "bot"];

/// A vocabulary: relation symbols with arities and constant symbols.
///
/// Relations of arity 0 are allowed and play the role of propositional
/// atoms (`p()`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    #[serde(default)]
    pub relations: BTreeMap<String, usize>,
    #[serde(default)]
    pub constants: BTreeSet<String>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_relation(mut self, name: impl Into<String>, arity: usize) -> Self {
        self.relations.insert(name.into(), arity);
        self
    }

    pub fn with_constant(mut self, name: impl Into<String>) -> Self {
        self.constants.insert(name.into());
        self
    }

    /// The set-theoretic vocabulary `{in: 2}`.
    pub fn membership() -> Self {
        Self::new().with_relation(MEMBERSHIP, 2)
    }

    pub fn arity(&self, rel: &str) -> Option<usize> {
        self.relations.get(rel).copied()
    }

    pub fn is_constant(&self, name: &str) -> bool {
        self.constants.contains(name)
    }

    /// Checks that relation and constant names are disjoint, non-reserved
    /// identifiers.
    pub fn validate(&self) -> Result<(), String> {
        for name in self.relations.keys().chain(self.constants.iter()) {
            if !is_identifier(name) {
                return Err(format!("`{name}` is not an identifier"));
            }
            if RESERVED.contains(&name.as_str()) && name != MEMBERSHIP {
                return Err(format!("`{name}` is a reserved word"));
            }
        }
        if let Some(c) = self.constants.iter().find(|c| self.relations.contains_key(*c)) {
            return Err(format!("`{c}` is declared both as a relation and a constant"));
        }
        Ok(())
    }

    /// Union of two signatures; errors on an arity clash.
    pub fn merge(&self, other: &Signature) -> Result<Signature, String> {
        let mut out = self.clone();
        for (r, &k) in &other.relations {
            match out.relations.insert(r.clone(), k) {
                Some(old) if old != k => {
                    return Err(format!("relation `{r}` used with arities {old} and {k}"))
                }
                _ => {}
            }
        }
        out.constants.extend(other.constants.iter().cloned());
        out.validate()?;
        Ok(out)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let body = s.trim_end_matches('\'');
    let mut chars = body.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifiers() {
        assert!(is_identifier("x"));
        assert!(is_identifier("y''"));
        assert!(is_identifier("_a1"));
        assert!(!is_identifier("1a"));
        assert!(!is_identifier("'"));
        assert!(!is_identifier(""));
    }

    #[test]
    fn signature_json_shape() {
        let sig: Signature =
            serde_json::from_str(r#"{"relations": {"in": 2, "R": 1}, "constants": ["a","b"]}"#).unwrap();
        assert_eq!(sig.arity("in"), Some(2));
        assert!(sig.is_constant("b"));
        sig.validate().unwrap();
    }

    #[test]
    fn signature_rejects_overlap() {
        let sig = Signature::new().with_relation("R", 1).with_constant("R");
        assert!(sig.validate().is_err());
    }

    #[test]
    fn depth_and_primitive() {
        let f = Formula::strong_imp(Formula::prop("p"), Formula::neg(Formula::prop("q")));
        assert_eq!(f.depth(), 2);
        assert!(!f.is_primitive());
        assert!(Formula::neg(Formula::Bot).is_primitive());
    }
}
