//! The twin T/F evaluator. Formulas are compiled against a [`Structure`]
//! once (variables to slots, relation names to indices) and then evaluated
//! many times.

use std::collections::BTreeMap;

use thiserror::Error;

use super::model::{ModelError, Structure, TFModel};
use super::value::TruthValue;
use crate::formula::{free_vars, Formula, Term};

/// Variable assignment by element name.
pub type Assignment = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("relation `{relation}` has arity {arity} but is applied to {found} terms")]
    ArityMismatch { relation: String, arity: usize, found: usize },
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("`{0}` is not a domain element")]
    UnknownElement(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Var(usize),
    Elem(usize),
}

#[derive(Clone, Debug)]
enum Node {
    Rel(usize, Vec<Slot>),
    Eq(Slot, Slot),
    Bot,
    Un(Unary, Box<Node>),
    Bin(Binary, Box<Node>, Box<Node>),
    Forall(usize, Box<Node>),
    Exists(usize, Box<Node>),
}

#[derive(Clone, Copy, Debug)]
enum Unary {
    Neg,
    ClassNeg,
    Bang,
    Quest,
    Circ,
}

#[derive(Clone, Copy, Debug)]
enum Binary {
    And,
    Or,
    Imp,
    Iff,
    StrongImp,
    StrongIff,
}

/// A formula compiled against a structure's vocabulary. The first
/// `params().len()` slots of the environment hold the free variables in the
/// order given to [`Compiled::new`].
#[derive(Clone, Debug)]
pub struct Compiled {
    root: Node,
    params: Vec<String>,
    slots: usize,
}

impl Compiled {
    /// Compiles `phi`. `params` must list every free variable of `phi`.
    pub fn new(phi: &Formula, s: &Structure, params: &[&str]) -> Result<Self, EvalError> {
        let mut scope: Vec<(String, usize)> = params.iter().enumerate().map(|(i, x)| (x.to_string(), i)).collect();
        let mut slots = params.len();
        let root = compile(phi, s, &mut scope, &mut slots)?;
        Ok(Compiled { root, params: params.iter().map(|x| x.to_string()).collect(), slots })
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    /// Evaluates with the parameters bound to `args` (element indices).
    pub fn eval(&self, s: &Structure, args: &[usize]) -> TruthValue {
        debug_assert_eq!(args.len(), self.params.len());
        let mut env = vec![0usize; self.slots.max(1)];
        env[..args.len()].copy_from_slice(args);
        eval_node(&self.root, s, &mut env)
    }

    /// Evaluates reusing a caller-owned environment buffer.
    pub fn eval_in(&self, s: &Structure, env: &mut Vec<usize>, args: &[usize]) -> TruthValue {
        env.clear();
        env.extend_from_slice(args);
        env.resize(self.slots.max(1), 0);
        eval_node(&self.root, s, env)
    }
}

fn compile(
    phi: &Formula,
    s: &Structure,
    scope: &mut Vec<(String, usize)>,
    slots: &mut usize,
) -> Result<Node, EvalError> {
    let term = |t: &Term, scope: &Vec<(String, usize)>| -> Result<Slot, EvalError> {
        match t {
            Term::Var(x) => scope
                .iter()
                .rev()
                .find(|(y, _)| y == x)
                .map(|&(_, i)| Slot::Var(i))
                .ok_or_else(|| EvalError::UnboundVariable(x.clone())),
            Term::Const(c) => s
                .constants
                .get(c)
                .map(|&e| Slot::Elem(e))
                .ok_or_else(|| EvalError::UnknownConstant(c.clone())),
        }
    };
    let un = |op, a: &Formula, scope: &mut Vec<(String, usize)>, slots: &mut usize| {
        Ok(Node::Un(op, Box::new(compile(a, s, scope, slots)?)))
    };
    Ok(match phi {
        Formula::Atom(r, ts) => {
            let ri = s.rel_index(r).ok_or_else(|| EvalError::UnknownRelation(r.clone()))?;
            if s.rels[ri].arity != ts.len() {
                return Err(EvalError::ArityMismatch { relation: r.clone(), arity: s.rels[ri].arity, found: ts.len() });
            }
            Node::Rel(ri, ts.iter().map(|t| term(t, scope)).collect::<Result<_, _>>()?)
        }
        Formula::Eq(a, b) => Node::Eq(term(a, scope)?, term(b, scope)?),
        Formula::Bot => Node::Bot,
        Formula::Neg(a) => return un(Unary::Neg, a, scope, slots),
        Formula::ClassNeg(a) => return un(Unary::ClassNeg, a, scope, slots),
        Formula::Bang(a) => return un(Unary::Bang, a, scope, slots),
        Formula::Quest(a) => return un(Unary::Quest, a, scope, slots),
        Formula::Circ(a) => return un(Unary::Circ, a, scope, slots),
        Formula::And(a, b)
        | Formula::Or(a, b)
        | Formula::Imp(a, b)
        | Formula::Iff(a, b)
        | Formula::StrongImp(a, b)
        | Formula::StrongIff(a, b) => {
            let op = match phi {
                Formula::And(..) => Binary::And,
                Formula::Or(..) => Binary::Or,
                Formula::Imp(..) => Binary::Imp,
                Formula::Iff(..) => Binary::Iff,
                Formula::StrongImp(..) => Binary::StrongImp,
                _ => Binary::StrongIff,
            };
            Node::Bin(op, Box::new(compile(a, s, scope, slots)?), Box::new(compile(b, s, scope, slots)?))
        }
        Formula::Forall(x, a) | Formula::Exists(x, a) => {
            let slot = *slots;
            *slots += 1;
            scope.push((x.clone(), slot));
            let body = compile(a, s, scope, slots);
            scope.pop();
            let body = Box::new(body?);
            if matches!(phi, Formula::Forall(..)) {
                Node::Forall(slot, body)
            } else {
                Node::Exists(slot, body)
            }
        }
    })
}

#[inline]
fn resolve(slot: Slot, env: &[usize]) -> usize {
    match slot {
        Slot::Var(i) => env[i],
        Slot::Elem(e) => e,
    }
}

fn eval_node(node: &Node, s: &Structure, env: &mut Vec<usize>) -> TruthValue {
    match node {
        Node::Rel(r, args) => {
            let idx = args.iter().rev().fold(0, |acc, &a| acc * s.size + resolve(a, env));
            s.atom(*r, idx)
        }
        Node::Eq(a, b) => {
            let (a, b) = (resolve(*a, env), resolve(*b, env));
            TruthValue::new(a == b, s.eq_neg(a, b))
        }
        Node::Bot => TruthValue::ZERO,
        Node::Un(op, a) => {
            let v = eval_node(a, s, env);
            match op {
                Unary::Neg => v.neg(),
                Unary::ClassNeg => v.class_neg(),
                Unary::Bang => v.bang(),
                Unary::Quest => v.quest(),
                Unary::Circ => v.circ(),
            }
        }
        Node::Bin(op, a, b) => {
            let (a, b) = (eval_node(a, s, env), eval_node(b, s, env));
            match op {
                Binary::And => a.and(b),
                Binary::Or => a.or(b),
                Binary::Imp => a.imp(b),
                Binary::Iff => a.iff(b),
                Binary::StrongImp => a.strong_imp(b),
                Binary::StrongIff => a.strong_iff(b),
            }
        }
        Node::Forall(x, a) => {
            // true iff all instances true; false iff some instance false
            let (mut t, mut f) = (true, false);
            for e in 0..s.size {
                env[*x] = e;
                let v = eval_node(a, s, env);
                t &= v.is_true;
                f |= v.is_false;
                if !t && f {
                    break;
                }
            }
            TruthValue::new(t, f)
        }
        Node::Exists(x, a) => {
            let (mut t, mut f) = (false, true);
            for e in 0..s.size {
                env[*x] = e;
                let v = eval_node(a, s, env);
                t |= v.is_true;
                f &= v.is_false;
                if t && !f {
                    break;
                }
            }
            TruthValue::new(t, f)
        }
    }
}

/// Evaluates `phi` in `m` under `rho`.
pub fn eval(m: &TFModel, phi: &Formula, rho: &Assignment) -> Result<TruthValue, EvalError> {
    let s = Structure::from_tf(m)?;
    eval_structure(&s, phi, rho)
}

/// Evaluates `phi` in an indexed structure under a by-name assignment.
pub fn eval_structure(s: &Structure, phi: &Formula, rho: &Assignment) -> Result<TruthValue, EvalError> {
    let fv = free_vars(phi);
    let params: Vec<&str> = fv.iter().map(String::as_str).collect();
    let mut args = Vec::with_capacity(params.len());
    for x in &params {
        let name = rho.get(*x).ok_or_else(|| EvalError::UnboundVariable(x.to_string()))?;
        args.push(s.element(name).ok_or_else(|| EvalError::UnknownElement(name.clone()))?);
    }
    Ok(Compiled::new(phi, s, &params)?.eval(s, &args))
}

/// Every assignment of `k` variables over `size` elements, in lexicographic
/// order with the first variable most significant.
pub fn assignments(size: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = size.checked_pow(k as u32).unwrap_or(0);
    (0..total).map(move |mut i| {
        let mut v = vec![0; k];
        for slot in v.iter_mut().rev() {
            *slot = i % size;
            i /= size;
        }
        v
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{desugar, parse_open};

    fn model(json: &str) -> TFModel {
        serde_json::from_str(json).unwrap()
    }

    fn value(m: &TFModel, text: &str, rho: &[(&str, &str)]) -> TruthValue {
        let (f, _) = parse_open(text).unwrap();
        let rho = rho.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        eval(m, &f, &rho).unwrap()
    }

    const GLUT: &str = r#"{"domain":["a","b"],"relations":{"R":{"arity":1,"pos":[["a"]],"neg":[["a"],["b"]]},
        "p":{"arity":0,"pos":[[]],"neg":[[]]},"q":{"arity":0}},"eq_neg":[["a","a"]]}"#;

    #[test]
    fn atomic_glut_is_both() {
        let m = model(GLUT);
        assert_eq!(value(&m, "R(x)", &[("x", "a")]), TruthValue::BOTH);
        assert_eq!(value(&m, "R(x)", &[("x", "b")]), TruthValue::ZERO);
        assert_eq!(value(&m, "bot", &[]), TruthValue::ZERO);
        assert_eq!(value(&m, "p() & q()", &[]), TruthValue::ZERO);
        assert_eq!(value(&m, "x = x", &[("x", "a")]), TruthValue::BOTH);
        assert_eq!(value(&m, "x = y", &[("x", "a"), ("y", "b")]), TruthValue::NEITHER);
    }

    #[test]
    fn quantifiers() {
        let m = model(GLUT);
        assert_eq!(value(&m, "forall x. R(x)", &[]), TruthValue::ZERO);
        assert_eq!(value(&m, "exists x. R(x)", &[]), TruthValue::BOTH);
        assert_eq!(value(&m, "exists x. ~R(x)", &[]), TruthValue::ONE);
        // shadowing: the inner x is bound
        assert_eq!(value(&m, "exists x. R(x) & (forall x. ~R(x))", &[]), TruthValue::BOTH);
    }

    #[test]
    fn errors() {
        let m = model(GLUT);
        let (f, _) = parse_open("R(x)").unwrap();
        assert_eq!(eval(&m, &f, &Assignment::new()), Err(EvalError::UnboundVariable("x".into())));
        let (f, _) = parse_open("S(x)").unwrap();
        let rho = Assignment::from([("x".to_string(), "a".to_string())]);
        assert_eq!(eval(&m, &f, &rho), Err(EvalError::UnknownRelation("S".into())));
    }

    #[test]
    fn sugar_matches_desugared() {
        let m = model(GLUT);
        for text in ["p() => q()", "p() <=> R(x)", "not R(x)", "!p()", "?R(x)", "o R(x)", "o p() -> !q()"] {
            let (f, _) = parse_open(text).unwrap();
            let rho = Assignment::from([("x".to_string(), "a".to_string())]);
            assert_eq!(eval(&m, &f, &rho).unwrap(), eval(&m, &desugar(&f), &rho).unwrap(), "{text}");
        }
    }

    #[test]
    fn assignment_order() {
        let all: Vec<_> = assignments(2, 2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(assignments(3, 0).count(), 1);
    }
}
