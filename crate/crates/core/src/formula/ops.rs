//! Free variables, capture-avoiding substitution, alpha-equivalence and
//! desugaring.

use std::collections::BTreeSet;

use super::syntax::{Formula, Term};

/// The free variables of `phi`.
pub fn free_vars(phi: &Formula) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    collect_free(phi, &mut Vec::new(), &mut out);
    out
}

fn collect_free(phi: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
    let term = |t: &Term, bound: &Vec<String>, out: &mut BTreeSet<String>| {
        if let Term::Var(x) = t {
            if !bound.contains(x) {
                out.insert(x.clone());
            }
        }
    };
    match phi {
        Formula::Atom(_, ts) => ts.iter().for_each(|t| term(t, bound, out)),
        Formula::Eq(a, b) => {
            term(a, bound, out);
            term(b, bound, out);
        }
        Formula::Bot => {}
        Formula::Neg(a) | Formula::ClassNeg(a) | Formula::Bang(a) | Formula::Quest(a) | Formula::Circ(a) => {
            collect_free(a, bound, out)
        }
        Formula::And(a, b)
        | Formula::Or(a, b)
        | Formula::Imp(a, b)
        | Formula::Iff(a, b)
        | Formula::StrongImp(a, b)
        | Formula::StrongIff(a, b) => {
            collect_free(a, bound, out);
            collect_free(b, bound, out);
        }
        Formula::Forall(x, a) | Formula::Exists(x, a) => {
            bound.push(x.clone());
            collect_free(a, bound, out);
            bound.pop();
        }
    }
}

/// Every variable name occurring in `phi`, bound or free.
pub fn all_vars(phi: &Formula) -> BTreeSet<String> {
    let mut out = free_vars(phi);
    fn binders(phi: &Formula, out: &mut BTreeSet<String>) {
        match phi {
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                out.insert(x.clone());
                binders(a, out);
            }
            Formula::Neg(a) | Formula::ClassNeg(a) | Formula::Bang(a) | Formula::Quest(a) | Formula::Circ(a) => {
                binders(a, out)
            }
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Imp(a, b)
            | Formula::Iff(a, b)
            | Formula::StrongImp(a, b)
            | Formula::StrongIff(a, b) => {
                binders(a, out);
                binders(b, out);
            }
            Formula::Atom(..) | Formula::Eq(..) | Formula::Bot => {}
        }
    }
    binders(phi, &mut out);
    out
}

/// Appends primes to `base` until the name avoids `taken`.
pub fn fresh_name(base: &str, taken: &BTreeSet<String>) -> String {
    let mut name = format!("{base}'");
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// Replaces the free occurrences of variable `x` in `phi` by `t`, renaming
/// bound variables that would capture a variable of `t`.
pub fn substitute(phi: &Formula, x: &str, t: &Term) -> Formula {
    let tvar = t.as_var();
    let sub_term = |s: &Term| match s {
        Term::Var(y) if y == x => t.clone(),
        other => other.clone(),
    };
    let un = |a: &Formula| Box::new(substitute(a, x, t));
    match phi {
        Formula::Atom(r, ts) => Formula::Atom(r.clone(), ts.iter().map(sub_term).collect()),
        Formula::Eq(a, b) => Formula::Eq(sub_term(a), sub_term(b)),
        Formula::Bot => Formula::Bot,
        Formula::Neg(a) => Formula::Neg(un(a)),
        Formula::ClassNeg(a) => Formula::ClassNeg(un(a)),
        Formula::Bang(a) => Formula::Bang(un(a)),
        Formula::Quest(a) => Formula::Quest(un(a)),
        Formula::Circ(a) => Formula::Circ(un(a)),
        Formula::And(a, b) => Formula::And(un(a), un(b)),
        Formula::Or(a, b) => Formula::Or(un(a), un(b)),
        Formula::Imp(a, b) => Formula::Imp(un(a), un(b)),
        Formula::Iff(a, b) => Formula::Iff(un(a), un(b)),
        Formula::StrongImp(a, b) => Formula::StrongImp(un(a), un(b)),
        Formula::StrongIff(a, b) => Formula::StrongIff(un(a), un(b)),
        Formula::Forall(y, a) | Formula::Exists(y, a) => {
            let rebuild = |y: String, body: Formula| match phi {
                Formula::Forall(..) => Formula::Forall(y, Box::new(body)),
                _ => Formula::Exists(y, Box::new(body)),
            };
            if y == x || !free_vars(a).contains(x) {
                return phi.clone();
            }
            if tvar == Some(y.as_str()) {
                let mut taken = all_vars(a);
                taken.insert(x.to_string());
                taken.insert(y.clone());
                let fresh = fresh_name(y, &taken);
                let renamed = substitute(a, y, &Term::Var(fresh.clone()));
                rebuild(fresh, substitute(&renamed, x, t))
            } else {
                rebuild(y.clone(), substitute(a, x, t))
            }
        }
    }
}

/// Structural equality up to renaming of bound variables.
pub fn alpha_eq(a: &Formula, b: &Formula) -> bool {
    alpha(a, b, &mut Vec::new())
}

fn alpha(a: &Formula, b: &Formula, env: &mut Vec<(String, String)>) -> bool {
    let term_eq = |s: &Term, t: &Term, env: &Vec<(String, String)>| match (s, t) {
        (Term::Const(c), Term::Const(d)) => c == d,
        (Term::Var(x), Term::Var(y)) => {
            let lx = env.iter().rposition(|(l, _)| l == x);
            let ly = env.iter().rposition(|(_, r)| r == y);
            match (lx, ly) {
                (None, None) => x == y,
                (Some(i), Some(j)) => i == j,
                _ => false,
            }
        }
        _ => false,
    };
    match (a, b) {
        (Formula::Atom(r, ts), Formula::Atom(s, us)) => {
            r == s && ts.len() == us.len() && ts.iter().zip(us).all(|(t, u)| term_eq(t, u, env))
        }
        (Formula::Eq(a1, a2), Formula::Eq(b1, b2)) => term_eq(a1, b1, env) && term_eq(a2, b2, env),
        (Formula::Bot, Formula::Bot) => true,
        (Formula::Neg(x), Formula::Neg(y))
        | (Formula::ClassNeg(x), Formula::ClassNeg(y))
        | (Formula::Bang(x), Formula::Bang(y))
        | (Formula::Quest(x), Formula::Quest(y))
        | (Formula::Circ(x), Formula::Circ(y)) => alpha(x, y, env),
        (Formula::And(a1, a2), Formula::And(b1, b2))
        | (Formula::Or(a1, a2), Formula::Or(b1, b2))
        | (Formula::Imp(a1, a2), Formula::Imp(b1, b2))
        | (Formula::Iff(a1, a2), Formula::Iff(b1, b2))
        | (Formula::StrongImp(a1, a2), Formula::StrongImp(b1, b2))
        | (Formula::StrongIff(a1, a2), Formula::StrongIff(b1, b2)) => alpha(a1, b1, env) && alpha(a2, b2, env),
        (Formula::Forall(x, p), Formula::Forall(y, q)) | (Formula::Exists(x, p), Formula::Exists(y, q)) => {
            env.push((x.clone(), y.clone()));
            let r = alpha(p, q, env);
            env.pop();
            r
        }
        _ => false,
    }
}

/// Expands every abbreviation into the primitive connectives:
///
/// * `a => b` to `(a -> b) & (~b -> ~a)`
/// * `a <=> b` to `(a <-> b) & (~a <-> ~b)`
/// * `not a` to `a -> bot`
/// * `!a` to `~(a -> bot)`
/// * `?a` to `(~a) -> bot`
/// * `o a` to `!a <-> ?a`, expanded further
pub fn desugar(phi: &Formula) -> Formula {
    let d = |a: &Formula| desugar(a);
    match phi {
        Formula::Atom(..) | Formula::Eq(..) | Formula::Bot => phi.clone(),
        Formula::Neg(a) => Formula::neg(d(a)),
        Formula::And(a, b) => Formula::and(d(a), d(b)),
        Formula::Or(a, b) => Formula::or(d(a), d(b)),
        Formula::Imp(a, b) => Formula::imp(d(a), d(b)),
        Formula::Iff(a, b) => Formula::iff(d(a), d(b)),
        Formula::Forall(x, a) => Formula::forall(x.clone(), d(a)),
        Formula::Exists(x, a) => Formula::exists(x.clone(), d(a)),
        Formula::StrongImp(a, b) => {
            let (a, b) = (d(a), d(b));
            Formula::and(
                Formula::imp(a.clone(), b.clone()),
                Formula::imp(Formula::neg(b), Formula::neg(a)),
            )
        }
        Formula::StrongIff(a, b) => {
            let (a, b) = (d(a), d(b));
            Formula::and(
                Formula::iff(a.clone(), b.clone()),
                Formula::iff(Formula::neg(a), Formula::neg(b)),
            )
        }
        Formula::ClassNeg(a) => Formula::imp(d(a), Formula::Bot),
        Formula::Bang(a) => Formula::neg(Formula::imp(d(a), Formula::Bot)),
        Formula::Quest(a) => Formula::imp(Formula::neg(d(a)), Formula::Bot),
        Formula::Circ(a) => desugar(&Formula::iff(Formula::bang((**a).clone()), Formula::quest((**a).clone()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Term {
        Term::var(n)
    }

    #[test]
    fn free_vars_examples() {
        let f = Formula::forall("x", Formula::atom("R", vec![v("x"), v("y")]));
        assert_eq!(free_vars(&f), BTreeSet::from(["y".to_string()]));
        assert_eq!(
            free_vars(&Formula::eq(v("x"), v("y"))),
            BTreeSet::from(["x".to_string(), "y".to_string()])
        );
        assert!(free_vars(&Formula::Bot).is_empty());
    }

    #[test]
    fn substitution_examples() {
        let c = Term::constant("c");
        assert_eq!(
            substitute(&Formula::forall("y", Formula::eq(v("x"), v("y"))), "x", &c),
            Formula::forall("y", Formula::eq(c.clone(), v("y")))
        );
        assert_eq!(
            substitute(&Formula::exists("y", Formula::eq(v("x"), v("y"))), "x", &v("y")),
            Formula::exists("y'", Formula::eq(v("y"), v("y'")))
        );
        assert_eq!(
            substitute(&Formula::eq(v("x"), v("x")), "x", &c),
            Formula::eq(c.clone(), c)
        );
    }

    #[test]
    fn substitution_skips_rebinding() {
        let f = Formula::forall("x", Formula::eq(v("x"), v("z")));
        assert_eq!(substitute(&f, "x", &v("w")), f);
    }

    #[test]
    fn fresh_name_avoids_existing_primes() {
        // y' already occurs in the body, so the binder becomes y''
        let f = Formula::exists("y", Formula::and(Formula::eq(v("x"), v("y")), Formula::eq(v("y'"), v("y'"))));
        let g = substitute(&f, "x", &v("y"));
        assert_eq!(
            g,
            Formula::exists(
                "y''",
                Formula::and(Formula::eq(v("y"), v("y''")), Formula::eq(v("y'"), v("y'")))
            )
        );
    }

    #[test]
    fn desugar_examples() {
        let p = Formula::prop("p");
        let q = Formula::prop("q");
        assert_eq!(desugar(&Formula::class_neg(p.clone())), Formula::imp(p.clone(), Formula::Bot));
        assert_eq!(
            desugar(&Formula::bang(p.clone())),
            Formula::neg(Formula::imp(p.clone(), Formula::Bot))
        );
        assert_eq!(
            desugar(&Formula::strong_imp(p.clone(), q.clone())),
            Formula::and(
                Formula::imp(p.clone(), q.clone()),
                Formula::imp(Formula::neg(q), Formula::neg(p))
            )
        );
    }

    #[test]
    fn alpha_equivalence() {
        let a = Formula::forall("x", Formula::atom("R", vec![v("x"), v("z")]));
        let b = Formula::forall("y", Formula::atom("R", vec![v("y"), v("z")]));
        let c = Formula::forall("z", Formula::atom("R", vec![v("z"), v("z")]));
        assert!(alpha_eq(&a, &b));
        assert!(!alpha_eq(&a, &c));
        assert!(!alpha_eq(&Formula::eq(v("x"), v("y")), &Formula::eq(v("y"), v("x"))));
    }
}
