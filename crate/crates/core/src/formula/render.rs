//! Canonical ASCII rendering. The output uses the fewest parentheses the
//! parser needs to rebuild the same tree, except that a quantifier is always
//! parenthesized when it is an operand.

use std::fmt;

use super::syntax::{Formula, Term, MEMBERSHIP};

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_prec(self, 0, f)
    }
}

const QUANT: u8 = 0;
const SIFF: u8 = 1;
const SIMP: u8 = 2;
const IFF: u8 = 3;
const IMP: u8 = 4;
const OR: u8 = 5;
const AND: u8 = 6;
const UNARY: u8 = 7;
const ATOM: u8 = 8;

fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Forall(..) | Formula::Exists(..) => QUANT,
        Formula::StrongIff(..) => SIFF,
        Formula::StrongImp(..) => SIMP,
        Formula::Iff(..) => IFF,
        Formula::Imp(..) => IMP,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        Formula::Neg(_) | Formula::ClassNeg(_) | Formula::Bang(_) | Formula::Quest(_) | Formula::Circ(_) => UNARY,
        Formula::Atom(..) | Formula::Eq(..) | Formula::Bot => ATOM,
    }
}

fn write_prec(phi: &Formula, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if prec(phi) < min {
        f.write_str("(")?;
        write_prec(phi, 0, f)?;
        return f.write_str(")");
    }
    // (operator, level, right associative)
    let binary = |a: &Formula, b: &Formula, op: &str, level: u8, right: bool, f: &mut fmt::Formatter<'_>| {
        let (lmin, rmin) = if right { (level + 1, level) } else { (level, level + 1) };
        // operands are never bare quantifiers
        write_prec(a, lmin.max(1), f)?;
        write!(f, " {op} ")?;
        write_prec(b, rmin.max(1), f)
    };
    match phi {
        Formula::Atom(r, ts) if r == MEMBERSHIP && ts.len() == 2 => write!(f, "{} in {}", ts[0], ts[1]),
        Formula::Atom(r, ts) => {
            write!(f, "{r}(")?;
            for (i, t) in ts.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{t}")?;
            }
            f.write_str(")")
        }
        Formula::Eq(a, b) => write!(f, "{a} = {b}"),
        Formula::Bot => f.write_str("bot"),
        Formula::Neg(a) => {
            f.write_str("~")?;
            write_prec(a, UNARY, f)
        }
        Formula::Bang(a) => {
            f.write_str("!")?;
            write_prec(a, UNARY, f)
        }
        Formula::Quest(a) => {
            f.write_str("?")?;
            write_prec(a, UNARY, f)
        }
        Formula::ClassNeg(a) => {
            f.write_str("not ")?;
            write_prec(a, UNARY, f)
        }
        Formula::Circ(a) => {
            f.write_str("o ")?;
            write_prec(a, UNARY, f)
        }
        Formula::And(a, b) => binary(a, b, "&", AND, false, f),
        Formula::Or(a, b) => binary(a, b, "|", OR, false, f),
        Formula::Imp(a, b) => binary(a, b, "->", IMP, true, f),
        Formula::Iff(a, b) => binary(a, b, "<->", IFF, false, f),
        Formula::StrongImp(a, b) => binary(a, b, "=>", SIMP, true, f),
        Formula::StrongIff(a, b) => binary(a, b, "<=>", SIFF, false, f),
        Formula::Forall(x, a) => {
            write!(f, "forall {x}. ")?;
            write_prec(a, QUANT, f)
        }
        Formula::Exists(x, a) => {
            write!(f, "exists {x}. ")?;
            write_prec(a, QUANT, f)
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::formula::parser::parse_open;

    #[test]
    fn renders_minimal_parens() {
        for text in [
            "~(p() & q()) <-> ~p() | ~q()",
            "forall x. x in a => x in b",
            "p() -> q() -> p()",
            "(p() -> q()) -> p()",
            "p() & q() & r()",
            "p() & (q() & r())",
            "~(forall x. R(x)) <-> (exists x. ~R(x))",
            "not o !?~p()",
            "x = y -> (R(x) <=> R(y))",
            "bot",
        ] {
            let (f, _) = parse_open(text).unwrap();
            assert_eq!(f.to_string(), text);
        }
    }
}
