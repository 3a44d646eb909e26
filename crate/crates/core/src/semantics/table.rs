//! Truth tables, computed by evaluating each connective over two
//! propositional atoms forced to every combination of values.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::eval::Compiled;
use super::model::Structure;
use super::value::TruthValue;
use crate::formula::Formula;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Connective {
    Neg,
    And,
    Or,
    Imp,
    Iff,
    StrongImp,
    StrongIff,
    ClassNeg,
    Bang,
    Quest,
    Circ,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown connective `{0}`")]
pub struct UnknownConnective(pub String);

impl Connective {
    pub const ALL: [Connective; 11] = [
        Connective::Neg,
        Connective::And,
        Connective::Or,
        Connective::Imp,
        Connective::Iff,
        Connective::StrongImp,
        Connective::StrongIff,
        Connective::ClassNeg,
        Connective::Bang,
        Connective::Quest,
        Connective::Circ,
    ];

    /// Accepts a word (`and`, `bang`, ...) or the ASCII symbol.
    pub fn from_name(s: &str) -> Result<Self, UnknownConnective> {
        Ok(match s {
            "neg" | "~" => Connective::Neg,
            "and" | "&" => Connective::And,
            "or" | "|" => Connective::Or,
            "imp" | "->" => Connective::Imp,
            "iff" | "<->" => Connective::Iff,
            "strong-imp" | "simp" | "=>" => Connective::StrongImp,
            "strong-iff" | "siff" | "<=>" => Connective::StrongIff,
            "not" | "class-neg" => Connective::ClassNeg,
            "bang" | "!" => Connective::Bang,
            "quest" | "?" => Connective::Quest,
            "circ" | "o" => Connective::Circ,
            _ => return Err(UnknownConnective(s.to_string())),
        })
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Connective::Neg => "~",
            Connective::And => "&",
            Connective::Or => "|",
            Connective::Imp => "->",
            Connective::Iff => "<->",
            Connective::StrongImp => "=>",
            Connective::StrongIff => "<=>",
            Connective::ClassNeg => "not",
            Connective::Bang => "!",
            Connective::Quest => "?",
            Connective::Circ => "o",
        }
    }

    pub fn is_unary(self) -> bool {
        matches!(
            self,
            Connective::Neg | Connective::ClassNeg | Connective::Bang | Connective::Quest | Connective::Circ
        )
    }

    /// The connective applied to the atoms `p()` and `q()`.
    pub fn formula(self) -> Formula {
        let (p, q) = (Formula::prop("p"), Formula::prop("q"));
        match self {
            Connective::Neg => Formula::neg(p),
            Connective::And => Formula::and(p, q),
            Connective::Or => Formula::or(p, q),
            Connective::Imp => Formula::imp(p, q),
            Connective::Iff => Formula::iff(p, q),
            Connective::StrongImp => Formula::strong_imp(p, q),
            Connective::StrongIff => Formula::strong_iff(p, q),
            Connective::ClassNeg => Formula::class_neg(p),
            Connective::Bang => Formula::bang(p),
            Connective::Quest => Formula::quest(p),
            Connective::Circ => Formula::circ(p),
        }
    }
}

/// A unary table has one column; a binary table is indexed
/// `rows[left][right]` in the order `1, b, n, 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruthTable {
    pub connective: Connective,
    pub rows: Vec<Vec<TruthValue>>,
}

impl TruthTable {
    pub fn get(&self, a: TruthValue, b: Option<TruthValue>) -> TruthValue {
        self.rows[a.index()][b.map_or(0, TruthValue::index)]
    }
}

pub fn truth_table(c: Connective) -> TruthTable {
    let mut s = Structure::empty(vec!["a".into()], &[("p".into(), 0), ("q".into(), 0)])
        .expect("two propositional atoms always fit");
    let compiled = Compiled::new(&c.formula(), &s, &[]).expect("table formulas use only p and q");
    let cols: &[TruthValue] = if c.is_unary() { &[TruthValue::ONE] } else { &TruthValue::ALL };
    let rows = TruthValue::ALL
        .iter()
        .map(|&a| {
            cols.iter()
                .map(|&b| {
                    s.set_atom(0, 0, a);
                    s.set_atom(1, 0, b);
                    compiled.eval(&s, &[])
                })
                .collect()
        })
        .collect();
    TruthTable { connective: c, rows }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = self.connective.symbol();
        if self.connective.is_unary() {
            writeln!(f, "{:>3} | {sym}", "")?;
            writeln!(f, "----+-{}", "-".repeat(sym.len()))?;
            for (a, row) in TruthValue::ALL.iter().zip(&self.rows) {
                writeln!(f, "{a:>3} | {}", row[0])?;
            }
        } else {
            write!(f, "{sym:>3} |")?;
            for b in TruthValue::ALL {
                write!(f, " {b}")?;
            }
            writeln!(f)?;
            writeln!(f, "----+--------")?;
            for (a, row) in TruthValue::ALL.iter().zip(&self.rows) {
                write!(f, "{a:>3} |")?;
                for v in row {
                    write!(f, " {v}")?;
                }
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_entries() {
        let t = truth_table(Connective::Imp);
        assert_eq!(t.get(TruthValue::BOTH, Some(TruthValue::NEITHER)), TruthValue::NEITHER);
        let t = truth_table(Connective::Quest);
        assert_eq!(t.get(TruthValue::NEITHER, None), TruthValue::ONE);
        let t = truth_table(Connective::StrongImp);
        assert_eq!(t.get(TruthValue::ONE, Some(TruthValue::BOTH)), TruthValue::ZERO);
    }

    #[test]
    fn rendering() {
        assert_eq!(
            truth_table(Connective::And).to_string(),
            "  & | 1 b n 0\n----+--------\n  1 | 1 b n 0\n  b | b b 0 0\n  n | n 0 n 0\n  0 | 0 0 0 0\n"
        );
        assert_eq!(truth_table(Connective::Bang).to_string(), "    | !\n----+--\n  1 | 1\n  b | 1\n  n | 0\n  0 | 0\n");
        assert!(Connective::from_name("xor").is_err());
    }
}
