//! The 22 axiom schemas and their instantiation.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::formula::{substitute, Formula, Term};

/// Something a metavariable can stand for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Part {
    Formula(Formula),
    Term(Term),
}

/// Metavariable assignment. `phi`, `psi`, `chi` take formulas; `x`, `y`,
/// `t` take terms.
pub type Inst = BTreeMap<String, Part>;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("no axiom schema {0} (schemas are numbered 1 to 22)")]
    UnknownSchema(u8),
    #[error("schema {schema} needs metavariable `{name}`")]
    Missing { schema: u8, name: &'static str },
    #[error("metavariable `{name}` must be a {expected}")]
    WrongKind { name: String, expected: &'static str },
    #[error("`{0}` is not a metavariable")]
    UnknownMetavariable(String),
}

pub const SCHEMA_COUNT: u8 = 22;

/// Metavariables used by each schema.
pub fn metavariables(id: u8) -> Result<&'static [&'static str], SchemaError> {
    Ok(match id {
        1 | 3 | 4 | 5 | 6 | 7 | 8 | 16 | 17 | 18 => &["phi", "psi"],
        2 | 9 => &["phi", "psi", "chi"],
        10 | 15 => &["phi"],
        11 | 12 => &["phi", "x", "t"],
        13 => &["x"],
        14 => &["phi", "x", "y"],
        22 => &["x", "y"],
        19 => &[],
        20 | 21 => &["phi", "x"],
        _ => return Err(SchemaError::UnknownSchema(id)),
    })
}

/// Whether a metavariable stands for a formula (as opposed to a term).
pub fn is_formula_metavariable(name: &str) -> bool {
    matches!(name, "phi" | "psi" | "chi")
}

/// Schema text with metavariables, for display.
pub fn schema_text(id: u8) -> Option<&'static str> {
    const TEXT: [&str; 22] = [
        "phi -> (psi -> phi)",
        "(phi -> (psi -> chi)) -> ((phi -> psi) -> (phi -> chi))",
        "phi | (phi -> psi)",
        "phi & psi -> phi",
        "phi & psi -> psi",
        "phi -> (psi -> phi & psi)",
        "phi -> phi | psi",
        "psi -> phi | psi",
        "(phi -> chi) -> ((psi -> chi) -> (phi | psi -> chi))",
        "bot -> phi",
        "(forall x. phi(x)) -> phi(t)",
        "phi(t) -> (exists x. phi(x))",
        "x = x",
        "x = y -> (phi(x) -> phi(y))",
        "~~phi <-> phi",
        "~(phi & psi) <-> ~phi | ~psi",
        "~(phi | psi) <-> ~phi & ~psi",
        "~(phi -> psi) <-> phi & ~psi",
        "~bot",
        "~(forall x. phi) <-> (exists x. ~phi)",
        "~(exists x. phi) <-> (forall x. ~phi)",
        "~(x = y) -> ~(y = x)",
    ];
    TEXT.get((id as usize).checked_sub(1)?).copied()
}

fn formula<'a>(inst: &'a Inst, schema: u8, name: &'static str) -> Result<&'a Formula, SchemaError> {
    match inst.get(name) {
        Some(Part::Formula(f)) => Ok(f),
        Some(Part::Term(_)) => Err(SchemaError::WrongKind { name: name.into(), expected: "formula" }),
        None => Err(SchemaError::Missing { schema, name }),
    }
}

fn term<'a>(inst: &'a Inst, schema: u8, name: &'static str) -> Result<&'a Term, SchemaError> {
    match inst.get(name) {
        Some(Part::Term(t)) => Ok(t),
        Some(Part::Formula(_)) => Err(SchemaError::WrongKind { name: name.into(), expected: "term" }),
        None => Err(SchemaError::Missing { schema, name }),
    }
}

fn variable(inst: &Inst, schema: u8, name: &'static str) -> Result<String, SchemaError> {
    match term(inst, schema, name)? {
        Term::Var(x) => Ok(x.clone()),
        Term::Const(_) => Err(SchemaError::WrongKind { name: name.into(), expected: "variable" }),
    }
}

/// The instance of schema `id` under `inst`.
///
/// In schemas 11, 12 and 14, `phi(x)` is `phi` itself and `phi(t)` is `phi`
/// with the free occurrences of the variable `x` replaced by `t`, renaming
/// binders as needed. In 13 and 22, `x` and `y` may be any terms.
pub fn instantiate_schema(id: u8, inst: &Inst) -> Result<Formula, SchemaError> {
    let names = metavariables(id)?;
    if let Some(extra) = inst.keys().find(|k| !names.contains(&k.as_str())) {
        return Err(SchemaError::UnknownMetavariable(extra.clone()));
    }
    let phi = || formula(inst, id, "phi").cloned();
    let psi = || formula(inst, id, "psi").cloned();
    let chi = || formula(inst, id, "chi").cloned();
    use Formula as F;
    Ok(match id {
        1 => F::imp(phi()?, F::imp(psi()?, phi()?)),
        2 => F::imp(
            F::imp(phi()?, F::imp(psi()?, chi()?)),
            F::imp(F::imp(phi()?, psi()?), F::imp(phi()?, chi()?)),
        ),
        3 => F::or(phi()?, F::imp(phi()?, psi()?)),
        4 => F::imp(F::and(phi()?, psi()?), phi()?),
        5 => F::imp(F::and(phi()?, psi()?), psi()?),
        6 => F::imp(phi()?, F::imp(psi()?, F::and(phi()?, psi()?))),
        7 => F::imp(phi()?, F::or(phi()?, psi()?)),
        8 => F::imp(psi()?, F::or(phi()?, psi()?)),
        9 => F::imp(
            F::imp(phi()?, chi()?),
            F::imp(F::imp(psi()?, chi()?), F::imp(F::or(phi()?, psi()?), chi()?)),
        ),
        10 => F::imp(F::Bot, phi()?),
        11 => {
            let x = variable(inst, id, "x")?;
            let t = term(inst, id, "t")?;
            F::imp(F::forall(x.clone(), phi()?), substitute(&phi()?, &x, t))
        }
        12 => {
            let x = variable(inst, id, "x")?;
            let t = term(inst, id, "t")?;
            F::imp(substitute(&phi()?, &x, t), F::exists(x.clone(), phi()?))
        }
        13 => {
            let x = term(inst, id, "x")?;
            F::eq(x.clone(), x.clone())
        }
        14 => {
            let x = variable(inst, id, "x")?;
            let y = term(inst, id, "y")?;
            F::imp(F::eq(Term::Var(x.clone()), y.clone()), F::imp(phi()?, substitute(&phi()?, &x, y)))
        }
        15 => F::iff(F::neg(F::neg(phi()?)), phi()?),
        16 => F::iff(F::neg(F::and(phi()?, psi()?)), F::or(F::neg(phi()?), F::neg(psi()?))),
        17 => F::iff(F::neg(F::or(phi()?, psi()?)), F::and(F::neg(phi()?), F::neg(psi()?))),
        18 => F::iff(F::neg(F::imp(phi()?, psi()?)), F::and(phi()?, F::neg(psi()?))),
        19 => F::neg(F::Bot),
        20 => {
            let x = variable(inst, id, "x")?;
            F::iff(F::neg(F::forall(x.clone(), phi()?)), F::exists(x, F::neg(phi()?)))
        }
        21 => {
            let x = variable(inst, id, "x")?;
            F::iff(F::neg(F::exists(x.clone(), phi()?)), F::forall(x, F::neg(phi()?)))
        }
        22 => {
            let (x, y) = (term(inst, id, "x")?, term(inst, id, "y")?);
            F::imp(F::neg(F::eq(x.clone(), y.clone())), F::neg(F::eq(y.clone(), x.clone())))
        }
        _ => unreachable!("metavariables() rejected the id"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_open;

    fn inst(parts: &[(&str, &str)]) -> Inst {
        parts
            .iter()
            .map(|(k, v)| {
                let part = if is_formula_metavariable(k) {
                    Part::Formula(parse_open(v).unwrap().0)
                } else {
                    Part::Term(Term::var(*v))
                };
                (k.to_string(), part)
            })
            .collect()
    }

    #[test]
    fn listed_instances() {
        assert_eq!(instantiate_schema(15, &inst(&[("phi", "p()")])).unwrap().to_string(), "~~p() <-> p()");
        assert_eq!(instantiate_schema(19, &Inst::new()).unwrap().to_string(), "~bot");
        assert_eq!(
            instantiate_schema(22, &inst(&[("x", "x"), ("y", "y")])).unwrap().to_string(),
            "~x = y -> ~y = x"
        );
        assert_eq!(
            instantiate_schema(16, &inst(&[("phi", "p()"), ("psi", "q()")])).unwrap().to_string(),
            "~(p() & q()) <-> ~p() | ~q()"
        );
    }

    #[test]
    fn term_schemas_substitute() {
        let i = inst(&[("phi", "exists y. R(x, y)"), ("x", "x"), ("t", "y")]);
        assert_eq!(
            instantiate_schema(11, &i).unwrap().to_string(),
            "(forall x. exists y. R(x, y)) -> (exists y'. R(y, y'))"
        );
        let i = inst(&[("phi", "P(x) & Q(z)"), ("x", "x"), ("y", "w")]);
        assert_eq!(instantiate_schema(14, &i).unwrap().to_string(), "x = w -> P(x) & Q(z) -> P(w) & Q(z)");
    }

    #[test]
    fn errors() {
        assert_eq!(instantiate_schema(23, &Inst::new()), Err(SchemaError::UnknownSchema(23)));
        assert_eq!(
            instantiate_schema(1, &inst(&[("phi", "p()")])),
            Err(SchemaError::Missing { schema: 1, name: "psi" })
        );
        let mut i = inst(&[("phi", "p()")]);
        i.insert("x".into(), Part::Term(Term::constant("c")));
        i.insert("t".into(), Part::Term(Term::constant("c")));
        assert!(matches!(instantiate_schema(11, &i), Err(SchemaError::WrongKind { .. })));
        assert!(matches!(instantiate_schema(19, &inst(&[("phi", "p()")])), Err(SchemaError::UnknownMetavariable(_))));
    }

    #[test]
    fn schema_texts_parse() {
        for id in 1..=SCHEMA_COUNT {
            assert!(schema_text(id).is_some());
            assert!(metavariables(id).is_ok());
        }
    }
}
