//! Proofs with explicit justifications, and the checker.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::schema::{instantiate_schema, is_formula_metavariable, Inst, Part};
use crate::formula::{alpha_eq, free_vars, parse, parse_open, parse_term, Formula, ParseError, Signature, Term};

/// How a line is justified. Line and hypothesis indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Axiom(u8, Inst),
    Hypothesis(usize),
    /// `ModusPonens(i, j)`: line `i` is `phi`, line `j` is `phi -> psi`.
    ModusPonens(usize, usize),
    /// From `phi -> psi` infer `phi -> forall x. psi`.
    GenImp(usize),
    /// From `phi -> psi` infer `(exists x. phi) -> psi`.
    GenExists(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofLine {
    pub formula: Formula,
    pub just: Justification,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Proof {
    pub hypotheses: Vec<Formula>,
    pub lines: Vec<ProofLine>,
}

impl Proof {
    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LineFault {
    #[error("forward reference to line {0}")]
    ForwardReference(usize),
    #[error("no hypothesis {0}")]
    NoSuchHypothesis(usize),
    #[error("formula differs from hypothesis {0}")]
    HypothesisMismatch(usize),
    #[error("bad instantiation: {0}")]
    BadInstantiation(String),
    #[error("formula is not the instance of schema {schema}: expected `{expected}`")]
    NotAnInstance { schema: u8, expected: String },
    #[error("modus ponens: line {0} is not an implication")]
    NotAnImplication(usize),
    #[error("modus ponens: antecedent of line {major} differs from line {minor}")]
    AntecedentMismatch { minor: usize, major: usize },
    #[error("rule conclusion has the wrong shape: {0}")]
    Shape(String),
    #[error("side condition: `{var}` occurs free in `{formula}`")]
    SideCondition { var: String, formula: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineError {
    pub line: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub accepted: bool,
    pub lines_checked: usize,
    pub conclusion: Option<String>,
    pub error: Option<LineError>,
}

/// Checks every line in order and reports the first faulty one.
pub fn check_proof(p: &Proof) -> CheckReport {
    if p.lines.is_empty() {
        return CheckReport {
            accepted: false,
            lines_checked: 0,
            conclusion: None,
            error: Some(LineError { line: 0, reason: "empty proof".into() }),
        };
    }
    for k in 0..p.lines.len() {
        if let Err(fault) = check_line(p, k) {
            return CheckReport {
                accepted: false,
                lines_checked: k,
                conclusion: None,
                error: Some(LineError { line: k, reason: fault.to_string() }),
            };
        }
    }
    CheckReport {
        accepted: true,
        lines_checked: p.lines.len(),
        conclusion: p.conclusion().map(Formula::to_string),
        error: None,
    }
}

fn earlier(k: usize, i: usize) -> Result<(), LineFault> {
    if i < k {
        Ok(())
    } else {
        Err(LineFault::ForwardReference(i))
    }
}

fn split_imp(f: &Formula, line: usize) -> Result<(&Formula, &Formula), LineFault> {
    match f {
        Formula::Imp(a, b) => Ok((a, b)),
        _ => Err(LineFault::NotAnImplication(line)),
    }
}

/// Checks line `k` assuming the earlier lines are correct.
pub fn check_line(p: &Proof, k: usize) -> Result<(), LineFault> {
    let line = &p.lines[k];
    let f = &line.formula;
    match &line.just {
        Justification::Axiom(id, inst) => {
            let expected = instantiate_schema(*id, inst).map_err(|e| LineFault::BadInstantiation(e.to_string()))?;
            if alpha_eq(&expected, f) {
                Ok(())
            } else {
                Err(LineFault::NotAnInstance { schema: *id, expected: expected.to_string() })
            }
        }
        Justification::Hypothesis(h) => {
            let hyp = p.hypotheses.get(*h).ok_or(LineFault::NoSuchHypothesis(*h))?;
            if alpha_eq(hyp, f) {
                Ok(())
            } else {
                Err(LineFault::HypothesisMismatch(*h))
            }
        }
        Justification::ModusPonens(i, j) => {
            earlier(k, *i)?;
            earlier(k, *j)?;
            let (a, b) = split_imp(&p.lines[*j].formula, *j)?;
            if !alpha_eq(a, &p.lines[*i].formula) {
                return Err(LineFault::AntecedentMismatch { minor: *i, major: *j });
            }
            if !alpha_eq(b, f) {
                return Err(LineFault::Shape(format!("line {j} concludes `{b}`, not `{f}`")));
            }
            Ok(())
        }
        Justification::GenImp(i) => {
            earlier(k, *i)?;
            let (phi, psi) = split_imp(&p.lines[*i].formula, *i)?;
            let shape = || LineFault::Shape(format!("expected `{phi} -> forall x. {psi}`"));
            let (a, b) = split_imp(f, k).map_err(|_| shape())?;
            let Formula::Forall(x, body) = b else { return Err(shape()) };
            if !alpha_eq(a, phi) || !alpha_eq(body, psi) {
                return Err(shape());
            }
            if free_vars(phi).contains(x) {
                return Err(LineFault::SideCondition { var: x.clone(), formula: phi.to_string() });
            }
            Ok(())
        }
        Justification::GenExists(i) => {
            earlier(k, *i)?;
            let (phi, psi) = split_imp(&p.lines[*i].formula, *i)?;
            let shape = || LineFault::Shape(format!("expected `(exists x. {phi}) -> {psi}`"));
            let (a, b) = split_imp(f, k).map_err(|_| shape())?;
            let Formula::Exists(x, body) = a else { return Err(shape()) };
            if !alpha_eq(body, phi) || !alpha_eq(b, psi) {
                return Err(shape());
            }
            if free_vars(psi).contains(x) {
                return Err(LineFault::SideCondition { var: x.clone(), formula: psi.to_string() });
            }
            Ok(())
        }
    }
}

// JSON form: formulas are strings in the concrete syntax.

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProofFile {
    /// When present, formulas are parsed strictly against it; otherwise
    /// relations are inferred and every term identifier is a variable.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<Signature>,
    #[serde(default)]
    pub hypotheses: Vec<String>,
    pub lines: Vec<LineFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LineFile {
    pub formula: String,
    pub just: JustFile,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JustFile {
    Hyp(usize),
    Mp([usize; 2]),
    GenImp(usize),
    GenExists(usize),
    #[serde(untagged)]
    Axiom {
        axiom: u8,
        #[serde(default)]
        inst: BTreeMap<String, String>,
    },
}

#[derive(Debug, Error)]
pub enum ProofFileError {
    #[error("{context}: {source}")]
    Parse { context: String, source: ParseError },
    #[error("{0}")]
    Signature(String),
}

impl ProofFile {
    pub fn to_proof(&self) -> Result<Proof, ProofFileError> {
        if let Some(sig) = &self.signature {
            sig.validate().map_err(ProofFileError::Signature)?;
        }
        let formula = |text: &str, context: String| -> Result<Formula, ProofFileError> {
            match &self.signature {
                Some(sig) => parse(text, sig),
                None => parse_open(text).map(|(f, _)| f),
            }
            .map_err(|source| ProofFileError::Parse { context, source })
        };
        let term = |text: &str, context: String| -> Result<Term, ProofFileError> {
            let empty = Signature::new();
            parse_term(text, self.signature.as_ref().unwrap_or(&empty))
                .map_err(|source| ProofFileError::Parse { context, source })
        };
        let hypotheses = self
            .hypotheses
            .iter()
            .enumerate()
            .map(|(i, h)| formula(h, format!("hypothesis {i}")))
            .collect::<Result<_, _>>()?;
        let mut lines = Vec::new();
        for (k, l) in self.lines.iter().enumerate() {
            let f = formula(&l.formula, format!("line {k}"))?;
            let just = match &l.just {
                JustFile::Axiom { axiom, inst } => {
                    let mut parts = Inst::new();
                    for (name, text) in inst {
                        let ctx = format!("line {k}, metavariable {name}");
                        let part = if is_formula_metavariable(name) {
                            Part::Formula(formula(text, ctx)?)
                        } else {
                            Part::Term(term(text, ctx)?)
                        };
                        parts.insert(name.clone(), part);
                    }
                    Justification::Axiom(*axiom, parts)
                }
                JustFile::Hyp(h) => Justification::Hypothesis(*h),
                JustFile::Mp([i, j]) => Justification::ModusPonens(*i, *j),
                JustFile::GenImp(i) => Justification::GenImp(*i),
                JustFile::GenExists(i) => Justification::GenExists(*i),
            };
            lines.push(ProofLine { formula: f, just });
        }
        Ok(Proof { hypotheses, lines })
    }

    pub fn from_proof(p: &Proof) -> Self {
        let part = |x: &Part| match x {
            Part::Formula(f) => f.to_string(),
            Part::Term(t) => t.to_string(),
        };
        ProofFile {
            signature: None,
            hypotheses: p.hypotheses.iter().map(Formula::to_string).collect(),
            lines: p
                .lines
                .iter()
                .map(|l| LineFile {
                    formula: l.formula.to_string(),
                    just: match &l.just {
                        Justification::Axiom(id, inst) => JustFile::Axiom {
                            axiom: *id,
                            inst: inst.iter().map(|(k, v)| (k.clone(), part(v))).collect(),
                        },
                        Justification::Hypothesis(h) => JustFile::Hyp(*h),
                        Justification::ModusPonens(i, j) => JustFile::Mp([*i, *j]),
                        Justification::GenImp(i) => JustFile::GenImp(*i),
                        Justification::GenExists(i) => JustFile::GenExists(*i),
                    },
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(json: &str) -> Proof {
        serde_json::from_str::<ProofFile>(json).unwrap().to_proof().unwrap()
    }

    #[test]
    fn modus_ponens_accepted() {
        let p = load(
            r#"{"hypotheses":["p()","p() -> q()"],"lines":[
                {"formula":"p()","just":{"hyp":0}},
                {"formula":"p() -> q()","just":{"hyp":1}},
                {"formula":"q()","just":{"mp":[0,1]}}]}"#,
        );
        let r = check_proof(&p);
        assert!(r.accepted, "{r:?}");
        assert_eq!(r.conclusion.as_deref(), Some("q()"));
    }

    #[test]
    fn axiom_line_accepted() {
        let p = load(r#"{"lines":[{"formula":"p() -> p() -> p()","just":{"axiom":1,"inst":{"phi":"p()","psi":"p()"}}}]}"#);
        assert!(check_proof(&p).accepted);
    }

    #[test]
    fn side_condition_rejected() {
        let p = load(
            r#"{"hypotheses":["P(x) -> Q(x, x)"],"lines":[
                {"formula":"P(x) -> Q(x, x)","just":{"hyp":0}},
                {"formula":"P(x) -> (forall x. Q(x, x))","just":{"gen_imp":0}}]}"#,
        );
        let r = check_proof(&p);
        assert!(!r.accepted);
        let e = r.error.unwrap();
        assert_eq!(e.line, 1);
        assert!(e.reason.starts_with("side condition"), "{}", e.reason);
    }

    #[test]
    fn forward_reference_rejected() {
        let p = load(
            r#"{"hypotheses":["p()","p() -> q()"],"lines":[
                {"formula":"q()","just":{"mp":[1,2]}},
                {"formula":"p()","just":{"hyp":0}},
                {"formula":"p() -> q()","just":{"hyp":1}}]}"#,
        );
        let e = check_proof(&p).error.unwrap();
        assert_eq!((e.line, e.reason.as_str()), (0, "forward reference to line 1"));
    }

    #[test]
    fn gen_exists_and_alpha() {
        let p = load(
            r#"{"hypotheses":["P(x) -> q()"],"lines":[
                {"formula":"P(x) -> q()","just":{"hyp":0}},
                {"formula":"(exists y. P(y)) -> q()","just":{"gen_exists":0}}]}"#,
        );
        // the binder is y but the premise uses x; the rule needs the same variable
        assert!(!check_proof(&p).accepted);
        let p = load(
            r#"{"hypotheses":["P(x) -> q()"],"lines":[
                {"formula":"P(x) -> q()","just":{"hyp":0}},
                {"formula":"(exists x. P(x)) -> q()","just":{"gen_exists":0}}]}"#,
        );
        assert!(check_proof(&p).accepted);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"hypotheses":["p()"],"lines":[{"formula":"p()","just":{"hyp":0}},{"formula":"p() -> q() -> p()","just":{"axiom":1,"inst":{"phi":"p()","psi":"q()"}}},{"formula":"q() -> p()","just":{"mp":[0,1]}}]}"#;
        let p = load(text);
        assert_eq!(serde_json::to_string(&ProofFile::from_proof(&p)).unwrap(), text);
    }
}
