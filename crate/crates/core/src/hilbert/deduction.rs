//! Deduction-theorem transformation: from a proof of `psi` from
//! `Sigma, phi` build a proof of `phi -> psi` from `Sigma`.

use thiserror::Error;

use super::proof::{Justification, Proof, ProofLine};
use super::schema::{Inst, Part};
use crate::formula::{alpha_eq, Formula};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DeductionError {
    #[error("the proof has no hypotheses to discharge")]
    NoHypothesis,
    #[error("the proof is empty")]
    Empty,
    #[error("line {0} generalizes a formula that depends on the discharged hypothesis")]
    GeneralizationOnHypothesis(usize),
}

struct Builder {
    lines: Vec<ProofLine>,
}

impl Builder {
    fn push(&mut self, formula: Formula, just: Justification) -> usize {
        self.lines.push(ProofLine { formula, just });
        self.lines.len() - 1
    }

    fn axiom(&mut self, id: u8, parts: &[(&str, &Formula)]) -> usize {
        let inst: Inst = parts.iter().map(|(k, f)| (k.to_string(), Part::Formula((*f).clone()))).collect();
        let f = super::schema::instantiate_schema(id, &inst).expect("fixed schema with formula parts");
        self.push(f, Justification::Axiom(id, inst))
    }

    fn mp(&mut self, minor: usize, major: usize) -> usize {
        let Formula::Imp(_, b) = &self.lines[major].formula else { unreachable!("major premise is an implication") };
        let b = (**b).clone();
        self.push(b, Justification::ModusPonens(minor, major))
    }

    /// From line `i` (`chi`) derive `phi -> chi` by schema 1.
    fn weaken(&mut self, phi: &Formula, i: usize) -> usize {
        let chi = self.lines[i].formula.clone();
        let ax = self.axiom(1, &[("phi", &chi), ("psi", phi)]);
        self.mp(i, ax)
    }

    /// `phi -> phi` from schemas 1 and 2.
    fn identity(&mut self, phi: &Formula) -> usize {
        let pp = Formula::imp(phi.clone(), phi.clone());
        let a2 = self.axiom(2, &[("phi", phi), ("psi", &pp), ("chi", phi)]);
        let a1 = self.axiom(1, &[("phi", phi), ("psi", &pp)]);
        let m = self.mp(a1, a2);
        let a1b = self.axiom(1, &[("phi", phi), ("psi", phi)]);
        self.mp(a1b, m)
    }
}

/// Discharges the last hypothesis of `p`.
///
/// Generalization steps are supported only on lines that do not depend on
/// the discharged hypothesis.
pub fn discharge_last(p: &Proof) -> Result<Proof, DeductionError> {
    let h = p.hypotheses.len().checked_sub(1).ok_or(DeductionError::NoHypothesis)?;
    if p.lines.is_empty() {
        return Err(DeductionError::Empty);
    }
    let phi = &p.hypotheses[h];
    let mut b = Builder { lines: Vec::new() };
    // for each original line: its copy (when independent of phi) and the
    // line proving `phi -> chi`
    let mut copy: Vec<Option<usize>> = Vec::new();
    let mut imp: Vec<usize> = Vec::new();
    for (k, line) in p.lines.iter().enumerate() {
        let chi = &line.formula;
        let (c, i) = match &line.just {
            Justification::Hypothesis(j) if *j == h || alpha_eq(&p.hypotheses[*j], phi) => (None, b.identity(phi)),
            Justification::Axiom(..) | Justification::Hypothesis(_) => {
                let c = b.push(chi.clone(), line.just.clone());
                (Some(c), b.weaken(phi, c))
            }
            Justification::ModusPonens(i, j) => {
                if let (Some(ci), Some(cj)) = (copy[*i], copy[*j]) {
                    let c = b.mp(ci, cj);
                    (Some(c), b.weaken(phi, c))
                } else {
                    let chi_i = &p.lines[*i].formula;
                    let a2 = b.axiom(2, &[("phi", phi), ("psi", chi_i), ("chi", chi)]);
                    let m = b.mp(imp[*j], a2);
                    (None, b.mp(imp[*i], m))
                }
            }
            Justification::GenImp(i) | Justification::GenExists(i) => {
                let ci = copy[*i].ok_or(DeductionError::GeneralizationOnHypothesis(k))?;
                let just = match line.just {
                    Justification::GenImp(_) => Justification::GenImp(ci),
                    _ => Justification::GenExists(ci),
                };
                let c = b.push(chi.clone(), just);
                (Some(c), b.weaken(phi, c))
            }
        };
        copy.push(c);
        imp.push(i);
    }
    // every branch above ends with the line for `phi -> chi`
    Ok(Proof { hypotheses: p.hypotheses[..h].to_vec(), lines: b.lines })
}
