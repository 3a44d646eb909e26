//! The Hilbert calculus: schemas, proof checking, the deduction
//! transformation and a soundness harness.

mod deduction;
mod proof;
mod schema;
mod soundness;

pub use deduction::{discharge_last, DeductionError};
pub use proof::{
    check_line, check_proof, CheckReport, JustFile, Justification, LineError, LineFault, LineFile, Proof,
    ProofFile, ProofFileError, ProofLine,
};
pub use schema::{
    instantiate_schema, is_formula_metavariable, metavariables, schema_text, Inst, Part, SchemaError, SCHEMA_COUNT,
};
pub use soundness::{harness_signature, soundness_harness, Counterexample, RuleStats, SchemaStats, SoundnessReport};
