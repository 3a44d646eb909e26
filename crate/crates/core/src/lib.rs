//! Verification kernel for the four-valued logic BS4 and the non-classical
//! set universe W.
//!
//! * [`formula`]: syntax, parser, substitution.
//! * [`semantics`]: truth values, T/F-models, evaluation, bounded search.
//! * [`hilbert`]: proof checking and a soundness harness.
//! * [`universe`]: interned non-classical sets and the axiom battery.
//! * [`interp`]: the check and hat embeddings and hereditarily classical sets.
//! * [`tarski`]: four-valued Tarski models and model-class classification.
//! * [`battery`]: the acceptance batteries and the `verify-all` report.

pub mod battery;
pub mod formula;
pub mod gen;
pub mod hilbert;
pub mod interp;
pub mod par;
pub mod semantics;
pub mod tarski;
pub mod universe;
