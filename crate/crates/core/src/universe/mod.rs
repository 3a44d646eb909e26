//! Finite fragments of the universe W of non-classical sets: each set is a
//! pair (positive extension, ?-extension) of earlier sets.

mod acla;
mod axioms;
mod fragment;
mod ops;
mod store;

pub use acla::{
    acla_construct, omega_name, omega_set, standard_witnesses, tiny_classical_sets, truth_value_of, truth_value_set,
    verify_acla_pairs, verify_omega, w2_classical_sets, AclaError, OMEGA_FIXED,
};
pub use axioms::{
    image, verify_all_axioms, verify_axiom, verify_extension_laws, verify_structure_laws, Axiom, AxiomError, AxiomReport,
    LawReport, Operation, COMPREHENSION_BATTERY, OPERATIONS,
};
pub use fragment::{Fragment, FragmentError};
pub use ops::{LevelError, MAX_LEVEL};
pub use store::{LiteralError, NCSet, SetId, Universe};
