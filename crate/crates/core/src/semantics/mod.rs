//! Four-valued semantics: truth values, T/F-models, evaluation, truth
//! tables and bounded model search.

mod eval;
mod model;
mod search;
mod table;
mod value;

pub use eval::{assignments, eval, eval_structure, Assignment, Compiled, EvalError};
pub use model::{tuple_count, Bits, IndexedRel, ModelError, RelInterp, Structure, TFModel, MAX_TUPLES};
pub use search::{
    consequence_bounded, element_names, spaces, validity_bounded, ModelSpace, PairRule, RawModel, Restriction,
    SearchError, Verdict, DEFAULT_BUDGET,
};
pub use table::{truth_table, Connective, TruthTable, UnknownConnective};
pub use value::{tables, TruthValue};
