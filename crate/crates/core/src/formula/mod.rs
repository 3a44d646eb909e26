//! BS4 formula syntax: AST, parser, renderer, substitution and desugaring.

mod ops;
mod parser;
mod render;
mod syntax;

pub use ops::{all_vars, alpha_eq, desugar, free_vars, fresh_name, substitute};
pub use parser::{parse, parse_open, parse_term, ParseError};
pub use syntax::{Formula, Signature, Term, MEMBERSHIP, RESERVED};
