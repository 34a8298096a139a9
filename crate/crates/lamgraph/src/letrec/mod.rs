//! λ-calculus with `letrec`: parsing and translation into eager-scope
//! λ-term-graphs.

mod build;
mod parse;

pub use build::{term_to_ap_ho, term_to_graph, unfolding_equivalent};
pub use parse::{check_closed, parse, FrontendError, LetrecTerm, Span};
