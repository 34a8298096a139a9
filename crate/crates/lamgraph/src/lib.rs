//! Cyclic λ-terms as term graphs.
//!
//! A λ-term with `letrec` is represented as a first-order [`TermGraph`]
//! whose abstraction, application and variable vertices are augmented with
//! scope delimiters (`del`), or as a higher-order graph carrying explicit
//! scope sets ([`HoTermGraph`]) or abstraction prefixes ([`ApHoTermGraph`]).
//! The crate checks the scoping disciplines, translates between the
//! representations, and computes maximally shared forms by bisimulation
//! collapse.

pub mod cli;
pub mod dot;
pub mod fixtures;
pub mod graph;
pub mod ho;
pub mod lattice;
pub mod letrec;
pub mod morphism;
pub mod partition;
pub mod random;
pub mod scope;
pub mod text;
pub mod transform;

pub use graph::{GraphError, Label, Signature, TermGraph, TermGraphBuilder, Vertex};
pub use ho::{ApHoTermGraph, HoTermGraph, ScopeFn};
pub use letrec::{parse, term_to_graph, unfolding_equivalent, LetrecTerm};
pub use morphism::{are_bisimilar, are_isomorphic, find_homomorphism, VertexMap};
pub use partition::collapse;
pub use scope::{classify, PrefixFn, ScopeClassification};
