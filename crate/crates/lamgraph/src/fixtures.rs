//! Small named graphs used by the tests and examples, stored as text files
//! under `fixtures/`.

use crate::graph::TermGraph;
use crate::ho::{ApHoTermGraph, HoTermGraph};
use crate::text::parse_document;

macro_rules! catalog {
    ($($name:literal),* $(,)?) => {
        /// Every fixture as `(file name, contents)`.
        pub const CATALOG: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../fixtures/", $name))),)*
        ];
    };
}

catalog!(
    "identity.tg",
    "pair_tree.tg",
    "pair_shared_var.tg",
    "pair_shared.tg",
    "self_apply_pair.tg",
    "self_apply_shared.tg",
    "closed_body_pair.tg",
    "closed_body_shared.tg",
    "lazy_pair.tg",
    "lazy_pair_shared.tg",
    "eager_pair.tg",
    "eager_pair_shared.tg",
    "flip_unshared.tg",
    "flip_shared.tg",
    "flip.apho",
    "two_scopes_split.tg",
    "two_scopes_shared.tg",
    "running_eager.ho",
    "running_lazy.ho",
    "running_eager.apho",
    "running_lazy.apho",
    "running_eager.tg",
    "running_lazy.tg",
    "running.lam",
);

/// Contents of a fixture file.
pub fn source(file: &str) -> &'static str {
    CATALOG
        .iter()
        .find(|(n, _)| *n == file)
        .map(|(_, s)| *s)
        .unwrap_or_else(|| panic!("no fixture `{file}`"))
}

/// The graph in `<name>.tg`, or the carrier of any annotated fixture.
pub fn graph(name: &str) -> TermGraph {
    let file = if name.contains('.') {
        name.to_string()
    } else {
        format!("{name}.tg")
    };
    parse_document(source(&file)).expect("fixtures parse").graph
}

/// The higher-order graph in `<name>.ho`.
pub fn ho(name: &str) -> HoTermGraph {
    let d = parse_document(source(&format!("{name}.ho"))).expect("fixtures parse");
    HoTermGraph::new(d.graph, d.scopes.expect("scope lines")).expect("valid scopes")
}

/// The prefixed graph in `<name>.apho`.
pub fn ap_ho(name: &str) -> ApHoTermGraph {
    let d = parse_document(source(&format!("{name}.apho"))).expect("fixtures parse");
    ApHoTermGraph::new(d.graph, d.prefixes.expect("prefix lines")).expect("valid prefixes")
}

/// The running example as λ-letrec source.
pub fn running_term() -> &'static str {
    source("running.lam").trim()
}
