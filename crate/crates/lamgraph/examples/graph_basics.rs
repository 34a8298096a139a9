// Building term graphs, reading the text format, and maximal sharing by
// bisimulation collapse.

use lamgraph::text::{parse_graph, write_graph};
use lamgraph::{
    are_bisimilar, are_isomorphic, collapse, find_homomorphism, Label, Signature, TermGraphBuilder,
};

pub fn run() {
    // λx. x x with the two occurrences of x kept apart
    let g = TermGraphBuilder::new(Signature::L1)
        .vertex("l", Label::Lam, &["a"])
        .vertex("a", Label::App, &["x1", "x2"])
        .vertex("x1", Label::Var, &["l"])
        .vertex("x2", Label::Var, &["l"])
        .root("l")
        .build()
        .expect("well-formed");
    print!("{}", write_graph(&g));

    let (shared, h) = collapse(&g);
    println!("collapsed from {} to {} vertices", g.len(), shared.len());
    assert_eq!(shared.len(), 3);
    assert_eq!(h.apply(g.v("x1")), h.apply(g.v("x2")));
    assert!(are_bisimilar(&g, &shared));
    assert!(find_homomorphism(&g, &shared).is_some());
    assert!(find_homomorphism(&shared, &g).is_none());

    let reread = parse_graph(&write_graph(&shared)).expect("printed graphs reparse");
    assert!(are_isomorphic(&reread, &shared).is_some());
}

#[allow(dead_code)]
fn main() {
    run();
}
