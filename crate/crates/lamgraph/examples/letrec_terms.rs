// From `letrec` source to eager-scope term graphs, and deciding unfolding
// equivalence.

use lamgraph::letrec::FrontendError;
use lamgraph::scope::is_eager_scope;
use lamgraph::text::write_graph;
use lamgraph::{parse, term_to_graph, unfolding_equivalent};

pub fn run() {
    let src = "letrec f = \\x. (\\y. y (x g)) (\\z. g f); g = \\u. u in f";
    let t = parse(src).expect("closed term");
    let g = term_to_graph(&t);
    println!("{t}");
    print!("{}", write_graph(&g));
    assert_eq!(is_eager_scope(&g), Ok(true));

    let rec = parse("letrec f = \\x. f x in f").unwrap();
    let unfolded = parse("\\x. (letrec f = \\y. f y in f) x").unwrap();
    assert!(unfolding_equivalent(&rec, &unfolded));
    assert!(!unfolding_equivalent(
        &parse("\\x. x").unwrap(),
        &parse("\\x. \\y. y").unwrap()
    ));

    match parse("\\x. y") {
        Err(e @ FrontendError::UnboundVariable { .. }) => println!("rejected: {e}"),
        other => panic!("expected an unbound variable, got {other:?}"),
    }
}

#[allow(dead_code)]
fn main() {
    run();
}
