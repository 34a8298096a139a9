// Maximal sharing of a higher-order term graph through its delimiter
// representation, and what goes wrong without eager scope.

use lamgraph::fixtures::ho;
use lamgraph::letrec::term_to_ap_ho;
use lamgraph::transform::{max_share_pipeline, max_share_stages, prefixes_to_scopes, TransformError};
use lamgraph::{are_bisimilar, parse, Label};

pub fn run() {
    let t = parse("(letrec f = \\x. f x in f) (letrec g = \\y. g y in g)").unwrap();
    let h = prefixes_to_scopes(&term_to_ap_ho(&t));
    let stages = max_share_stages(&h, true).expect("terms give eager scope");
    println!(
        "vertices: {} input, {} delimited, {} collapsed, {} result",
        h.carrier().len(),
        stages.delimited.len(),
        stages.collapsed.len(),
        stages.result.carrier().len()
    );
    let out = stages.result.carrier();
    assert_eq!(h.carrier().count_label(Label::Lam), 2);
    assert_eq!(out.count_label(Label::Lam), 1);
    assert!(are_bisimilar(h.carrier(), out));

    let lazy = ho("running_lazy");
    let err = max_share_pipeline(&lazy, true).unwrap_err();
    println!("lazy scopes: {err}");
    assert_eq!(err, TransformError::NotEagerScope);
}

#[allow(dead_code)]
fn main() {
    run();
}
