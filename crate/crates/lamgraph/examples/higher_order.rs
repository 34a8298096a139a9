// Scope sets and abstraction prefixes: the two higher-order views of a
// λ-term-graph, and the translation between them.

use lamgraph::fixtures::ho;
use lamgraph::ho::{ho_isomorphic, validate_ap_ho, validate_ho};
use lamgraph::transform::{prefixes_to_scopes, scopes_to_prefixes};

pub fn run() {
    let h = ho("running_eager");
    let g = h.carrier();
    assert!(validate_ho(g, h.scopes()));
    for (&l, scope) in h.scopes() {
        let members: Vec<&str> = scope.iter().map(|&v| g.name(v)).collect();
        println!("scope of {}: {}", g.name(l), members.join(" "));
    }

    let a = scopes_to_prefixes(&h);
    assert!(validate_ap_ho(a.carrier(), a.prefix()));
    let vy = g.v("vy");
    let binders: Vec<&str> = h.binders(vy).iter().map(|&v| g.name(v)).collect();
    println!("binders of vy: {}", binders.join(" "));
    assert_eq!(a.prefix().get(vy), h.binders(vy).as_slice());

    let back = prefixes_to_scopes(&a);
    assert!(ho_isomorphic(&back, &h).is_some());
}

#[allow(dead_code)]
fn main() {
    run();
}
