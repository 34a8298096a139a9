// Inserting and erasing scope delimiters, and sharing delimiter chains.

use lamgraph::fixtures::{ap_ho, graph};
use lamgraph::ho::ap_isomorphic;
use lamgraph::text::write_graph;
use lamgraph::transform::{erase_delimiters, insert_delimiters, s_collapse};
use lamgraph::{are_isomorphic, Label};

pub fn run() {
    let a = ap_ho("running_eager");
    let g = insert_delimiters(&a, 2).expect("delimiter arity 2");
    println!("{} delimiters inserted", g.count_label(Label::Del));
    print!("{}", write_graph(&g));
    assert!(are_isomorphic(&g, &graph("running_eager")).is_some());
    assert!(ap_isomorphic(&erase_delimiters(&g).unwrap(), &a).is_some());

    // two delimiter chains that close the same scope can be merged
    let unshared = graph("flip_unshared");
    let (shared, _) = s_collapse(&unshared);
    println!(
        "delimiters: {} unshared, {} shared",
        unshared.count_label(Label::Del),
        shared.count_label(Label::Del)
    );
    assert!(are_isomorphic(&shared, &graph("flip_shared")).is_some());
    let (x, y) = (
        erase_delimiters(&unshared).unwrap(),
        erase_delimiters(&shared).unwrap(),
    );
    assert!(ap_isomorphic(&x, &y).is_some());
}

#[allow(dead_code)]
fn main() {
    run();
}
