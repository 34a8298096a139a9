// The homomorphic images of a λ-term-graph, ordered by sharing, form a
// complete lattice.

use lamgraph::fixtures::graph;
use lamgraph::lattice::{check_lattice, enumerate_images};
use lamgraph::scope::{is_eager_scope, is_lambda_tg};
use lamgraph::TermGraph;

pub fn run() {
    let g = graph("eager_pair");
    let images = enumerate_images(&g).expect("small enough");
    println!("{} images", images.len());
    for image in &images {
        println!("  {} vertices", image.graph.len());
        assert_eq!(is_lambda_tg(&image.graph), Ok(true));
        assert_eq!(is_eager_scope(&image.graph), Ok(true));
    }
    let graphs: Vec<TermGraph> = images.into_iter().map(|i| i.graph).collect();
    assert!(check_lattice(&graphs));
}

#[allow(dead_code)]
fn main() {
    run();
}
