// Classifying delimiter graphs: λ-term-graph, eager scope, full
// back-linking, and the first violated condition.

use lamgraph::classify;
use lamgraph::fixtures::graph;

pub fn run() {
    for name in ["running_eager", "running_lazy", "lazy_pair_shared"] {
        let g = graph(name);
        let c = classify(&g);
        println!(
            "{name}: sig {} ltg {} eager {} fbl {} ltg up to S {}",
            c.sig, c.is_ltg, c.is_eager, c.is_fbl, c.is_ltg_up_to_s
        );
        if let Some(p) = &c.prefix {
            for v in g.vertices() {
                let word: Vec<&str> = p.get(v).iter().map(|&l| g.name(l)).collect();
                if !word.is_empty() {
                    println!("  prefix {}: {}", g.name(v), word.join(" "));
                }
            }
        }
        if let Some(v) = &c.first_violation {
            println!("  violation: {}", v.describe(&g));
        }
    }
    let eager = classify(&graph("running_eager"));
    assert!(eager.is_ltg && eager.is_eager && eager.is_fbl);
    let lazy = classify(&graph("running_lazy"));
    assert!(lazy.is_ltg && !lazy.is_eager);
    assert!(!classify(&graph("lazy_pair_shared")).is_ltg);
}

#[allow(dead_code)]
fn main() {
    run();
}
