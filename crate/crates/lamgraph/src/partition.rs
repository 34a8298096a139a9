//! Partition refinement and quotients: bisimulation collapse.

use std::collections::HashMap;

use crate::graph::{Label, TermGraph, Vertex};
use crate::morphism::VertexMap;

/// A partition of a graph's vertices, stored as a block index per vertex.
/// Blocks are numbered by their smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    block_of: Vec<usize>,
    count: usize,
}

impl Partition {
    /// Normalizes an arbitrary block assignment.
    pub fn from_assignment(assignment: &[usize]) -> Partition {
        let mut renumber = HashMap::new();
        let block_of: Vec<usize> = assignment
            .iter()
            .map(|b| {
                let next = renumber.len();
                *renumber.entry(*b).or_insert(next)
            })
            .collect();
        Partition {
            count: renumber.len(),
            block_of,
        }
    }

    pub fn discrete(n: usize) -> Partition {
        Partition {
            block_of: (0..n).collect(),
            count: n,
        }
    }

    pub fn block(&self, v: Vertex) -> usize {
        self.block_of[v.index()]
    }

    pub fn num_blocks(&self) -> usize {
        self.count
    }

    pub fn assignment(&self) -> &[usize] {
        &self.block_of
    }

    pub fn blocks(&self) -> Vec<Vec<Vertex>> {
        let mut out = vec![Vec::new(); self.count];
        for (v, &b) in self.block_of.iter().enumerate() {
            out[b].push(Vertex::from(v));
        }
        out
    }

    /// True iff every block is label-uniform and members agree on the blocks
    /// of their arguments, so that the quotient is a term graph.
    pub fn is_congruence(&self, g: &TermGraph) -> bool {
        let mut sig: Vec<Option<(Label, Vec<usize>)>> = vec![None; self.count];
        for v in g.vertices() {
            let here = (g.label(v), self.arg_blocks(g, v));
            match &sig[self.block(v)] {
                Some(s) if *s != here => return false,
                Some(_) => {}
                None => sig[self.block(v)] = Some(here),
            }
        }
        true
    }

    fn arg_blocks(&self, g: &TermGraph, v: Vertex) -> Vec<usize> {
        g.args(v).iter().map(|&t| self.block(t)).collect()
    }
}

/// Coarsest congruence refining `initial`: repeatedly split blocks on the
/// blocks of indexed successors until stable.
pub fn refine(g: &TermGraph, initial: Partition) -> Partition {
    let mut current = initial;
    loop {
        let keys: Vec<(usize, Vec<usize>)> = g
            .vertices()
            .map(|v| (current.block(v), current.arg_blocks(g, v)))
            .collect();
        let mut ids: HashMap<&(usize, Vec<usize>), usize> = HashMap::new();
        let assignment: Vec<usize> = keys
            .iter()
            .map(|k| {
                let next = ids.len();
                *ids.entry(k).or_insert(next)
            })
            .collect();
        let next = Partition::from_assignment(&assignment);
        if next.num_blocks() == current.num_blocks() {
            return next;
        }
        current = next;
    }
}

/// Partition by label only.
pub fn label_partition(g: &TermGraph) -> Partition {
    let assignment: Vec<usize> = g.vertices().map(|v| g.label(v) as usize).collect();
    Partition::from_assignment(&assignment)
}

/// The quotient graph of a congruence, with the quotient map. Each block's
/// vertex keeps the name of its first member.
pub fn quotient(g: &TermGraph, p: &Partition) -> (TermGraph, VertexMap) {
    debug_assert!(p.is_congruence(g));
    let mut rep: Vec<Option<Vertex>> = vec![None; p.num_blocks()];
    for v in g.vertices() {
        rep[p.block(v)].get_or_insert(v);
    }
    let rep: Vec<Vertex> = rep
        .into_iter()
        .map(|r| r.expect("blocks are non-empty"))
        .collect();
    let labels = rep.iter().map(|&r| g.label(r)).collect();
    let args = rep
        .iter()
        .map(|&r| g.args(r).iter().map(|&t| Vertex::from(p.block(t))).collect())
        .collect();
    let names = rep.iter().map(|&r| g.name(r).to_string()).collect();
    let root = Vertex::from(p.block(g.root()));
    let q = TermGraph::from_parts(g.signature(), labels, args, names, root)
        .expect("quotient of a term graph by a congruence is a term graph");
    let h = VertexMap::new(g.vertices().map(|v| Vertex::from(p.block(v))).collect());
    (q, h)
}

/// The partition underlying the bisimulation collapse.
pub fn collapse_partition(g: &TermGraph) -> Partition {
    refine(g, label_partition(g))
}

/// Bisimulation collapse with its witnessing homomorphism.
pub fn collapse(g: &TermGraph) -> (TermGraph, VertexMap) {
    quotient(g, &collapse_partition(g))
}

/// Largest homomorphic image that identifies only vertices labelled `f`.
pub fn collapse_only(g: &TermGraph, f: Label) -> (TermGraph, VertexMap) {
    let n = g.len();
    let assignment: Vec<usize> = g
        .vertices()
        .map(|v| if g.label(v) == f { n } else { v.index() })
        .collect();
    let p = refine(g, Partition::from_assignment(&assignment));
    quotient(g, &p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Signature, TermGraphBuilder};
    use crate::morphism::{are_bisimilar, are_isomorphic, check_homomorphism};

    #[test]
    fn collapses_duplicate_abstractions() {
        let g = TermGraphBuilder::new(Signature::L01)
            .vertex("a", Label::App, &["l1", "l2"])
            .vertex("l1", Label::Lam, &["v1"])
            .vertex("v1", Label::Var, &[] as &[&str])
            .vertex("l2", Label::Lam, &["v2"])
            .vertex("v2", Label::Var, &[] as &[&str])
            .root("a")
            .build()
            .unwrap();
        let (c, h) = collapse(&g);
        assert_eq!(c.len(), 3);
        assert!(check_homomorphism(&g, &c, &h));
        assert!(are_bisimilar(&g, &c));
        let (cc, _) = collapse(&c);
        assert!(are_isomorphic(&c, &cc).is_some());
    }

    #[test]
    fn cycles_fold() {
        // two-step cycle of lambdas folds onto a one-step one
        let g = TermGraphBuilder::new(Signature::L)
            .vertex("a", Label::Lam, &["b"])
            .vertex("b", Label::Lam, &["a"])
            .root("a")
            .build()
            .unwrap();
        let (c, _) = collapse(&g);
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn congruence_check() {
        let g = TermGraphBuilder::new(Signature::L01)
            .vertex("a", Label::App, &["l1", "l2"])
            .vertex("l1", Label::Lam, &["v1"])
            .vertex("v1", Label::Var, &[] as &[&str])
            .vertex("l2", Label::Lam, &["v2"])
            .vertex("v2", Label::Var, &[] as &[&str])
            .root("a")
            .build()
            .unwrap();
        assert!(!Partition::from_assignment(&[0, 1, 2, 1, 4]).is_congruence(&g));
        assert!(Partition::from_assignment(&[0, 1, 2, 3, 2]).is_congruence(&g));
    }
}
