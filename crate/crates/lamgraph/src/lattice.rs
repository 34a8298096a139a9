//! Exhaustive enumeration of homomorphic images and lattice checks on the
//! sharing order.

use thiserror::Error;

use crate::graph::TermGraph;
use crate::morphism::{find_homomorphism, VertexMap};
use crate::partition::{collapse_partition, quotient, Partition};

pub const DEFAULT_MAX_VERTICES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("graph has {size} vertices, more than the enumeration bound of {bound}")]
    SizeBound { size: usize, bound: usize },
}

/// A homomorphic image together with its quotient map.
#[derive(Clone, Debug)]
pub struct Image {
    pub graph: TermGraph,
    pub map: VertexMap,
}

/// All homomorphic images of `g` up to isomorphism, with the default bound.
pub fn enumerate_images(g: &TermGraph) -> Result<Vec<Image>, LatticeError> {
    enumerate_images_bounded(g, DEFAULT_MAX_VERTICES)
}

/// Every image of `g` is the quotient by a congruence, and every congruence
/// refines the collapse partition. Distinct congruences give non-isomorphic
/// images, so no deduplication is needed. Sorted by decreasing size.
pub fn enumerate_images_bounded(g: &TermGraph, bound: usize) -> Result<Vec<Image>, LatticeError> {
    if g.len() > bound {
        return Err(LatticeError::SizeBound { size: g.len(), bound });
    }
    let coarsest = collapse_partition(g);
    let mut class = vec![usize::MAX; g.len()];
    // representatives of the classes opened so far, with their coarse block
    let mut classes: Vec<usize> = Vec::new();
    let mut out = Vec::new();
    search(g, &coarsest, 0, &mut class, &mut classes, &mut out);
    out.sort_by_key(|img: &Image| (std::cmp::Reverse(img.graph.len()), img.graph.canonical_key()));
    Ok(out)
}

fn search(
    g: &TermGraph,
    coarsest: &Partition,
    v: usize,
    class: &mut Vec<usize>,
    classes: &mut Vec<usize>,
    out: &mut Vec<Image>,
) {
    if v == g.len() {
        let p = Partition::from_assignment(class);
        if p.is_congruence(g) {
            let (graph, map) = quotient(g, &p);
            out.push(Image { graph, map });
        }
        return;
    }
    let block = coarsest.block(v.into());
    for c in 0..classes.len() {
        if classes[c] == block {
            class[v] = c;
            search(g, coarsest, v + 1, class, classes, out);
        }
    }
    classes.push(block);
    class[v] = classes.len() - 1;
    search(g, coarsest, v + 1, class, classes, out);
    classes.pop();
    class[v] = usize::MAX;
}

/// True iff every pair of elements has a least upper bound and a greatest
/// lower bound under `leq`. Finite and non-empty makes this complete.
pub fn is_lattice(n: usize, leq: impl Fn(usize, usize) -> bool) -> bool {
    if n == 0 {
        return false;
    }
    let table: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| leq(i, j)).collect()).collect();
    let le = |i: usize, j: usize| table[i][j];
    let least = |set: &[usize]| set.iter().any(|&u| set.iter().all(|&w| le(u, w)));
    let greatest = |set: &[usize]| set.iter().any(|&u| set.iter().all(|&w| le(w, u)));
    for i in 0..n {
        for j in i..n {
            let upper: Vec<usize> = (0..n).filter(|&k| le(i, k) && le(j, k)).collect();
            let lower: Vec<usize> = (0..n).filter(|&k| le(k, i) && le(k, j)).collect();
            if !least(&upper) || !greatest(&lower) {
                return false;
            }
        }
    }
    true
}

/// Lattice check for term graphs ordered by `g ⊸ h` (a homomorphism g → h
/// exists). The larger graph is the lower element.
pub fn check_lattice(images: &[TermGraph]) -> bool {
    is_lattice(images.len(), |i, j| {
        find_homomorphism(&images[i], &images[j]).is_some()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diamond_and_non_lattice() {
        // 0 < 1, 0 < 2, 1 < 3, 2 < 3
        let diamond = |i: usize, j: usize| i == j || i == 0 || j == 3;
        assert!(is_lattice(4, diamond));
        // two maximal elements without a join
        let vee = |i: usize, j: usize| i == j || i == 0;
        assert!(!is_lattice(3, vee));
        assert!(is_lattice(1, |_, _| true));
        assert!(!is_lattice(0, |_, _| true));
    }

    #[test]
    fn left_inverse_transports_lattice_structure() {
        // A = {0 < 1 < 2} embeds into the diamond B via f, with left inverse g.
        // If B is a lattice and f, g are monotone with g∘f = id, A is one too.
        let b_le = |i: usize, j: usize| i == j || i == 0 || j == 3;
        let f = [0usize, 1, 3];
        let g = [0usize, 1, 1, 2];
        for a in 0..3 {
            assert_eq!(g[f[a]], a);
            for c in 0..3 {
                let a_le = a <= c;
                assert_eq!(a_le, b_le(f[a], f[c]));
            }
        }
        for x in 0..4 {
            for y in 0..4 {
                if b_le(x, y) {
                    assert!(g[x] <= g[y]);
                }
            }
        }
        assert!(is_lattice(4, b_le));
        assert!(is_lattice(3, |a, c| a <= c));
    }
}
