//! Homomorphisms, isomorphisms and bisimilarity between term graphs.

use std::collections::VecDeque;

use crate::graph::{Label, TermGraph, Vertex};

/// A total vertex map from a source graph into a target graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    map: Vec<Vertex>,
}

impl VertexMap {
    pub fn new(map: Vec<Vertex>) -> Self {
        VertexMap { map }
    }

    pub fn identity(n: usize) -> Self {
        VertexMap {
            map: (0..n).map(Vertex::from).collect(),
        }
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        self.map[v.index()]
    }

    /// Pointwise image of a word.
    pub fn apply_word(&self, word: &[Vertex]) -> Vec<Vertex> {
        word.iter().map(|&v| self.apply(v)).collect()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.map
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.map.iter().all(|v| seen.insert(*v))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &VertexMap) -> VertexMap {
        VertexMap::new(self.map.iter().map(|&v| other.apply(v)).collect())
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> VertexMap {
        let mut inv = vec![Vertex(0); self.map.len()];
        for (i, v) in self.map.iter().enumerate() {
            inv[v.index()] = Vertex::from(i);
        }
        VertexMap::new(inv)
    }
}

/// Which homomorphism condition failed first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomViolation {
    /// The map is not total on the source vertices, or maps outside the target.
    NotTotal,
    Roots,
    Labels(Vertex),
    Arguments(Vertex, usize),
}

/// Checks roots, labels and arguments, reporting the first failure.
pub fn check_homomorphism_diag(src: &TermGraph, tgt: &TermGraph, h: &VertexMap) -> Result<(), HomViolation> {
    if h.len() != src.len() || h.as_slice().iter().any(|v| v.index() >= tgt.len()) {
        return Err(HomViolation::NotTotal);
    }
    if src.signature() != tgt.signature() {
        return Err(HomViolation::Labels(src.root()));
    }
    if h.apply(src.root()) != tgt.root() {
        return Err(HomViolation::Roots);
    }
    if let Some(v) = src.vertices().find(|&v| src.label(v) != tgt.label(h.apply(v))) {
        return Err(HomViolation::Labels(v));
    }
    for v in src.vertices() {
        let w = h.apply(v);
        for (k, &a) in src.args(v).iter().enumerate() {
            if h.apply(a) != tgt.arg(w, k) {
                return Err(HomViolation::Arguments(v, k));
            }
        }
    }
    Ok(())
}

pub fn check_homomorphism(src: &TermGraph, tgt: &TermGraph, h: &VertexMap) -> bool {
    check_homomorphism_diag(src, tgt, h).is_ok()
}

/// The unique homomorphism `g1 → g2`, found by propagating from the roots.
pub fn find_homomorphism(g1: &TermGraph, g2: &TermGraph) -> Option<VertexMap> {
    if g1.signature() != g2.signature() {
        return None;
    }
    let mut map: Vec<Option<Vertex>> = vec![None; g1.len()];
    map[g1.root().index()] = Some(g2.root());
    let mut queue = VecDeque::from([g1.root()]);
    while let Some(v) = queue.pop_front() {
        let w = map[v.index()].expect("queued vertices are mapped");
        if g1.label(v) != g2.label(w) {
            return None;
        }
        for (k, &a) in g1.args(v).iter().enumerate() {
            let b = g2.arg(w, k);
            match map[a.index()] {
                Some(existing) if existing != b => return None,
                Some(_) => {}
                None => {
                    map[a.index()] = Some(b);
                    queue.push_back(a);
                }
            }
        }
    }
    let h = VertexMap::new(map.into_iter().map(|m| m.expect("root-connected")).collect());
    debug_assert!(check_homomorphism(g1, g2, &h));
    Some(h)
}

/// A bijective homomorphism, if the graphs are isomorphic.
pub fn are_isomorphic(g1: &TermGraph, g2: &TermGraph) -> Option<VertexMap> {
    if g1.len() != g2.len() {
        return None;
    }
    find_homomorphism(g1, g2).filter(|h| h.is_injective())
}

/// True iff the homomorphism identifies only vertices labelled `f`.
pub fn check_f_homomorphism(src: &TermGraph, h: &VertexMap, f: Label) -> bool {
    let mut first: std::collections::HashMap<Vertex, Vertex> = Default::default();
    for v in src.vertices() {
        let w = h.apply(v);
        if let Some(&u) = first.get(&w) {
            if src.label(u) != f || src.label(v) != f {
                return false;
            }
        } else {
            first.insert(w, v);
        }
    }
    true
}

/// Relational bisimilarity: the greatest label- and argument-closed relation
/// on `V1 × V2`, tested for the root pair.
pub fn are_bisimilar(g1: &TermGraph, g2: &TermGraph) -> bool {
    if g1.signature() != g2.signature() {
        return false;
    }
    let n2 = g2.len();
    let idx = |a: Vertex, b: Vertex| a.index() * n2 + b.index();
    let mut rel = vec![false; g1.len() * n2];
    for a in g1.vertices() {
        for b in g2.vertices() {
            rel[idx(a, b)] = g1.label(a) == g2.label(b);
        }
    }
    loop {
        let mut changed = false;
        for a in g1.vertices() {
            for b in g2.vertices() {
                if rel[idx(a, b)] && g1.args(a).iter().zip(g2.args(b)).any(|(&x, &y)| !rel[idx(x, y)]) {
                    rel[idx(a, b)] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    rel[idx(g1.root(), g2.root())]
}

/// A path from the root: the visited vertices and the argument index taken
/// at each step (`indices.len() + 1 == vertices.len()`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub vertices: Vec<Vertex>,
    pub indices: Vec<usize>,
}

impl Path {
    pub fn target(&self) -> Vertex {
        *self.vertices.last().expect("paths are non-empty")
    }
}

/// Iterator over all root paths to a vertex that visit no vertex twice.
pub struct AccessPaths<'g> {
    g: &'g TermGraph,
    target: Vertex,
    // current path and, per depth, the next argument index to try
    stack: Vec<(Vertex, usize)>,
    on_path: Vec<bool>,
    done: bool,
}

pub fn access_paths(g: &TermGraph, w: Vertex) -> AccessPaths<'_> {
    let mut on_path = vec![false; g.len()];
    on_path[g.root().index()] = true;
    AccessPaths {
        g,
        target: w,
        stack: vec![(g.root(), 0)],
        on_path,
        done: false,
    }
}

impl AccessPaths<'_> {
    fn current(&self) -> Path {
        let n = self.stack.len();
        Path {
            vertices: self.stack.iter().map(|&(v, _)| v).collect(),
            // parents have already advanced past the child they descended into
            indices: self.stack[..n - 1].iter().map(|&(_, k)| k - 1).collect(),
        }
    }
}

impl Iterator for AccessPaths<'_> {
    type Item = Path;

    fn next(&mut self) -> Option<Path> {
        if self.done {
            return None;
        }
        loop {
            let Some(&mut (v, ref mut k)) = self.stack.last_mut() else {
                self.done = true;
                return None;
            };
            // a path ending in the target is reported once, then abandoned
            if v == self.target && *k == 0 {
                *k = usize::MAX;
                return Some(self.current());
            }
            if *k == usize::MAX || *k >= self.g.args(v).len() {
                self.on_path[v.index()] = false;
                self.stack.pop();
                continue;
            }
            let t = self.g.arg(v, *k);
            *k += 1;
            if !self.on_path[t.index()] {
                self.on_path[t.index()] = true;
                self.stack.push((t, 0));
            }
        }
    }
}
