use std::fmt;

use crate::graph::{TermGraph, Vertex};
use crate::morphism::VertexMap;

/// Abstraction-prefix function: for each vertex, the word of abstraction
/// vertices that have it in scope, outermost first. The relaxed variant is
/// undefined on delimiter vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixFn {
    entries: Vec<Option<Vec<Vertex>>>,
    relaxed: bool,
}

impl PrefixFn {
    pub fn new(entries: Vec<Vec<Vertex>>) -> Self {
        PrefixFn {
            entries: entries.into_iter().map(Some).collect(),
            relaxed: false,
        }
    }

    pub fn relaxed(entries: Vec<Option<Vec<Vertex>>>) -> Self {
        PrefixFn {
            entries,
            relaxed: true,
        }
    }

    pub fn is_relaxed(&self) -> bool {
        self.relaxed
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The prefix of `v`. Panics if undefined (relaxed, delimiter vertex).
    pub fn get(&self, v: Vertex) -> &[Vertex] {
        self.try_get(v)
            .unwrap_or_else(|| panic!("prefix undefined at {v}"))
    }

    pub fn try_get(&self, v: Vertex) -> Option<&[Vertex]> {
        self.entries.get(v.index())?.as_deref()
    }

    pub fn set(&mut self, v: Vertex, word: Vec<Vertex>) {
        self.entries[v.index()] = Some(word);
    }

    pub fn entries(&self) -> &[Option<Vec<Vertex>>] {
        &self.entries
    }

    /// Restriction along a map from new vertices to old ones, re-indexing the
    /// words with `old_to_new`.
    pub fn pull_back(&self, new_to_old: &[Vertex], old_to_new: &[Option<Vertex>]) -> PrefixFn {
        let entries = new_to_old
            .iter()
            .map(|&old| {
                self.try_get(old).map(|w| {
                    w.iter()
                        .map(|x| old_to_new[x.index()].expect("prefix vertices survive"))
                        .collect()
                })
            })
            .collect();
        PrefixFn {
            entries,
            relaxed: self.relaxed,
        }
    }

    /// Renders a prefix with vertex names, `ε` for the empty word.
    pub fn show(&self, g: &TermGraph, v: Vertex) -> String {
        match self.try_get(v) {
            None => "-".to_string(),
            Some([]) => "ε".to_string(),
            Some(w) => w
                .iter()
                .map(|&x| g.name(x).to_string())
                .collect::<Vec<_>>()
                .join(" "),
        }
    }
}

/// Correctness conditions, in the order they are checked and reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    Root,
    /// Edge out of an abstraction.
    Lam,
    /// Edge out of an application.
    App,
    /// Variable with an empty prefix.
    Var0,
    /// Variable back-link not matching its binder.
    Var1,
    /// Delimiter continuation does not pop one entry.
    Del1,
    /// Delimiter back-link does not name the scope it closes.
    Del2,
    /// Prefix is undefined where it must be defined.
    Undefined,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::Root => "(root)",
            Condition::Lam => "(λ)",
            Condition::App => "(@)",
            Condition::Var0 => "(0)_0",
            Condition::Var1 => "(0)_1",
            Condition::Del1 => "(S)_1",
            Condition::Del2 => "(S)_2",
            Condition::Undefined => "(total)",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A failed condition with its witness vertex and, for edge conditions,
/// the argument index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub vertex: Vertex,
    pub edge: Option<usize>,
}

impl Violation {
    pub fn at(condition: Condition, vertex: Vertex) -> Self {
        Violation {
            condition,
            vertex,
            edge: None,
        }
    }

    pub fn on_edge(condition: Condition, vertex: Vertex, k: usize) -> Self {
        Violation {
            condition,
            vertex,
            edge: Some(k),
        }
    }

    pub fn describe(&self, g: &TermGraph) -> String {
        match self.edge {
            Some(k) => format!(
                "{} violated at `{}` argument {}",
                self.condition,
                g.name(self.vertex),
                k
            ),
            None => format!("{} violated at `{}`", self.condition, g.name(self.vertex)),
        }
    }
}

pub(crate) fn is_prefix(p: &[Vertex], q: &[Vertex]) -> bool {
    p.len() <= q.len() && q[..p.len()] == *p
}

pub(crate) fn common_prefix(p: &[Vertex], q: &[Vertex]) -> Vec<Vertex> {
    p.iter()
        .zip(q)
        .take_while(|(a, b)| a == b)
        .map(|(a, _)| *a)
        .collect()
}

pub(crate) fn push(p: &[Vertex], v: Vertex) -> Vec<Vertex> {
    let mut out = p.to_vec();
    out.push(v);
    out
}

/// True iff `h` maps every prefix onto the prefix of the image vertex.
pub fn check_prefix_homomorphic_image(h: &VertexMap, p1: &PrefixFn, p2: &PrefixFn) -> bool {
    (0..h.len())
        .map(Vertex::from)
        .all(|w| match (p1.try_get(w), p2.try_get(h.apply(w))) {
            (Some(a), Some(b)) => h.apply_word(a) == b,
            (None, None) => true,
            _ => false,
        })
}
