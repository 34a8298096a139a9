//! First-order term graphs over the λ-signatures.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

/// Vertex handle, a dense index into the owning graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub u32);

impl Vertex {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for Vertex {
    fn from(i: usize) -> Self {
        Vertex(i as u32)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    App,
    Lam,
    Var,
    Del,
}

impl Label {
    pub const ALL: [Label; 4] = [Label::App, Label::Lam, Label::Var, Label::Del];

    pub fn name(self) -> &'static str {
        match self {
            Label::App => "app",
            Label::Lam => "lam",
            Label::Var => "var",
            Label::Del => "del",
        }
    }

    pub fn parse(s: &str) -> Option<Label> {
        Label::ALL.into_iter().find(|l| l.name() == s)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The seven λ-signatures. `L` has no variable vertices at all, `L<i>` gives
/// `var` arity `i`, and `L<i><j>` adds delimiters of arity `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Signature {
    L,
    L0,
    L1,
    L01,
    L02,
    L11,
    L12,
}

impl Signature {
    pub const ALL: [Signature; 7] = [
        Signature::L,
        Signature::L0,
        Signature::L1,
        Signature::L01,
        Signature::L02,
        Signature::L11,
        Signature::L12,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Signature::L => "l",
            Signature::L0 => "l0",
            Signature::L1 => "l1",
            Signature::L01 => "l01",
            Signature::L02 => "l02",
            Signature::L11 => "l11",
            Signature::L12 => "l12",
        }
    }

    pub fn parse(s: &str) -> Option<Signature> {
        Signature::ALL.into_iter().find(|k| k.code() == s)
    }

    /// Arity of `var`, if variables belong to the signature.
    pub fn var_arity(self) -> Option<usize> {
        match self {
            Signature::L => None,
            Signature::L0 | Signature::L01 | Signature::L02 => Some(0),
            Signature::L1 | Signature::L11 | Signature::L12 => Some(1),
        }
    }

    /// Arity of `del`, if delimiters belong to the signature.
    pub fn del_arity(self) -> Option<usize> {
        match self {
            Signature::L01 | Signature::L11 => Some(1),
            Signature::L02 | Signature::L12 => Some(2),
            _ => None,
        }
    }

    pub fn arity(self, label: Label) -> Option<usize> {
        match label {
            Label::App => Some(2),
            Label::Lam => Some(1),
            Label::Var => self.var_arity(),
            Label::Del => self.del_arity(),
        }
    }

    pub fn has_delimiters(self) -> bool {
        self.del_arity().is_some()
    }

    /// The delimiter-free signature with the same `var` arity.
    pub fn without_delimiters(self) -> Signature {
        match self {
            Signature::L01 | Signature::L02 => Signature::L0,
            Signature::L11 | Signature::L12 => Signature::L1,
            other => other,
        }
    }

    /// `L<i>` extended with delimiters of arity `j`.
    pub fn with_delimiters(self, j: usize) -> Option<Signature> {
        match (self.var_arity()?, j) {
            (0, 1) => Some(Signature::L01),
            (0, 2) => Some(Signature::L02),
            (1, 1) => Some(Signature::L11),
            (1, 2) => Some(Signature::L12),
            _ => None,
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex `{vertex}`: label `{label}` takes {expected} argument(s), got {found}")]
    ArityMismatch {
        vertex: String,
        label: Label,
        expected: usize,
        found: usize,
    },
    #[error("vertex `{vertex}`: label `{label}` is not part of signature {sig}")]
    LabelNotInSignature {
        vertex: String,
        label: Label,
        sig: Signature,
    },
    #[error("vertex `{0}` is not reachable from the root")]
    UnreachableVertex(String),
    #[error("vertex `{vertex}`: argument {index} refers to an undeclared vertex `{target}`")]
    DanglingEdge {
        vertex: String,
        index: usize,
        target: String,
    },
    #[error("no root vertex given")]
    MissingRoot,
    #[error("root `{0}` is not a declared vertex")]
    UnknownRoot(String),
    #[error("vertex `{0}` declared twice")]
    DuplicateVertex(String),
}

/// A finite, root-connected term graph. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermGraph {
    sig: Signature,
    labels: Vec<Label>,
    args: Vec<Vec<Vertex>>,
    names: Vec<String>,
    root: Vertex,
}

impl TermGraph {
    /// Validates raw parts: arities, edge targets and root-connectedness.
    pub fn from_parts(
        sig: Signature,
        labels: Vec<Label>,
        args: Vec<Vec<Vertex>>,
        names: Vec<String>,
        root: Vertex,
    ) -> Result<TermGraph, GraphError> {
        assert_eq!(labels.len(), args.len());
        assert_eq!(labels.len(), names.len());
        let n = labels.len();
        if root.index() >= n {
            return Err(GraphError::MissingRoot);
        }
        for v in 0..n {
            let label = labels[v];
            let Some(expected) = sig.arity(label) else {
                return Err(GraphError::LabelNotInSignature {
                    vertex: names[v].clone(),
                    label,
                    sig,
                });
            };
            if args[v].len() != expected {
                return Err(GraphError::ArityMismatch {
                    vertex: names[v].clone(),
                    label,
                    expected,
                    found: args[v].len(),
                });
            }
            for (k, t) in args[v].iter().enumerate() {
                if t.index() >= n {
                    return Err(GraphError::DanglingEdge {
                        vertex: names[v].clone(),
                        index: k,
                        target: t.to_string(),
                    });
                }
            }
        }
        let g = TermGraph {
            sig,
            labels,
            args,
            names,
            root,
        };
        let seen = g.reachable();
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(GraphError::UnreachableVertex(g.names[v].clone()));
        }
        Ok(g)
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.labels.len()).map(Vertex::from)
    }

    pub fn label(&self, v: Vertex) -> Label {
        self.labels[v.index()]
    }

    pub fn args(&self, v: Vertex) -> &[Vertex] {
        &self.args[v.index()]
    }

    pub fn arg(&self, v: Vertex, k: usize) -> Vertex {
        self.args[v.index()][k]
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_named(&self, name: &str) -> Option<Vertex> {
        self.names.iter().position(|n| n == name).map(Vertex::from)
    }

    /// Like [`vertex_named`](Self::vertex_named) but panics on unknown names.
    pub fn v(&self, name: &str) -> Vertex {
        self.vertex_named(name)
            .unwrap_or_else(|| panic!("no vertex named `{name}`"))
    }

    pub fn count_label(&self, label: Label) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }

    /// All edges as `(source, index, target)`.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, usize, Vertex)> + '_ {
        self.vertices()
            .flat_map(move |v| self.args(v).iter().enumerate().map(move |(k, &t)| (v, k, t)))
    }

    /// Predecessor lists: `(source, index)` pairs for each target.
    pub fn predecessors(&self) -> Vec<Vec<(Vertex, usize)>> {
        let mut preds = vec![Vec::new(); self.len()];
        for (v, k, t) in self.edges() {
            preds[t.index()].push((v, k));
        }
        preds
    }

    /// The same graph viewed over another signature with identical arities
    /// for every label that occurs.
    pub fn with_signature(&self, sig: Signature) -> Result<TermGraph, GraphError> {
        TermGraph::from_parts(
            sig,
            self.labels.clone(),
            self.args.clone(),
            self.names.clone(),
            self.root,
        )
    }

    /// Replaces vertex names; the structure is untouched.
    pub fn renamed(&self, names: Vec<String>) -> TermGraph {
        assert_eq!(names.len(), self.len());
        TermGraph {
            names,
            ..self.clone()
        }
    }

    /// Breadth-first order from the root, children left to right.
    pub fn bfs_order(&self) -> Vec<Vertex> {
        let mut seen = vec![false; self.len()];
        let mut order = Vec::with_capacity(self.len());
        let mut queue = VecDeque::from([self.root]);
        seen[self.root.index()] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &t in self.args(v) {
                if !seen[t.index()] {
                    seen[t.index()] = true;
                    queue.push_back(t);
                }
            }
        }
        order
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        for v in self.bfs_order() {
            seen[v.index()] = true;
        }
        seen
    }

    /// Canonical renumbering by breadth-first discovery. Two graphs are
    /// isomorphic iff their canonical forms are equal.
    pub fn canonical(&self) -> (TermGraph, Vec<Vertex>) {
        let order = self.bfs_order();
        let mut new_of = vec![Vertex(0); self.len()];
        for (i, &v) in order.iter().enumerate() {
            new_of[v.index()] = Vertex::from(i);
        }
        let labels = order.iter().map(|&v| self.label(v)).collect();
        let args = order
            .iter()
            .map(|&v| self.args(v).iter().map(|t| new_of[t.index()]).collect())
            .collect();
        let names = (0..order.len()).map(|i| format!("n{i}")).collect();
        let g = TermGraph {
            sig: self.sig,
            labels,
            args,
            names,
            root: Vertex(0),
        };
        (g, new_of)
    }

    /// Structural key of the canonical form, independent of vertex names.
    pub fn canonical_key(&self) -> (Signature, Vec<(Label, Vec<Vertex>)>) {
        let (c, _) = self.canonical();
        let body = c.vertices().map(|v| (c.label(v), c.args(v).to_vec())).collect();
        (self.sig, body)
    }
}

/// Incremental construction by vertex name.
#[derive(Debug, Clone)]
pub struct TermGraphBuilder {
    sig: Signature,
    decls: Vec<(String, Label, Vec<String>)>,
    root: Option<String>,
}

impl TermGraphBuilder {
    pub fn new(sig: Signature) -> Self {
        TermGraphBuilder {
            sig,
            decls: Vec::new(),
            root: None,
        }
    }

    pub fn vertex<S: AsRef<str>>(mut self, name: &str, label: Label, args: &[S]) -> Self {
        self.add_vertex(name, label, args);
        self
    }

    pub fn add_vertex<S: AsRef<str>>(&mut self, name: &str, label: Label, args: &[S]) {
        self.decls.push((
            name.to_string(),
            label,
            args.iter().map(|a| a.as_ref().to_string()).collect(),
        ));
    }

    pub fn root(mut self, name: &str) -> Self {
        self.root = Some(name.to_string());
        self
    }

    pub fn set_root(&mut self, name: &str) {
        self.root = Some(name.to_string());
    }

    pub fn build(self) -> Result<TermGraph, GraphError> {
        let mut index = HashMap::new();
        for (i, (name, _, _)) in self.decls.iter().enumerate() {
            if index.insert(name.clone(), Vertex::from(i)).is_some() {
                return Err(GraphError::DuplicateVertex(name.clone()));
            }
        }
        let root_name = self.root.ok_or(GraphError::MissingRoot)?;
        let root = *index.get(&root_name).ok_or(GraphError::UnknownRoot(root_name))?;
        let mut labels = Vec::new();
        let mut args = Vec::new();
        let mut names = Vec::new();
        for (name, label, succ) in self.decls {
            let mut targets = Vec::with_capacity(succ.len());
            for (k, s) in succ.iter().enumerate() {
                match index.get(s) {
                    Some(&t) => targets.push(t),
                    None => {
                        return Err(GraphError::DanglingEdge {
                            vertex: name,
                            index: k,
                            target: s.clone(),
                        })
                    }
                }
            }
            labels.push(label);
            args.push(targets);
            names.push(name);
        }
        TermGraph::from_parts(self.sig, labels, args, names, root)
    }
}
