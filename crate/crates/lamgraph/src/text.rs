//! Line-based textual format.
//!
//! ```text
//! tg l12
//! # λx. x
//! r lam v
//! v var r
//! root r
//! ```
//!
//! Optional `scope <lam> <id>*` lines attach a scope function, and
//! `prefix <id> <lam>*` lines an abstraction-prefix function (vertices
//! without a `prefix` line get the empty prefix).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write;

use thiserror::Error;

use crate::graph::{GraphError, Label, Signature, TermGraph, TermGraphBuilder, Vertex};
use crate::ho::{ApHoTermGraph, HoTermGraph, ScopeFn};
use crate::scope::PrefixFn;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("unknown vertex `{0}` in scope or prefix line")]
    UnknownVertex(String),
}

/// A parsed file: the graph and whatever scoping annotations it carried.
#[derive(Clone, Debug)]
pub struct Document {
    pub graph: TermGraph,
    pub scopes: Option<ScopeFn>,
    pub prefixes: Option<PrefixFn>,
}

/// True iff the text starts (after comments and blank lines) with a `tg` header.
pub fn looks_like_graph(text: &str) -> bool {
    content_lines(text)
        .next()
        .is_some_and(|(_, toks)| toks.first() == Some(&"tg"))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let toks: Vec<&str> = line.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

pub fn parse_document(text: &str) -> Result<Document, TextError> {
    let mut lines = content_lines(text);
    let syntax = |line, message: &str| TextError::Syntax {
        line,
        message: message.to_string(),
    };
    let (l0, header) = lines
        .next()
        .ok_or_else(|| syntax(1, "missing `tg <sig>` header"))?;
    if header.len() != 2 || header[0] != "tg" {
        return Err(syntax(l0, "expected `tg <sig>`"));
    }
    let sig = Signature::parse(header[1]).ok_or_else(|| syntax(l0, "unknown signature"))?;
    let mut builder = TermGraphBuilder::new(sig);
    let mut root_seen = false;
    let mut scope_lines: Vec<(usize, Vec<String>)> = Vec::new();
    let mut prefix_lines: Vec<(usize, Vec<String>)> = Vec::new();
    for (ln, toks) in lines {
        let rest: Vec<String> = toks[1..].iter().map(|s| s.to_string()).collect();
        match toks[0] {
            "root" => {
                if toks.len() != 2 {
                    return Err(syntax(ln, "expected `root <id>`"));
                }
                if root_seen {
                    return Err(syntax(ln, "second root line"));
                }
                root_seen = true;
                builder.set_root(toks[1]);
            }
            "scope" => {
                if rest.is_empty() {
                    return Err(syntax(ln, "expected `scope <lam> <id>*`"));
                }
                scope_lines.push((ln, rest));
            }
            "prefix" => {
                if rest.is_empty() {
                    return Err(syntax(ln, "expected `prefix <id> <lam>*`"));
                }
                prefix_lines.push((ln, rest));
            }
            id => {
                let label = toks
                    .get(1)
                    .and_then(|l| Label::parse(l))
                    .ok_or_else(|| syntax(ln, "expected `<id> <label> <succ>*`"))?;
                builder.add_vertex(id, label, &toks[2..]);
            }
        }
    }
    let graph = builder.build()?;
    let index: HashMap<&str, Vertex> = graph.vertices().map(|v| (graph.name(v), v)).collect();
    let lookup = |s: &str| {
        index
            .get(s)
            .copied()
            .ok_or_else(|| TextError::UnknownVertex(s.to_string()))
    };
    let scopes = if scope_lines.is_empty() {
        None
    } else {
        let mut sc: ScopeFn = BTreeMap::new();
        for (ln, toks) in &scope_lines {
            let v = lookup(&toks[0])?;
            let set = toks[1..]
                .iter()
                .map(|s| lookup(s))
                .collect::<Result<BTreeSet<_>, _>>()?;
            if sc.insert(v, set).is_some() {
                return Err(syntax(*ln, "second scope line for the same abstraction"));
            }
        }
        Some(sc)
    };
    let prefixes = if prefix_lines.is_empty() {
        None
    } else {
        let mut words = vec![Vec::new(); graph.len()];
        let mut seen = vec![false; graph.len()];
        for (ln, toks) in &prefix_lines {
            let v = lookup(&toks[0])?;
            if std::mem::replace(&mut seen[v.index()], true) {
                return Err(syntax(*ln, "second prefix line for the same vertex"));
            }
            words[v.index()] = toks[1..].iter().map(|s| lookup(s)).collect::<Result<_, _>>()?;
        }
        Some(PrefixFn::new(words))
    };
    Ok(Document {
        graph,
        scopes,
        prefixes,
    })
}

pub fn parse_graph(text: &str) -> Result<TermGraph, TextError> {
    parse_document(text).map(|d| d.graph)
}

pub fn write_graph(g: &TermGraph) -> String {
    let mut out = format!("tg {}\n", g.signature());
    for v in g.vertices() {
        let _ = write!(out, "{} {}", g.name(v), g.label(v));
        for &t in g.args(v) {
            let _ = write!(out, " {}", g.name(t));
        }
        out.push('\n');
    }
    let _ = writeln!(out, "root {}", g.name(g.root()));
    out
}

pub fn write_ho(h: &HoTermGraph) -> String {
    let g = h.carrier();
    let mut out = write_graph(g);
    for (&v, set) in h.scopes() {
        let _ = write!(out, "scope {}", g.name(v));
        for &x in set {
            let _ = write!(out, " {}", g.name(x));
        }
        out.push('\n');
    }
    out
}

pub fn write_ap_ho(a: &ApHoTermGraph) -> String {
    let g = a.carrier();
    let mut out = write_graph(g);
    for w in g.vertices() {
        let _ = write!(out, "prefix {}", g.name(w));
        for &x in a.prefix().get(w) {
            let _ = write!(out, " {}", g.name(x));
        }
        out.push('\n');
    }
    out
}
