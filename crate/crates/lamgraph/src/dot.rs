//! Graphviz export.

use std::fmt::Write;

use crate::graph::{Label, TermGraph, Vertex};
use crate::ho::ScopeFn;

fn is_back_link(g: &TermGraph, v: Vertex, k: usize) -> bool {
    matches!((g.label(v), k), (Label::Var, 0) | (Label::Del, 1))
}

fn node_line(g: &TermGraph, v: Vertex, indent: usize) -> String {
    let shape = if v == g.root() { ", peripheries=2" } else { "" };
    format!(
        "{:indent$}n{} [label=\"{} {}\"{}];\n",
        "",
        v.0,
        g.label(v),
        g.name(v).replace('"', "\\\""),
        shape,
        indent = indent
    )
}

/// One node per vertex, argument indices as edge labels, back-links dashed.
/// Scopes, when given, become nested shaded clusters.
pub fn to_dot(g: &TermGraph, scopes: Option<&ScopeFn>) -> String {
    let mut out = String::from("digraph G {\n  node [shape=box, fontname=\"monospace\"];\n");
    match scopes {
        None => {
            for v in g.vertices() {
                out.push_str(&node_line(g, v, 2));
            }
        }
        Some(sc) => {
            // innermost scope of each vertex, and of each scope
            let innermost = |x: Vertex, except: Option<Vertex>| {
                sc.iter()
                    .filter(|(&v, set)| Some(v) != except && set.contains(&x))
                    .min_by_key(|(_, set)| set.len())
                    .map(|(&v, _)| v)
            };
            let home: Vec<Option<Vertex>> = g.vertices().map(|x| innermost(x, None)).collect();
            let parent: Vec<(Vertex, Option<Vertex>)> = sc
                .keys()
                .map(|&v| {
                    let outer = sc
                        .iter()
                        .filter(|(&u, set)| u != v && set.len() > sc[&v].len() && set.contains(&v))
                        .min_by_key(|(_, set)| set.len())
                        .map(|(&u, _)| u);
                    (v, outer)
                })
                .collect();
            emit_cluster(g, None, &home, &parent, 2, &mut out);
        }
    }
    for (v, k, t) in g.edges() {
        let style = if is_back_link(g, v, k) {
            ", style=dashed"
        } else {
            ""
        };
        let _ = writeln!(out, "  n{} -> n{} [label=\"{}\"{}];", v.0, t.0, k, style);
    }
    out.push_str("}\n");
    out
}

fn emit_cluster(
    g: &TermGraph,
    scope: Option<Vertex>,
    home: &[Option<Vertex>],
    parent: &[(Vertex, Option<Vertex>)],
    indent: usize,
    out: &mut String,
) {
    for v in g.vertices().filter(|v| home[v.index()] == scope) {
        out.push_str(&node_line(g, v, indent));
    }
    for &(child, _) in parent.iter().filter(|(_, p)| *p == scope) {
        let _ = writeln!(
            out,
            "{:indent$}subgraph cluster_{} {{\n{:indent$}  style=filled; color=\"#00000010\"; label=\"{}\";",
            "",
            child.0,
            "",
            g.name(child),
            indent = indent
        );
        emit_cluster(g, Some(child), home, parent, indent + 2, out);
        let _ = writeln!(out, "{:indent$}}}", "", indent = indent);
    }
}
