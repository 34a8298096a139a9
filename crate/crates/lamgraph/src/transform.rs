//! Translations between scope functions, prefix functions and delimiter
//! graphs, and the maximal-sharing pipeline.

use std::collections::{BTreeSet, HashSet};

use log::warn;
use thiserror::Error;

use crate::graph::{Label, Signature, TermGraph, Vertex};
use crate::ho::{ApHoTermGraph, HoTermGraph, ScopeFn};
use crate::morphism::VertexMap;
use crate::partition::{collapse, collapse_only};
use crate::scope::{infer_prefix_diag, is_eager_scope_with, skip_delimiters, PrefixFn, ScopeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error(transparent)]
    Scope(#[from] ScopeError),
    #[error("delimiter arity must be 1 or 2, got {0}")]
    BadDelimiterArity(usize),
    #[error("input does not have eager scope")]
    NotEagerScope,
    #[error("collapse left the class of λ-term-graphs")]
    CollapseLeftClass,
}

/// Prefix function from scopes: binders without the vertex itself.
pub fn scopes_to_prefixes(h: &HoTermGraph) -> ApHoTermGraph {
    let g = h.carrier();
    let entries = g
        .vertices()
        .map(|w| h.binders(w).into_iter().filter(|&v| v != w).collect())
        .collect();
    ApHoTermGraph::new(g.clone(), PrefixFn::new(entries))
        .expect("prefixes of a valid scope function are correct")
}

/// Scopes from prefixes: every vertex whose prefix mentions `v`, and `v`.
pub fn prefixes_to_scopes(a: &ApHoTermGraph) -> HoTermGraph {
    let g = a.carrier();
    let mut scopes: ScopeFn = g
        .vertices()
        .filter(|&v| g.label(v) == Label::Lam)
        .map(|v| (v, BTreeSet::from([v])))
        .collect();
    for w in g.vertices() {
        for v in a.prefix().get(w) {
            scopes
                .get_mut(v)
                .expect("prefix words hold abstractions")
                .insert(w);
        }
    }
    HoTermGraph::new(g.clone(), scopes).expect("scopes of a correct prefix function are valid")
}

/// Number of delimiters placed on the edge `w →k`.
pub fn del_count(g: &TermGraph, p: &PrefixFn, w: Vertex, k: usize) -> usize {
    let target = p.get(g.arg(w, k)).len();
    match g.label(w) {
        Label::App => p.get(w).len() - target,
        Label::Lam => p.get(w).len() + 1 - target,
        _ => 0,
    }
}

/// Where an inserted delimiter came from: it sits on `source →index target`
/// and carries `prefix`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelimiterOrigin {
    pub source: Vertex,
    pub index: usize,
    pub target: Vertex,
    pub prefix: Vec<Vertex>,
}

fn fresh_name(taken: &mut HashSet<String>, base: String) -> String {
    let mut name = base.clone();
    let mut n = 1;
    while !taken.insert(name.clone()) {
        name = format!("{base}'{n}");
        n += 1;
    }
    name
}

/// Inserts chains of delimiters wherever a prefix shrinks along an edge.
/// Original vertices keep their indices; delimiters follow, with their
/// origin recorded.
pub fn insert_delimiters_traced(
    a: &ApHoTermGraph,
    j: usize,
) -> Result<(TermGraph, Vec<DelimiterOrigin>), TransformError> {
    let g = a.carrier();
    let p = a.prefix();
    let sig = g
        .signature()
        .with_delimiters(j)
        .ok_or(TransformError::BadDelimiterArity(j))?;
    let mut labels: Vec<Label> = g.vertices().map(|v| g.label(v)).collect();
    let mut args: Vec<Vec<Vertex>> = g.vertices().map(|v| g.args(v).to_vec()).collect();
    let mut names: Vec<String> = g.names().to_vec();
    let mut taken: HashSet<String> = names.iter().cloned().collect();
    let mut origins = Vec::new();
    for w in g.vertices() {
        for k in 0..g.args(w).len() {
            let n = del_count(g, p, w, k);
            if n == 0 {
                continue;
            }
            let target = g.arg(w, k);
            let mut word: Vec<Vertex> = p.get(w).to_vec();
            if g.label(w) == Label::Lam {
                word.push(w);
            }
            let first = Vertex::from(labels.len());
            args[w.index()][k] = first;
            // delimiters carry P(w)(·w), then successively shorter words
            for d in 0..n {
                let me = Vertex::from(labels.len());
                let closes = *word.last().expect("a delimiter closes a scope");
                let next = if d + 1 == n {
                    target
                } else {
                    Vertex::from(me.index() + 1)
                };
                let mut a_args = vec![next];
                if j == 2 {
                    a_args.push(closes);
                }
                labels.push(Label::Del);
                args.push(a_args);
                names.push(fresh_name(&mut taken, format!("{}.{}.{}", g.name(w), k, d)));
                origins.push(DelimiterOrigin {
                    source: w,
                    index: k,
                    target,
                    prefix: word.clone(),
                });
                word.pop();
            }
        }
    }
    let out = TermGraph::from_parts(sig, labels, args, names, g.root())
        .expect("delimiter insertion keeps the graph well-formed");
    Ok((out, origins))
}

pub fn insert_delimiters(a: &ApHoTermGraph, j: usize) -> Result<TermGraph, TransformError> {
    insert_delimiters_traced(a, j).map(|(g, _)| g)
}

/// Drops delimiters, rewiring every edge across the chain it starts. The
/// prefix function of the λ-term-graph is restricted to the survivors.
pub fn erase_delimiters(g: &TermGraph) -> Result<ApHoTermGraph, TransformError> {
    if !g.signature().has_delimiters() {
        return Err(ScopeError::UnsupportedSignature(g.signature()).into());
    }
    let p = infer_prefix_diag(g).map_err(ScopeError::NotALambdaTG)?;
    let kept: Vec<Vertex> = g.vertices().filter(|&v| g.label(v) != Label::Del).collect();
    let mut new_of: Vec<Option<Vertex>> = vec![None; g.len()];
    for (i, &v) in kept.iter().enumerate() {
        new_of[v.index()] = Some(Vertex::from(i));
    }
    let skip = |v: Vertex| {
        let (end, _) = skip_delimiters(g, v).expect("delimiter chains of λ-term-graphs end");
        new_of[end.index()].expect("chains end in kept vertices")
    };
    let labels = kept.iter().map(|&v| g.label(v)).collect();
    let args = kept
        .iter()
        .map(|&v| g.args(v).iter().map(|&t| skip(t)).collect())
        .collect();
    let names = kept.iter().map(|&v| g.name(v).to_string()).collect();
    let root = new_of[g.root().index()].expect("the root of a λ-term-graph is not a delimiter");
    let carrier = TermGraph::from_parts(g.signature().without_delimiters(), labels, args, names, root)
        .expect("erasure keeps the graph well-formed");
    let prefix = p.pull_back(&kept, &new_of);
    Ok(ApHoTermGraph::new(carrier, prefix).expect("erasure yields a correct prefix function"))
}

/// Carrier of a higher-order term graph.
pub fn forget_scoping(h: &HoTermGraph) -> TermGraph {
    h.carrier().clone()
}

pub fn forget_prefixes(a: &ApHoTermGraph) -> TermGraph {
    a.carrier().clone()
}

/// Largest image identifying only delimiter vertices.
pub fn s_collapse(g: &TermGraph) -> (TermGraph, VertexMap) {
    collapse_only(g, Label::Del)
}

/// Every intermediate graph of [`max_share_pipeline`].
#[derive(Clone, Debug)]
pub struct PipelineStages {
    pub prefixed: ApHoTermGraph,
    pub delimited: TermGraph,
    pub collapsed: TermGraph,
    pub result: HoTermGraph,
}

/// Maximal sharing for a higher-order term graph over `l1`: translate to a
/// delimiter graph, collapse it, and translate back.
pub fn max_share_pipeline(h: &HoTermGraph, eager_required: bool) -> Result<HoTermGraph, TransformError> {
    max_share_stages(h, eager_required).map(|s| s.result)
}

/// [`max_share_pipeline`], keeping the intermediate graphs.
pub fn max_share_stages(h: &HoTermGraph, eager_required: bool) -> Result<PipelineStages, TransformError> {
    if h.carrier().signature() != Signature::L1 {
        return Err(ScopeError::UnsupportedSignature(h.carrier().signature()).into());
    }
    let prefixed = scopes_to_prefixes(h);
    let delimited = insert_delimiters(&prefixed, 2)?;
    let p = infer_prefix_diag(&delimited).expect("inserted delimiters give a λ-term-graph");
    if !is_eager_scope_with(&delimited, &p) {
        if eager_required {
            return Err(TransformError::NotEagerScope);
        }
        warn!("collapsing a graph without eager scope; the result may leave the class");
    }
    let (collapsed, _) = collapse(&delimited);
    if infer_prefix_diag(&collapsed).is_err() {
        return Err(TransformError::CollapseLeftClass);
    }
    let result = prefixes_to_scopes(&erase_delimiters(&collapsed)?);
    Ok(PipelineStages {
        prefixed,
        delimited,
        collapsed,
        result,
    })
}
