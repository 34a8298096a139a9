use std::collections::VecDeque;

use crate::graph::{Label, TermGraph, Vertex};

use super::prefix::PrefixFn;

/// Vertices whose prefix contains `v`, i.e. extends `P(v)·v`.
fn in_scope(g: &TermGraph, p: &PrefixFn, v: Vertex) -> Vec<bool> {
    g.vertices()
        .map(|x| p.try_get(x).is_some_and(|w| w.contains(&v)))
        .collect()
}

/// Vertices of `region` that reach a `target` vertex along a path inside
/// `region`.
fn backward_closure(
    g: &TermGraph,
    preds: &[Vec<(Vertex, usize)>],
    region: &[bool],
    targets: &[Vertex],
) -> Vec<bool> {
    let mut seen = vec![false; g.len()];
    let mut queue: VecDeque<Vertex> = VecDeque::new();
    for &t in targets {
        if region[t.index()] && !seen[t.index()] {
            seen[t.index()] = true;
            queue.push_back(t);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &(y, _) in &preds[x.index()] {
            if region[y.index()] && !seen[y.index()] {
                seen[y.index()] = true;
                queue.push_back(y);
            }
        }
    }
    seen
}

fn lams(g: &TermGraph) -> impl Iterator<Item = Vertex> + '_ {
    g.vertices().filter(move |&v| g.label(v) == Label::Lam)
}

/// Eager scope: every non-delimiter vertex whose prefix ends in `v` reaches,
/// inside the scope of `v`, a variable whose prefix is `P(v)·v`. With
/// variable back-links such a variable points at `v`; without them this is
/// the generalized path condition.
pub fn is_eager_scope_with(g: &TermGraph, p: &PrefixFn) -> bool {
    let preds = g.predecessors();
    lams(g).all(|v| {
        let region = in_scope(g, p, v);
        let targets: Vec<Vertex> = g
            .vertices()
            .filter(|&x| g.label(x) == Label::Var && p.try_get(x).and_then(|w| w.last()) == Some(&v))
            .collect();
        let ok = backward_closure(g, &preds, &region, &targets);
        g.vertices()
            .filter(|&w| g.label(w) != Label::Del)
            .filter(|&w| p.try_get(w).and_then(|x| x.last()) == Some(&v))
            .all(|w| ok[w.index()])
    })
}

/// Fully back-linked: every vertex whose prefix ends in `v` reaches `v` along
/// a path whose vertices, except the last, are in the scope of `v`.
pub fn is_fully_backlinked_with(g: &TermGraph, p: &PrefixFn) -> bool {
    let preds = g.predecessors();
    lams(g).all(|v| {
        let region = in_scope(g, p, v);
        let targets: Vec<Vertex> = preds[v.index()].iter().map(|&(x, _)| x).collect();
        let ok = backward_closure(g, &preds, &region, &targets);
        g.vertices()
            .filter(|&w| p.try_get(w).and_then(|x| x.last()) == Some(&v))
            .all(|w| ok[w.index()])
    })
}

/// Forward search from `w` inside the scope of `v` for a vertex satisfying
/// `goal`.
fn reaches(g: &TermGraph, region: &[bool], w: Vertex, goal: impl Fn(Vertex) -> bool) -> bool {
    let mut seen = vec![false; g.len()];
    let mut stack = vec![w];
    seen[w.index()] = true;
    while let Some(x) = stack.pop() {
        if goal(x) {
            return true;
        }
        for &y in g.args(x) {
            if region[y.index()] && !seen[y.index()] {
                seen[y.index()] = true;
                stack.push(y);
            }
        }
    }
    false
}

/// Eager scope with arbitrary suffixes: for every non-delimiter `w` and every
/// `v` occurring anywhere in `P(w)`, a variable bound to `v` is reachable
/// inside the scope of `v`. Decided by a separate search per pair.
/// Equivalent to [`is_eager_scope_with`] when variables have back-links.
pub fn is_eager_scope_pumped(g: &TermGraph, p: &PrefixFn) -> bool {
    g.vertices().filter(|&w| g.label(w) != Label::Del).all(|w| {
        p.get(w).iter().all(|&v| {
            let region = in_scope(g, p, v);
            let anchor = super::prefix::push(p.get(v), v);
            reaches(g, &region, w, |x| {
                g.label(x) == Label::Var && p.try_get(x) == Some(anchor.as_slice())
            })
        })
    })
}

/// Fully back-linked with arbitrary suffixes, decided per pair. Equivalent
/// to [`is_fully_backlinked_with`] when variables have back-links.
pub fn is_fully_backlinked_pumped(g: &TermGraph, p: &PrefixFn) -> bool {
    g.vertices().all(|w| {
        p.try_get(w).unwrap_or(&[]).iter().all(|&v| {
            let region = in_scope(g, p, v);
            reaches(g, &region, w, |x| g.args(x).contains(&v))
        })
    })
}
