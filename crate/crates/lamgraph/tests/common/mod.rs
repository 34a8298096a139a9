//! Brute-force oracles shared by the integration tests. None of them reuse
//! the library's search or refinement code.
#![allow(dead_code)]

use std::collections::HashMap;

use lamgraph::graph::{Label, TermGraph, Vertex};
use lamgraph::letrec::LetrecTerm;
use lamgraph::morphism::VertexMap;

fn label_respecting_maps(g1: &TermGraph, g2: &TermGraph) -> Vec<Vec<usize>> {
    let choices: Vec<Vec<usize>> = g1
        .vertices()
        .map(|v| {
            g2.vertices()
                .filter(|&w| g2.label(w) == g1.label(v))
                .map(|w| w.index())
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(g1.len());
    fn go(choices: &[Vec<usize>], current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == choices.len() {
            out.push(current.clone());
            return;
        }
        for &c in &choices[current.len()] {
            current.push(c);
            go(choices, current, out);
            current.pop();
        }
    }
    go(&choices, &mut current, &mut out);
    out
}

fn is_hom(g1: &TermGraph, g2: &TermGraph, m: &[usize]) -> bool {
    m[g1.root().index()] == g2.root().index()
        && g1.vertices().all(|v| {
            let w = Vertex::from(m[v.index()]);
            g1.label(v) == g2.label(w)
                && g1
                    .args(v)
                    .iter()
                    .zip(g2.args(w))
                    .all(|(a, b)| m[a.index()] == b.index())
        })
}

/// Every homomorphism `g1 → g2`, found by trying all label-respecting maps.
pub fn all_homomorphisms(g1: &TermGraph, g2: &TermGraph) -> Vec<VertexMap> {
    if g1.signature() != g2.signature() {
        return Vec::new();
    }
    label_respecting_maps(g1, g2)
        .into_iter()
        .filter(|m| is_hom(g1, g2, m))
        .map(|m| VertexMap::new(m.into_iter().map(Vertex::from).collect()))
        .collect()
}

/// Number of label-respecting partitions of `g` that are congruences, which
/// equals the number of homomorphic images up to isomorphism.
pub fn count_congruences(g: &TermGraph) -> usize {
    let n = g.len();
    let mut block = vec![0usize; n];
    let mut count = 0;
    fn go(g: &TermGraph, i: usize, blocks: usize, block: &mut Vec<usize>, count: &mut usize) {
        if i == block.len() {
            let congruent = g.vertices().all(|a| {
                g.vertices().all(|b| {
                    block[a.index()] != block[b.index()]
                        || g.args(a)
                            .iter()
                            .zip(g.args(b))
                            .all(|(x, y)| block[x.index()] == block[y.index()])
                })
            });
            if congruent {
                *count += 1;
            }
            return;
        }
        let v = Vertex::from(i);
        for b in 0..=blocks {
            let fits = b == blocks || (0..i).any(|u| block[u] == b && g.label(Vertex::from(u)) == g.label(v));
            if fits {
                block[i] = b;
                go(g, i + 1, blocks.max(b + 1), block, count);
            }
        }
    }
    go(g, 0, 0, &mut block, &mut count);
    count
}

/// Bisimilarity by comparing the label trees of both graphs to a depth that
/// exceeds the number of vertex pairs.
pub fn unfoldings_agree(g1: &TermGraph, g2: &TermGraph) -> bool {
    fn same(
        g1: &TermGraph,
        g2: &TermGraph,
        a: Vertex,
        b: Vertex,
        depth: usize,
        memo: &mut HashMap<(Vertex, Vertex, usize), bool>,
    ) -> bool {
        if let Some(&r) = memo.get(&(a, b, depth)) {
            return r;
        }
        let r = g1.label(a) == g2.label(b)
            && g1.args(a).len() == g2.args(b).len()
            && (depth == 0
                || g1
                    .args(a)
                    .iter()
                    .zip(g2.args(b))
                    .all(|(&x, &y)| same(g1, g2, x, y, depth - 1, memo)));
        memo.insert((a, b, depth), r);
        r
    }
    g1.signature() == g2.signature()
        && same(
            g1,
            g2,
            g1.root(),
            g2.root(),
            g1.len() * g2.len() + 1,
            &mut HashMap::new(),
        )
}

/// Vertex names of a word.
pub fn names(g: &TermGraph, word: &[Vertex]) -> Vec<String> {
    word.iter().map(|&v| g.name(v).to_string()).collect()
}

/// Whether some path from `from` reaches `to` using only vertices accepted
/// by `allowed` (the endpoints included).
pub fn reaches(g: &TermGraph, from: Vertex, to: Vertex, allowed: impl Fn(Vertex) -> bool) -> bool {
    let mut seen = vec![false; g.len()];
    let mut stack = vec![from];
    while let Some(v) = stack.pop() {
        if !allowed(v) || std::mem::replace(&mut seen[v.index()], true) {
            continue;
        }
        if v == to {
            return true;
        }
        stack.extend(g.args(v).iter().copied());
    }
    false
}

pub fn lam_count(g: &TermGraph) -> usize {
    g.count_label(Label::Lam)
}

/// Renames every bound variable to a fresh name.
pub fn alpha_rename(t: &LetrecTerm) -> LetrecTerm {
    rename_bound(t, &mut Vec::new(), &mut 0)
}

fn rename_bound(t: &LetrecTerm, env: &mut Vec<(String, String)>, next: &mut usize) -> LetrecTerm {
    let fresh = |next: &mut usize| {
        *next += 1;
        format!("n{next}")
    };
    match t {
        LetrecTerm::Var { name, .. } => {
            let (_, new) = env.iter().rev().find(|(old, _)| old == name).expect("closed");
            LetrecTerm::var(new)
        }
        LetrecTerm::Abs { name, body, .. } => {
            let new = fresh(next);
            env.push((name.clone(), new.clone()));
            let body = rename_bound(body, env, next);
            env.pop();
            LetrecTerm::abs(&new, body)
        }
        LetrecTerm::App { fun, arg, .. } => {
            LetrecTerm::app(rename_bound(fun, env, next), rename_bound(arg, env, next))
        }
        LetrecTerm::Letrec { bindings, body, .. } => {
            let base = env.len();
            let news: Vec<String> = bindings
                .iter()
                .map(|(old, _)| {
                    let new = fresh(next);
                    env.push((old.clone(), new.clone()));
                    new
                })
                .collect();
            let bodies: Vec<LetrecTerm> = bindings.iter().map(|(_, b)| rename_bound(b, env, next)).collect();
            let body = rename_bound(body, env, next);
            env.truncate(base);
            LetrecTerm::letrec(news.iter().map(String::as_str).zip(bodies).collect(), body)
        }
    }
}
