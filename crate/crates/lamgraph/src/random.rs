//! Seeded generators for property testing: prefixed graphs, λ-term-graphs
//! and λ-letrec terms.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Label, Signature, TermGraph, Vertex};
use crate::ho::{ApHoTermGraph, HoTermGraph};
use crate::letrec::{check_closed, term_to_graph, LetrecTerm};
use crate::scope::{infer_prefix, is_eager_scope_with, PrefixFn};
use crate::transform::{insert_delimiters, prefixes_to_scopes};

struct Draft {
    label: Label,
    args: Vec<Option<Vertex>>,
    prefix: Vec<Vertex>,
}

/// A random graph with a correct prefix function over `l0` or `l1`, with at
/// most `max_vertices` vertices.
///
/// Built top-down: each open argument slot has an upper bound on its
/// target's prefix (the parent's prefix, extended by the parent if it is an
/// abstraction) and is filled either by an existing vertex below that bound
/// or by a new vertex whose prefix is a prefix of the bound.
pub fn random_ap_ho<R: Rng>(rng: &mut R, sig: Signature, max_vertices: usize) -> ApHoTermGraph {
    assert!(matches!(sig, Signature::L0 | Signature::L1));
    assert!(max_vertices >= 1);
    let mut drafts: Vec<Draft> = Vec::new();
    let root_label = if max_vertices > 1 && rng.gen_bool(0.3) {
        Label::App
    } else {
        Label::Lam
    };
    drafts.push(Draft {
        label: root_label,
        args: vec![None; sig.arity(root_label).unwrap()],
        prefix: Vec::new(),
    });
    let mut holes: Vec<(usize, usize)> = (0..drafts[0].args.len()).map(|k| (0, k)).collect();
    // below this size existing vertices are only rarely reused
    let target = rng.gen_range(max_vertices.div_ceil(2)..=max_vertices);
    while let Some(pick) = (!holes.is_empty()).then(|| rng.gen_range(0..holes.len())) {
        let (w, k) = holes.swap_remove(pick);
        let mut bound = drafts[w].prefix.clone();
        if drafts[w].label == Label::Lam {
            bound.push(Vertex::from(w));
        }
        let reusable: Vec<usize> = (0..drafts.len())
            .filter(|&u| bound.starts_with(&drafts[u].prefix))
            .collect();
        let full = drafts.len() >= max_vertices;
        let reuse = if drafts.len() >= target { 0.5 } else { 0.1 };
        let pick = if full || rng.gen_bool(reuse) {
            // the root always qualifies, so `reusable` is non-empty
            *reusable.choose(rng).expect("root is reusable")
        } else {
            let mut options = vec![Label::Lam, Label::App, Label::App];
            if !bound.is_empty() && drafts.len() + holes.len() >= target {
                options.push(Label::Var);
            }
            let label = *options.choose(rng).unwrap();
            let (prefix, args) = match label {
                Label::Var if sig == Signature::L1 => {
                    let t = rng.gen_range(0..bound.len());
                    (bound[..=t].to_vec(), vec![Some(bound[t])])
                }
                Label::Var => (bound[..rng.gen_range(1..=bound.len())].to_vec(), vec![]),
                _ => {
                    let len = if rng.gen_bool(0.5) {
                        bound.len()
                    } else {
                        rng.gen_range(0..=bound.len())
                    };
                    (bound[..len].to_vec(), vec![None; sig.arity(label).unwrap()])
                }
            };
            let id = drafts.len();
            for (j, a) in args.iter().enumerate() {
                if a.is_none() {
                    holes.push((id, j));
                }
            }
            drafts.push(Draft { label, args, prefix });
            id
        };
        drafts[w].args[k] = Some(Vertex::from(pick));
    }
    let labels = drafts.iter().map(|d| d.label).collect();
    let args = drafts
        .iter()
        .map(|d| d.args.iter().map(|a| a.expect("all holes filled")).collect())
        .collect();
    let names = (0..drafts.len()).map(|i| format!("v{i}")).collect();
    let prefix = PrefixFn::new(drafts.iter().map(|d| d.prefix.clone()).collect());
    let carrier = TermGraph::from_parts(sig, labels, args, names, Vertex(0))
        .expect("top-down construction is root-connected");
    ApHoTermGraph::new(carrier, prefix).expect("generated prefixes are correct")
}

/// A random valid higher-order graph over `sig`.
pub fn random_ho<R: Rng>(rng: &mut R, sig: Signature, max_vertices: usize) -> HoTermGraph {
    prefixes_to_scopes(&random_ap_ho(rng, sig, max_vertices))
}

/// A random λ-term-graph over a delimiter signature: a random prefixed graph
/// with delimiters inserted.
pub fn random_ltg<R: Rng>(rng: &mut R, sig: Signature, max_carrier: usize) -> TermGraph {
    let j = sig.del_arity().expect("delimiter signature");
    let a = random_ap_ho(rng, sig.without_delimiters(), max_carrier);
    insert_delimiters(&a, j).expect("valid delimiter arity")
}

/// A random eager-scope λ-term-graph over `l12` with at most `max_vertices`
/// vertices, drawn from random prefixed graphs and from random terms.
pub fn random_eager_ltg<R: Rng>(rng: &mut R, max_vertices: usize) -> TermGraph {
    loop {
        let g = if rng.gen_bool(0.5) {
            random_ltg(rng, Signature::L12, max_vertices)
        } else {
            term_to_graph(&random_term(rng, 8))
        };
        if g.len() > max_vertices {
            continue;
        }
        let p = infer_prefix(&g).expect("generated graphs are λ-term-graphs");
        if is_eager_scope_with(&g, &p) {
            return g;
        }
    }
}

const NAMES: [&str; 5] = ["x", "y", "z", "f", "g"];

/// A random closed λ-letrec term with at most `max_nodes` syntax nodes.
pub fn random_term<R: Rng>(rng: &mut R, max_nodes: usize) -> LetrecTerm {
    assert!(max_nodes >= 2);
    loop {
        let budget = rng.gen_range((max_nodes / 2).max(2)..=max_nodes);
        if let Some(t) = gen_term(rng, budget, &mut Vec::new()) {
            if check_closed(&t).is_ok() {
                return t;
            }
        }
    }
}

fn gen_term<R: Rng>(rng: &mut R, budget: usize, env: &mut Vec<String>) -> Option<LetrecTerm> {
    // spend the whole budget: variables only at the leaves
    if budget == 1 {
        return Some(LetrecTerm::var(env.choose(rng)?));
    }
    let mut options = vec![1, 1];
    if budget >= 3 {
        options.extend([2, 2, 3]);
    }
    match *options.choose(rng)? {
        1 => {
            let name = *NAMES.choose(rng)?;
            env.push(name.to_string());
            let body = gen_term(rng, budget - 1, env);
            env.pop();
            Some(LetrecTerm::abs(name, body?))
        }
        2 => {
            let left = rng.gen_range(1..budget - 1);
            let fun = gen_term(rng, left, env)?;
            let arg = gen_term(rng, budget - 1 - left, env)?;
            Some(LetrecTerm::app(fun, arg))
        }
        _ => {
            let count = if budget >= 4 && rng.gen_bool(0.4) { 2 } else { 1 };
            let mut names: Vec<&str> = NAMES.choose_multiple(rng, count).copied().collect();
            names.sort();
            let base = env.len();
            env.extend(names.iter().map(|n| n.to_string()));
            let mut remaining = budget - 1;
            let mut bindings = Vec::new();
            for _ in 0..count {
                let share = rng.gen_range(1..=remaining - (count - bindings.len()));
                bindings.push(gen_term(rng, share, env));
                remaining -= share;
            }
            let body = gen_term(rng, remaining, env);
            env.truncate(base);
            let bindings: Option<Vec<LetrecTerm>> = bindings.into_iter().collect();
            Some(LetrecTerm::letrec(
                names.into_iter().zip(bindings?).collect(),
                body?,
            ))
        }
    }
}

/// A prefix function differing from `p` in exactly one entry, by dropping,
/// adding, replacing or swapping abstraction vertices. `None` when the graph
/// has no abstractions, so every entry is necessarily empty.
pub fn perturb_prefix<R: Rng>(rng: &mut R, g: &TermGraph, p: &PrefixFn) -> Option<PrefixFn> {
    let lams: Vec<Vertex> = g.vertices().filter(|&v| g.label(v) == Label::Lam).collect();
    if lams.is_empty() {
        return None;
    }
    loop {
        let w = Vertex::from(rng.gen_range(0..g.len()));
        let mut word = p.get(w).to_vec();
        match rng.gen_range(0..4) {
            0 if !word.is_empty() => {
                word.remove(rng.gen_range(0..word.len()));
            }
            1 if !lams.is_empty() => {
                let at = rng.gen_range(0..=word.len());
                word.insert(at, *lams.choose(rng).unwrap());
            }
            2 if !word.is_empty() && !lams.is_empty() => {
                let at = rng.gen_range(0..word.len());
                word[at] = *lams.choose(rng).unwrap();
            }
            3 if word.len() >= 2 => {
                let a = rng.gen_range(0..word.len());
                let b = rng.gen_range(0..word.len());
                word.swap(a, b);
            }
            _ => continue,
        }
        if word != p.get(w) {
            let mut q = p.clone();
            q.set(w, word);
            return Some(q);
        }
    }
}
