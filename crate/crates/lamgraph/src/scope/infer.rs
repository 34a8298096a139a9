use std::collections::VecDeque;

use crate::graph::{Label, TermGraph, Vertex};

use super::prefix::{common_prefix, is_prefix, push, Condition, PrefixFn, Violation};

fn init(p: &[Vertex]) -> Option<Vec<Vertex>> {
    p.split_last().map(|(_, rest)| rest.to_vec())
}

fn is_lam(g: &TermGraph, v: Vertex) -> bool {
    g.label(v) == Label::Lam
}

/// Checks the correctness conditions for a delimiter signature, where every
/// edge fixes the successor's prefix exactly.
pub fn verify_prefix(g: &TermGraph, p: &PrefixFn) -> Result<(), Violation> {
    if let Some(v) = g.vertices().find(|&v| p.try_get(v).is_none()) {
        return Err(Violation::at(Condition::Undefined, v));
    }
    if !p.get(g.root()).is_empty() {
        return Err(Violation::at(Condition::Root, g.root()));
    }
    for w in g.vertices().filter(|&w| g.label(w) == Label::Lam) {
        let c = g.arg(w, 0);
        if p.get(c) != push(p.get(w), w) {
            return Err(Violation::on_edge(Condition::Lam, w, 0));
        }
    }
    for w in g.vertices().filter(|&w| g.label(w) == Label::App) {
        for (k, &c) in g.args(w).iter().enumerate() {
            if p.get(c) != p.get(w) {
                return Err(Violation::on_edge(Condition::App, w, k));
            }
        }
    }
    check_var_conditions(g, p)?;
    for w in g.vertices().filter(|&w| g.label(w) == Label::Del) {
        let c = g.arg(w, 0);
        if init(p.get(w)).as_deref() != Some(p.get(c)) {
            return Err(Violation::on_edge(Condition::Del1, w, 0));
        }
    }
    for w in g.vertices().filter(|&w| g.label(w) == Label::Del) {
        if let Some(&c) = g.args(w).get(1) {
            if !is_lam(g, c) || push(p.get(c), c) != p.get(w) {
                return Err(Violation::on_edge(Condition::Del2, w, 1));
            }
        }
    }
    Ok(())
}

fn check_var_conditions(g: &TermGraph, p: &PrefixFn) -> Result<(), Violation> {
    for w in g.vertices().filter(|&w| g.label(w) == Label::Var) {
        if p.get(w).is_empty() {
            return Err(Violation::at(Condition::Var0, w));
        }
    }
    for w in g.vertices().filter(|&w| g.label(w) == Label::Var) {
        if let Some(&c) = g.args(w).first() {
            if !is_lam(g, c) || p.try_get(c).map(|pc| push(pc, c)).as_deref() != Some(p.get(w)) {
                return Err(Violation::on_edge(Condition::Var1, w, 0));
            }
        }
    }
    Ok(())
}

/// Candidate prefix for the target of `w →k`, by the stack rules.
fn step(g: &TermGraph, pw: &[Vertex], w: Vertex, k: usize) -> Result<Vec<Vertex>, Violation> {
    match g.label(w) {
        Label::Lam => Ok(push(pw, w)),
        Label::App => Ok(pw.to_vec()),
        Label::Var => init(pw).ok_or(Violation::at(Condition::Var0, w)),
        Label::Del => {
            let cond = if k == 0 { Condition::Del1 } else { Condition::Del2 };
            init(pw).ok_or(Violation::on_edge(cond, w, k))
        }
    }
}

fn edge_condition(g: &TermGraph, w: Vertex, k: usize) -> Condition {
    match (g.label(w), k) {
        (Label::Lam, _) => Condition::Lam,
        (Label::App, _) => Condition::App,
        (Label::Var, _) => Condition::Var1,
        (Label::Del, 0) => Condition::Del1,
        (Label::Del, _) => Condition::Del2,
    }
}

/// The unique correct prefix function of a graph over a delimiter
/// signature, or the first condition that fails.
pub fn infer_prefix_diag(g: &TermGraph) -> Result<PrefixFn, Violation> {
    assert!(g.signature().has_delimiters(), "delimiter signature required");
    let mut cand: Vec<Option<Vec<Vertex>>> = vec![None; g.len()];
    cand[g.root().index()] = Some(Vec::new());
    let mut queue = VecDeque::from([g.root()]);
    while let Some(w) = queue.pop_front() {
        let pw = cand[w.index()].clone().expect("queued vertices have prefixes");
        for (k, &c) in g.args(w).iter().enumerate() {
            let next = step(g, &pw, w, k)?;
            match &cand[c.index()] {
                Some(existing) if *existing != next => {
                    return Err(Violation::on_edge(edge_condition(g, w, k), w, k))
                }
                Some(_) => {}
                None => {
                    cand[c.index()] = Some(next);
                    queue.push_back(c);
                }
            }
        }
    }
    let p = PrefixFn::new(cand.into_iter().map(|c| c.expect("root-connected")).collect());
    verify_prefix(g, &p)?;
    Ok(p)
}

pub fn infer_prefix(g: &TermGraph) -> Option<PrefixFn> {
    infer_prefix_diag(g).ok()
}

/// Checks the inequational conditions for delimiter-free signatures.
pub fn verify_prefix_sig_i(g: &TermGraph, p: &PrefixFn) -> Result<(), Violation> {
    if let Some(v) = g.vertices().find(|&v| p.try_get(v).is_none()) {
        return Err(Violation::at(Condition::Undefined, v));
    }
    if !p.get(g.root()).is_empty() {
        return Err(Violation::at(Condition::Root, g.root()));
    }
    for w in g.vertices().filter(|&w| g.label(w) == Label::Lam) {
        if !is_prefix(p.get(g.arg(w, 0)), &push(p.get(w), w)) {
            return Err(Violation::on_edge(Condition::Lam, w, 0));
        }
    }
    for w in g.vertices().filter(|&w| g.label(w) == Label::App) {
        for (k, &c) in g.args(w).iter().enumerate() {
            if !is_prefix(p.get(c), p.get(w)) {
                return Err(Violation::on_edge(Condition::App, w, k));
            }
        }
    }
    check_var_conditions(g, p)
}

/// Pointwise-longest correct prefix function for a delimiter-free graph.
///
/// Upper bounds are propagated by longest-common-prefix meets from the root,
/// with each variable additionally bounded by its binder's prefix extended by
/// the binder. Any correct function lies below this solution, and a binder
/// never occurs in its own bound, so if the variable equations fail here they
/// fail everywhere.
pub fn infer_prefix_sig_i_diag(g: &TermGraph) -> Result<PrefixFn, Violation> {
    assert!(
        !g.signature().has_delimiters(),
        "delimiter-free signature required"
    );
    let mut bound: Vec<Option<Vec<Vertex>>> = vec![None; g.len()];
    let mut binds: Vec<Vec<Vertex>> = vec![Vec::new(); g.len()];
    for w in g.vertices().filter(|&w| g.label(w) == Label::Var) {
        if let Some(&c) = g.args(w).first() {
            if !is_lam(g, c) {
                return Err(Violation::on_edge(Condition::Var1, w, 0));
            }
            binds[c.index()].push(w);
        }
    }
    bound[g.root().index()] = Some(Vec::new());
    let mut queue = VecDeque::from([g.root()]);
    let lower = |bound: &mut Vec<Option<Vec<Vertex>>>, c: Vertex, b: Vec<Vertex>| -> bool {
        let next = match &bound[c.index()] {
            None => b,
            Some(cur) => common_prefix(cur, &b),
        };
        let changed = bound[c.index()].as_ref() != Some(&next);
        bound[c.index()] = Some(next);
        changed
    };
    while let Some(w) = queue.pop_front() {
        let pw = bound[w.index()].clone().expect("queued vertices are bounded");
        let mut targets: Vec<(Vertex, Vec<Vertex>)> = match g.label(w) {
            Label::Lam => vec![(g.arg(w, 0), push(&pw, w))],
            Label::App => g.args(w).iter().map(|&c| (c, pw.clone())).collect(),
            _ => Vec::new(),
        };
        if g.label(w) == Label::Lam {
            for &x in &binds[w.index()] {
                targets.push((x, push(&pw, w)));
            }
        }
        for (c, b) in targets {
            if lower(&mut bound, c, b) && !queue.contains(&c) {
                queue.push_back(c);
            }
        }
    }
    let p = PrefixFn::new(bound.into_iter().map(|b| b.expect("root-connected")).collect());
    verify_prefix_sig_i(g, &p)?;
    Ok(p)
}

pub fn infer_prefix_sig_i(g: &TermGraph) -> Option<PrefixFn> {
    infer_prefix_sig_i_diag(g).ok()
}

/// Follows `→0` through delimiter vertices; returns the first non-delimiter
/// vertex and the number of delimiters passed, or `None` on a delimiter cycle.
pub fn skip_delimiters(g: &TermGraph, mut v: Vertex) -> Option<(Vertex, usize)> {
    let mut n = 0;
    while g.label(v) == Label::Del {
        n += 1;
        if n > g.len() {
            return None;
        }
        v = g.arg(v, 0);
    }
    Some((v, n))
}

fn pop_n(word: &[Vertex], n: usize) -> Option<Vec<Vertex>> {
    word.len().checked_sub(n).map(|m| word[..m].to_vec())
}

/// Prefix forced on the non-delimiter end of `w →k (→0 del)*`.
fn relaxed_step(
    g: &TermGraph,
    pw: &[Vertex],
    w: Vertex,
    k: usize,
    n: usize,
) -> Result<Vec<Vertex>, Violation> {
    let base = match g.label(w) {
        Label::Lam => push(pw, w),
        Label::App => pw.to_vec(),
        Label::Var => return init(pw).ok_or(Violation::at(Condition::Var0, w)),
        Label::Del => unreachable!("delimiters carry no relaxed prefix"),
    };
    pop_n(&base, n).ok_or(Violation::on_edge(edge_condition(g, w, k), w, k))
}

fn relaxed_edges(g: &TermGraph, w: Vertex) -> Vec<(usize, Vertex, usize)> {
    let mut out = Vec::new();
    for (k, &c) in g.args(w).iter().enumerate() {
        if g.label(w) == Label::Var {
            out.push((k, c, 0));
        } else if let Some((end, n)) = skip_delimiters(g, c) {
            out.push((k, end, n));
        }
    }
    out
}

/// Checks the relaxed conditions, where a chain of `n` delimiters pops `n`
/// entries and delimiters themselves carry no prefix.
pub fn verify_relaxed(g: &TermGraph, p: &PrefixFn) -> Result<(), Violation> {
    let non_del = |v: &Vertex| g.label(*v) != Label::Del;
    if let Some(v) = g.vertices().filter(non_del).find(|&v| p.try_get(v).is_none()) {
        return Err(Violation::at(Condition::Undefined, v));
    }
    let r = g.root();
    if g.label(r) == Label::Del || !p.get(r).is_empty() {
        return Err(Violation::at(Condition::Root, r));
    }
    for label in [Label::Lam, Label::App] {
        for w in g.vertices().filter(|&w| g.label(w) == label) {
            for (k, end, n) in relaxed_edges(g, w) {
                if relaxed_step(g, p.get(w), w, k, n).ok().as_deref() != Some(p.get(end)) {
                    return Err(Violation::on_edge(edge_condition(g, w, k), w, k));
                }
            }
        }
    }
    check_var_conditions(g, p)
}

pub fn infer_relaxed_prefix_diag(g: &TermGraph) -> Result<PrefixFn, Violation> {
    let r = g.root();
    if g.label(r) == Label::Del {
        return Err(Violation::at(Condition::Root, r));
    }
    let mut cand: Vec<Option<Vec<Vertex>>> = vec![None; g.len()];
    cand[r.index()] = Some(Vec::new());
    let mut queue = VecDeque::from([r]);
    while let Some(w) = queue.pop_front() {
        let pw = cand[w.index()].clone().expect("queued vertices have prefixes");
        for (k, c, n) in relaxed_edges(g, w) {
            let next = relaxed_step(g, &pw, w, k, n)?;
            match &cand[c.index()] {
                Some(existing) if *existing != next => {
                    return Err(Violation::on_edge(edge_condition(g, w, k), w, k))
                }
                Some(_) => {}
                None => {
                    cand[c.index()] = Some(next);
                    queue.push_back(c);
                }
            }
        }
    }
    let p = PrefixFn::relaxed(cand);
    verify_relaxed(g, &p)?;
    Ok(p)
}

pub fn infer_relaxed_prefix(g: &TermGraph) -> Option<PrefixFn> {
    infer_relaxed_prefix_diag(g).ok()
}
