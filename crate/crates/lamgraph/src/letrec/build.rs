use std::collections::{HashSet, VecDeque};

use crate::graph::{Label, Signature, TermGraph, Vertex};
use crate::ho::ApHoTermGraph;
use crate::morphism::are_bisimilar;
use crate::scope::PrefixFn;
use crate::transform::insert_delimiters;

use super::parse::LetrecTerm;

/// Node of the construction graph. `label == None` marks an indirection
/// standing for a letrec binding until its body has been compiled.
struct Node {
    label: Option<Label>,
    args: Vec<usize>,
    /// Abstractions enclosing the node in the source, outermost first.
    stack: Vec<usize>,
    name: String,
}

#[derive(Clone, Copy)]
enum Frame<'t> {
    Lambda(&'t str, usize),
    Group(usize),
}

struct Group<'t> {
    bindings: &'t [(String, LetrecTerm)],
    env: Vec<Frame<'t>>,
    nodes: Vec<Option<usize>>,
}

struct Builder<'t> {
    nodes: Vec<Node>,
    groups: Vec<Group<'t>>,
    taken: HashSet<String>,
}

impl<'t> Builder<'t> {
    fn fresh(&mut self, base: &str) -> String {
        let mut name = base.to_string();
        let mut n = 1;
        while !self.taken.insert(name.clone()) {
            name = format!("{base}'{n}");
            n += 1;
        }
        name
    }

    fn node(&mut self, label: Option<Label>, env: &[Frame<'t>], base: &str) -> usize {
        let stack = env
            .iter()
            .filter_map(|f| match f {
                Frame::Lambda(_, v) => Some(*v),
                Frame::Group(_) => None,
            })
            .collect();
        let name = self.fresh(base);
        self.nodes.push(Node {
            label,
            args: Vec::new(),
            stack,
            name,
        });
        self.nodes.len() - 1
    }

    fn compile(&mut self, t: &'t LetrecTerm, env: &mut Vec<Frame<'t>>) -> usize {
        match t {
            LetrecTerm::Var { name, .. } => {
                let frame = env.iter().rev().find(|f| match f {
                    Frame::Lambda(n, _) => n == name,
                    Frame::Group(g) => self.groups[*g].bindings.iter().any(|(n, _)| n == name),
                });
                match *frame.expect("closed term") {
                    Frame::Lambda(_, binder) => {
                        let v = self.node(Some(Label::Var), env, name);
                        self.nodes[v].args = vec![binder];
                        v
                    }
                    Frame::Group(g) => {
                        let slot = self.groups[g]
                            .bindings
                            .iter()
                            .position(|(n, _)| n == name)
                            .expect("name found in group");
                        self.binding(g, slot)
                    }
                }
            }
            LetrecTerm::Abs { name, body, .. } => {
                let v = self.node(Some(Label::Lam), env, &format!("λ{name}"));
                env.push(Frame::Lambda(name, v));
                let b = self.compile(body, env);
                env.pop();
                self.nodes[v].args = vec![b];
                v
            }
            LetrecTerm::App { fun, arg, .. } => {
                let v = self.node(Some(Label::App), env, "@");
                let f = self.compile(fun, env);
                let a = self.compile(arg, env);
                self.nodes[v].args = vec![f, a];
                v
            }
            LetrecTerm::Letrec { bindings, body, .. } => {
                let g = self.groups.len();
                env.push(Frame::Group(g));
                self.groups.push(Group {
                    bindings,
                    env: env.clone(),
                    nodes: vec![None; bindings.len()],
                });
                let b = self.compile(body, env);
                env.pop();
                b
            }
        }
    }

    /// Compiles a binding at its definition site, once, on first use.
    fn binding(&mut self, g: usize, slot: usize) -> usize {
        if let Some(v) = self.groups[g].nodes[slot] {
            return v;
        }
        let mut env = self.groups[g].env.clone();
        let (name, body) = &self.groups[g].bindings[slot];
        let ind = self.node(None, &env, &format!("={name}"));
        self.groups[g].nodes[slot] = Some(ind);
        let target = self.compile(body, &mut env);
        self.nodes[ind].args = vec![target];
        ind
    }

    fn resolve(&self, mut v: usize) -> usize {
        // black holes are rejected by the parser, so chains end
        while self.nodes[v].label.is_none() {
            v = self.nodes[v].args[0];
        }
        v
    }
}

/// Builds the delimiter-free graph over `l1` with eager prefixes.
///
/// A vertex is in the scope of an enclosing abstraction `v` exactly when it
/// reaches a variable bound to `v` through vertices that are also inside `v`
/// in the source. Back-links make such reachability closed under the nesting
/// of abstractions, so the resulting words are prefix-correct.
pub fn term_to_ap_ho(t: &LetrecTerm) -> ApHoTermGraph {
    let mut b = Builder {
        nodes: Vec::new(),
        groups: Vec::new(),
        taken: HashSet::new(),
    };
    let root = b.compile(t, &mut Vec::new());
    let root = b.resolve(root);
    // keep constructor nodes reachable from the root, in discovery order
    let mut new_of: Vec<Option<usize>> = vec![None; b.nodes.len()];
    let mut order = Vec::new();
    let mut queue = VecDeque::from([root]);
    new_of[root] = Some(0);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &a in &b.nodes[v].args {
            let a = b.resolve(a);
            if new_of[a].is_none() {
                new_of[a] = Some(order.len() + queue.len());
                queue.push_back(a);
            }
        }
    }
    let n = order.len();
    let labels: Vec<Label> = order
        .iter()
        .map(|&v| b.nodes[v].label.expect("resolved"))
        .collect();
    let args: Vec<Vec<Vertex>> = order
        .iter()
        .map(|&v| {
            b.nodes[v]
                .args
                .iter()
                .map(|&a| Vertex::from(new_of[b.resolve(a)].expect("reachable")))
                .collect()
        })
        .collect();
    let names: Vec<String> = order.iter().map(|&v| b.nodes[v].name.clone()).collect();
    let stacks: Vec<Vec<usize>> = order
        .iter()
        .map(|&v| {
            b.nodes[v]
                .stack
                .iter()
                .map(|&l| new_of[l].expect("enclosing abstractions are reachable"))
                .collect()
        })
        .collect();
    let carrier = TermGraph::from_parts(Signature::L1, labels.clone(), args.clone(), names, Vertex(0))
        .expect("constructed graphs are well-formed");

    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (v, a) in args.iter().enumerate() {
        for t in a {
            preds[t.index()].push(v);
        }
    }
    let mut words: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for l in (0..n).filter(|&l| labels[l] == Label::Lam) {
        let inside: Vec<bool> = stacks.iter().map(|s| s.contains(&l)).collect();
        let mut hit = vec![false; n];
        let mut queue: VecDeque<usize> = (0..n)
            .filter(|&x| labels[x] == Label::Var && args[x][0].index() == l)
            .collect();
        for &x in &queue {
            hit[x] = true;
        }
        while let Some(x) = queue.pop_front() {
            for &y in &preds[x] {
                if inside[y] && !hit[y] {
                    hit[y] = true;
                    queue.push_back(y);
                }
            }
        }
        for x in (0..n).filter(|&x| hit[x]) {
            words[x].push(Vertex::from(l));
        }
    }
    // order each word as in the source nesting
    for (x, w) in words.iter_mut().enumerate() {
        w.sort_by_key(|v| stacks[x].iter().position(|&l| l == v.index()));
    }
    ApHoTermGraph::new(carrier, PrefixFn::new(words)).expect("eager prefixes are correct")
}

/// The eager-scope λ-term-graph of a closed term, over `l12`.
pub fn term_to_graph(t: &LetrecTerm) -> TermGraph {
    insert_delimiters(&term_to_ap_ho(t), 2).expect("arity 2 is supported")
}

/// Whether two closed terms have the same infinite unfolding.
pub fn unfolding_equivalent(t1: &LetrecTerm, t2: &LetrecTerm) -> bool {
    are_bisimilar(&term_to_graph(t1), &term_to_graph(t2))
}
