mod common;

use std::collections::{BTreeMap, BTreeSet};

use lamgraph::fixtures::{ap_ho, graph, ho};
use lamgraph::graph::{Label, Signature, TermGraph, Vertex};
use lamgraph::ho::{ap_isomorphic, ho_isomorphic, validate_ho, ApHoTermGraph, HoTermGraph};
use lamgraph::letrec::{parse, term_to_ap_ho};
use lamgraph::morphism::{are_bisimilar, are_isomorphic, check_f_homomorphism, check_homomorphism};
use lamgraph::partition::collapse;
use lamgraph::scope::{infer_prefix, PrefixFn};
use lamgraph::transform::{
    del_count, erase_delimiters, forget_prefixes, forget_scoping, insert_delimiters,
    insert_delimiters_traced, max_share_pipeline, prefixes_to_scopes, s_collapse, scopes_to_prefixes,
    TransformError,
};

fn identity_ap_ho() -> ApHoTermGraph {
    let g = graph("identity").with_signature(Signature::L1).unwrap();
    let p = PrefixFn::new(vec![vec![], vec![g.v("r")]]);
    ApHoTermGraph::new(g, p).unwrap()
}

fn identity_ho() -> HoTermGraph {
    let g = graph("identity").with_signature(Signature::L1).unwrap();
    let sc = BTreeMap::from([(g.v("r"), BTreeSet::from([g.v("r"), g.v("v")]))]);
    HoTermGraph::new(g, sc).unwrap()
}

/// Smallest number of blocks over congruences that merge only delimiters.
fn fewest_blocks_sharing_delimiters(g: &TermGraph) -> usize {
    let dels: Vec<Vertex> = g.vertices().filter(|&v| g.label(v) == Label::Del).collect();
    let mut block: Vec<usize> = (0..g.len()).collect();
    let mut best = g.len();
    fn go(
        g: &TermGraph,
        dels: &[Vertex],
        i: usize,
        reps: &mut Vec<usize>,
        block: &mut Vec<usize>,
        best: &mut usize,
    ) {
        if i == dels.len() {
            let ok = g.vertices().all(|a| {
                g.vertices().all(|b| {
                    block[a.index()] != block[b.index()]
                        || g.args(a)
                            .iter()
                            .zip(g.args(b))
                            .all(|(x, y)| block[x.index()] == block[y.index()])
                })
            });
            if ok {
                *best = (*best).min(g.len() - dels.len() + reps.len());
            }
            return;
        }
        let me = dels[i].index();
        for r in 0..reps.len() {
            block[me] = reps[r];
            go(g, dels, i + 1, reps, block, best);
        }
        block[me] = me;
        reps.push(me);
        go(g, dels, i + 1, reps, block, best);
        reps.pop();
    }
    go(g, &dels, 0, &mut Vec::new(), &mut block, &mut best);
    best
}

#[test]
fn scopes_to_prefixes_examples() {
    for name in ["running_eager", "running_lazy"] {
        let a = scopes_to_prefixes(&ho(name));
        assert!(ap_isomorphic(&a, &ap_ho(name)).is_some(), "{name}");
        assert_eq!(a.prefix(), ap_ho(name).prefix(), "{name}");
    }
    let a = scopes_to_prefixes(&identity_ho());
    assert_eq!(a.prefix(), identity_ap_ho().prefix());
}

#[test]
fn prefixes_to_scopes_examples() {
    let h = prefixes_to_scopes(&ap_ho("running_eager"));
    assert!(ho_isomorphic(&h, &ho("running_eager")).is_some());
    let h = prefixes_to_scopes(&identity_ap_ho());
    let g = h.carrier();
    assert_eq!(h.scope(g.v("r")), &BTreeSet::from([g.v("r"), g.v("v")]));
    let a1 = ap_ho("running_lazy");
    assert_eq!(scopes_to_prefixes(&prefixes_to_scopes(&a1)).prefix(), a1.prefix());
}

#[test]
fn insertion_examples() {
    let g0 = insert_delimiters(&ap_ho("running_eager"), 2).unwrap();
    assert!(are_isomorphic(&g0, &graph("running_eager")).is_some());
    let g1 = insert_delimiters(&ap_ho("running_lazy"), 2).unwrap();
    assert!(are_isomorphic(&g1, &graph("running_lazy")).is_some());
    let id = insert_delimiters(&identity_ap_ho(), 2).unwrap();
    assert!(are_isomorphic(&id, &graph("identity")).is_some());
    assert_eq!(
        insert_delimiters(&identity_ap_ho(), 3),
        Err(TransformError::BadDelimiterArity(3))
    );
}

#[test]
fn delimiter_counts_follow_prefix_lengths() {
    let a = ap_ho("running_lazy");
    let (g, p) = (a.carrier(), a.prefix());
    let (out, origins) = insert_delimiters_traced(&a, 2).unwrap();
    let mut total = 0;
    for (w, k, t) in g.edges() {
        let n = del_count(g, p, w, k);
        let expected = match g.label(w) {
            Label::App => p.get(w).len() - p.get(t).len(),
            Label::Lam => p.get(w).len() + 1 - p.get(t).len(),
            _ => 0,
        };
        assert_eq!(n, expected);
        total += n;
        assert_eq!(
            origins.iter().filter(|o| o.source == w && o.index == k).count(),
            n
        );
    }
    assert_eq!(out.count_label(Label::Del), total);
    // every delimiter back-links to the abstraction it closes
    for (d, o) in origins.iter().enumerate() {
        let dv = Vertex::from(g.len() + d);
        assert_eq!(out.arg(dv, 1), *o.prefix.last().unwrap());
    }
}

#[test]
fn erasure_examples() {
    let a0 = erase_delimiters(&graph("running_eager")).unwrap();
    assert!(ap_isomorphic(&a0, &ap_ho("running_eager")).is_some());
    let flip = ap_ho("flip");
    for name in ["flip_shared", "flip_unshared"] {
        let a = erase_delimiters(&graph(name)).unwrap();
        assert!(ap_isomorphic(&a, &flip).is_some(), "{name}");
    }
    let id = erase_delimiters(&graph("identity")).unwrap();
    assert!(ap_isomorphic(&id, &identity_ap_ho()).is_some());
    assert!(matches!(
        erase_delimiters(&graph("lazy_pair_shared")),
        Err(TransformError::Scope(_))
    ));
}

#[test]
fn forgetting_scopes() {
    let carrier = forget_scoping(&ho("running_eager"));
    assert_eq!(
        carrier.canonical_key(),
        forget_scoping(&ho("running_lazy")).canonical_key()
    );
    assert_eq!(
        carrier.canonical_key(),
        forget_prefixes(&ap_ho("running_eager")).canonical_key()
    );
    assert!(are_isomorphic(&forget_scoping(&identity_ho()), &identity_ho().carrier().clone()).is_some());
}

#[test]
fn sharing_delimiters_only() {
    let (gp, g) = (graph("flip_unshared"), graph("flip_shared"));
    let (c, h) = s_collapse(&gp);
    assert!(are_isomorphic(&c, &g).is_some());
    assert!(check_homomorphism(&gp, &c, &h));
    assert!(check_f_homomorphism(&gp, &h, Label::Del));

    let id = graph("identity");
    assert!(are_isomorphic(&s_collapse(&id).0, &id).is_some());

    for name in ["running_lazy", "running_eager", "eager_pair", "two_scopes_split"] {
        let g = graph(name);
        let (c, h) = s_collapse(&g);
        assert!(check_f_homomorphism(&g, &h, Label::Del), "{name}");
        assert_eq!(c.len(), fewest_blocks_sharing_delimiters(&g), "{name}");
    }
}

#[test]
fn pipeline_on_running_example() {
    let h0 = ho("running_eager");
    let out = max_share_pipeline(&h0, true).unwrap();
    // composed by hand, step by step
    let inserted = insert_delimiters(&scopes_to_prefixes(&h0), 2).unwrap();
    let (collapsed, _) = collapse(&inserted);
    let expected = prefixes_to_scopes(&erase_delimiters(&collapsed).unwrap());
    assert!(ho_isomorphic(&out, &expected).is_some());
    assert!(validate_ho(out.carrier(), out.scopes()));
    assert!(are_bisimilar(out.carrier(), h0.carrier()));

    assert!(ho_isomorphic(&max_share_pipeline(&identity_ho(), true).unwrap(), &identity_ho()).is_some());
}

#[test]
fn pipeline_shares_duplicated_definitions() {
    let t = parse("(letrec f = \\x. f x in f) (letrec f = \\x. f x in f)").unwrap();
    let h = prefixes_to_scopes(&term_to_ap_ho(&t));
    assert_eq!(h.carrier().count_label(Label::Lam), 2);
    let out = max_share_pipeline(&h, true).unwrap();
    let g = out.carrier();
    assert_eq!(g.count_label(Label::Lam), 1);
    assert_eq!(g.label(g.root()), Label::App);
    assert_eq!(g.arg(g.root(), 0), g.arg(g.root(), 1));
}

#[test]
fn pipeline_guards_eagerness() {
    let h1 = ho("running_lazy");
    assert_eq!(
        max_share_pipeline(&h1, true).unwrap_err(),
        TransformError::NotEagerScope
    );
    match max_share_pipeline(&h1, false) {
        Ok(out) => assert!(validate_ho(out.carrier(), out.scopes())),
        Err(e) => assert_eq!(e, TransformError::CollapseLeftClass),
    }
}

#[test]
fn sharing_of_delimiters_is_invisible_after_erasure() {
    let a = erase_delimiters(&graph("two_scopes_split")).unwrap();
    let inserted = insert_delimiters(&a, 1).unwrap();
    assert!(are_isomorphic(&inserted, &graph("two_scopes_split")).is_some());
    assert!(infer_prefix(&graph("two_scopes_shared")).is_none());
}
