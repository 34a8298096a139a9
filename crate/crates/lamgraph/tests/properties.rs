mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lamgraph::graph::{Label, Signature, TermGraph};
use lamgraph::ho::{ap_isomorphic, find_ap_homomorphism, find_ho_homomorphism, ho_isomorphic};
use lamgraph::lattice::{check_lattice, enumerate_images};
use lamgraph::letrec::term_to_graph;
use lamgraph::morphism::{
    access_paths, are_bisimilar, are_isomorphic, check_f_homomorphism, check_homomorphism, find_homomorphism,
    VertexMap,
};
use lamgraph::partition::collapse;
use lamgraph::random::{perturb_prefix, random_ap_ho, random_eager_ltg, random_ho, random_ltg, random_term};
use lamgraph::scope::{
    check_prefix_homomorphic_image, infer_prefix, is_eager_scope_pumped, is_eager_scope_with,
    is_fully_backlinked_pumped, is_fully_backlinked_with, verify_prefix, PrefixFn,
};
use lamgraph::text::{parse_document, write_ap_ho, write_graph, write_ho};
use lamgraph::transform::{
    erase_delimiters, forget_scoping, insert_delimiters, prefixes_to_scopes, s_collapse, scopes_to_prefixes,
};

const DELIMITED: [Signature; 4] = [Signature::L01, Signature::L02, Signature::L11, Signature::L12];

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ltg(seed: u64, sig_pick: usize, carrier: usize) -> TermGraph {
    random_ltg(&mut rng(seed), DELIMITED[sig_pick % 4], carrier)
}

fn small_ltg(seed: u64, sig_pick: usize) -> Option<TermGraph> {
    let g = ltg(seed, sig_pick, 5);
    (g.len() <= 10).then_some(g)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn homomorphisms_are_surjective(seed: u64, pick in 0usize..4) {
        let g = ltg(seed, pick, 7);
        let (c, h) = collapse(&g);
        prop_assert!(check_homomorphism(&g, &c, &h));
        let mut hit = vec![false; c.len()];
        for v in g.vertices() {
            hit[h.apply(v).index()] = true;
        }
        prop_assert!(hit.iter().all(|&b| b));
    }

    #[test]
    fn self_homomorphism_is_identity(seed: u64, pick in 0usize..4) {
        let g = ltg(seed, pick, 8);
        prop_assert_eq!(find_homomorphism(&g, &g), Some(VertexMap::identity(g.len())));
    }

    #[test]
    fn mutual_homomorphisms_mean_isomorphism(seed: u64, pick in 0usize..4) {
        let Some(g) = small_ltg(seed, pick) else { return Ok(()) };
        let images = enumerate_images(&g).unwrap();
        for a in &images {
            for b in &images {
                let both = find_homomorphism(&a.graph, &b.graph).is_some()
                    && find_homomorphism(&b.graph, &a.graph).is_some();
                prop_assert_eq!(both, are_isomorphic(&a.graph, &b.graph).is_some());
            }
        }
    }

    #[test]
    fn collapse_is_bisimilar_and_idempotent(seed: u64, pick in 0usize..4) {
        let g = ltg(seed, pick, 8);
        let (c, _) = collapse(&g);
        prop_assert!(are_bisimilar(&g, &c));
        prop_assert!(common::unfoldings_agree(&g, &c));
        prop_assert!(are_isomorphic(&collapse(&c).0, &c).is_some());
    }

    #[test]
    fn collapse_is_the_smallest_image(seed: u64, pick in 0usize..4) {
        let Some(g) = small_ltg(seed, pick) else { return Ok(()) };
        let (c, _) = collapse(&g);
        let images = enumerate_images(&g).unwrap();
        prop_assert_eq!(images.len(), common::count_congruences(&g));
        for i in &images {
            prop_assert!(c.len() <= i.graph.len());
            prop_assert!(find_homomorphism(&i.graph, &c).is_some());
        }
        let graphs: Vec<TermGraph> = images.into_iter().map(|i| i.graph).collect();
        prop_assert!(check_lattice(&graphs));
    }

    #[test]
    fn paths_map_to_paths(seed: u64, pick in 0usize..4) {
        let g = ltg(seed, pick, 6);
        let (c, h) = collapse(&g);
        for w in g.vertices() {
            for p in access_paths(&g, w).take(20) {
                for (i, &k) in p.indices.iter().enumerate() {
                    prop_assert_eq!(c.arg(h.apply(p.vertices[i]), k), h.apply(p.vertices[i + 1]));
                }
            }
        }
        // every path in the image lifts uniquely along argument indices
        for w in c.vertices() {
            for p in access_paths(&c, w).take(20) {
                let mut v = g.root();
                for &k in &p.indices {
                    v = g.arg(v, k);
                }
                prop_assert_eq!(h.apply(v), w);
            }
        }
    }

    #[test]
    fn prefixes_are_unique(seed: u64, pick in 0usize..4) {
        let g = ltg(seed, pick, 8);
        let p = infer_prefix(&g).expect("generated graphs are λ-term-graphs");
        prop_assert_eq!(Some(p.clone()), infer_prefix(&g));
        let mut r = rng(seed ^ 0x5eed);
        for _ in 0..10 {
            let Some(q) = perturb_prefix(&mut r, &g, &p) else { break };
            prop_assert!(verify_prefix(&g, &q).is_err());
        }
    }

    #[test]
    fn prefixes_behave_like_stacks(seed: u64, pick in 0usize..4) {
        let g = ltg(seed, pick, 8);
        let p = infer_prefix(&g).unwrap();
        for (w, k, t) in g.edges() {
            let (pw, pt) = (p.get(w).len() as isize, p.get(t).len() as isize);
            let delta = match (g.label(w), k) {
                (Label::Lam, _) => 1,
                (Label::App, _) => 0,
                (Label::Var, _) | (Label::Del, 0) => -1,
                (Label::Del, _) => continue,
            };
            if g.label(w) == Label::Var {
                // the back-link points at the binder, whose prefix is one shorter
                prop_assert_eq!(pt, pw - 1);
            } else {
                prop_assert_eq!(pt, pw + delta);
            }
        }
        for w in g.vertices() {
            for (i, &v) in p.get(w).iter().enumerate() {
                prop_assert_eq!(p.get(v), &p.get(w)[..i]);
            }
            // every access path passes through the whole prefix
            for path in access_paths(&g, w).take(20) {
                for v in p.get(w) {
                    prop_assert!(path.vertices.contains(v));
                }
            }
        }
    }

    #[test]
    fn prefixes_transport_along_homomorphisms(seed: u64, pick in 0usize..4) {
        let g = random_eager_ltg(&mut rng(seed), 9);
        let _ = pick;
        let p = infer_prefix(&g).unwrap();
        for image in enumerate_images(&g).unwrap() {
            let q = infer_prefix(&image.graph).expect("images stay λ-term-graphs");
            prop_assert!(check_prefix_homomorphic_image(&image.map, &p, &q));
        }
    }

    #[test]
    fn path_conditions_agree(seed: u64) {
        let g = ltg(seed, 3, 8);
        let p = infer_prefix(&g).unwrap();
        let eager = is_eager_scope_with(&g, &p);
        let fbl = is_fully_backlinked_with(&g, &p);
        prop_assert_eq!(eager, is_eager_scope_pumped(&g, &p));
        prop_assert_eq!(fbl, is_fully_backlinked_pumped(&g, &p));
        prop_assert!(!eager || fbl);
    }

    #[test]
    fn scopes_nest(seed: u64, l1 in any::<bool>()) {
        let sig = if l1 { Signature::L1 } else { Signature::L0 };
        let h = random_ho(&mut rng(seed), sig, 9);
        let g = h.carrier();
        let lams: Vec<_> = g.vertices().filter(|&v| g.label(v) == Label::Lam).collect();
        for &a in &lams {
            for &b in &lams {
                let (sa, sb) = (h.scope(a), h.scope(b));
                if a != b && !sa.is_disjoint(sb) {
                    prop_assert!(
                        (sa.is_subset(sb) && !sa.contains(&b)) || (sb.is_subset(sa) && !sb.contains(&a))
                    );
                }
            }
        }
        for w in g.vertices() {
            let bs = h.binders(w);
            for pair in bs.windows(2) {
                prop_assert!(h.scope(pair[1]).is_subset(h.scope(pair[0])));
                prop_assert!(h.scope(pair[1]).len() < h.scope(pair[0]).len());
            }
            for &v in &bs {
                for path in access_paths(g, w).take(20) {
                    let at = path.vertices.iter().position(|&x| x == v);
                    prop_assert!(at.is_some());
                    for x in &path.vertices[at.unwrap() + 1..] {
                        prop_assert!(h.scope(v).contains(x) && *x != v);
                    }
                }
            }
        }
    }

    #[test]
    fn scope_and_prefix_views_are_inverse(seed: u64, l1 in any::<bool>()) {
        let sig = if l1 { Signature::L1 } else { Signature::L0 };
        let a = random_ap_ho(&mut rng(seed), sig, 10);
        let h = prefixes_to_scopes(&a);
        prop_assert!(ap_isomorphic(&scopes_to_prefixes(&h), &a).is_some());
        prop_assert!(ho_isomorphic(&prefixes_to_scopes(&scopes_to_prefixes(&h)), &h).is_some());
    }

    #[test]
    fn delimiter_round_trips(seed: u64, l1 in any::<bool>(), j in 1usize..=2) {
        let sig = if l1 { Signature::L1 } else { Signature::L0 };
        let a = random_ap_ho(&mut rng(seed), sig, 9);
        let g = insert_delimiters(&a, j).unwrap();
        prop_assert!(infer_prefix(&g).is_some());
        let back = erase_delimiters(&g).unwrap();
        prop_assert!(ap_isomorphic(&back, &a).is_some());
        let again = insert_delimiters(&back, j).unwrap();
        prop_assert!(are_isomorphic(&s_collapse(&again).0, &s_collapse(&g).0).is_some());
        let h = find_homomorphism(&g, &again).or_else(|| find_homomorphism(&again, &g));
        prop_assert!(h.is_some());
    }

    #[test]
    fn delimiter_sharing_does_not_change_erasure(seed: u64, pick in 0usize..4) {
        let g = ltg(seed, pick, 8);
        let (s, h) = s_collapse(&g);
        prop_assert!(check_f_homomorphism(&g, &h, Label::Del));
        if infer_prefix(&s).is_some() {
            prop_assert!(ap_isomorphic(&erase_delimiters(&s).unwrap(), &erase_delimiters(&g).unwrap()).is_some());
        }
    }

    #[test]
    fn translation_preserves_and_reflects_sharing(seed: u64, l1 in any::<bool>()) {
        let sig = if l1 { Signature::L1 } else { Signature::L0 };
        let mut r = rng(seed);
        let a = random_ap_ho(&mut r, sig, 6);
        let b = random_ap_ho(&mut r, sig, 6);
        let (ga, gb) = (insert_delimiters(&a, 2).unwrap(), insert_delimiters(&b, 2).unwrap());
        prop_assert_eq!(find_ap_homomorphism(&a, &b).is_some(), find_homomorphism(&ga, &gb).is_some());
        let (ha, hb) = (prefixes_to_scopes(&a), prefixes_to_scopes(&b));
        let ap = find_ap_homomorphism(&a, &b);
        let ho = find_ho_homomorphism(&ha, &hb);
        if ap.is_some() {
            prop_assert!(ho.is_some());
        }
        if let Some(h) = ho {
            prop_assert!(find_homomorphism(&forget_scoping(&ha), &forget_scoping(&hb)).is_some());
            // scope sets cannot see an abstraction folded onto one of its own binders
            if ap.is_none() {
                let g = ha.carrier();
                let folds_nested = g.vertices().filter(|&v| g.label(v) == Label::Lam).any(|v| {
                    ha.scope(v).iter().any(|&u| u != v && g.label(u) == Label::Lam && h.apply(u) == h.apply(v))
                });
                prop_assert!(folds_nested);
            }
        }
    }

    #[test]
    fn eager_graphs_stay_eager_under_sharing(seed: u64) {
        let g = random_eager_ltg(&mut rng(seed), 10);
        let fbl = is_fully_backlinked_with(&g, &infer_prefix(&g).unwrap());
        for image in enumerate_images(&g).unwrap() {
            let p = infer_prefix(&image.graph);
            prop_assert!(p.is_some());
            let p = p.unwrap();
            prop_assert!(is_eager_scope_with(&image.graph, &p));
            if fbl {
                prop_assert!(is_fully_backlinked_with(&image.graph, &p));
            }
        }
    }

    #[test]
    fn terms_give_eager_graphs(seed: u64) {
        let t = random_term(&mut rng(seed), 10);
        let g = term_to_graph(&t);
        let p = infer_prefix(&g);
        prop_assert!(p.is_some(), "{}", t);
        prop_assert!(is_eager_scope_with(&g, &p.unwrap()), "{}", t);
        prop_assert_eq!(g.canonical_key(), term_to_graph(&t).canonical_key());
        prop_assert!(are_bisimilar(&collapse(&g).0, &g));
        let renamed = common::alpha_rename(&t);
        prop_assert!(are_isomorphic(&term_to_graph(&renamed), &g).is_some(), "{} vs {}", t, renamed);
    }

    #[test]
    fn text_format_round_trips(seed: u64, pick in 0usize..4) {
        let g = ltg(seed, pick, 8);
        let parsed = parse_document(&write_graph(&g)).unwrap().graph;
        prop_assert_eq!(parsed.canonical_key(), g.canonical_key());
        let a = random_ap_ho(&mut rng(seed), Signature::L1, 8);
        let doc = parse_document(&write_ap_ho(&a)).unwrap();
        prop_assert_eq!(&doc.prefixes.unwrap_or_else(|| PrefixFn::new(vec![Vec::new(); a.carrier().len()])), a.prefix());
        let h = prefixes_to_scopes(&a);
        let doc = parse_document(&write_ho(&h)).unwrap();
        prop_assert_eq!(&doc.scopes.unwrap_or_default(), h.scopes());
    }
}
