use std::collections::BTreeSet;

use iasi_core::construct::{
    bounded_search, completely_uniform_labels, construct_strong, construct_strongly_k_uniform_bipartite,
    Predicate, SearchBounds,
};
use iasi_core::graph::{self, ops, Family, FamilySpec};
use iasi_core::sumset::{difference_set, is_strong_pair, sumset, translate};
use iasi_core::{verify, Graph, IntSet};
use proptest::prelude::*;

fn int_set(max: u64, len: usize) -> impl Strategy<Value = IntSet> {
    prop::collection::btree_set(0..=max, 1..=len).prop_map(IntSet::new)
}

fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let len = pairs.len();
        prop::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            let edges = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| *e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![
        (1usize..7).prop_map(Family::Path),
        (3usize..9).prop_map(Family::Cycle),
        (1usize..7).prop_map(Family::Complete),
        (1usize..4, 1usize..4).prop_map(|(m, n)| Family::CompleteBipartite(m, n)),
        (3usize..7).prop_map(Family::Wheel),
        (3usize..6).prop_map(Family::Helm),
        (1usize..4).prop_map(Family::Friendship),
        (1usize..3, 2usize..5).prop_map(|(m, n)| Family::Fan(m, n)),
        (1usize..4, 1usize..4).prop_map(|(r, s)| Family::CompleteSplit(r, s)),
        (3usize..6).prop_map(|n| Family::Sun(n, graph::SunHull::Cycle)),
        (3usize..6).prop_map(|n| Family::Sun(n, graph::SunHull::Complete)),
        (3usize..7).prop_map(Family::Sunlet),
    ]
}

proptest! {
    #[test]
    fn sumset_cardinality_bounds(a in int_set(40, 6), b in int_set(40, 6)) {
        let s = sumset(&a, &b).unwrap();
        prop_assert!(s.len() >= a.len() + b.len() - 1);
        prop_assert!(s.len() <= a.len() * b.len());
        prop_assert_eq!(&s, &sumset(&b, &a).unwrap());
        let full = s.len() == a.len() * b.len();
        prop_assert_eq!(full, is_strong_pair(&a, &b).unwrap());
    }

    #[test]
    fn translation_preserves_differences(a in int_set(60, 6), t in 0u64..1000) {
        let moved = translate(&a, t).unwrap();
        prop_assert_eq!(difference_set(&a).unwrap(), difference_set(&moved).unwrap());
    }

    #[test]
    fn powers_are_nested(g in any_graph(8), r in 1usize..5) {
        let lower: BTreeSet<_> = ops::power(&g, r).unwrap().edges().collect();
        let higher: BTreeSet<_> = ops::power(&g, r + 1).unwrap().edges().collect();
        prop_assert!(lower.is_subset(&higher));
        prop_assert!(g.edges().all(|e| lower.contains(&e)));
    }

    #[test]
    fn power_past_diameter_is_complete(f in family()) {
        let g = f.generate().unwrap();
        let d = ops::diameter(&g).unwrap().max(1);
        prop_assert!(ops::power(&g, d).unwrap().is_complete());
    }

    #[test]
    fn clique_number_is_monotone_in_power(f in family(), r in 1usize..5) {
        let a = graph::clique_number(&FamilySpec::new(f, r).generate().unwrap());
        let b = graph::clique_number(&FamilySpec::new(f, r + 1).generate().unwrap());
        prop_assert!(a <= b);
    }

    #[test]
    fn construct_strong_is_strong(g in any_graph(9)) {
        let f = construct_strong(&g).unwrap();
        let r = verify(&g, &f).unwrap();
        prop_assert!(r.is_strong_iasi());
    }

    #[test]
    fn strong_labels_survive_subgraphs(g in any_graph(8), keep in prop::collection::vec(any::<bool>(), 8)) {
        let f = construct_strong(&g).unwrap();
        let vertices: Vec<usize> = (0..g.n()).filter(|&v| keep[v]).collect();
        let (h, origin) = g.induced_subgraph(&vertices).unwrap();
        prop_assert!(verify(&h, &f.restrict(&origin)).unwrap().is_strong);
    }

    #[test]
    fn uniform_construction_on_bipartite(m in 1usize..4, n in 1usize..4, a in 1usize..5, b in 1usize..5) {
        let g = Family::CompleteBipartite(m, n).generate().unwrap();
        let f = construct_strongly_k_uniform_bipartite(&g, a * b, (a, b)).unwrap();
        prop_assert!(verify(&g, &f).unwrap().is_strongly_uniform(a * b));
    }

    #[test]
    fn completely_uniform_on_any_graph(g in any_graph(7), l in 1usize..5) {
        let f = completely_uniform_labels(g.n(), l).unwrap();
        let r = verify(&g, &f).unwrap();
        prop_assert!(r.is_strong_iasi());
        prop_assert!(f.to_vec().iter().all(|s| s.len() == l));
        if g.edge_count() > 0 {
            prop_assert_eq!(r.uniform_k, Some(l * l));
        }
    }

    #[test]
    fn graph_json_round_trip(g in any_graph(8)) {
        let back: Graph = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn relabelling_keeps_canonical_form(g in any_graph(7), seed in any::<u64>()) {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = Graph::from_edges(n, g.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap();
        prop_assert!(graph::is_isomorphic(&g, &h));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Enlarging the ground set can only turn absence into presence.
    #[test]
    fn search_is_monotone_in_bounds(g in any_graph(3), m in 2u64..6) {
        let small = SearchBounds::new(m, 2).unwrap();
        let large = SearchBounds::new(m + 2, 2).unwrap();
        let a = bounded_search(&g, Predicate::Strong, &small, 10_000_000).unwrap();
        let b = bounded_search(&g, Predicate::Strong, &large, 10_000_000).unwrap();
        prop_assert!(a.is_none() || b.is_some());
        if let Some(f) = b {
            prop_assert!(verify(&g, &f).unwrap().is_strong_iasi());
        }
    }
}
