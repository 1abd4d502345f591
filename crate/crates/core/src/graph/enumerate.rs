//! Exhaustive small-graph corpora, one representative per isomorphism class.
//!
//! Graphs on `n` vertices are produced by adding a vertex, with every possible
//! neighbourhood, to each class on `n - 1` vertices and deduplicating by
//! canonical form. Every graph on `n` vertices arises this way (delete any
//! vertex), so the enumeration is complete.

use std::collections::BTreeSet;

use super::iso::{canonical_form, CanonicalForm};
use super::Graph;

fn extend(classes: &BTreeSet<CanonicalForm>, n: usize, tree_only: bool) -> BTreeSet<CanonicalForm> {
    let mut next = BTreeSet::new();
    for form in classes {
        let g = form.to_graph();
        let base: Vec<(usize, usize)> = g.edges().collect();
        let new = n - 1;
        for mask in 0u32..(1u32 << new) {
            if tree_only && mask.count_ones() != 1 {
                continue;
            }
            let mut edges = base.clone();
            edges.extend((0..new).filter(|&v| mask >> v & 1 == 1).map(|v| (v, new)));
            let h = Graph::from_edges_lossy(n, edges);
            next.insert(canonical_form(&h));
        }
    }
    next
}

/// Every graph on exactly `n` vertices, up to isomorphism, in canonical order.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 9, "graph enumeration is limited to 9 vertices");
    let mut classes = BTreeSet::from([canonical_form(&Graph::empty(n.min(1)))]);
    for k in 2..=n {
        classes = extend(&classes, k, false);
    }
    if n == 0 {
        return vec![Graph::empty(0)];
    }
    classes.iter().map(CanonicalForm::to_graph).collect()
}

/// Connected graphs on `1..=max_n` vertices, up to isomorphism, by order.
pub fn connected_graphs(max_n: usize) -> Vec<Graph> {
    (1..=max_n)
        .flat_map(|n| all_graphs(n).into_iter().filter(Graph::is_connected))
        .collect()
}

/// Trees on exactly `n` vertices, up to isomorphism.
pub fn trees(n: usize) -> Vec<Graph> {
    assert!((1..=12).contains(&n), "tree enumeration needs 1 <= n <= 12");
    let mut classes = BTreeSet::from([canonical_form(&Graph::empty(1))]);
    for k in 2..=n {
        classes = extend(&classes, k, true);
    }
    classes.iter().map(CanonicalForm::to_graph).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts_match_known_sequences() {
        // Graphs on n vertices: 1, 2, 4, 11, 34, 156.
        let counts: Vec<usize> = (1..=6).map(|n| all_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
        // Connected graphs: 1, 1, 2, 6, 21, 112.
        let connected: Vec<usize> = (1..=6)
            .map(|n| all_graphs(n).iter().filter(|g| g.is_connected()).count())
            .collect();
        assert_eq!(connected, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (1..=8).map(|n| trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23]);
        for t in trees(7) {
            assert!(t.is_connected() && t.edge_count() == 6);
        }
    }
}
