//! Set-labelings of graphs, their verification, and the labelings induced on
//! line graphs, total graphs, subdivisions, contractions and reductions.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::ops::{self, Contraction, Element};
use crate::graph::{Edge, Graph};
use crate::sumset::{difference_set, is_strong_pair, is_strong_pair_fast, sumset, IntSet};

/// Vertex → set-label.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Labeling {
    pub vertex_labels: BTreeMap<usize, IntSet>,
}

impl Labeling {
    /// Labels vertex `i` with `labels[i]`.
    pub fn from_vec(labels: Vec<IntSet>) -> Self {
        Labeling {
            vertex_labels: labels.into_iter().enumerate().collect(),
        }
    }

    pub fn get(&self, v: usize) -> Option<&IntSet> {
        self.vertex_labels.get(&v)
    }

    /// Label of `v`; panics when absent. Use after [`Labeling::check_total`].
    pub fn label(&self, v: usize) -> &IntSet {
        &self.vertex_labels[&v]
    }

    pub fn len(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_labels.is_empty()
    }

    /// Labels in vertex order, for a total labeling.
    pub fn to_vec(&self) -> Vec<IntSet> {
        self.vertex_labels.values().cloned().collect()
    }

    /// Requires exactly the vertices `0..n`, each with a non-empty label.
    pub fn check_total(&self, g: &Graph) -> Result<()> {
        for v in 0..g.n() {
            match self.vertex_labels.get(&v) {
                None => return Err(Error::PartialLabeling(v)),
                Some(s) if s.is_empty() => {
                    return Err(Error::Precondition(format!("vertex {v} has an empty label")))
                }
                Some(_) => {}
            }
        }
        if let Some((&v, _)) = self.vertex_labels.range(g.n()..).next() {
            return Err(Error::VertexOutOfRange(v));
        }
        Ok(())
    }

    /// The labeling pulled back along `origin`: new vertex `i` gets the label
    /// of original vertex `origin[i]`.
    pub fn restrict(&self, origin: &[usize]) -> Labeling {
        Labeling::from_vec(origin.iter().map(|&v| self.label(v).clone()).collect())
    }
}

/// `f⁺(uv) = f(u) + f(v)`.
pub fn edge_label(g: &Graph, f: &Labeling, u: usize, v: usize) -> Result<IntSet> {
    g.check_edge(u, v)?;
    let a = f.get(u).ok_or(Error::PartialLabeling(u))?;
    let b = f.get(v).ok_or(Error::PartialLabeling(v))?;
    sumset(a, b)
}

/// An edge whose set-indexing number is not the product of its endpoints'.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailingEdge {
    pub edge: [usize; 2],
    pub card_u: usize,
    pub card_v: usize,
    pub card_sum: usize,
}

/// Verdicts of [`verify`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    /// Vertex labels are pairwise distinct.
    pub is_set_labeling: bool,
    /// Edge labels are pairwise distinct.
    pub is_set_indexer: bool,
    /// Every edge satisfies `|f⁺(uv)| = |f(u)|·|f(v)|`.
    pub is_strong: bool,
    /// The graph has no edges, so strongness holds vacuously.
    pub vacuous: bool,
    pub failing_edges: Vec<FailingEdge>,
    /// Common edge set-indexing number, if all edges share one.
    pub uniform_k: Option<usize>,
    /// `(k, l)` when additionally every vertex label has cardinality `l`.
    pub completely_uniform: Option<(usize, usize)>,
    pub vertex_set_indexing_numbers: BTreeMap<usize, usize>,
}

impl PropertyReport {
    pub fn is_strong_iasi(&self) -> bool {
        self.is_set_labeling && self.is_set_indexer && self.is_strong
    }

    /// Strong IASI whose edges all have set-indexing number `k`.
    pub fn is_strongly_uniform(&self, k: usize) -> bool {
        self.is_strong_iasi() && self.uniform_k == Some(k)
    }
}

/// How much cross-checking [`verify_with`] performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VerifyMode {
    /// Strongness by cardinality and by difference-set disjointness, asserting
    /// that they agree.
    #[default]
    Full,
    /// Strongness by difference sets only.
    Fast,
}

pub fn verify(g: &Graph, f: &Labeling) -> Result<PropertyReport> {
    verify_with(g, f, VerifyMode::Full)
}

pub fn verify_with(g: &Graph, f: &Labeling, mode: VerifyMode) -> Result<PropertyReport> {
    f.check_total(g)?;
    let labels = f.to_vec();

    let distinct: BTreeSet<&IntSet> = labels.iter().collect();
    let is_set_labeling = distinct.len() == labels.len();

    let mut edge_labels = BTreeSet::new();
    let mut edge_cards = BTreeSet::new();
    let mut failing_edges = Vec::new();
    for (u, v) in g.edges() {
        let (a, b) = (&labels[u], &labels[v]);
        let s = sumset(a, b)?;
        let strong = match mode {
            VerifyMode::Full => {
                let pair = is_strong_pair(a, b)?;
                assert_eq!(pair, s.len() == a.len() * b.len());
                pair
            }
            VerifyMode::Fast => is_strong_pair_fast(a, b)?,
        };
        if !strong {
            failing_edges.push(FailingEdge {
                edge: [u, v],
                card_u: a.len(),
                card_v: b.len(),
                card_sum: s.len(),
            });
        }
        edge_cards.insert(s.len());
        edge_labels.insert(s);
    }
    let is_set_indexer = edge_labels.len() == g.edge_count();
    let is_strong = failing_edges.is_empty();

    if mode == VerifyMode::Full && g.is_complete() && g.n() > 1 {
        let diffs = labels
            .iter()
            .map(difference_set)
            .collect::<Result<Vec<_>>>()?;
        let pairwise = diffs
            .iter()
            .enumerate()
            .all(|(i, d)| diffs[i + 1..].iter().all(|e| d.is_disjoint(e)));
        assert_eq!(pairwise, is_strong, "complete-graph strongness disagrees with pairwise disjointness");
    }

    let uniform_k = match edge_cards.len() {
        1 => edge_cards.first().copied(),
        _ => None,
    };
    let vertex_cards: BTreeSet<usize> = labels.iter().map(IntSet::len).collect();
    let completely_uniform = match (uniform_k, vertex_cards.len()) {
        (Some(k), 1) => Some((k, *vertex_cards.first().unwrap())),
        _ => None,
    };
    Ok(PropertyReport {
        is_set_labeling,
        is_set_indexer,
        is_strong,
        vacuous: g.edge_count() == 0,
        failing_edges,
        uniform_k,
        completely_uniform,
        vertex_set_indexing_numbers: labels.iter().map(IntSet::len).enumerate().collect(),
    })
}

fn require_strong(g: &Graph, f: &Labeling) -> Result<()> {
    if verify_with(g, f, VerifyMode::Fast)?.is_strong {
        Ok(())
    } else {
        Err(Error::Precondition("input labeling is not strong".into()))
    }
}

/// Each line-graph vertex takes the label of the edge it stands for.
pub fn induce_on_line_graph(g: &Graph, f: &Labeling) -> Result<(Graph, Labeling)> {
    require_strong(g, f)?;
    let (lg, origin) = ops::line_graph(g)?;
    let labels = origin
        .iter()
        .map(|&(u, v)| sumset(f.label(u), f.label(v)))
        .collect::<Result<Vec<_>>>()?;
    Ok((lg, Labeling::from_vec(labels)))
}

/// Vertices keep their labels; edge-vertices take the edge labels.
pub fn induce_on_total_graph(g: &Graph, f: &Labeling) -> Result<(Graph, Labeling)> {
    require_strong(g, f)?;
    let (tg, origin) = ops::total_graph(g)?;
    let labels = origin
        .iter()
        .map(|el| match *el {
            Element::Vertex(v) => Ok(f.label(v).clone()),
            Element::Edge(u, v) => sumset(f.label(u), f.label(v)),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((tg, Labeling::from_vec(labels)))
}

/// The subdivision vertex takes the label of the edge it replaces.
pub fn induce_on_subdivision(g: &Graph, f: &Labeling, e: Edge) -> Result<(Graph, Labeling)> {
    require_strong(g, f)?;
    let (sg, w) = ops::subdivide(g, e)?;
    let mut labels = f.to_vec();
    debug_assert_eq!(labels.len(), w);
    labels.push(sumset(f.label(e.0), f.label(e.1))?);
    Ok((sg, Labeling::from_vec(labels)))
}

/// The merged vertex takes the label of the contracted edge; every other
/// vertex keeps its label. The result may fail vertex injectivity, which
/// [`verify`] reports rather than this function rejecting.
pub fn induce_on_contraction(g: &Graph, f: &Labeling, e: Edge) -> Result<(Contraction, Labeling)> {
    require_strong(g, f)?;
    let c = ops::contract(g, e)?;
    let mut labels = vec![IntSet::empty(); c.graph.n()];
    for v in 0..g.n() {
        labels[c.vertex_map[v]] = f.label(v).clone();
    }
    labels[c.merged] = sumset(f.label(e.0), f.label(e.1))?;
    Ok((c, Labeling::from_vec(labels)))
}

/// Surviving vertices keep their labels after the path `u w v` becomes the
/// edge `uv`.
pub fn induce_on_reduction(
    g: &Graph,
    f: &Labeling,
    path: (usize, usize, usize),
) -> Result<(Graph, Labeling)> {
    require_strong(g, f)?;
    let (rg, map) = ops::reduce_path(g, path)?;
    let mut labels = vec![IntSet::empty(); rg.n()];
    for (v, image) in map.iter().enumerate() {
        if let Some(i) = image {
            labels[*i] = f.label(v).clone();
        }
    }
    Ok((rg, Labeling::from_vec(labels)))
}

/// Whether the difference set of the contracted edge's label avoids the
/// difference sets of every vertex adjacent to either endpoint.
pub fn contraction_keeps_strong(g: &Graph, f: &Labeling, e: Edge) -> Result<bool> {
    let (u, v) = g.check_edge(e.0, e.1)?;
    let d_edge = difference_set(&sumset(f.label(u), f.label(v))?)?;
    let outside: BTreeSet<usize> = g
        .neighbors(u)
        .chain(g.neighbors(v))
        .filter(|&x| x != u && x != v)
        .collect();
    for x in outside {
        if !d_edge.is_disjoint(&difference_set(f.label(x))?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Readings of "the difference sets of the set-labels of whose vertices are
/// pairwise disjoint" for a reduction path `u w v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionReading {
    /// Only the end vertices `u` and `v`.
    EndVertices,
    /// All three of `u`, `w` and `v`.
    AllThree,
}

pub fn reduction_condition(
    f: &Labeling,
    path: (usize, usize, usize),
    reading: ReductionReading,
) -> Result<bool> {
    let (u, w, v) = path;
    let d = |x: usize| difference_set(f.label(x));
    let ends = d(u)?.is_disjoint(&d(v)?);
    Ok(match reading {
        ReductionReading::EndVertices => ends,
        ReductionReading::AllThree => {
            ends && d(u)?.is_disjoint(&d(w)?) && d(w)?.is_disjoint(&d(v)?)
        }
    })
}

/// Every edge of `g` holds both difference sets of its endpoints inside the
/// difference set of its label.
pub fn edge_differences_contain_endpoints(g: &Graph, f: &Labeling) -> Result<bool> {
    for (u, v) in g.edges() {
        let d_edge = difference_set(&edge_label(g, f, u, v)?)?;
        let du = difference_set(f.label(u))?;
        let dv = difference_set(f.label(v))?;
        if !du.union(&dv).is_subset(&d_edge) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Labels carried over to the complement, which has the same vertex set.
pub fn complement_with_labels(g: &Graph, f: &Labeling) -> Result<(Graph, Labeling)> {
    f.check_total(g)?;
    Ok((ops::complement(g), f.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    fn s<const N: usize>(a: [u64; N]) -> IntSet {
        IntSet::from(a)
    }

    fn k2() -> Graph {
        Family::Path(1).generate().unwrap()
    }

    #[test]
    fn edge_label_examples() {
        let g = k2();
        let f = Labeling::from_vec(vec![s([0, 1]), s([0, 2])]);
        assert_eq!(edge_label(&g, &f, 0, 1).unwrap(), s([0, 1, 2, 3]));
        let f = Labeling::from_vec(vec![s([1]), s([2])]);
        assert_eq!(edge_label(&g, &f, 1, 0).unwrap(), s([3]));
        let f = Labeling::from_vec(vec![s([0, 1]), s([2, 3])]);
        assert_eq!(edge_label(&g, &f, 0, 1).unwrap(), s([2, 3, 4]));
        let p2 = Family::Path(2).generate().unwrap();
        let f3 = Labeling::from_vec(vec![s([0]), s([1]), s([2])]);
        assert!(matches!(edge_label(&p2, &f3, 0, 2), Err(Error::NotAnEdge(_))));
    }

    #[test]
    fn verify_k2_strong() {
        let r = verify(&k2(), &Labeling::from_vec(vec![s([0, 1]), s([0, 2])])).unwrap();
        assert!(r.is_strong && r.is_set_indexer && r.is_set_labeling && !r.vacuous);
        assert_eq!(r.uniform_k, Some(4));
        assert_eq!(r.completely_uniform, Some((4, 2)));
    }

    #[test]
    fn verify_k2_not_strong() {
        let r = verify(&k2(), &Labeling::from_vec(vec![s([0, 1]), s([1, 2])])).unwrap();
        assert!(!r.is_strong);
        assert_eq!(
            r.failing_edges,
            vec![FailingEdge { edge: [0, 1], card_u: 2, card_v: 2, card_sum: 3 }]
        );
    }

    #[test]
    fn verify_path2_edgewise() {
        let g = Family::Path(2).generate().unwrap();
        let f = Labeling::from_vec(vec![s([0, 1]), s([0, 2]), s([0, 1, 5])]);
        let r = verify(&g, &f).unwrap();
        // D{0,2} = {2}, D{0,1,5} = {1,4,5}: disjoint; first edge {1} vs {2}.
        assert!(r.is_strong);
        assert_eq!(r.uniform_k, None);
        assert_eq!(r.vertex_set_indexing_numbers[&2], 3);
    }

    #[test]
    fn verify_rejects_partial_and_empty_labels() {
        let g = Family::Path(2).generate().unwrap();
        let f = Labeling::from_vec(vec![s([0]), s([1])]);
        assert_eq!(verify(&g, &f), Err(Error::PartialLabeling(2)));
        let f = Labeling::from_vec(vec![s([0]), IntSet::empty(), s([1])]);
        assert!(matches!(verify(&g, &f), Err(Error::Precondition(_))));
        let f = Labeling::from_vec(vec![s([0]), s([1]), s([2]), s([3])]);
        assert_eq!(verify(&g, &f), Err(Error::VertexOutOfRange(3)));
    }

    #[test]
    fn verify_detects_injectivity_failures() {
        let g = Family::Cycle(3).generate().unwrap();
        let f = Labeling::from_vec(vec![s([0]), s([0]), s([1])]);
        let r = verify(&g, &f).unwrap();
        assert!(!r.is_set_labeling);
        // {0}+{1} appears on two edges.
        assert!(!r.is_set_indexer);
    }

    #[test]
    fn edgeless_is_vacuously_strong() {
        let r = verify(&Graph::empty(1), &Labeling::from_vec(vec![s([0, 1])])).unwrap();
        assert!(r.is_strong && r.vacuous);
        assert_eq!(r.uniform_k, None);
    }

    #[test]
    fn json_shape() {
        let f = Labeling::from_vec(vec![s([0, 1]), s([0, 2])]);
        let j = serde_json::to_string(&f).unwrap();
        assert_eq!(j, r#"{"vertex_labels":{"0":[0,1],"1":[0,2]}}"#);
        assert_eq!(serde_json::from_str::<Labeling>(&j).unwrap(), f);
    }

    fn strong_triangle() -> (Graph, Labeling) {
        let g = Family::Cycle(3).generate().unwrap();
        let f = Labeling::from_vec(vec![s([0, 1]), s([10, 12]), s([20, 24])]);
        assert!(verify(&g, &f).unwrap().is_strong);
        (g, f)
    }

    #[test]
    fn line_graph_of_path2_is_not_strong() {
        let g = Family::Path(2).generate().unwrap();
        let f = Labeling::from_vec(vec![s([0, 1]), s([0, 2]), s([10, 14])]);
        let (lg, lf) = induce_on_line_graph(&g, &f).unwrap();
        assert_eq!((lg.n(), lg.edge_count()), (2, 1));
        assert!(!verify(&lg, &lf).unwrap().is_strong);
    }

    #[test]
    fn line_graph_of_k2_is_vacuous() {
        let f = Labeling::from_vec(vec![s([0, 1]), s([0, 2])]);
        let (lg, lf) = induce_on_line_graph(&k2(), &f).unwrap();
        let r = verify(&lg, &lf).unwrap();
        assert!(r.is_strong && r.vacuous);
    }

    #[test]
    fn line_graph_of_triangle_fails_everywhere() {
        let (g, f) = strong_triangle();
        let (lg, lf) = induce_on_line_graph(&g, &f).unwrap();
        let r = verify(&lg, &lf).unwrap();
        assert_eq!(r.failing_edges.len(), 3);
    }

    #[test]
    fn induced_operations_reject_non_strong_input() {
        let g = k2();
        let f = Labeling::from_vec(vec![s([0, 1]), s([1, 2])]);
        assert!(matches!(induce_on_line_graph(&g, &f), Err(Error::Precondition(_))));
        assert!(matches!(induce_on_total_graph(&g, &f), Err(Error::Precondition(_))));
        assert!(matches!(induce_on_subdivision(&g, &f, (0, 1)), Err(Error::Precondition(_))));
    }

    #[test]
    fn subdivision_breaks_both_new_edges() {
        let (g, f) = strong_triangle();
        for e in g.edges() {
            let (sg, sf) = induce_on_subdivision(&g, &f, e).unwrap();
            let r = verify(&sg, &sf).unwrap();
            let w = g.n();
            let failing: BTreeSet<[usize; 2]> = r.failing_edges.iter().map(|x| x.edge).collect();
            assert!(failing.contains(&[e.0, w]) && failing.contains(&[e.1, w]));
        }
    }

    #[test]
    fn contraction_follows_neighbour_condition() {
        // Path 0-1-2-3; contract 1-2.
        let g = Family::Path(3).generate().unwrap();
        // D: {1}, {2}, {4}, {8}; edge 1-2 label {0,2}+{0,4} has D {2,4,6}.
        let good = Labeling::from_vec(vec![s([0, 1]), s([0, 2]), s([0, 4]), s([0, 8])]);
        assert!(contraction_keeps_strong(&g, &good, (1, 2)).unwrap());
        let (c, cf) = induce_on_contraction(&g, &good, (1, 2)).unwrap();
        assert_eq!(cf.label(c.merged), &s([0, 2, 4, 6]));
        assert!(verify(&c.graph, &cf).unwrap().is_strong);
        // Neighbour 3 with difference 6 meets D(f⁺(12)).
        let bad = Labeling::from_vec(vec![s([0, 1]), s([0, 2]), s([0, 4]), s([0, 6])]);
        assert!(verify(&g, &bad).unwrap().is_strong);
        assert!(!contraction_keeps_strong(&g, &bad, (1, 2)).unwrap());
        let (c, cf) = induce_on_contraction(&g, &bad, (1, 2)).unwrap();
        assert!(!verify(&c.graph, &cf).unwrap().is_strong);
    }

    #[test]
    fn reduction_labels_survivors() {
        let g = Family::Cycle(4).generate().unwrap();
        let f = Labeling::from_vec(vec![s([0, 1]), s([0, 2]), s([0, 4]), s([0, 2, 7])]);
        assert!(verify(&g, &f).unwrap().is_strong);
        let (rg, rf) = induce_on_reduction(&g, &f, (0, 1, 2)).unwrap();
        assert_eq!(rg.n(), 3);
        assert_eq!(rf.to_vec(), vec![s([0, 1]), s([0, 4]), s([0, 2, 7])]);
        let strong = verify(&rg, &rf).unwrap().is_strong;
        for reading in [ReductionReading::EndVertices, ReductionReading::AllThree] {
            assert_eq!(reduction_condition(&f, (0, 1, 2), reading).unwrap(), strong);
        }
    }

    #[test]
    fn singleton_labels_defeat_never_strong_claims() {
        // With singleton labels every difference set is empty, so induced
        // labelings stay strong.
        let g = Family::Path(2).generate().unwrap();
        let f = Labeling::from_vec(vec![s([0]), s([1]), s([3])]);
        let (lg, lf) = induce_on_line_graph(&g, &f).unwrap();
        assert!(verify(&lg, &lf).unwrap().is_strong);
    }

    #[test]
    fn complement_keeps_labels() {
        let g = Family::Path(3).generate().unwrap();
        let f = Labeling::from_vec(vec![s([0, 1]), s([0, 2]), s([0, 4]), s([0, 8])]);
        let (cg, cf) = complement_with_labels(&g, &f).unwrap();
        assert_eq!(cf, f);
        assert!(verify(&cg, &cf).unwrap().is_strong);
    }
}
