//! Graph powers, products and the edge-level transformations (line and total
//! graphs, subdivision, contraction, elementary topological reduction).

use serde::Serialize;

use super::{edge, Edge, Graph};
use crate::error::{Error, Result};

/// Where a vertex of a composed graph came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Vertex of the first operand.
    Left(usize),
    /// Vertex of the second operand.
    Right(usize),
    /// Cartesian product vertex `(v1, v2)`.
    Pair(usize, usize),
    /// Corona: the copy of second-operand vertex `vertex` attached to `host`.
    Copy { host: usize, vertex: usize },
}

/// A graph built from two operands, with per-vertex provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composite {
    pub graph: Graph,
    pub provenance: Vec<Provenance>,
}

/// An element of a graph: a vertex or an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Element {
    Vertex(usize),
    Edge(usize, usize),
}

/// `G^r`: vertices at distance at most `r` become adjacent.
///
/// Disconnected inputs are handled per component, since unreachable pairs are
/// never joined.
pub fn power(g: &Graph, r: usize) -> Result<Graph> {
    if r == 0 {
        return Err(Error::Parameter("graph power exponent must be at least 1".into()));
    }
    let mut edges = Vec::new();
    for u in 0..g.n() {
        for (v, d) in g.distances_from(u).into_iter().enumerate().skip(u + 1) {
            if matches!(d, Some(d) if d <= r) {
                edges.push((u, v));
            }
        }
    }
    let mut out = Graph::from_edges_lossy(g.n(), edges);
    out.set_roles(g.roles().clone());
    Ok(out)
}

/// Largest distance between two vertices of a connected graph.
pub fn diameter(g: &Graph) -> Result<usize> {
    if g.n() == 0 {
        return Err(Error::InvalidGraph("diameter of the empty graph".into()));
    }
    let mut best = 0;
    for u in 0..g.n() {
        for d in g.distances_from(u) {
            match d {
                Some(d) => best = best.max(d),
                None => {
                    return Err(Error::Precondition(
                        "diameter requires a connected graph".into(),
                    ))
                }
            }
        }
    }
    Ok(best)
}

/// Connected components, each re-indexed from zero, with the original vertex
/// of every component vertex.
pub fn components(g: &Graph) -> Vec<(Graph, Vec<usize>)> {
    g.component_vertices()
        .into_iter()
        .map(|vs| g.induced_subgraph(&vs).expect("component vertices are valid"))
        .collect()
}

/// Same vertex set, complementary edge set. Role tags are kept.
pub fn complement(g: &Graph) -> Graph {
    let mut edges = Vec::new();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if !g.has_edge(u, v) {
                edges.push((u, v));
            }
        }
    }
    let mut out = Graph::from_edges_lossy(g.n(), edges);
    out.set_roles(g.roles().clone());
    out
}

fn side_by_side(g1: &Graph, g2: &Graph) -> (Vec<Edge>, Vec<Provenance>) {
    let off = g1.n();
    let mut edges: Vec<Edge> = g1.edges().collect();
    edges.extend(g2.edges().map(|(u, v)| (u + off, v + off)));
    let mut prov: Vec<Provenance> = (0..g1.n()).map(Provenance::Left).collect();
    prov.extend((0..g2.n()).map(Provenance::Right));
    (edges, prov)
}

/// `G1 ∪ G2` on disjoint vertex sets; `G2`'s vertices follow `G1`'s.
pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Composite {
    let (edges, provenance) = side_by_side(g1, g2);
    Composite {
        graph: Graph::from_edges_lossy(g1.n() + g2.n(), edges),
        provenance,
    }
}

/// `G1 + G2`: the disjoint union plus every edge between the two sides.
pub fn join(g1: &Graph, g2: &Graph) -> Composite {
    let (mut edges, provenance) = side_by_side(g1, g2);
    let off = g1.n();
    for u in 0..g1.n() {
        edges.extend((0..g2.n()).map(|v| (u, v + off)));
    }
    Composite {
        graph: Graph::from_edges_lossy(g1.n() + g2.n(), edges),
        provenance,
    }
}

/// `G1 □ G2`; vertex `(a, b)` has index `a * |G2| + b`.
pub fn cartesian_product(g1: &Graph, g2: &Graph) -> Composite {
    let idx = |a: usize, b: usize| a * g2.n() + b;
    let mut edges = Vec::new();
    for a in 0..g1.n() {
        for (b1, b2) in g2.edges() {
            edges.push((idx(a, b1), idx(a, b2)));
        }
    }
    for (a1, a2) in g1.edges() {
        for b in 0..g2.n() {
            edges.push((idx(a1, b), idx(a2, b)));
        }
    }
    let provenance = (0..g1.n())
        .flat_map(|a| (0..g2.n()).map(move |b| Provenance::Pair(a, b)))
        .collect();
    Composite {
        graph: Graph::from_edges_lossy(g1.n() * g2.n(), edges),
        provenance,
    }
}

/// `G1 ⊙ G2`: one fresh copy of `G2` per vertex of `G1`, that vertex joined to
/// its whole copy. Copy `h` occupies indices `|G1| + h·|G2| ..`.
pub fn corona(g1: &Graph, g2: &Graph) -> Composite {
    let n1 = g1.n();
    let n2 = g2.n();
    let mut edges: Vec<Edge> = g1.edges().collect();
    let mut provenance: Vec<Provenance> = (0..n1).map(Provenance::Left).collect();
    for host in 0..n1 {
        let base = n1 + host * n2;
        edges.extend(g2.edges().map(|(u, v)| (base + u, base + v)));
        edges.extend((0..n2).map(|w| (host, base + w)));
        provenance.extend((0..n2).map(|vertex| Provenance::Copy { host, vertex }));
    }
    Composite {
        graph: Graph::from_edges_lossy(n1 + n1 * n2, edges),
        provenance,
    }
}

/// `L(G)`: one vertex per edge (in lexicographic edge order), adjacent when
/// the edges share an endpoint.
pub fn line_graph(g: &Graph) -> Result<(Graph, Vec<Edge>)> {
    if g.edge_count() == 0 {
        return Err(Error::Precondition("line graph of an edgeless graph".into()));
    }
    let origin: Vec<Edge> = g.edges().collect();
    let mut lg_edges = Vec::new();
    for i in 0..origin.len() {
        for j in i + 1..origin.len() {
            let (a, b) = origin[i];
            let (c, d) = origin[j];
            if a == c || a == d || b == c || b == d {
                lg_edges.push((i, j));
            }
        }
    }
    Ok((Graph::from_edges_lossy(origin.len(), lg_edges), origin))
}

/// `T(G)`: vertices of `G` first (same indices), then one vertex per edge in
/// lexicographic order. Adjacent when the elements are adjacent or incident.
pub fn total_graph(g: &Graph) -> Result<(Graph, Vec<Element>)> {
    let (lg, edge_origin) = line_graph(g)?;
    let n = g.n();
    let mut edges: Vec<Edge> = g.edges().collect();
    edges.extend(lg.edges().map(|(i, j)| (n + i, n + j)));
    for (i, &(u, v)) in edge_origin.iter().enumerate() {
        edges.push((u, n + i));
        edges.push((v, n + i));
    }
    let mut origin: Vec<Element> = (0..n).map(Element::Vertex).collect();
    origin.extend(edge_origin.iter().map(|&(u, v)| Element::Edge(u, v)));
    Ok((Graph::from_edges_lossy(n + edge_origin.len(), edges), origin))
}

/// Replaces edge `uv` by a path `u w v` through a new vertex `w = n`.
pub fn subdivide(g: &Graph, e: Edge) -> Result<(Graph, usize)> {
    let (u, v) = g.check_edge(e.0, e.1)?;
    let w = g.n();
    let mut edges: Vec<Edge> = g.edges().filter(|&x| x != (u, v)).collect();
    edges.push((u, w));
    edges.push((v, w));
    let mut out = Graph::from_edges_lossy(g.n() + 1, edges);
    out.set_roles(g.roles().clone());
    Ok((out, w))
}

/// Result of contracting an edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    pub graph: Graph,
    /// Index of the merged vertex in the new graph.
    pub merged: usize,
    /// `vertex_map[v]` is the image of original vertex `v`.
    pub vertex_map: Vec<usize>,
}

/// Contracts `uv`: the larger endpoint is identified with the smaller one,
/// which keeps its identity; indices above the removed vertex shift down by
/// one. Parallel edges merge and loops vanish.
pub fn contract(g: &Graph, e: Edge) -> Result<Contraction> {
    let (keep, gone) = g.check_edge(e.0, e.1)?;
    let vertex_map: Vec<usize> = (0..g.n())
        .map(|x| match x {
            x if x == gone => keep,
            x if x > gone => x - 1,
            x => x,
        })
        .collect();
    let merged = vertex_map[keep];
    let edges = g.edges().map(|(a, b)| (vertex_map[a], vertex_map[b]));
    let graph = Graph::from_edges_lossy(g.n() - 1, edges);
    Ok(Contraction {
        graph,
        merged,
        vertex_map,
    })
}

/// Why an elementary topological reduction is not applicable.
fn reduction_guard(g: &Graph, u: usize, w: usize, v: usize) -> Result<()> {
    g.check_vertex(u)?;
    g.check_vertex(w)?;
    g.check_vertex(v)?;
    if u == v || u == w || v == w {
        return Err(Error::Precondition("path vertices must be distinct".into()));
    }
    if !g.has_edge(u, w) || !g.has_edge(w, v) {
        return Err(Error::Precondition(format!("{u}-{w}-{v} is not a path of the graph")));
    }
    if g.degree(w) != 2 {
        return Err(Error::Precondition(format!(
            "middle vertex {w} has degree {}, expected 2",
            g.degree(w)
        )));
    }
    if g.has_edge(u, v) {
        return Err(Error::Precondition(format!(
            "{u}-{w}-{v} lies in a triangle (edge {u}-{v} exists)"
        )));
    }
    for (a, b) in [(u, w), (w, v)] {
        if g.neighbor_set(a).intersection(g.neighbor_set(b)).next().is_some() {
            return Err(Error::Precondition(format!("edge {a}-{b} lies in a triangle")));
        }
    }
    Ok(())
}

/// Replaces the triangle-free path `u w v` (with `w` of degree two) by the
/// edge `uv`, deleting `w`. Indices above `w` shift down by one.
pub fn reduce_path(g: &Graph, path: (usize, usize, usize)) -> Result<(Graph, Vec<Option<usize>>)> {
    let (u, w, v) = path;
    reduction_guard(g, u, w, v)?;
    let vertex_map: Vec<Option<usize>> = (0..g.n())
        .map(|x| match x {
            x if x == w => None,
            x if x > w => Some(x - 1),
            x => Some(x),
        })
        .collect();
    let mut edges: Vec<Edge> = g
        .edges()
        .filter(|&(a, b)| a != w && b != w)
        .map(|(a, b)| (vertex_map[a].unwrap(), vertex_map[b].unwrap()))
        .collect();
    edges.push(edge(vertex_map[u].unwrap(), vertex_map[v].unwrap()));
    Ok((Graph::from_edges_lossy(g.n() - 1, edges), vertex_map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{clique_number, is_isomorphic, Family};

    fn fam(f: Family) -> Graph {
        f.generate().unwrap()
    }

    #[test]
    fn power_examples() {
        let c5 = fam(Family::Cycle(5));
        assert!(power(&c5, 2).unwrap().is_complete());
        assert_eq!(power(&c5, 1).unwrap(), c5);
        assert!(power(&c5, 0).is_err());
        let p4 = fam(Family::Path(4));
        let sq = power(&p4, 2).unwrap();
        assert_eq!(sq.edge_count(), 4 + 3);
        assert_eq!(clique_number(&sq), 3);
    }

    #[test]
    fn power_of_diameter_is_complete() {
        for f in [Family::Helm(5), Family::Sunlet(5), Family::Path(6), Family::Fan(2, 5)] {
            let g = fam(f);
            let d = diameter(&g).unwrap();
            assert!(power(&g, d).unwrap().is_complete(), "{f}");
        }
    }

    #[test]
    fn diameter_requires_connection() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(diameter(&g), Err(Error::Precondition(_))));
        assert_eq!(diameter(&fam(Family::Cycle(7))).unwrap(), 3);
    }

    #[test]
    fn operations_examples() {
        let w = join(&fam(Family::Cycle(4)), &fam(Family::Complete(1)));
        assert!(is_isomorphic(&w.graph, &fam(Family::Wheel(4))));
        let p3 = fam(Family::Path(3));
        assert_eq!(complement(&complement(&p3)), p3);
        let c = corona(&fam(Family::Complete(1)), &fam(Family::Cycle(3)));
        assert!(is_isomorphic(&c.graph, &fam(Family::Complete(4))));
        assert_eq!(c.provenance[1], Provenance::Copy { host: 0, vertex: 0 });
    }

    #[test]
    fn cartesian_of_edges_is_square() {
        let k2 = fam(Family::Path(1));
        let sq = cartesian_product(&k2, &k2);
        assert!(is_isomorphic(&sq.graph, &fam(Family::Cycle(4))));
        assert_eq!(sq.provenance[3], Provenance::Pair(1, 1));
    }

    #[test]
    fn components_reindex() {
        let g = disjoint_union(&fam(Family::Cycle(3)), &fam(Family::Path(2))).graph;
        let comps = components(&g);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[1].1, vec![3, 4, 5]);
        assert!(is_isomorphic(&comps[1].0, &fam(Family::Path(2))));
    }

    #[test]
    fn line_graph_examples() {
        let (l, origin) = line_graph(&fam(Family::Path(3))).unwrap();
        assert!(is_isomorphic(&l, &fam(Family::Path(2))));
        assert_eq!(origin, vec![(0, 1), (1, 2), (2, 3)]);
        let c5 = fam(Family::Cycle(5));
        assert!(is_isomorphic(&line_graph(&c5).unwrap().0, &c5));
        let star = fam(Family::CompleteBipartite(1, 3));
        assert!(line_graph(&star).unwrap().0.is_complete());
        assert!(line_graph(&Graph::empty(3)).is_err());
    }

    #[test]
    fn total_graph_examples() {
        let k2 = fam(Family::Path(1));
        let (t, origin) = total_graph(&k2).unwrap();
        assert!(t.is_complete() && t.n() == 3);
        assert_eq!(origin[2], Element::Edge(0, 1));
        assert_eq!(total_graph(&fam(Family::Cycle(3))).unwrap().0.n(), 6);
        let p4 = fam(Family::Path(4));
        let (t, _) = total_graph(&p4).unwrap();
        let edge_vertices: Vec<usize> = (p4.n()..t.n()).collect();
        let (sub, _) = t.induced_subgraph(&edge_vertices).unwrap();
        assert!(is_isomorphic(&sub, &line_graph(&p4).unwrap().0));
    }

    #[test]
    fn subdivide_examples() {
        let k2 = fam(Family::Path(1));
        let (s, w) = subdivide(&k2, (0, 1)).unwrap();
        assert_eq!(w, 2);
        assert!(is_isomorphic(&s, &fam(Family::Path(2))));
        let c3 = fam(Family::Cycle(3));
        let (s, _) = subdivide(&c3, (1, 2)).unwrap();
        assert!(is_isomorphic(&s, &fam(Family::Cycle(4))));
        assert_eq!((s.n(), s.edge_count()), (4, 4));
        assert!(matches!(subdivide(&c3, (0, 5)), Err(Error::NotAnEdge(_))));
    }

    #[test]
    fn contract_examples() {
        let c3 = fam(Family::Cycle(3));
        let c = contract(&c3, (0, 1)).unwrap();
        assert!(is_isomorphic(&c.graph, &fam(Family::Path(1))));
        assert_eq!(c.vertex_map, vec![0, 0, 1]);
        assert_eq!(c.merged, 0);
        let c = contract(&fam(Family::Path(2)), (1, 2)).unwrap();
        assert!(is_isomorphic(&c.graph, &fam(Family::Path(1))));
        let c = contract(&fam(Family::Cycle(4)), (3, 0)).unwrap();
        assert!(is_isomorphic(&c.graph, &fam(Family::Cycle(3))));
        assert!(contract(&c3, (0, 0)).is_err());
    }

    #[test]
    fn subdivide_then_contract_is_identity_up_to_isomorphism() {
        let g = fam(Family::Helm(4));
        for e in g.edges() {
            let (s, w) = subdivide(&g, e).unwrap();
            let c = contract(&s, (e.0, w)).unwrap();
            assert!(is_isomorphic(&c.graph, &g));
        }
    }

    #[test]
    fn reduce_examples() {
        let (r, map) = reduce_path(&fam(Family::Path(2)), (0, 1, 2)).unwrap();
        assert!(is_isomorphic(&r, &fam(Family::Path(1))));
        assert_eq!(map, vec![Some(0), None, Some(1)]);
        let (r, _) = reduce_path(&fam(Family::Cycle(4)), (0, 1, 2)).unwrap();
        assert!(is_isomorphic(&r, &fam(Family::Cycle(3))));
        // Path inside a triangle.
        let err = reduce_path(&fam(Family::Cycle(3)), (0, 1, 2)).unwrap_err();
        assert!(matches!(err, Error::Precondition(m) if m.contains("triangle")));
        // Middle vertex of degree three.
        let err = reduce_path(&fam(Family::CompleteBipartite(2, 3)), (2, 0, 3)).unwrap_err();
        assert!(matches!(err, Error::Precondition(m) if m.contains("degree")));
    }
}
