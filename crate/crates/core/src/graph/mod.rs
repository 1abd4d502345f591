//! Simple undirected graphs on vertices `0..n`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub mod clique;
pub mod enumerate;
pub mod family;
pub mod iso;
pub mod ops;

pub use clique::{clique_number, clique_number_exhaustive, maximum_clique};
pub use family::{Family, FamilySpec, SunHull};
pub use iso::{canonical_form, is_isomorphic};

/// An unordered edge, always stored with the smaller endpoint first.
pub type Edge = (usize, usize);

/// Normalizes an unordered pair.
pub fn edge(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// An immutable simple graph.
///
/// Adjacency lists are derived from the edge set at construction. Optional
/// role tags ("hub", "rim", "pendant", ...) annotate vertices produced by the
/// family generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    n: usize,
    edges: BTreeSet<Edge>,
    adj: Vec<BTreeSet<usize>>,
    roles: BTreeMap<usize, String>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default)]
    roles: BTreeMap<usize, String>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Self> {
        let g = Graph::from_edges(j.n, j.edges.iter().map(|e| (e[0], e[1])))?;
        g.with_roles(j.roles)
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson {
            n: g.n,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
            roles: g.roles,
        }
    }
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and out-of-range
    /// endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            if !set.insert(edge(u, v)) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(Self::from_edge_set(n, set))
    }

    /// Like [`Graph::from_edges`] but silently merges duplicates and drops loops.
    pub(crate) fn from_edges_lossy<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let set = edges
            .into_iter()
            .filter(|&(u, v)| u != v)
            .map(|(u, v)| edge(u, v))
            .collect();
        Self::from_edge_set(n, set)
    }

    fn from_edge_set(n: usize, edges: BTreeSet<Edge>) -> Self {
        let mut adj = vec![BTreeSet::new(); n];
        for &(u, v) in &edges {
            debug_assert!(u < v && v < n);
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Graph {
            n,
            edges,
            adj,
            roles: BTreeMap::new(),
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_edge_set(n, BTreeSet::new())
    }

    /// Attaches role tags; keys must be vertices of the graph.
    pub fn with_roles(mut self, roles: BTreeMap<usize, String>) -> Result<Self> {
        if let Some(&v) = roles.keys().find(|&&v| v >= self.n) {
            return Err(Error::InvalidGraph(format!("role tag on missing vertex {v}")));
        }
        self.roles = roles;
        Ok(self)
    }

    pub(crate) fn set_roles(&mut self, roles: BTreeMap<usize, String>) {
        self.roles = roles;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_set(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.contains(&edge(u, v))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn neighbor_set(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn roles(&self) -> &BTreeMap<usize, String> {
        &self.roles
    }

    pub fn role(&self, v: usize) -> Option<&str> {
        self.roles.get(&v).map(String::as_str)
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.adj[v].is_empty()).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(v))
        }
    }

    pub fn check_edge(&self, u: usize, v: usize) -> Result<Edge> {
        if self.has_edge(u, v) {
            Ok(edge(u, v))
        } else {
            Err(Error::NotAnEdge(edge(u, v)))
        }
    }

    /// Breadth-first distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.distances_from(0).iter().all(Option::is_some)
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn component_vertices(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([s]);
            seen[s] = true;
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Two-colouring by breadth-first search, if one exists.
    pub fn bipartition(&self) -> Option<Bipartition> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let c = color[u].unwrap();
                for &w in &self.adj[u] {
                    match color[w] {
                        None => {
                            color[w] = Some(!c);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == c => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let side: Vec<bool> = color.into_iter().map(Option::unwrap).collect();
        Some(Bipartition { side })
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// The subgraph on `vertices` (re-indexed in the given order) keeping only
    /// the listed `edges`, which must join kept vertices. Returns the subgraph
    /// and, for each new vertex, the original vertex it came from.
    pub fn subgraph(&self, vertices: &[usize], edges: &[Edge]) -> Result<(Graph, Vec<usize>)> {
        let mut index = BTreeMap::new();
        for (i, &v) in vertices.iter().enumerate() {
            self.check_vertex(v)?;
            if index.insert(v, i).is_some() {
                return Err(Error::InvalidGraph(format!("vertex {v} listed twice")));
            }
        }
        let mut new_edges = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            self.check_edge(u, v)?;
            match (index.get(&u), index.get(&v)) {
                (Some(&a), Some(&b)) => new_edges.push((a, b)),
                _ => {
                    return Err(Error::InvalidGraph(format!(
                        "edge ({u}, {v}) leaves the chosen vertex set"
                    )))
                }
            }
        }
        let g = Graph::from_edges(vertices.len(), new_edges)?;
        Ok((g, vertices.to_vec()))
    }

    /// Subgraph induced by `vertices`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let keep: BTreeSet<usize> = vertices.iter().copied().collect();
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .copied()
            .filter(|(u, v)| keep.contains(u) && keep.contains(v))
            .collect();
        self.subgraph(vertices, &edges)
    }
}

/// A proper two-colouring; `side[v]` is `false` for the left class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub side: Vec<bool>,
}

impl Bipartition {
    pub fn left(&self) -> Vec<usize> {
        (0..self.side.len()).filter(|&v| !self.side[v]).collect()
    }

    pub fn right(&self) -> Vec<usize> {
        (0..self.side.len()).filter(|&v| self.side[v]).collect()
    }

    pub fn sizes(&self) -> (usize, usize) {
        let right = self.side.iter().filter(|&&s| s).count();
        (self.side.len() - right, right)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_duplicates_and_range() {
        assert!(Graph::from_edges(3, [(0, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn json_shape() {
        let mut roles = BTreeMap::new();
        roles.insert(0, "hub".to_string());
        let g = Graph::from_edges(3, [(2, 1), (0, 1)])
            .unwrap()
            .with_roles(roles)
            .unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"n":3,"edges":[[0,1],[1,2]],"roles":{"0":"hub"}}"#);
        let back: Graph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[0,2]]}"#).is_err());
    }

    #[test]
    fn bipartition_of_cycles() {
        let c6 = Family::Cycle(6).generate().unwrap();
        assert_eq!(c6.bipartition().unwrap().sizes(), (3, 3));
        assert!(Family::Cycle(5).generate().unwrap().bipartition().is_none());
        // Helm graphs contain hub-rim triangles.
        assert!(Family::Helm(3).generate().unwrap().bipartition().is_none());
    }

    #[test]
    fn components_are_ordered() {
        let g = Graph::from_edges(5, [(3, 4), (0, 2)]).unwrap();
        assert_eq!(g.component_vertices(), vec![vec![0, 2], vec![1], vec![3, 4]]);
        assert!(!g.is_connected());
    }
}
