//! Canonical forms for small graphs.
//!
//! Vertices are first split into cells by colour refinement, which is
//! isomorphism-invariant. The canonical form is then the lexicographically
//! largest lower-triangular adjacency string over every vertex ordering that
//! lists the cells in order, found by exhaustive search with prefix pruning.
//! Intended for graphs of at most ten or so vertices.

use std::collections::BTreeMap;

use super::Graph;

/// Default vertex cap for isomorphism checks.
pub const ISO_CAP_DEFAULT: usize = 10;

/// An isomorphism invariant that determines the graph up to isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    bits: Vec<bool>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// The canonical representative.
    pub fn to_graph(&self) -> Graph {
        let mut edges = Vec::new();
        let mut k = 0;
        for i in 1..self.n {
            for j in 0..i {
                if self.bits[k] {
                    edges.push((j, i));
                }
                k += 1;
            }
        }
        Graph::from_edges_lossy(self.n, edges)
    }
}

/// Ordered cells from colour refinement.
fn refined_cells(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut color: Vec<usize> = vec![0; n];
    let mut classes = 1;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).map(|w| color[w]).collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let mut ids = BTreeMap::new();
        for s in &sigs {
            let next = ids.len();
            ids.entry(s.clone()).or_insert(next);
        }
        // BTreeMap iteration gives an invariant order of signatures.
        let rank: BTreeMap<&(usize, Vec<usize>), usize> =
            ids.keys().enumerate().map(|(i, k)| (k, i)).collect();
        color = sigs.iter().map(|s| rank[s]).collect();
        if ids.len() == classes {
            break;
        }
        classes = ids.len();
    }
    let mut cells = vec![Vec::new(); classes];
    for v in 0..n {
        cells[color[v]].push(v);
    }
    cells.retain(|c| !c.is_empty());
    cells
}

struct Canon<'a> {
    g: &'a Graph,
    slots: Vec<usize>,
    cell: Vec<usize>,
    best: Option<Vec<bool>>,
}

impl Canon<'_> {
    fn place(&mut self, order: &mut Vec<usize>, used: &mut [bool], bits: &mut Vec<bool>) {
        let pos = order.len();
        if pos == self.slots.len() {
            if self.best.as_ref().is_none_or(|b| bits.as_slice() > b.as_slice()) {
                self.best = Some(bits.clone());
            }
            return;
        }
        let slot = self.slots[pos];
        let candidates: Vec<usize> = (0..used.len())
            .filter(|&v| !used[v] && self.cell[v] == slot)
            .collect();
        for v in candidates {
            let start = bits.len();
            bits.extend(order.iter().map(|&u| self.g.has_edge(u, v)));
            let behind = self
                .best
                .as_ref()
                .is_some_and(|b| bits.as_slice() < &b[..bits.len()]);
            if !behind {
                used[v] = true;
                order.push(v);
                self.place(order, used, bits);
                order.pop();
                used[v] = false;
            }
            bits.truncate(start);
        }
    }
}

/// Canonical form of `g`. Runtime grows with the product of the factorials of
/// the refinement cell sizes.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let cells = refined_cells(g);
    let mut slots = Vec::with_capacity(g.n());
    let mut cell = vec![0; g.n()];
    for (i, c) in cells.iter().enumerate() {
        for &v in c {
            slots.push(i);
            cell[v] = i;
        }
    }
    let mut canon = Canon {
        g,
        slots,
        cell,
        best: None,
    };
    let mut used = vec![false; g.n()];
    canon.place(&mut Vec::new(), &mut used, &mut Vec::new());
    CanonicalForm {
        n: g.n(),
        bits: canon.best.unwrap_or_default(),
    }
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n()
        && g.edge_count() == h.edge_count()
        && degree_sequence(g) == degree_sequence(h)
        && canonical_form(g) == canonical_form(h)
}

fn degree_sequence(g: &Graph) -> Vec<usize> {
    let mut d: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    d.sort_unstable();
    d
}
