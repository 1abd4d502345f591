//! Exact maximum clique.
//!
//! Bron-Kerbosch with Tomita pivoting over word bitsets, pruned whenever the
//! current clique plus every remaining candidate cannot beat the best clique
//! found so far. Vertices are visited in a fixed order, so the returned clique
//! is deterministic.

use super::Graph;

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Self {
        let mut b = Bits::new(n);
        for v in 0..n {
            b.insert(v);
        }
        b
    }

    fn insert(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }

    fn remove(&mut self, v: usize) {
        self.0[v / 64] &= !(1 << (v % 64));
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn and_not(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & !b).collect())
    }

    fn or(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a | b).collect())
    }

    fn and_count(&self, other: &Bits) -> usize {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + t)
                }
            })
        })
    }
}

struct Search {
    adj: Vec<Bits>,
    best: Vec<usize>,
}

impl Search {
    // `excl` only steers pivot choice; non-maximal cliques are never larger
    // than the maximal clique that contains them.
    fn expand(&mut self, clique: &mut Vec<usize>, cand: Bits, excl: Bits) {
        if cand.is_empty() {
            if clique.len() > self.best.len() {
                self.best = clique.clone();
            }
            return;
        }
        if clique.len() + cand.count() <= self.best.len() {
            return;
        }
        // Pivot maximizing |cand ∩ N(pivot)|; ties go to the smallest vertex.
        let pool = cand.or(&excl);
        let pivot = pool
            .iter()
            .max_by_key(|&u| (cand.and_count(&self.adj[u]), std::cmp::Reverse(u)))
            .expect("pool is non-empty");
        let branch = cand.and_not(&self.adj[pivot]);
        let mut cand = cand;
        let mut excl = excl;
        for v in branch.iter() {
            if clique.len() + cand.count() <= self.best.len() {
                return;
            }
            clique.push(v);
            let nc = cand.and(&self.adj[v]);
            let ne = excl.and(&self.adj[v]);
            self.expand(clique, nc, ne);
            clique.pop();
            cand.remove(v);
            excl.insert(v);
        }
    }
}

/// A maximum clique, as an ascending vertex list.
pub fn maximum_clique(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let adj = (0..n)
        .map(|v| {
            let mut b = Bits::new(n);
            for w in g.neighbors(v) {
                b.insert(w);
            }
            b
        })
        .collect();
    let mut search = Search {
        adj,
        best: vec![0],
    };
    search.expand(&mut Vec::new(), Bits::full(n), Bits::new(n));
    let mut best = search.best;
    best.sort_unstable();
    best
}

/// `ω(G)`, the order of a largest clique. Zero only for the empty graph.
pub fn clique_number(g: &Graph) -> usize {
    maximum_clique(g).len()
}

/// `ω(G)` by testing every vertex subset, largest first. Exponential; meant
/// as a reference for small graphs (`n ≤ 20`).
pub fn clique_number_exhaustive(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 20, "exhaustive clique enumeration is limited to 20 vertices");
    let masks: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).fold(0u32, |m, w| m | 1 << w))
        .collect();
    let mut best = 0;
    for subset in 0u32..(1u32 << n) {
        let size = subset.count_ones() as usize;
        if size <= best {
            continue;
        }
        let is_clique = (0..n)
            .filter(|&v| subset >> v & 1 == 1)
            .all(|v| subset & !(1 << v) & !masks[v] == 0);
        if is_clique {
            best = size;
        }
    }
    best
}
