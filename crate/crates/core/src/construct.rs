//! Constructive labelers and a bounded exhaustive search.
//!
//! Every constructor places vertex `i`'s label at offset `B^i`, where `B` is
//! the smallest power of two (at least 2) exceeding twice the largest element
//! of any untranslated label. Distinct powers of `B` have distinct pairwise
//! sums, so the smallest element of an edge label identifies the edge; vertex
//! labels are likewise identified by their smallest element.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::labeling::Labeling;
use crate::sumset::{difference_set, sumset, translate, IntSet};

/// Default number of candidate labelings [`bounded_search`] may visit.
pub const SEARCH_BUDGET_DEFAULT: u128 = 10_000_000;

fn offset_base(max_intra: u64) -> Result<u64> {
    let twice = max_intra
        .checked_mul(2)
        .ok_or_else(|| Error::Overflow(format!("offset base for element {max_intra}")))?;
    let base = twice
        .checked_add(1)
        .and_then(u64::checked_next_power_of_two)
        .ok_or_else(|| Error::Overflow(format!("offset base for element {max_intra}")))?;
    Ok(base.max(2))
}

/// Translates shape `i` by `B^i`.
fn place(shapes: Vec<IntSet>) -> Result<Labeling> {
    let max_intra = shapes.iter().filter_map(IntSet::max).max().unwrap_or(0);
    let base = offset_base(max_intra)?;
    let n = shapes.len();
    let labels = shapes
        .into_iter()
        .enumerate()
        .map(|(i, shape)| {
            let offset = u32::try_from(i)
                .ok()
                .and_then(|e| base.checked_pow(e))
                .ok_or_else(|| {
                    Error::Overflow(format!(
                        "offset {base}^{i} does not fit in 64 bits; use a graph with fewer than {n} vertices"
                    ))
                })?;
            // Edge labels reach twice the largest vertex element.
            offset
                .checked_add(max_intra)
                .and_then(|top| top.checked_mul(2))
                .ok_or_else(|| Error::Overflow(format!("labels at offset {base}^{i} overflow 64 bits")))?;
            translate(&shape, offset)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Labeling::from_vec(labels))
}

/// A strong IASI of any graph: vertex `i` gets `{0, i + 1}` translated by
/// `B^i`, so the difference sets `{i + 1}` are pairwise disjoint.
pub fn construct_strong(g: &Graph) -> Result<Labeling> {
    let shapes = (0..g.n())
        .map(|i| IntSet::from([0, i as u64 + 1]))
        .collect();
    place(shapes)
}

/// A strongly `k`-uniform IASI of a bipartite graph with `k = a·b`.
///
/// Left vertices get translates of `{0, 1, ..., a-1}`, right vertices
/// translates of `{0, a, ..., (b-1)a}`. Their difference sets lie in
/// `1..a` and in the multiples of `a` respectively, so every edge label has
/// exactly `a·b` elements.
pub fn construct_strongly_k_uniform_bipartite(
    g: &Graph,
    k: usize,
    divisors: (usize, usize),
) -> Result<Labeling> {
    let (a, b) = divisors;
    if k == 0 || a == 0 || b == 0 {
        return Err(Error::Parameter("k and its divisors must be positive".into()));
    }
    if a.checked_mul(b) != Some(k) {
        return Err(Error::Parameter(format!("{a}·{b} is not {k}")));
    }
    let parts = g
        .bipartition()
        .ok_or_else(|| Error::Precondition("graph is not bipartite".into()))?;
    let left = IntSet::progression(0, 1, a)?;
    let right = IntSet::progression(0, a as u64, b)?;
    let shapes = parts
        .side
        .iter()
        .map(|&is_right| if is_right { right.clone() } else { left.clone() })
        .collect();
    place(shapes)
}

/// Common differences `d_0 < d_1 < ...` such that the difference sets
/// `{d, 2d, ..., (l-1)d}` are pairwise disjoint, chosen greedily.
fn disjoint_progression_steps(count: usize, l: usize) -> Result<Vec<u64>> {
    let mut taken = BTreeSet::new();
    let mut steps = Vec::with_capacity(count);
    let mut d: u64 = 0;
    while steps.len() < count {
        d += 1;
        let multiples: Vec<u64> = (1..l as u64)
            .map(|j| j.checked_mul(d).ok_or_else(|| Error::Overflow("progression step".into())))
            .collect::<Result<_>>()?;
        if multiples.iter().all(|m| !taken.contains(m)) {
            taken.extend(multiples);
            steps.push(d);
        }
    }
    Ok(steps)
}

/// Labels for `n` vertices, each an `l`-term progression, with pairwise
/// disjoint difference sets. On any graph with these vertices the labeling is
/// strong and `(l², l)`-completely uniform.
pub fn completely_uniform_labels(n: usize, l: usize) -> Result<Labeling> {
    if l == 0 {
        return Err(Error::Parameter("label cardinality l must be positive".into()));
    }
    let steps = disjoint_progression_steps(n, l)?;
    let shapes = steps
        .into_iter()
        .map(|d| IntSet::progression(0, d, l))
        .collect::<Result<Vec<_>>>()?;
    place(shapes)
}

/// A `(l², l)`-completely uniform strong IASI of `K_n`.
pub fn construct_completely_uniform_complete(n: usize, l: usize) -> Result<Labeling> {
    if n == 0 {
        return Err(Error::Parameter("complete graph order n must be positive".into()));
    }
    completely_uniform_labels(n, l)
}

/// Property a searched labeling must have, on top of being an IASI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "predicate", content = "k")]
pub enum Predicate {
    Strong,
    StronglyUniform(usize),
}

/// Finite search space: labels are subsets of `{0..=max_element}` with at
/// most `max_cardinality` elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub max_element: u64,
    pub max_cardinality: usize,
}

impl SearchBounds {
    pub fn new(max_element: u64, max_cardinality: usize) -> Result<Self> {
        let b = SearchBounds {
            max_element,
            max_cardinality,
        };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_cardinality == 0 {
            return Err(Error::Parameter("max_cardinality must be positive".into()));
        }
        if self.max_cardinality as u128 > self.max_element as u128 + 1 {
            return Err(Error::Parameter(format!(
                "max_cardinality {} exceeds the ground-set size {}",
                self.max_cardinality,
                self.max_element as u128 + 1
            )));
        }
        Ok(())
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

fn allowed_cardinality(predicate: Predicate, c: usize) -> bool {
    match predicate {
        Predicate::Strong => true,
        Predicate::StronglyUniform(k) => c <= k && k % c == 0,
    }
}

/// Number of labelings [`bounded_search`] would consider.
pub fn search_space_size(g: &Graph, predicate: Predicate, bounds: &SearchBounds) -> u128 {
    let ground = bounds.max_element as u128 + 1;
    let per_vertex: u128 = (1..=bounds.max_cardinality)
        .filter(|&c| allowed_cardinality(predicate, c))
        .map(|c| binomial(ground, c as u128))
        .fold(0u128, u128::saturating_add);
    (0..g.n()).fold(1u128, |acc, _| acc.saturating_mul(per_vertex))
}

/// Subsets of `0..=max` with exactly `c` elements, lexicographically.
fn subsets_of_size(max: u64, c: usize, out: &mut Vec<IntSet>) {
    fn rec(start: u64, max: u64, c: usize, cur: &mut Vec<u64>, out: &mut Vec<IntSet>) {
        if cur.len() == c {
            out.push(IntSet::from_sorted(cur.clone()).expect("ascending"));
            return;
        }
        let need = (c - cur.len()) as u64;
        let mut x = start;
        while x + need - 1 <= max {
            cur.push(x);
            rec(x + 1, max, c, cur, out);
            cur.pop();
            x += 1;
        }
    }
    rec(0, max, c, &mut Vec::with_capacity(c), out);
}

struct Candidate {
    set: IntSet,
    diffs: IntSet,
}

struct SearchState<'a> {
    g: &'a Graph,
    predicate: Predicate,
    candidates: Vec<Candidate>,
    chosen: Vec<usize>,
    used: BTreeSet<usize>,
    edge_labels: BTreeSet<IntSet>,
}

impl SearchState<'_> {
    fn run(&mut self) -> Result<bool> {
        let v = self.chosen.len();
        if v == self.g.n() {
            return Ok(true);
        }
        let earlier: Vec<usize> = self.g.neighbors(v).filter(|&u| u < v).collect();
        for ci in 0..self.candidates.len() {
            if self.used.contains(&ci) {
                continue;
            }
            let cand = &self.candidates[ci];
            let mut ok = true;
            let mut added = Vec::with_capacity(earlier.len());
            for &u in &earlier {
                let other = &self.candidates[self.chosen[u]];
                if let Predicate::StronglyUniform(k) = self.predicate {
                    if cand.set.len() * other.set.len() != k {
                        ok = false;
                        break;
                    }
                }
                if !cand.diffs.is_disjoint(&other.diffs) {
                    ok = false;
                    break;
                }
                let s = sumset(&cand.set, &other.set)?;
                if self.edge_labels.contains(&s) || added.contains(&s) {
                    ok = false;
                    break;
                }
                added.push(s);
            }
            if !ok {
                continue;
            }
            for s in &added {
                self.edge_labels.insert(s.clone());
            }
            self.chosen.push(ci);
            self.used.insert(ci);
            if self.run()? {
                return Ok(true);
            }
            self.used.remove(&ci);
            self.chosen.pop();
            for s in &added {
                self.edge_labels.remove(s);
            }
        }
        Ok(false)
    }
}

/// Lexicographically first labeling within `bounds` that is an IASI and
/// satisfies `predicate`, or `None` if no labeling within the bounds does.
///
/// Vertices are labeled in index order; candidate labels are ordered by
/// cardinality, then elementwise. Refuses with [`Error::BudgetExceeded`]
/// when the search space exceeds `budget`.
pub fn bounded_search(
    g: &Graph,
    predicate: Predicate,
    bounds: &SearchBounds,
    budget: u128,
) -> Result<Option<Labeling>> {
    bounds.validate()?;
    if let Predicate::StronglyUniform(0) = predicate {
        return Err(Error::Parameter("k must be positive".into()));
    }
    let size = search_space_size(g, predicate, bounds);
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let mut sets = Vec::new();
    for c in (1..=bounds.max_cardinality).filter(|&c| allowed_cardinality(predicate, c)) {
        subsets_of_size(bounds.max_element, c, &mut sets);
    }
    let candidates = sets
        .into_iter()
        .map(|set| {
            let diffs = difference_set(&set)?;
            Ok(Candidate { set, diffs })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut state = SearchState {
        g,
        predicate,
        candidates,
        chosen: Vec::new(),
        used: BTreeSet::new(),
        edge_labels: BTreeSet::new(),
    };
    if state.run()? {
        let labels = state
            .chosen
            .iter()
            .map(|&ci| state.candidates[ci].set.clone())
            .collect();
        Ok(Some(Labeling::from_vec(labels)))
    } else {
        Ok(None)
    }
}

/// Why [`decide_strongly_k_uniform`] reached its verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    /// Every component is bipartite; any `k` works.
    Bipartite,
    /// Some component has an odd cycle and `k` is not a perfect square.
    NonSquareOnNonBipartite,
    /// Some component has an odd cycle; `k = l²` with an `l`-uniform vertex set.
    SquareCompletelyUniform,
}

impl Reason {
    pub fn describe(&self) -> &'static str {
        match self {
            Reason::Bipartite => "every component is bipartite, so a strongly k-uniform IASI exists for every k",
            Reason::NonSquareOnNonBipartite => "k is not a perfect square and the graph has a non-bipartite component",
            Reason::SquareCompletelyUniform => "k is a perfect square; the witness is (k, sqrt k)-completely uniform",
        }
    }
}

/// Component structure measured against the component-count bounds for
/// strongly `k`-uniform graphs. The counts are reported; the bounds are not
/// enforced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub components: usize,
    pub bipartite_components: usize,
    pub non_bipartite_components: usize,
    pub clique_components: usize,
    pub divisor_count: usize,
    pub k_is_square: bool,
    /// Non-square `k`: at most `τ(k)/2` bipartite components. Square `k`: at
    /// most `(τ(k)+1)/2` components, of which at most `(τ(k)-1)/2` bipartite.
    pub divisor_component_bound_holds: bool,
    /// At most one component is a clique.
    pub single_clique_bound_holds: bool,
    /// A clique component forces `k` to be a perfect square.
    pub clique_square_bound_holds: bool,
}

/// Decision record for strongly `k`-uniform admissibility.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub admits: bool,
    pub reason: String,
    pub witness: Option<Labeling>,
    pub bounds: Option<SearchBounds>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub census: Option<Census>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

pub fn integer_sqrt(k: usize) -> Option<usize> {
    let r = (k as f64).sqrt().round() as usize;
    (r.saturating_sub(1)..=r + 1).find(|&x| x * x == k)
}

pub fn divisor_count(k: usize) -> usize {
    (1..=k).filter(|d| k.is_multiple_of(*d)).count()
}

/// The divisor pair `(a, k/a)` with `a` the largest divisor not above `√k`.
pub fn balanced_divisors(k: usize) -> (usize, usize) {
    let a = (1..=k).take_while(|a| a * a <= k).filter(|a| k.is_multiple_of(*a)).last().unwrap_or(1);
    (a, k / a)
}

pub fn census(g: &Graph, k: usize) -> Census {
    let comps = crate::graph::ops::components(g);
    let bipartite = comps.iter().filter(|(c, _)| c.is_bipartite()).count();
    let cliques = comps.iter().filter(|(c, _)| c.is_complete()).count();
    let tau = divisor_count(k);
    let square = integer_sqrt(k).is_some();
    let bound = if square {
        comps.len() <= tau.div_ceil(2) && bipartite <= (tau - 1) / 2
    } else {
        bipartite <= tau / 2
    };
    Census {
        components: comps.len(),
        bipartite_components: bipartite,
        non_bipartite_components: comps.len() - bipartite,
        clique_components: cliques,
        divisor_count: tau,
        k_is_square: square,
        divisor_component_bound_holds: bound,
        single_clique_bound_holds: cliques <= 1,
        clique_square_bound_holds: cliques == 0 || square,
    }
}

/// Whether `g` admits a strongly `k`-uniform IASI, with a witness when it does.
///
/// Bipartite graphs always admit one. Otherwise an odd cycle forces equal
/// vertex cardinalities `l` with `l² = k`, so `k` must be a perfect square,
/// and then the progression labeling of [`completely_uniform_labels`] works.
pub fn decide_strongly_k_uniform(g: &Graph, k: usize) -> Result<Decision> {
    if k == 0 {
        return Err(Error::Parameter("k must be positive".into()));
    }
    let census = census(g, k);
    let (admits, reason, built) = if census.non_bipartite_components == 0 {
        let built = construct_strongly_k_uniform_bipartite(g, k, balanced_divisors(k));
        (true, Reason::Bipartite, Some(built))
    } else if let Some(l) = integer_sqrt(k) {
        (true, Reason::SquareCompletelyUniform, Some(completely_uniform_labels(g.n(), l)))
    } else {
        (false, Reason::NonSquareOnNonBipartite, None)
    };
    let (witness, note) = match built {
        None => (None, None),
        Some(Ok(f)) => (Some(f), None),
        Some(Err(e)) if e.is_limit() => (None, Some(format!("witness not materialized: {e}"))),
        Some(Err(e)) => return Err(e),
    };
    Ok(Decision {
        admits,
        reason: reason_key(reason).to_string(),
        witness,
        bounds: None,
        census: Some(census),
        note,
    })
}

fn reason_key(r: Reason) -> &'static str {
    match r {
        Reason::Bipartite => "bipartite",
        Reason::NonSquareOnNonBipartite => "non_square_on_non_bipartite",
        Reason::SquareCompletelyUniform => "square_completely_uniform",
    }
}

/// Wraps a [`bounded_search`] outcome in a decision record. Absence is only
/// ever claimed relative to the bounds.
pub fn search_decision(
    g: &Graph,
    predicate: Predicate,
    bounds: SearchBounds,
    budget: u128,
) -> Result<Decision> {
    let found = bounded_search(g, predicate, &bounds, budget)?;
    let reason = match &found {
        Some(_) => "witness found within bounds",
        None => "absent within bounds",
    };
    Ok(Decision {
        admits: found.is_some(),
        reason: reason.to_string(),
        witness: found,
        bounds: Some(bounds),
        census: None,
        note: None,
    })
}

/// The sequence of pairwise sums of the offsets is injective; exposed for
/// tests of the offset scheme.
pub fn offsets_for(max_intra: u64, n: usize) -> Result<Vec<u64>> {
    let base = offset_base(max_intra)?;
    (0..n)
        .map(|i| {
            base.checked_pow(i as u32)
                .ok_or_else(|| Error::Overflow(format!("{base}^{i}")))
        })
        .collect()
}
