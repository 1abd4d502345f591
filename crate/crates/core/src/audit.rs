//! The acceptance suite as a library: one check per criterion, plus a
//! discrepancy ledger collecting every place the closed-form results and the
//! oracles part ways.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::construct::{
    self, bounded_search, construct_strong, construct_strongly_k_uniform_bipartite, Predicate,
    SearchBounds, SEARCH_BUDGET_DEFAULT,
};
use crate::error::Result;
use crate::graph::{self, enumerate, ops, Edge, Family, Graph};
use crate::labeling::{self, verify, Labeling};
use crate::nourish::{self, Comparison};
use crate::sumset::{difference_set, sumset, IntSet};

/// Seed shared by the randomized criteria.
pub const SEED: u64 = 0x1a51_5eed;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "criterion {}: {} [{}] {} ({} ms)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail,
            self.elapsed_ms
        )
    }
}

fn timed(id: u8, name: &str, limit: Option<Duration>, body: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (mut passed, mut detail) = body();
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        if elapsed > limit {
            passed = false;
            detail = format!("{detail}; exceeded the {} s limit", limit.as_secs());
        }
    }
    Outcome {
        id,
        name: name.to_string(),
        passed,
        detail,
        elapsed_ms: elapsed.as_millis(),
    }
}

/// Non-empty subsets of `{0..=max}` with at most `c` elements.
pub fn small_subsets(max: u64, c: usize) -> Vec<IntSet> {
    (1u32..1 << (max + 1))
        .filter(|m| m.count_ones() as usize <= c)
        .map(|m| IntSet::new((0..=max).filter(|&x| m >> x & 1 == 1)))
        .collect()
}

pub fn criterion_1() -> Outcome {
    timed(1, "sumset equivalence", Some(Duration::from_secs(60)), || {
        let sets = small_subsets(7, 4);
        let diffs: Vec<IntSet> = sets.iter().map(|s| difference_set(s).unwrap()).collect();
        let mut exceptions = 0usize;
        let mut pairs = 0usize;
        for (a, da) in sets.iter().zip(&diffs) {
            for (b, db) in sets.iter().zip(&diffs) {
                pairs += 1;
                let full = sumset(a, b).unwrap().len() == a.len() * b.len();
                if full != da.is_disjoint(db) {
                    exceptions += 1;
                }
            }
        }
        (exceptions == 0, format!("{pairs} ordered pairs, {exceptions} exceptions"))
    })
}

/// Connected graphs on at most seven vertices.
pub fn corpus() -> Vec<Graph> {
    enumerate::connected_graphs(7)
}

pub fn criterion_2(corpus: &[Graph]) -> Outcome {
    timed(2, "universal strong construction", Some(Duration::from_secs(300)), || {
        let on_seven = corpus.iter().filter(|g| g.n() == 7).count();
        let mut failures = 0;
        for g in corpus {
            let ok = construct_strong(g)
                .and_then(|f| verify(g, &f))
                .map(|r| r.is_strong && r.is_set_indexer)
                .unwrap_or(false);
            if !ok {
                failures += 1;
            }
        }
        (
            failures == 0 && on_seven == 853,
            format!(
                "{} connected graphs ({on_seven} on 7 vertices), {failures} failures",
                corpus.len()
            ),
        )
    })
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid edges")
}

/// Random labels, kept only when they preserve a strong IASI, vertex by vertex.
pub fn random_strong_labeling(rng: &mut impl Rng, g: &Graph) -> Labeling {
    let mut labels: Vec<IntSet> = Vec::with_capacity(g.n());
    let mut edge_labels = std::collections::BTreeSet::new();
    let mut ceiling = 16u64;
    for v in 0..g.n() {
        loop {
            let size = rng.gen_range(1..=4);
            let cand = IntSet::new((0..size).map(|_| rng.gen_range(0..ceiling)));
            let dc = difference_set(&cand).unwrap();
            if labels.contains(&cand) {
                ceiling += 4;
                continue;
            }
            let mut new_edges = Vec::new();
            let ok = g.neighbors(v).filter(|&u| u < v).all(|u| {
                let disjoint = difference_set(&labels[u]).unwrap().is_disjoint(&dc);
                let s = sumset(&labels[u], &cand).unwrap();
                let fresh = !edge_labels.contains(&s) && !new_edges.contains(&s);
                new_edges.push(s);
                disjoint && fresh
            });
            if ok {
                edge_labels.extend(new_edges);
                labels.push(cand);
                break;
            }
            ceiling += 4;
        }
    }
    Labeling::from_vec(labels)
}

pub fn criterion_3(seed: u64) -> Outcome {
    timed(3, "subgraph heredity", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut exceptions = 0;
        for _ in 0..100 {
            let n = rng.gen_range(2..=9);
            let p = rng.gen_range(0.2..0.9);
            let g = random_graph(&mut rng, n, p);
            let f = random_strong_labeling(&mut rng, &g);
            let mut vertices: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.7)).collect();
            if vertices.is_empty() {
                vertices.push(rng.gen_range(0..n));
            }
            let edges: Vec<Edge> = g
                .edges()
                .filter(|(u, v)| vertices.contains(u) && vertices.contains(v))
                .filter(|_| rng.gen_bool(0.7))
                .collect();
            let (h, origin) = g.subgraph(&vertices, &edges).expect("subgraph");
            let base_strong = verify(&g, &f).map(|r| r.is_strong).unwrap_or(false);
            let sub_strong = verify(&h, &f.restrict(&origin)).map(|r| r.is_strong).unwrap_or(false);
            if !(base_strong && sub_strong) {
                exceptions += 1;
            }
        }
        (exceptions == 0, format!("100 random triples, {exceptions} exceptions"))
    })
}

pub fn criterion_4(corpus: &[Graph]) -> Outcome {
    timed(4, "never-strong transformations", None, || {
        let (mut cases, mut strong) = (0usize, 0usize);
        let mut tally = |r: Result<(Graph, Labeling)>| {
            let (h, fh) = r.expect("induced labeling");
            cases += 1;
            if verify(&h, &fh).expect("total labeling").is_strong {
                strong += 1;
            }
        };
        for g in corpus.iter().filter(|g| g.edge_count() > 0) {
            let f = construct_strong(g).expect("strong labeling");
            let line_has_edge = (0..g.n()).any(|v| g.degree(v) >= 2);
            if line_has_edge {
                tally(labeling::induce_on_line_graph(g, &f));
            }
            tally(labeling::induce_on_total_graph(g, &f));
            for e in g.edges().collect::<Vec<_>>() {
                tally(labeling::induce_on_subdivision(g, &f, e));
            }
        }
        (
            strong == 0,
            format!("{cases} induced labelings, {strong} reported strong"),
        )
    })
}

/// Trees, even cycles and complete bipartite graphs on at most eight vertices.
pub fn bipartite_corpus() -> Vec<Graph> {
    let mut out: Vec<Graph> = (2..=8).flat_map(enumerate::trees).collect();
    out.extend([4, 6, 8].map(|n| Family::Cycle(n).generate().unwrap()));
    for m in 1..=7 {
        for n in m..=8 - m {
            out.push(Family::CompleteBipartite(m, n).generate().unwrap());
        }
    }
    out
}

pub fn criterion_5() -> Outcome {
    timed(5, "strongly uniform admissibility", Some(Duration::from_secs(600)), || {
        let graphs = bipartite_corpus();
        let (mut cases, mut failures) = (0usize, 0usize);
        for k in 1..=12usize {
            for a in (1..=k).filter(|a| k % a == 0) {
                for g in &graphs {
                    cases += 1;
                    let ok = construct_strongly_k_uniform_bipartite(g, k, (a, k / a))
                        .and_then(|f| verify(g, &f))
                        .map(|r| r.is_strongly_uniform(k))
                        .unwrap_or(false);
                    if !ok {
                        failures += 1;
                    }
                }
            }
        }
        let c3 = Family::Cycle(3).generate().unwrap();
        let bounds = SearchBounds::new(8, 2).unwrap();
        let absent = bounded_search(&c3, Predicate::StronglyUniform(2), &bounds, SEARCH_BUDGET_DEFAULT)
            .map(|w| w.is_none())
            .unwrap_or(false);
        let witness = bounded_search(&c3, Predicate::StronglyUniform(4), &bounds, SEARCH_BUDGET_DEFAULT)
            .ok()
            .flatten();
        let witness_ok = witness
            .as_ref()
            .is_some_and(|f| verify(&c3, f).map(|r| r.is_strongly_uniform(4)).unwrap_or(false));
        (
            failures == 0 && absent && witness_ok,
            format!(
                "{cases} constructions on {} graphs, {failures} failures; C3 2-uniform absent within bounds: {absent}; C3 4-uniform witness: {}",
                graphs.len(),
                witness.map(|f| f.to_vec().iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")).unwrap_or_else(|| "none".into())
            ),
        )
    })
}

pub struct NourishAudit {
    pub verified: Comparison,
    pub diagnostic: Comparison,
}

pub fn nourish_audit(cap: usize) -> Result<NourishAudit> {
    Ok(NourishAudit {
        verified: nourish::compare(&nourish::verified_grid(), cap)?,
        diagnostic: nourish::compare(&nourish::diagnostic_grid(), cap)?,
    })
}

pub fn criterion_6(audit: &NourishAudit, elapsed: Duration) -> Outcome {
    let v = &audit.verified;
    let d = &audit.diagnostic;
    let v_ok = v.skipped.is_empty() && v.reports.iter().all(|r| r.matches == Some(true));
    let d_grid = nourish::diagnostic_grid().len();
    let d_complete = d.skipped.is_empty()
        && d.reports.len() == d_grid
        && d.tally.iter().map(|t| t.mismatches).sum::<usize>() == d.mismatches().count();
    let passed = v_ok && d_complete && elapsed <= Duration::from_secs(600);
    let bad: Vec<String> = v
        .reports
        .iter()
        .filter(|r| r.matches != Some(true))
        .map(|r| format!("{} r={}", r.spec.family, r.r))
        .collect();
    Outcome {
        id: 6,
        name: "nourishing-number grid".into(),
        passed,
        detail: format!(
            "verified {}/{} exact{}; diagnostic ledger {} of {} points, {} mismatches",
            v.reports.iter().filter(|r| r.matches == Some(true)).count(),
            v.reports.len() + v.skipped.len(),
            if bad.is_empty() { String::new() } else { format!(" (failing: {})", bad.join(", ")) },
            d.reports.len(),
            d_grid,
            d.mismatches().count()
        ),
        elapsed_ms: elapsed.as_millis(),
    }
}

/// `K_2`, `K_3`, `C_4`, `C_5` and the path on three vertices.
pub fn identity_graphs() -> Vec<(&'static str, Graph)> {
    vec![
        ("K2", Family::Complete(2).generate().unwrap()),
        ("K3", Family::Complete(3).generate().unwrap()),
        ("C4", Family::Cycle(4).generate().unwrap()),
        ("C5", Family::Cycle(5).generate().unwrap()),
        ("P3", Family::Path(2).generate().unwrap()),
    ]
}

pub fn criterion_7(cap: usize) -> Outcome {
    timed(7, "operation identities", None, || {
        let graphs = identity_graphs();
        let mut failures = Vec::new();
        let mut checked = 0;
        for (n1, g1) in &graphs {
            for (n2, g2) in &graphs {
                let rep = nourish::operation_identities(g1, g2, cap).expect("identities");
                for c in &rep.checks {
                    if c.operation == "corona" && rep.kappa1 == rep.kappa2 {
                        continue;
                    }
                    checked += 1;
                    if c.holds != Some(true) {
                        failures.push(format!("{} of {n1},{n2}", c.operation));
                    }
                }
            }
        }
        let mut complement = Vec::new();
        for g in [Family::Path(3), Family::Cycle(5)].map(|f| f.generate().unwrap()) {
            let f = construct_strong(&g).expect("strong labeling");
            let c = nourish::complement_identity(&g, &f).expect("complement");
            complement.push(c);
        }
        let complement_ok = complement
            .iter()
            .all(|c| c.self_complementary && c.holds_for_chain_length);
        (
            failures.is_empty() && complement_ok,
            format!(
                "{checked} identity checks, {} failures{}; complement chain length = |V| for P4, C5: {complement_ok} (clique numbers {} and {})",
                failures.len(),
                if failures.is_empty() { String::new() } else { format!(" ({})", failures.join(", ")) },
                complement[0].omega,
                complement[1].omega
            ),
        )
    })
}

pub fn criterion_8(seed: u64) -> Outcome {
    timed(8, "clique oracle equivalence", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut exceptions = 0;
        for _ in 0..500 {
            let n = rng.gen_range(1..=9);
            let p = rng.gen_range(0.05..0.95);
            let g = random_graph(&mut rng, n, p);
            if graph::clique_number(&g) != graph::clique_number_exhaustive(&g) {
                exceptions += 1;
            }
        }
        (exceptions == 0, format!("500 random graphs, {exceptions} exceptions"))
    })
}

/// Strongly uniform decisions that contradict a component bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusFinding {
    pub graph: String,
    pub k: usize,
    pub admits: bool,
    pub witness_verified: bool,
    pub failed_bounds: Vec<String>,
}

/// Small disconnected graphs built from cliques, cycles and paths, decided for
/// every `k` in `1..=12`.
pub fn census_sweep() -> Vec<CensusFinding> {
    let parts: Vec<(&str, Graph)> = vec![
        ("K2", Family::Complete(2).generate().unwrap()),
        ("K3", Family::Complete(3).generate().unwrap()),
        ("C5", Family::Cycle(5).generate().unwrap()),
        ("P3", Family::Path(2).generate().unwrap()),
    ];
    let mut graphs: Vec<(String, Graph)> = parts.iter().map(|(n, g)| (n.to_string(), g.clone())).collect();
    for (i, (a, ga)) in parts.iter().enumerate() {
        for (b, gb) in &parts[i..] {
            graphs.push((format!("{a}+{b}"), ops::disjoint_union(ga, gb).graph));
        }
    }
    let mut out = Vec::new();
    for (name, g) in &graphs {
        for k in 1..=12 {
            let d = construct::decide_strongly_k_uniform(g, k).expect("decision");
            let c = d.census.as_ref().expect("census");
            let mut failed = Vec::new();
            if !c.divisor_component_bound_holds {
                failed.push("divisor component bound".to_string());
            }
            if !c.single_clique_bound_holds {
                failed.push("at most one clique component".to_string());
            }
            if !c.clique_square_bound_holds {
                failed.push("clique component forces square k".to_string());
            }
            if d.admits && !failed.is_empty() {
                let witness_verified = d
                    .witness
                    .as_ref()
                    .is_some_and(|f| verify(g, f).map(|r| r.is_strongly_uniform(k)).unwrap_or(false));
                out.push(CensusFinding {
                    graph: name.clone(),
                    k,
                    admits: d.admits,
                    witness_verified,
                    failed_bounds: failed,
                });
            }
        }
    }
    out
}

/// Singleton labels on a path: a strong IASI whose line graph, total graph and
/// subdivision labelings are all strong.
pub fn singleton_counterexample() -> Result<(bool, bool, bool)> {
    let g = Family::Path(2).generate()?;
    let f = Labeling::from_vec(vec![IntSet::from([0]), IntSet::from([1]), IntSet::from([3])]);
    let strong = |r: Result<(Graph, Labeling)>| -> Result<bool> {
        let (h, fh) = r?;
        Ok(verify(&h, &fh)?.is_strong)
    };
    Ok((
        strong(labeling::induce_on_line_graph(&g, &f))?,
        strong(labeling::induce_on_total_graph(&g, &f))?,
        strong(labeling::induce_on_subdivision(&g, &f, (0, 1)))?,
    ))
}

/// Runs every criterion in order.
pub fn run_all(cap: usize) -> Result<(Vec<Outcome>, NourishAudit)> {
    let corpus = corpus();
    let mut out = vec![criterion_1(), criterion_2(&corpus), criterion_3(SEED), criterion_4(&corpus), criterion_5()];
    let start = Instant::now();
    let nourish = nourish_audit(cap)?;
    out.push(criterion_6(&nourish, start.elapsed()));
    out.push(criterion_7(cap));
    out.push(criterion_8(SEED));
    Ok((out, nourish))
}

/// The discrepancy ledger as Markdown.
pub fn ledger(outcomes: &[Outcome], nourish: &NourishAudit) -> Result<String> {
    let mut s = String::new();
    let w = &mut s;
    writeln!(w, "# Discrepancy ledger\n").unwrap();
    writeln!(w, "## Acceptance\n").unwrap();
    for o in outcomes {
        writeln!(w, "- {}", o.line()).unwrap();
    }

    writeln!(w, "\n## Nourishing-number formulas\n").unwrap();
    writeln!(w, "| family | points | match | mismatch | no formula | skipped |").unwrap();
    writeln!(w, "|---|---|---|---|---|---|").unwrap();
    for t in nourish.verified.tally.iter().chain(&nourish.diagnostic.tally) {
        writeln!(
            w,
            "| {} | {} | {} | {} | {} | {} |",
            t.family, t.points, t.matches, t.mismatches, t.no_formula, t.skipped
        )
        .unwrap();
    }
    writeln!(w, "\n### Mismatches\n").unwrap();
    writeln!(w, "| family | params | r | oracle | formula | case |").unwrap();
    writeln!(w, "|---|---|---|---|---|---|").unwrap();
    for r in nourish.verified.mismatches().chain(nourish.diagnostic.mismatches()) {
        let case = nourish::formula_case(&r.spec)
            .map(|c| format!("{}: {}", c.guard, c.expression))
            .unwrap_or_default();
        writeln!(
            w,
            "| {} | {} | {} | {} | {} | {} |",
            r.spec.family.name(),
            r.spec.family.params_string(),
            r.r,
            r.omega_oracle,
            r.formula_value.map(|v| v.to_string()).unwrap_or_default(),
            case
        )
        .unwrap();
    }
    let uncovered: Vec<String> = nourish
        .diagnostic
        .reports
        .iter()
        .chain(&nourish.verified.reports)
        .filter(|r| r.formula_value.is_none())
        .map(|r| format!("{} r={} (oracle {})", r.spec.family, r.r, r.omega_oracle))
        .collect();
    if !uncovered.is_empty() {
        writeln!(w, "\nNo formula case: {}.", uncovered.join("; ")).unwrap();
    }

    writeln!(w, "\n## Operation identities\n").unwrap();
    let graphs = identity_graphs();
    for (n1, g1) in &graphs {
        for (n2, g2) in &graphs {
            let rep = nourish::operation_identities(g1, g2, nourish::ORACLE_CAP_DEFAULT)?;
            let corona = rep.check("corona").expect("corona check");
            if rep.kappa1 == rep.kappa2 {
                writeln!(
                    w,
                    "- corona {n1} o {n2}: tie k1 = k2 = {}, oracle {}, max(k1, k2+1) = {}",
                    rep.kappa1,
                    corona.observed.map(|v| v.to_string()).unwrap_or_default(),
                    corona.expected
                )
                .unwrap();
            }
        }
    }
    writeln!(w, "- disjoint union: the oracle gives equality with max(k1, k2) on every pair; only the lower bound is known in closed form.").unwrap();
    for g in [("P4", Family::Path(3)), ("C5", Family::Cycle(5))] {
        let gr = g.1.generate()?;
        let c = nourish::complement_identity(&gr, &construct_strong(&gr)?)?;
        writeln!(
            w,
            "- complement of {}: difference-set chain length {} and {} (|V| = {}); clique numbers {} and {}.",
            g.0, c.chain_length, c.chain_length_complement, c.order, c.omega, c.omega_complement
        )
        .unwrap();
    }

    writeln!(w, "\n## Strongly uniform component bounds\n").unwrap();
    writeln!(w, "Graphs that admit a verified strongly k-uniform IASI while failing a claimed component bound:\n").unwrap();
    for f in census_sweep() {
        writeln!(
            w,
            "- {} with k = {}: witness verified {}; fails {}",
            f.graph,
            f.k,
            f.witness_verified,
            f.failed_bounds.join(", ")
        )
        .unwrap();
    }

    writeln!(w, "\n## Never-strong transformations\n").unwrap();
    let (line, total, sub) = singleton_counterexample()?;
    writeln!(
        w,
        "- singleton labels {{0}}, {{1}}, {{3}} on a 3-vertex path: line graph strong {line}, total graph strong {total}, subdivision strong {sub}. The never-strong results need every label to have at least two elements."
    )
    .unwrap();
    Ok(s)
}
