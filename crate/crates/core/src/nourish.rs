//! Nourishing numbers: the clique-number oracle, the closed-form per-family
//! formulas, operation identities and formula-versus-oracle comparison.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{self, ops, Family, FamilySpec, Graph, SunHull};
use crate::labeling::Labeling;
use crate::sumset::{difference_set, IntSet};

/// Default vertex cap for the ω oracle.
pub const ORACLE_CAP_DEFAULT: usize = 64;

/// Environment variable overriding the ω oracle cap.
pub const ORACLE_CAP_ENV: &str = "IASI_ORACLE_CAP";

/// Environment variable overriding the isomorphism vertex cap.
pub const ISO_CAP_ENV: &str = "IASI_ISO_CAP";

fn cap_from_env(var: &str, default: usize) -> usize {
    std::env::var(var)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&c| c > 0)
        .unwrap_or(default)
}

pub fn oracle_cap_from_env() -> usize {
    cap_from_env(ORACLE_CAP_ENV, ORACLE_CAP_DEFAULT)
}

pub fn iso_cap_from_env() -> usize {
    cap_from_env(ISO_CAP_ENV, graph::iso::ISO_CAP_DEFAULT)
}

/// `ϰ(G) = ω(G)`. Defined only for graphs with at least one edge.
pub fn nourishing_number(g: &Graph) -> Result<usize> {
    if g.edge_count() == 0 {
        return Err(Error::Precondition(
            "nourishing number needs at least one edge".into(),
        ));
    }
    Ok(graph::clique_number(g))
}

/// Formula lookup key. Suns with a clique hull have their own table.
fn table_key(f: &Family) -> &'static str {
    match f {
        Family::Sun(_, SunHull::Complete) => "complete_sun",
        other => other.name(),
    }
}

/// The two numeric parameters of a family, in `params()` order; the second is
/// zero when there is only one.
fn numeric(f: &Family) -> (usize, usize) {
    match *f {
        Family::Path(a)
        | Family::Cycle(a)
        | Family::Complete(a)
        | Family::Wheel(a)
        | Family::Helm(a)
        | Family::Friendship(a)
        | Family::Sunlet(a)
        | Family::Sun(a, _) => (a, 0),
        Family::CompleteBipartite(a, b) | Family::Fan(a, b) | Family::CompleteSplit(a, b) => (a, b),
    }
}

/// One case of a closed-form piecewise formula. `guard` and `expression` are
/// the case as printed; `applies` and `value` evaluate it on the numeric
/// parameters `(a, b)` and the power `r`.
pub struct FormulaCase {
    pub family: &'static str,
    pub guard: &'static str,
    pub expression: &'static str,
    pub applies: fn(usize, usize, usize) -> bool,
    pub value: fn(usize, usize, usize) -> usize,
}

macro_rules! case {
    ($fam:literal, $guard:literal, $expr:literal, |$a:ident, $b:ident, $r:ident| $when:expr => $val:expr) => {
        FormulaCase {
            family: $fam,
            guard: $guard,
            expression: $expr,
            applies: |$a, $b, $r| {
                let _ = (&$a, &$b, &$r);
                $when
            },
            value: |$a, $b, $r| {
                let _ = (&$a, &$b, &$r);
                $val
            },
        }
    };
}

/// The formula table. Parameters: path `m`; cycle, complete, wheel, helm,
/// friendship, sun, complete sun and sunlet `n`; complete bipartite and fan
/// `(m, n)`; complete split `(r, s)` with the power written `p`.
pub static FORMULA_TABLE: &[FormulaCase] = &[
    case!("complete", "any r", "n", |n, _b, _r| true => n),
    case!("complete_bipartite", "r = 1", "2", |_m, _n, r| r == 1 => 2),
    case!("complete_bipartite", "r >= 2", "m+n", |_m, _n, r| r >= 2 => _m + _n),
    case!("path", "r < m", "r+1", |m, _b, r| r < m => r + 1),
    case!("path", "r >= m", "m+1", |m, _b, r| r >= m => m + 1),
    case!("cycle", "r < floor(n/2)", "r+1", |n, _b, r| r < n / 2 => r + 1),
    case!("cycle", "r >= floor(n/2)", "n", |n, _b, r| r >= n / 2 => n),
    // W with a 3-vertex rim is K4, outside the r = 1 case.
    case!("wheel", "r = 1, n >= 4", "3", |n, _b, r| r == 1 && n >= 4 => 3),
    case!("wheel", "r >= 2", "n+1", |n, _b, r| r >= 2 => n + 1),
    case!("helm", "r = 1", "3", |_n, _b, r| r == 1 => 3),
    case!("helm", "r = 2", "n+1", |n, _b, r| r == 2 => n + 1),
    case!("helm", "r = 3", "n+4", |n, _b, r| r == 3 => n + 4),
    case!("helm", "r >= 4", "2n+1", |n, _b, r| r >= 4 => 2 * n + 1),
    case!("friendship", "r = 1", "3", |_n, _b, r| r == 1 => 3),
    case!("friendship", "r >= 2", "2n+1", |n, _b, r| r >= 2 => 2 * n + 1),
    case!("fan", "r = 1", "3", |_m, _n, r| r == 1 => 3),
    case!("fan", "r >= 2", "m+n", |m, n, r| r >= 2 => m + n),
    case!("complete_split", "p = 1", "r+1", |r, _s, p| p == 1 => r + 1),
    case!("complete_split", "p >= 2", "r+s", |r, s, p| p >= 2 => r + s),
    case!("sun", "r < floor(n/2)", "2r+1", |n, _b, r| r < n / 2 => 2 * r + 1),
    case!("sun", "r = floor(n/2), n odd", "2(n-1)", |n, _b, r| r == n / 2 && n % 2 == 1 => 2 * (n - 1)),
    case!("sun", "r = floor(n/2), n even", "2n-1", |n, _b, r| r == n / 2 && n % 2 == 0 => 2 * n - 1),
    case!("sun", "r >= floor(n/2)+1", "2n", |n, _b, r| r > n / 2 => 2 * n),
    // The r = 1 case requires a triangle-free hull, which a clique on n >= 3
    // vertices never is.
    case!("complete_sun", "r = 2", "n+1", |_n, _b, r| r == 2 => _n + 1),
    case!("complete_sun", "r >= 3", "2n", |n, _b, r| r >= 3 => 2 * n),
    case!("sunlet", "r < floor(n/2)+1", "2r", |n, _b, r| r < n / 2 + 1 => 2 * r),
    case!("sunlet", "r = floor(n/2)+1, n odd", "2(n-1)", |n, _b, r| r == n / 2 + 1 && n % 2 == 1 => 2 * (n - 1)),
    case!("sunlet", "r = floor(n/2)+1, n even", "2n-1", |n, _b, r| r == n / 2 + 1 && n % 2 == 0 => 2 * n - 1),
    case!("sunlet", "r >= floor(n/2)+2", "2n", |n, _b, r| r >= n / 2 + 2 => 2 * n),
];

/// The formula case covering `spec`, if any.
pub fn formula_case(spec: &FamilySpec) -> Option<&'static FormulaCase> {
    let key = table_key(&spec.family);
    let (a, b) = numeric(&spec.family);
    FORMULA_TABLE
        .iter()
        .find(|c| c.family == key && (c.applies)(a, b, spec.power))
}

/// The tabulated value of `ϰ(Gʳ)`, or `None` outside every case.
pub fn formula_value(spec: &FamilySpec) -> Option<usize> {
    if spec.validate().is_err() {
        return None;
    }
    let (a, b) = numeric(&spec.family);
    formula_case(spec).map(|c| (c.value)(a, b, spec.power))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NourishReport {
    pub spec: FamilySpec,
    pub r: usize,
    pub omega_oracle: usize,
    pub formula_value: Option<usize>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
    pub note: String,
}

/// A grid point the oracle refused.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skipped {
    pub spec: FamilySpec,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyTally {
    pub family: String,
    pub points: usize,
    pub matches: usize,
    pub mismatches: usize,
    pub no_formula: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub reports: Vec<NourishReport>,
    pub skipped: Vec<Skipped>,
    pub tally: Vec<FamilyTally>,
}

impl Comparison {
    pub fn mismatches(&self) -> impl Iterator<Item = &NourishReport> {
        self.reports.iter().filter(|r| r.matches == Some(false))
    }
}

/// Oracle and formula for one spec.
pub fn report(spec: &FamilySpec, cap: usize) -> Result<NourishReport> {
    spec.validate()?;
    let n = spec.family.vertex_count();
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let g = spec.generate()?;
    let omega = nourishing_number(&g)?;
    let formula = formula_value(spec);
    let matches = formula.map(|f| f == omega);
    let note = match (formula_case(spec), matches) {
        (None, _) => "no formula case applies".to_string(),
        (Some(c), Some(true)) => format!("{}: {}", c.guard, c.expression),
        (Some(c), _) => format!(
            "formula disagrees with oracle ({}: {})",
            c.guard, c.expression
        ),
    };
    Ok(NourishReport {
        spec: *spec,
        r: spec.power,
        omega_oracle: omega,
        formula_value: formula,
        matches,
        note,
    })
}

/// Runs [`report`] on every grid point in parallel. Output follows grid
/// order; points over `cap` are skipped with a note.
pub fn compare(grid: &[FamilySpec], cap: usize) -> Result<Comparison> {
    let outcomes: Vec<Result<NourishReport>> = grid.par_iter().map(|s| report(s, cap)).collect();
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    let mut tally: Vec<FamilyTally> = Vec::new();
    for (spec, outcome) in grid.iter().zip(outcomes) {
        let key = table_key(&spec.family);
        let idx = match tally.iter().position(|t| t.family == key) {
            Some(i) => i,
            None => {
                tally.push(FamilyTally {
                    family: key.to_string(),
                    points: 0,
                    matches: 0,
                    mismatches: 0,
                    no_formula: 0,
                    skipped: 0,
                });
                tally.len() - 1
            }
        };
        let t = &mut tally[idx];
        t.points += 1;
        match outcome {
            Ok(r) => {
                match r.matches {
                    Some(true) => t.matches += 1,
                    Some(false) => t.mismatches += 1,
                    None => t.no_formula += 1,
                }
                reports.push(r);
            }
            Err(e) if e.is_limit() => {
                t.skipped += 1;
                skipped.push(Skipped {
                    spec: *spec,
                    note: format!("skipped: {e}"),
                });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Comparison {
        reports,
        skipped,
        tally,
    })
}

/// CSV header of the comparison report.
pub const CSV_COLUMNS: [&str; 7] = ["family", "params", "r", "omega", "formula", "match", "note"];

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Writes reports then skipped points, one row each.
pub fn write_csv<W: Write>(cmp: &Comparison, out: W) -> Result<()> {
    let io = |e: csv::Error| Error::InvalidGraph(format!("csv output failed: {e}"));
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(CSV_COLUMNS).map_err(io)?;
    for r in &cmp.reports {
        w.write_record([
            table_key(&r.spec.family).to_string(),
            r.spec.family.params_string(),
            r.r.to_string(),
            r.omega_oracle.to_string(),
            opt(r.formula_value),
            opt(r.matches),
            r.note.clone(),
        ])
        .map_err(io)?;
    }
    for s in &cmp.skipped {
        w.write_record([
            table_key(&s.spec.family).to_string(),
            s.spec.family.params_string(),
            s.spec.power.to_string(),
            String::new(),
            opt(formula_value(&s.spec)),
            String::new(),
            s.note.clone(),
        ])
        .map_err(io)?;
    }
    w.flush()
        .map_err(|e| Error::InvalidGraph(format!("csv output failed: {e}")))?;
    Ok(())
}

pub fn to_csv_string(cmp: &Comparison) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(cmp, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
}

/// Points that must agree with the oracle.
pub fn verified_grid() -> Vec<FamilySpec> {
    let mut grid = Vec::new();
    let mut push = |f: Family, r: usize| grid.push(FamilySpec::new(f, r));
    for m in 2..=4 {
        for n in 2..=4 {
            for r in 1..=3 {
                push(Family::CompleteBipartite(m, n), r);
            }
        }
    }
    for m in 1..=8 {
        for r in 1..=m + 1 {
            push(Family::Path(m), r);
        }
    }
    for n in 3usize..=10 {
        for r in 1..=n.div_ceil(2) {
            push(Family::Cycle(n), r);
        }
    }
    for n in 4..=8 {
        for r in 1..=3 {
            push(Family::Wheel(n), r);
        }
    }
    for n in 1..=4 {
        for r in 1..=3 {
            push(Family::Friendship(n), r);
        }
    }
    for m in 1..=3 {
        for n in 2..=5 {
            for r in 1..=3 {
                push(Family::Fan(m, n), r);
            }
        }
    }
    grid
}

/// Points whose comparison is recorded without being required to agree.
/// Powers run past each family's diameter.
pub fn diagnostic_grid() -> Vec<FamilySpec> {
    let mut grid = Vec::new();
    let mut push = |f: Family, r: usize| grid.push(FamilySpec::new(f, r));
    for n in 3..=8 {
        for r in 1..=5 {
            push(Family::Helm(n), r);
        }
    }
    for r in 1..=4 {
        for s in 1..=4 {
            for p in 1..=3 {
                push(Family::CompleteSplit(r, s), p);
            }
        }
    }
    for hull in [SunHull::Cycle, SunHull::Complete] {
        for n in 3..=8 {
            let top = match hull {
                SunHull::Cycle => n / 2 + 2,
                SunHull::Complete => 4,
            };
            for r in 1..=top {
                push(Family::Sun(n, hull), r);
            }
        }
    }
    for n in 3..=10 {
        for r in 1..=n / 2 + 3 {
            push(Family::Sunlet(n), r);
        }
    }
    grid
}

/// One operation identity, checked against the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub operation: String,
    pub observed: Option<usize>,
    pub expected: usize,
    pub holds: Option<bool>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub kappa1: usize,
    pub kappa2: usize,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn check(&self, operation: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.operation == operation)
    }
}

fn identity(
    operation: &str,
    composed: &Graph,
    expected: usize,
    cap: usize,
    note: impl Into<String>,
) -> Result<IdentityCheck> {
    let mut note = note.into();
    let observed = if composed.n() > cap {
        note = format!("skipped: {} vertices exceed the oracle cap {cap}", composed.n());
        None
    } else {
        Some(nourishing_number(composed)?)
    };
    Ok(IdentityCheck {
        operation: operation.to_string(),
        observed,
        expected,
        holds: observed.map(|o| o == expected),
        note,
    })
}

/// `ϰ` of the union, join, cartesian product and corona of `g1` and `g2`
/// against the known identities. The union is compared with `max`, which
/// is stronger than the known lower bound; the corona tie `ϰ1 = ϰ2` has
/// no closed form and is compared with `max(ϰ1, ϰ2 + 1)`.
pub fn operation_identities(g1: &Graph, g2: &Graph, cap: usize) -> Result<IdentityReport> {
    let k1 = nourishing_number(g1)?;
    let k2 = nourishing_number(g2)?;
    let (corona_expected, corona_note) = if k1 > k2 {
        (k1, "k1 > k2: k1")
    } else if k2 > k1 {
        (k2 + 1, "k2 > k1: k2+1")
    } else {
        (k1.max(k2 + 1), "formula-gap: tie case has no closed form, expected max(k1, k2+1)")
    };
    let checks = vec![
        identity(
            "union",
            &ops::disjoint_union(g1, g2).graph,
            k1.max(k2),
            cap,
            "lower bound max(k1, k2); equality checked",
        )?,
        identity("join", &ops::join(g1, g2).graph, k1 + k2, cap, "k1 + k2")?,
        identity(
            "cartesian",
            &ops::cartesian_product(g1, g2).graph,
            k1.max(k2),
            cap,
            "max(k1, k2)",
        )?,
        identity("corona", &ops::corona(g1, g2).graph, corona_expected, cap, corona_note)?,
    ];
    Ok(IdentityReport {
        kappa1: k1,
        kappa2: k2,
        checks,
    })
}

/// Largest set of vertices whose labels have pairwise disjoint difference
/// sets: the length of the longest sequence of mutually disjoint difference
/// sets the labeling provides.
pub fn difference_chain_length(f: &Labeling) -> Result<usize> {
    let diffs: Vec<IntSet> = f.to_vec().iter().map(difference_set).collect::<Result<_>>()?;
    let n = diffs.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if diffs[i].is_disjoint(&diffs[j]) {
                edges.push((i, j));
            }
        }
    }
    let compat = Graph::from_edges(n, edges)?;
    Ok(graph::clique_number(&compat))
}

/// Both readings of the complement identity `ϰ(G) = ϰ(Ḡ) = |V|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementCheck {
    pub order: usize,
    pub self_complementary: bool,
    pub omega: usize,
    pub omega_complement: usize,
    pub chain_length: usize,
    pub chain_length_complement: usize,
    /// `ϰ` read as the difference-set chain length of the labeling.
    pub holds_for_chain_length: bool,
    /// `ϰ` read as the clique number.
    pub holds_for_clique_number: bool,
}

pub fn complement_identity(g: &Graph, f: &Labeling) -> Result<ComplementCheck> {
    f.check_total(g)?;
    let (gc, fc) = crate::labeling::complement_with_labels(g, f)?;
    let chain = difference_chain_length(f)?;
    let chain_c = difference_chain_length(&fc)?;
    let omega = graph::clique_number(g);
    let omega_c = graph::clique_number(&gc);
    let n = g.n();
    Ok(ComplementCheck {
        order: n,
        self_complementary: graph::is_isomorphic(g, &gc),
        omega,
        omega_complement: omega_c,
        chain_length: chain,
        chain_length_complement: chain_c,
        holds_for_chain_length: chain == n && chain_c == n,
        holds_for_clique_number: omega == n && omega_c == n,
    })
}
