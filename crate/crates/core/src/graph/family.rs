//! Named graph families.
//!
//! Indexing conventions: `Path(m)` has `m` edges and `m + 1` vertices;
//! `Fan(m, n)` is the join of `m` independent vertices with a path on `n`
//! vertices; `Wheel(n)` is a rim cycle on `n` vertices joined to one hub, so
//! it has `n + 1` vertices. Every other family is indexed by the order of its
//! defining cycle, clique or copy count.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ops, Graph};
use crate::error::{Error, Result};

/// Which graph the hull `U` of a sun induces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SunHull {
    Cycle,
    Complete,
}

impl fmt::Display for SunHull {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SunHull::Cycle => "cycle",
            SunHull::Complete => "complete",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Wheel(usize),
    Helm(usize),
    Friendship(usize),
    Fan(usize, usize),
    CompleteSplit(usize, usize),
    Sun(usize, SunHull),
    Sunlet(usize),
}

/// A family member raised to a positive power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SpecJson", into = "SpecJson")]
pub struct FamilySpec {
    pub family: Family,
    pub power: usize,
}

impl FamilySpec {
    pub fn new(family: Family, power: usize) -> Self {
        FamilySpec { family, power }
    }

    pub fn validate(&self) -> Result<()> {
        self.family.validate()?;
        if self.power == 0 {
            return Err(Error::Parameter("power must be at least 1".into()));
        }
        Ok(())
    }

    /// The family member raised to `power`.
    pub fn generate(&self) -> Result<Graph> {
        self.validate()?;
        let g = self.family.generate()?;
        if self.power == 1 {
            Ok(g)
        } else {
            ops::power(&g, self.power)
        }
    }
}

fn at_least(name: &str, value: usize, min: usize) -> Result<()> {
    if value < min {
        Err(Error::Parameter(format!("{name} must be at least {min}, got {value}")))
    } else {
        Ok(())
    }
}

impl Family {
    /// Stable lowercase family name, as used in JSON and CSV.
    pub fn name(&self) -> &'static str {
        match self {
            Family::Path(_) => "path",
            Family::Cycle(_) => "cycle",
            Family::Complete(_) => "complete",
            Family::CompleteBipartite(..) => "complete_bipartite",
            Family::Wheel(_) => "wheel",
            Family::Helm(_) => "helm",
            Family::Friendship(_) => "friendship",
            Family::Fan(..) => "fan",
            Family::CompleteSplit(..) => "complete_split",
            Family::Sun(..) => "sun",
            Family::Sunlet(_) => "sunlet",
        }
    }

    /// Named parameters in canonical order.
    pub fn params(&self) -> Vec<(&'static str, String)> {
        match *self {
            Family::Path(m) => vec![("m", m.to_string())],
            Family::Cycle(n)
            | Family::Complete(n)
            | Family::Wheel(n)
            | Family::Helm(n)
            | Family::Friendship(n)
            | Family::Sunlet(n) => vec![("n", n.to_string())],
            Family::CompleteBipartite(m, n) | Family::Fan(m, n) => {
                vec![("m", m.to_string()), ("n", n.to_string())]
            }
            Family::CompleteSplit(r, s) => vec![("r", r.to_string()), ("s", s.to_string())],
            Family::Sun(n, hull) => vec![("n", n.to_string()), ("hull", hull.to_string())],
        }
    }

    /// Parameters rendered as `k=v` pairs joined by `;`.
    pub fn params_string(&self) -> String {
        self.params()
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Parses a family from its name and `key -> value` parameters.
    pub fn from_params(name: &str, params: &BTreeMap<String, String>) -> Result<Family> {
        let num = |key: &str| -> Result<usize> {
            let raw = params
                .get(key)
                .ok_or_else(|| Error::Parameter(format!("family {name} needs parameter {key}")))?;
            raw.parse::<usize>()
                .map_err(|_| Error::Parameter(format!("parameter {key}={raw} is not a non-negative integer")))
        };
        let allowed: &[&str] = match name {
            "path" => &["m"],
            "complete_bipartite" | "fan" => &["m", "n"],
            "complete_split" => &["r", "s"],
            "sun" => &["n", "hull"],
            _ => &["n"],
        };
        if let Some(extra) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(Error::Parameter(format!("family {name} has no parameter {extra}")));
        }
        let family = match name {
            "path" => Family::Path(num("m")?),
            "cycle" => Family::Cycle(num("n")?),
            "complete" => Family::Complete(num("n")?),
            "complete_bipartite" => Family::CompleteBipartite(num("m")?, num("n")?),
            "wheel" => Family::Wheel(num("n")?),
            "helm" => Family::Helm(num("n")?),
            "friendship" => Family::Friendship(num("n")?),
            "fan" => Family::Fan(num("m")?, num("n")?),
            "complete_split" => Family::CompleteSplit(num("r")?, num("s")?),
            "sun" => {
                let hull = match params.get("hull").map(String::as_str) {
                    None | Some("cycle") => SunHull::Cycle,
                    Some("complete") => SunHull::Complete,
                    Some(other) => {
                        return Err(Error::Parameter(format!(
                            "sun hull must be cycle or complete, got {other}"
                        )))
                    }
                };
                Family::Sun(num("n")?, hull)
            }
            "sunlet" => Family::Sunlet(num("n")?),
            other => return Err(Error::Parameter(format!("unknown family {other}"))),
        };
        family.validate()?;
        Ok(family)
    }

    /// Checks the parameter lower bounds.
    pub fn validate(&self) -> Result<()> {
        match *self {
            Family::Path(m) => at_least("path m", m, 1),
            Family::Cycle(n) => at_least("cycle n", n, 3),
            Family::Complete(n) => at_least("complete n", n, 1),
            Family::CompleteBipartite(m, n) => {
                at_least("complete_bipartite m", m, 1)?;
                at_least("complete_bipartite n", n, 1)
            }
            Family::Wheel(n) => at_least("wheel n", n, 3),
            Family::Helm(n) => at_least("helm n", n, 3),
            Family::Friendship(n) => at_least("friendship n", n, 1),
            Family::Fan(m, n) => {
                at_least("fan m", m, 1)?;
                at_least("fan n", n, 2)
            }
            Family::CompleteSplit(r, s) => {
                at_least("complete_split r", r, 1)?;
                at_least("complete_split s", s, 1)
            }
            Family::Sun(n, _) => at_least("sun n", n, 3),
            Family::Sunlet(n) => at_least("sunlet n", n, 3),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            Family::Path(m) => m + 1,
            Family::Cycle(n) | Family::Complete(n) => n,
            Family::CompleteBipartite(m, n) | Family::Fan(m, n) => m + n,
            Family::CompleteSplit(r, s) => r + s,
            Family::Wheel(n) => n + 1,
            Family::Helm(n) | Family::Friendship(n) => 2 * n + 1,
            Family::Sun(n, _) | Family::Sunlet(n) => 2 * n,
        }
    }

    /// Builds the graph with role annotations.
    pub fn generate(&self) -> Result<Graph> {
        self.validate()?;
        let mut edges = Vec::new();
        let mut roles = BTreeMap::new();
        let mut tag = |range: std::ops::Range<usize>, role: &str| {
            for v in range {
                roles.insert(v, role.to_string());
            }
        };
        let cycle = |edges: &mut Vec<(usize, usize)>, start: usize, len: usize| {
            for i in 0..len {
                edges.push((start + i, start + (i + 1) % len));
            }
        };
        let clique = |edges: &mut Vec<(usize, usize)>, start: usize, len: usize| {
            for i in 0..len {
                for j in i + 1..len {
                    edges.push((start + i, start + j));
                }
            }
        };
        let n_total = self.vertex_count();
        match *self {
            Family::Path(m) => {
                edges.extend((0..m).map(|i| (i, i + 1)));
                tag(0..m + 1, "path");
            }
            Family::Cycle(n) => {
                cycle(&mut edges, 0, n);
                tag(0..n, "cycle");
            }
            Family::Complete(n) => {
                clique(&mut edges, 0, n);
                tag(0..n, "clique");
            }
            Family::CompleteBipartite(m, n) => {
                for i in 0..m {
                    edges.extend((m..m + n).map(|j| (i, j)));
                }
                tag(0..m, "left");
                tag(m..m + n, "right");
            }
            Family::Wheel(n) => {
                edges.extend((1..=n).map(|i| (0, i)));
                cycle(&mut edges, 1, n);
                tag(0..1, "hub");
                tag(1..n + 1, "rim");
            }
            Family::Helm(n) => {
                edges.extend((1..=n).map(|i| (0, i)));
                cycle(&mut edges, 1, n);
                edges.extend((1..=n).map(|i| (i, i + n)));
                tag(0..1, "hub");
                tag(1..n + 1, "rim");
                tag(n + 1..2 * n + 1, "pendant");
            }
            Family::Friendship(n) => {
                for i in 0..n {
                    let (a, b) = (2 * i + 1, 2 * i + 2);
                    edges.extend([(0, a), (0, b), (a, b)]);
                }
                tag(0..1, "center");
                tag(1..2 * n + 1, "blade");
            }
            Family::Fan(m, n) => {
                for i in 0..m {
                    edges.extend((m..m + n).map(|j| (i, j)));
                }
                edges.extend((m..m + n - 1).map(|j| (j, j + 1)));
                tag(0..m, "apex");
                tag(m..m + n, "path");
            }
            Family::CompleteSplit(r, s) => {
                clique(&mut edges, 0, r);
                for i in 0..r {
                    edges.extend((r..r + s).map(|j| (i, j)));
                }
                tag(0..r, "clique");
                tag(r..r + s, "independent");
            }
            Family::Sun(n, hull) => {
                match hull {
                    SunHull::Cycle => cycle(&mut edges, 0, n),
                    SunHull::Complete => clique(&mut edges, 0, n),
                }
                // w_j (vertex n + j) is adjacent to u_j and u_{j+1 mod n}.
                for j in 0..n {
                    edges.extend([(n + j, j), (n + j, (j + 1) % n)]);
                }
                tag(0..n, "hull");
                tag(n..2 * n, "outer");
            }
            Family::Sunlet(n) => {
                cycle(&mut edges, 0, n);
                edges.extend((0..n).map(|i| (i, i + n)));
                tag(0..n, "cycle");
                tag(n..2 * n, "pendant");
            }
        }
        let mut g = Graph::from_edges(n_total, edges)?;
        g.set_roles(roles);
        Ok(g)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name(), self.params_string().replace(';', ","))
    }
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    family: String,
    #[serde(default = "one")]
    power: usize,
    #[serde(flatten)]
    params: BTreeMap<String, serde_json::Value>,
}

fn one() -> usize {
    1
}

impl TryFrom<SpecJson> for FamilySpec {
    type Error = Error;

    fn try_from(j: SpecJson) -> Result<Self> {
        let params = j
            .params
            .into_iter()
            .map(|(k, v)| {
                let s = match v {
                    serde_json::Value::String(s) => s,
                    serde_json::Value::Number(n) => n.to_string(),
                    other => {
                        return Err(Error::Parameter(format!("parameter {k} has unsupported value {other}")))
                    }
                };
                Ok((k, s))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        let spec = FamilySpec::new(Family::from_params(&j.family, &params)?, j.power);
        spec.validate()?;
        Ok(spec)
    }
}

impl From<FamilySpec> for SpecJson {
    fn from(s: FamilySpec) -> Self {
        let params = s
            .family
            .params()
            .into_iter()
            .map(|(k, v)| {
                let value = match v.parse::<u64>() {
                    Ok(n) => serde_json::Value::from(n),
                    Err(_) => serde_json::Value::String(v),
                };
                (k.to_string(), value)
            })
            .collect();
        SpecJson {
            family: s.family.name().to_string(),
            power: s.power,
            params,
        }
    }
}
