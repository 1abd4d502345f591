use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use iasi_core::construct::{self, Predicate, SearchBounds, SEARCH_BUDGET_DEFAULT};
use iasi_core::graph::{ops, Edge};
use iasi_core::labeling::{self, ReductionReading};
use iasi_core::nourish;
use iasi_core::{audit, verify, Error, Family, FamilySpec, Graph, Labeling};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Where `check-paper` writes its ledger and report, relative to the working
/// directory.
const LEDGER_PATH: &str = "reports/discrepancy-ledger.md";
const LEDGER_CSV_PATH: &str = "reports/nourish-diagnostic.csv";

#[derive(Parser)]
#[command(name = "iasi", version, about = "Integer additive set-indexers of graphs")]
struct Cli {
    /// Write the result here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    /// Vertex cap for the clique-number oracle [env: IASI_ORACLE_CAP, default 64].
    #[arg(long, global = true)]
    oracle_cap: Option<usize>,

    /// Vertex cap for isomorphism checks [env: IASI_ISO_CAP, default 10].
    #[arg(long, global = true)]
    iso_cap: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a family member, optionally raised to a power.
    Gen {
        #[arg(long)]
        family: String,
        /// Parameters as `key=value`, separated by `,` or `;`.
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long, default_value_t = 1)]
        power: usize,
    },
    /// Construct a labeling of a graph.
    Label {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        mode: LabelMode,
        /// Edge set-indexing number for uniform modes.
        #[arg(long)]
        k: Option<usize>,
        /// Divisor pair `a,b` with `a·b = k` for bipartite uniform labelings.
        #[arg(long)]
        divisors: Option<String>,
    },
    /// Check a labeling; exits 0 iff the requested property holds.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        labeling: PathBuf,
        #[arg(long, value_enum, default_value_t = Property::StrongIasi)]
        property: Property,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Apply a graph operation, inducing labels when a labeling is given.
    Transform {
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        labeling: Option<PathBuf>,
        /// Second operand of binary operations.
        #[arg(long)]
        other: Option<PathBuf>,
        /// Edge `u,v` for subdivide and contract.
        #[arg(long)]
        edge: Option<String>,
        /// Path `u,w,v` for reduce.
        #[arg(long)]
        path: Option<String>,
        #[arg(long, default_value_t = 1)]
        power: usize,
    },
    /// Compare closed-form nourishing-number formulas with the oracle.
    Nourish {
        /// JSON array of family specs.
        #[arg(long, required_unless_present = "preset")]
        grid: Option<PathBuf>,
        #[arg(long, value_enum, conflicts_with = "grid")]
        preset: Option<Preset>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Decide whether a graph admits a strongly k-uniform IASI.
    Decide {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Exhaustive search for a labeling within bounds.
    Search {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        predicate: SearchPredicate,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        max_element: u64,
        #[arg(long)]
        max_card: usize,
        /// Most candidate labelings the search may consider.
        #[arg(long, default_value_t = SEARCH_BUDGET_DEFAULT)]
        budget: u128,
    },
    /// Test two graphs for isomorphism; exits 0 iff they are isomorphic.
    Iso {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        other: PathBuf,
    },
    /// Run the acceptance suite and write the discrepancy ledger.
    CheckPaper,
}

#[derive(Clone, Copy, ValueEnum)]
enum LabelMode {
    Strong,
    Uniform,
    CompletelyUniform,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Property {
    Iasl,
    Iasi,
    Strong,
    StrongIasi,
    Uniform,
    StronglyUniform,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Power,
    Line,
    Total,
    Subdivide,
    Contract,
    Reduce,
    Complement,
    Join,
    Union,
    Cartesian,
    Corona,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    Verified,
    Diagnostic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchPredicate {
    Strong,
    StronglyUniform,
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn io(path: &Path, e: io::Error) -> Self {
        Failure {
            code: 1,
            message: format!("{}: {e}", path.display()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Precondition(_) => 3,
            _ if e.is_limit() => 4,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome<T> = Result<T, Failure>;

/// What a command produced: the text to emit and the exit status.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Outcome<T> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| {
        Failure::input(format!(
            "{}:{}:{}: malformed JSON: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

fn numbers(raw: &str, what: &str, count: usize) -> Outcome<Vec<usize>> {
    let parts: Result<Vec<usize>, _> = raw.split(',').map(|p| p.trim().parse::<usize>()).collect();
    match parts {
        Ok(v) if v.len() == count => Ok(v),
        _ => Err(Failure::input(format!(
            "{what} must be {count} comma-separated non-negative integers, got {raw:?}"
        ))),
    }
}

fn edge_arg(raw: Option<&String>) -> Outcome<Edge> {
    let raw = raw.ok_or_else(|| Failure::input("this operation needs --edge u,v"))?;
    let v = numbers(raw, "--edge", 2)?;
    Ok((v[0], v[1]))
}

fn parse_params(raw: &str) -> Outcome<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for item in raw.split([',', ';']).map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Failure::input(format!("parameter {item:?} is not key=value")))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn gen(family: &str, params: &str, power: usize) -> Outcome<Output> {
    let name = family.replace('-', "_");
    let family = Family::from_params(&name, &parse_params(params)?)?;
    let g = FamilySpec::new(family, power).generate()?;
    Ok(Output::ok(json(&g)))
}

fn label(graph: &Path, mode: LabelMode, k: Option<usize>, divisors: Option<&String>) -> Outcome<Output> {
    let g: Graph = read_json(graph)?;
    let need_k = || k.ok_or_else(|| Failure::input("this mode needs --k"));
    let f = match mode {
        LabelMode::Strong => construct::construct_strong(&g)?,
        LabelMode::Uniform => {
            let k = need_k()?;
            let pair = match divisors {
                Some(raw) => {
                    let v = numbers(raw, "--divisors", 2)?;
                    (v[0], v[1])
                }
                None => construct::balanced_divisors(k),
            };
            construct::construct_strongly_k_uniform_bipartite(&g, k, pair)?
        }
        LabelMode::CompletelyUniform => {
            let k = need_k()?;
            let l = construct::integer_sqrt(k)
                .ok_or_else(|| Failure::input(format!("completely uniform labelings need a square k, got {k}")))?;
            construct::completely_uniform_labels(g.n(), l)?
        }
    };
    Ok(Output::ok(json(&f)))
}

fn verify_cmd(graph: &Path, labeling: &Path, property: Property, k: Option<usize>) -> Outcome<Output> {
    let g: Graph = read_json(graph)?;
    let f: Labeling = read_json(labeling)?;
    let r = verify(&g, &f)?;
    let need_k = || k.ok_or_else(|| Failure::input("this property needs --k"));
    let holds = match property {
        Property::Iasl => r.is_set_labeling,
        Property::Iasi => r.is_set_labeling && r.is_set_indexer,
        Property::Strong => r.is_strong,
        Property::StrongIasi => r.is_strong_iasi(),
        Property::Uniform => r.is_set_labeling && r.is_set_indexer && r.uniform_k == Some(need_k()?),
        Property::StronglyUniform => r.is_strongly_uniform(need_k()?),
    };
    Ok(Output {
        text: json(&r),
        code: if holds { 0 } else { 1 },
    })
}

#[derive(Serialize)]
struct Labeled {
    graph: Graph,
    labeling: Labeling,
}

#[allow(clippy::too_many_arguments)]
fn transform(
    op: Op,
    graph: &Path,
    labeling: Option<&PathBuf>,
    other: Option<&PathBuf>,
    edge: Option<&String>,
    path: Option<&String>,
    power: usize,
) -> Outcome<Output> {
    let g: Graph = read_json(graph)?;
    let f: Option<Labeling> = labeling.map(|p| read_json(p)).transpose()?;
    if let Some(f) = &f {
        f.check_total(&g)?;
    }
    let binary = matches!(op, Op::Join | Op::Union | Op::Cartesian | Op::Corona);
    if binary {
        if f.is_some() {
            return Err(Failure::input("binary operations do not induce labelings; drop --labeling"));
        }
        let h: Graph = read_json(other.ok_or_else(|| Failure::input("this operation needs --other"))?)?;
        let c = match op {
            Op::Join => ops::join(&g, &h),
            Op::Union => ops::disjoint_union(&g, &h),
            Op::Cartesian => ops::cartesian_product(&g, &h),
            _ => ops::corona(&g, &h),
        };
        return Ok(Output::ok(json(&c.graph)));
    }
    let (h, induced) = match (op, &f) {
        (Op::Power, None) => (ops::power(&g, power)?, None),
        (Op::Line, None) => (ops::line_graph(&g)?.0, None),
        (Op::Total, None) => (ops::total_graph(&g)?.0, None),
        (Op::Subdivide, None) => (ops::subdivide(&g, edge_arg(edge)?)?.0, None),
        (Op::Contract, None) => (ops::contract(&g, edge_arg(edge)?)?.graph, None),
        (Op::Complement, None) => (ops::complement(&g), None),
        (Op::Reduce, None) => {
            let p = numbers(path.ok_or_else(|| Failure::input("reduce needs --path u,w,v"))?, "--path", 3)?;
            (ops::reduce_path(&g, (p[0], p[1], p[2]))?.0, None)
        }
        (Op::Line, Some(f)) => split(labeling::induce_on_line_graph(&g, f)?),
        (Op::Total, Some(f)) => split(labeling::induce_on_total_graph(&g, f)?),
        (Op::Subdivide, Some(f)) => split(labeling::induce_on_subdivision(&g, f, edge_arg(edge)?)?),
        (Op::Contract, Some(f)) => {
            let (c, fl) = labeling::induce_on_contraction(&g, f, edge_arg(edge)?)?;
            (c.graph, Some(fl))
        }
        (Op::Complement, Some(f)) => split(labeling::complement_with_labels(&g, f)?),
        (Op::Reduce, Some(f)) => {
            let p = numbers(path.ok_or_else(|| Failure::input("reduce needs --path u,w,v"))?, "--path", 3)?;
            let path = (p[0], p[1], p[2]);
            if !labeling::reduction_condition(f, path, ReductionReading::EndVertices)? {
                return Err(Error::Precondition(
                    "end vertices of the reduced path have intersecting difference sets".into(),
                )
                .into());
            }
            split(labeling::induce_on_reduction(&g, f, path)?)
        }
        (Op::Power, Some(f)) => (ops::power(&g, power)?, Some(f.clone())),
        _ => unreachable!("binary operations handled above"),
    };
    let text = match induced {
        None => json(&h),
        Some(labeling) => json(&Labeled { graph: h, labeling }),
    };
    Ok(Output::ok(text))
}

fn split((g, f): (Graph, Labeling)) -> (Graph, Option<Labeling>) {
    (g, Some(f))
}

fn nourish_cmd(grid: Option<&PathBuf>, preset: Option<Preset>, format: Format, cap: usize) -> Outcome<Output> {
    let specs: Vec<FamilySpec> = match (grid, preset) {
        (Some(p), _) => read_json(p)?,
        (None, Some(Preset::Verified)) => nourish::verified_grid(),
        (None, Some(Preset::Diagnostic)) => nourish::diagnostic_grid(),
        (None, None) => return Err(Failure::input("nourish needs --grid or --preset")),
    };
    for s in &specs {
        s.validate()?;
    }
    let cmp = nourish::compare(&specs, cap)?;
    let text = match format {
        Format::Csv => nourish::to_csv_string(&cmp)?,
        Format::Json => json(&cmp),
    };
    Ok(Output::ok(text))
}

fn decide(graph: &Path, k: usize) -> Outcome<Output> {
    let g: Graph = read_json(graph)?;
    Ok(Output::ok(json(&construct::decide_strongly_k_uniform(&g, k)?)))
}

fn search(
    graph: &Path,
    predicate: SearchPredicate,
    k: Option<usize>,
    max_element: u64,
    max_card: usize,
    budget: u128,
) -> Outcome<Output> {
    let g: Graph = read_json(graph)?;
    let predicate = match predicate {
        SearchPredicate::Strong => Predicate::Strong,
        SearchPredicate::StronglyUniform => {
            Predicate::StronglyUniform(k.ok_or_else(|| Failure::input("strongly-uniform needs --k"))?)
        }
    };
    let bounds = SearchBounds::new(max_element, max_card)?;
    Ok(Output::ok(json(&construct::search_decision(&g, predicate, bounds, budget)?)))
}

#[derive(Serialize)]
struct IsoReport {
    isomorphic: bool,
    vertices: usize,
}

fn iso(graph: &Path, other: &Path, cap: usize) -> Outcome<Output> {
    let g: Graph = read_json(graph)?;
    let h: Graph = read_json(other)?;
    let n = g.n().max(h.n());
    if n > cap {
        return Err(Error::CapExceeded { n, cap }.into());
    }
    let isomorphic = iasi_core::graph::is_isomorphic(&g, &h);
    Ok(Output {
        text: json(&IsoReport {
            isomorphic,
            vertices: n,
        }),
        code: if isomorphic { 0 } else { 1 },
    })
}

fn check_paper(cap: usize) -> Outcome<Output> {
    let (outcomes, nourish_audit) = audit::run_all(cap)?;
    let ledger = audit::ledger(&outcomes, &nourish_audit)?;
    write_atomic(Path::new(LEDGER_PATH), &ledger)?;
    write_atomic(
        Path::new(LEDGER_CSV_PATH),
        &nourish::to_csv_string(&nourish_audit.diagnostic)?,
    )?;
    let mut text: String = outcomes.iter().map(|o| o.line() + "\n").collect();
    text.push_str(&format!("ledger written to {LEDGER_PATH}\n"));
    let all = outcomes.iter().all(|o| o.passed);
    Ok(Output {
        text,
        code: if all { 0 } else { 1 },
    })
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, text: &str) -> Outcome<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&dir).map_err(|e| Failure::io(&dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(|e| Failure::io(&dir, e))?;
    tmp.write_all(text.as_bytes()).map_err(|e| Failure::io(path, e))?;
    tmp.persist(path).map_err(|e| Failure::io(path, e.error))?;
    Ok(())
}

fn inputs(cmd: &Command) -> Vec<&PathBuf> {
    match cmd {
        Command::Label { graph, .. } | Command::Decide { graph, .. } | Command::Search { graph, .. } => vec![graph],
        Command::Verify { graph, labeling, .. } => vec![graph, labeling],
        Command::Transform {
            graph, labeling, other, ..
        } => std::iter::once(graph).chain(labeling).chain(other).collect(),
        Command::Nourish { grid, .. } => grid.iter().collect(),
        Command::Iso { graph, other } => vec![graph, other],
        Command::Gen { .. } | Command::CheckPaper => Vec::new(),
    }
}

fn run(cli: Cli) -> Outcome<Output> {
    if cli.oracle_cap == Some(0) || cli.iso_cap == Some(0) {
        return Err(Failure::input("caps must be positive"));
    }
    if let Some(out) = &cli.output {
        if inputs(&cli.command).contains(&out) {
            return Err(Failure::input("output path must differ from every input path"));
        }
    }
    let cap = cli.oracle_cap.unwrap_or_else(nourish::oracle_cap_from_env);
    let iso_cap = cli.iso_cap.unwrap_or_else(nourish::iso_cap_from_env);
    match &cli.command {
        Command::Gen { family, params, power } => gen(family, params, *power),
        Command::Label {
            graph,
            mode,
            k,
            divisors,
        } => label(graph, *mode, *k, divisors.as_ref()),
        Command::Verify {
            graph,
            labeling,
            property,
            k,
        } => verify_cmd(graph, labeling, *property, *k),
        Command::Transform {
            op,
            graph,
            labeling,
            other,
            edge,
            path,
            power,
        } => {
            transform(*op, graph, labeling.as_ref(), other.as_ref(), edge.as_ref(), path.as_ref(), *power)
        }
        Command::Nourish { grid, preset, format } => nourish_cmd(grid.as_ref(), *preset, *format, cap),
        Command::Decide { graph, k } => decide(graph, *k),
        Command::Search {
            graph,
            predicate,
            k,
            max_element,
            max_card,
            budget,
        } => search(graph, *predicate, *k, *max_element, *max_card, *budget),
        Command::Iso { graph, other } => iso(graph, other, iso_cap),
        Command::CheckPaper => check_paper(cap),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.output.clone();
    match run(cli) {
        Ok(out) => {
            let written = match &output {
                Some(path) => write_atomic(path, &out.text),
                None => io::stdout()
                    .write_all(out.text.as_bytes())
                    .map_err(|e| Failure::io(Path::new("<stdout>"), e)),
            };
            match written {
                Ok(()) => ExitCode::from(out.code),
                Err(f) => {
                    eprintln!("error: {}", f.message);
                    ExitCode::from(f.code)
                }
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
