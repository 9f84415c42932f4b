//! Command-line front end: argument definitions, file formats and the
//! subcommands. `main` only parses arguments and prints.

pub mod format;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use toric::buchberger::{buchberger_with, normal_form, BuchbergerOptions, GroebnerBasis};
use toric::exactmath::{max_abs_minor, IntMatrix};
use toric::fan::{groebner_cone, regular_triangulation};
use toric::instances;
use toric::ip::{feasible_point, fiber_with_limit, solve_ip_elimination, IPInstance};
use toric::orders::{TermOrder, TieBreak};
use toric::toric::{circuits, graver, lawrence, toric_generators, universal_gb_with, ConfigMatrix, UniversalOptions};

use format::{binomial, parse_list, tuple, MatrixFile, ParseError, Table, VectorListFile, WeightFile};

#[derive(Debug, Parser)]
#[command(name = "toric", version, about = "Toric ideals, Groebner and Graver bases, Groebner fans and integer programs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print a JSON report on stdout instead of the text output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Render lattice vectors as binomials.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Write the main output (a vector list or matrix file) here.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Largest fiber the `fiber` command enumerates.
    #[arg(long, global = true, default_value_t = 200_000)]
    pub max_fiber: usize,
    /// Refuse Graver computations whose a-priori entry bound (n-d)D(A) needs more bits.
    #[arg(long, global = true, default_value_t = 32)]
    pub max_graver_bits: u64,
    /// Largest number of Graver elements the sign-pattern enumeration accepts.
    #[arg(long, global = true, default_value_t = 22)]
    pub max_graver: usize,
    /// Abort a Groebner computation once an element of larger degree appears.
    #[arg(long, global = true)]
    pub max_degree: Option<i64>,
}

#[derive(Debug, Args)]
pub struct WeightArgs {
    /// Weight vector, e.g. `1,0,3/2`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "weight_file")]
    pub weight: Option<String>,
    /// Weight file (`1 N` header, rationals allowed).
    #[arg(long)]
    pub weight_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RhsArgs {
    /// Right-hand side, e.g. `5` or `3,3,3,3,3,3`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "rhs_file")]
    pub rhs: Option<String>,
    /// Right-hand side file (`1 D` header).
    #[arg(long)]
    pub rhs_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TieArg {
    Lex,
    Degrevlex,
    Revlex,
}

impl From<TieArg> for TieBreak {
    fn from(t: TieArg) -> Self {
        match t {
            TieArg::Lex => TieBreak::Lex,
            TieArg::Degrevlex => TieBreak::DegRevLex,
            TieArg::Revlex => TieBreak::RevLex,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Method {
    Reduce,
    Eliminate,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FanMode {
    Count,
    Cones,
    Triangulate,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced Groebner basis of the toric ideal.
    Groebner {
        matrix: PathBuf,
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, value_enum, default_value = "degrevlex")]
        tiebreak: TieArg,
    },
    /// Graver basis.
    Graver { matrix: PathBuf },
    /// Circuits, with their true degrees.
    Circuits { matrix: PathBuf },
    /// Universal Groebner basis and the number of initial ideals.
    Universal { matrix: PathBuf },
    /// Minimize `w . x` subject to `A x = b`, `x >= 0` integer.
    Solve {
        matrix: PathBuf,
        #[command(flatten)]
        weight: WeightArgs,
        #[command(flatten)]
        rhs: RhsArgs,
        #[arg(long, value_enum, default_value = "reduce")]
        method: Method,
        #[arg(long, value_enum, default_value = "lex")]
        tiebreak: TieArg,
    },
    /// Every point of a fiber `{x >= 0 : A x = b}`.
    Fiber {
        matrix: PathBuf,
        #[command(flatten)]
        rhs: RhsArgs,
    },
    /// Groebner fan: count initial ideals, list cones, or triangulate.
    Fan {
        matrix: PathBuf,
        #[arg(long, value_enum, default_value = "count")]
        mode: FanMode,
        #[command(flatten)]
        weight: WeightArgs,
    },
    /// Write a configuration matrix from one of the standard families.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// Columns e_i + e_j + ... for the given factor dimensions.
    Segre {
        #[arg(required = true)]
        dims: Vec<usize>,
    },
    /// Columns e_i + e_j, i < j.
    Hypersimplex2 { d: usize },
    /// Lawrence lifting [[A, 0], [I, I]] of a matrix file.
    Lawrence { matrix: PathBuf },
    /// The 1 x n matrix of the given exponents.
    MonomialCurve {
        #[arg(required = true)]
        exponents: Vec<i64>,
    },
    /// Incidence matrix of an s-cycle with an l-cycle attached at each vertex.
    TtGraph { s: usize, l: usize },
    /// Incidence matrix of the complete bipartite graph K_{r,c}.
    Transport { r: usize, c: usize },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {err}")]
    Parse { path: String, err: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {err}")]
    Io { path: String, err: std::io::Error },
    #[error(transparent)]
    Domain(#[from] toric::Error),
}

impl CliError {
    /// 1 usage or parse, 2 domain, 3 non-generic weight, 4 resource limit.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Domain(e) => match e {
                toric::Error::NonGenericOmega(_) => 3,
                toric::Error::LimitExceeded(_) | toric::Error::GuardViolated(_) | toric::Error::Overflow => 4,
                _ => 2,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// What a command produced.
#[derive(Debug, Clone)]
pub struct Output {
    /// The main text output (for `-o` or stdout).
    pub text: String,
    /// Summary lines printed on stderr in text mode.
    pub summary: Vec<String>,
    pub json: Value,
    pub exit_code: i32,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|err| CliError::Io { path: path.display().to_string(), err })
}

fn parse_file<T: std::str::FromStr>(path: &Path) -> Result<Table<T>> {
    Table::parse(&read(path)?).map_err(|err| CliError::Parse { path: path.display().to_string(), err })
}

pub fn load_matrix(path: &Path) -> Result<MatrixFile> {
    parse_file(path)
}

fn load_config(path: &Path) -> Result<ConfigMatrix> {
    let m = load_matrix(path)?;
    if m.rows == 0 || m.cols == 0 {
        return Err(CliError::Usage(format!("{}: empty matrix", path.display())));
    }
    Ok(ConfigMatrix::from_rows(&m.data)?)
}

fn single_row<T: std::str::FromStr + Clone>(path: &Path) -> Result<Vec<T>> {
    let t: Table<T> = parse_file(path)?;
    match &t.data[..] {
        [row] => Ok(row.clone()),
        _ => Err(CliError::Usage(format!("{}: expected exactly one row", path.display()))),
    }
}

fn inline<T: std::str::FromStr>(flag: &str, s: &str) -> Result<Vec<T>> {
    parse_list(s).map_err(|e| CliError::Usage(format!("--{flag}: {}", e.msg)))
}

fn weight_of(args: &WeightArgs, n: usize) -> Result<Option<Vec<BigRational>>> {
    let w: Vec<BigRational> = match (&args.weight, &args.weight_file) {
        (Some(s), _) => inline("weight", s)?,
        (None, Some(p)) => single_row(p)?,
        (None, None) => return Ok(None),
    };
    if w.len() != n {
        return Err(CliError::Usage(format!("weight has {} entries, the matrix has {n} columns", w.len())));
    }
    Ok(Some(w))
}

fn rhs_of(args: &RhsArgs) -> Result<Vec<i64>> {
    match (&args.rhs, &args.rhs_file) {
        (Some(s), _) => inline("rhs", s),
        (None, Some(p)) => single_row(p),
        (None, None) => Err(CliError::Usage("a right-hand side is required (--rhs or --rhs-file)".into())),
    }
}

/// The term order of a weight, shifted along the grading to be positive.
fn order_of(a: &ConfigMatrix, w: &[BigRational], tb: TieBreak) -> Result<TermOrder> {
    let pos = a.positive_weight(w)?;
    Ok(TermOrder::from_integer_weight(pos, tb, (0..a.n()).collect())?)
}

fn groebner_basis(a: &ConfigMatrix, ord: &TermOrder, max_degree: Option<i64>) -> Result<GroebnerBasis> {
    let gens = toric_generators(a)?;
    let opts = BuchbergerOptions { max_degree, ..BuchbergerOptions::default() };
    Ok(buchberger_with(&gens, ord, &opts)?)
}

fn check_graver_bits(a: &ConfigMatrix, max_bits: u64) -> Result<()> {
    let bound = BigInt::from(a.n() - a.d()) * max_abs_minor(a.matrix())?;
    if bound.bits() > max_bits {
        return Err(toric::Error::LimitExceeded(format!(
            "Graver entries may need {} bits (bound {bound}), limit is {max_bits}",
            bound.bits()
        ))
        .into());
    }
    Ok(())
}

fn vector_text(n: usize, vs: &[Vec<i64>], pretty: bool) -> String {
    if pretty {
        vs.iter().map(|v| binomial(v) + "\n").collect()
    } else {
        VectorListFile::new(n, vs.to_vec()).to_string()
    }
}

fn rational_strings(w: &[BigRational]) -> Vec<String> {
    w.iter().map(ToString::to_string).collect()
}

fn to_json<T: Serialize>(r: &T) -> Value {
    serde_json::to_value(r).expect("reports serialize")
}

#[derive(Debug, Serialize)]
pub struct GroebnerReport {
    pub command: &'static str,
    pub n: usize,
    pub weight: Vec<String>,
    pub tiebreak: String,
    pub elements: usize,
    pub max_degree: i64,
    pub vectors: Vec<Vec<i64>>,
    pub initial_ideal: Vec<Vec<i64>>,
}

#[derive(Debug, Serialize)]
pub struct BasisReport {
    pub command: &'static str,
    pub n: usize,
    pub elements: usize,
    pub max_degree: i64,
    pub vectors: Vec<Vec<i64>>,
}

#[derive(Debug, Serialize)]
pub struct CircuitReport {
    pub command: &'static str,
    pub n: usize,
    pub elements: usize,
    pub max_degree: i64,
    pub max_true_degree: i64,
    pub vectors: Vec<Vec<i64>>,
    pub multipliers: Vec<i64>,
    pub true_degrees: Vec<i64>,
}

#[derive(Debug, Serialize)]
pub struct UniversalReport {
    pub command: &'static str,
    pub n: usize,
    pub elements: usize,
    pub initial_ideals: usize,
    pub vectors: Vec<Vec<i64>>,
}

#[derive(Debug, Serialize)]
pub struct SolveReport {
    pub command: &'static str,
    pub method: String,
    pub status: &'static str,
    pub point: Option<Vec<i64>>,
    pub cost: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct FiberReport {
    pub command: &'static str,
    pub count: usize,
    pub points: Vec<Vec<i64>>,
}

#[derive(Debug, Serialize)]
pub struct ConeReport {
    pub facets: usize,
    pub lineality: usize,
    pub witness: Vec<String>,
    pub initial_ideal: Vec<Vec<i64>>,
}

#[derive(Debug, Serialize)]
pub struct FanReport {
    pub command: &'static str,
    pub mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial_ideals: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cones: Option<Vec<ConeReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Serialize)]
pub struct GenReport {
    pub command: &'static str,
    pub rows: usize,
    pub cols: usize,
    pub matrix: Vec<Vec<i64>>,
}

fn tiebreak_name(t: TieArg) -> String {
    t.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn max_degree(a: &ConfigMatrix, vs: &[Vec<i64>]) -> Result<i64> {
    Ok(vs.iter().map(|v| a.degree(v)).collect::<toric::Result<Vec<_>>>()?.into_iter().max().unwrap_or(0))
}

fn universal_options(cli: &Cli) -> UniversalOptions {
    UniversalOptions { max_graver: cli.max_graver, ..UniversalOptions::default() }
}

/// Runs the parsed command line.
pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Groebner { matrix, weight, tiebreak } => {
            let a = load_config(matrix)?;
            let w = weight_of(weight, a.n())?.unwrap_or_else(|| vec![BigRational::zero(); a.n()]);
            let ord = order_of(&a, &w, (*tiebreak).into())?;
            let gb = groebner_basis(&a, &ord, cli.max_degree)?;
            let vectors = gb.vectors();
            let report = GroebnerReport {
                command: "groebner",
                n: a.n(),
                weight: rational_strings(&w),
                tiebreak: tiebreak_name(*tiebreak),
                elements: vectors.len(),
                max_degree: max_degree(&a, &vectors)?,
                initial_ideal: gb.initial_ideal(),
                vectors,
            };
            let summary = vec![
                format!("elements: {}", report.elements),
                format!("max_degree: {}", report.max_degree),
                format!("initial_ideal: {}", report.initial_ideal.iter().map(|m| tuple(m)).collect::<Vec<_>>().join(" ")),
            ];
            Ok(Output { text: vector_text(a.n(), &report.vectors, cli.pretty), summary, json: to_json(&report), exit_code: 0 })
        }
        Command::Graver { matrix } => {
            let a = load_config(matrix)?;
            check_graver_bits(&a, cli.max_graver_bits)?;
            let vectors = graver(&a)?;
            let report = BasisReport { command: "graver", n: a.n(), elements: vectors.len(), max_degree: max_degree(&a, &vectors)?, vectors };
            let summary = vec![format!("elements: {}", report.elements), format!("max_degree: {}", report.max_degree)];
            Ok(Output { text: vector_text(a.n(), &report.vectors, cli.pretty), summary, json: to_json(&report), exit_code: 0 })
        }
        Command::Circuits { matrix } => {
            let a = load_config(matrix)?;
            let cs = circuits(&a)?;
            let vectors: Vec<Vec<i64>> = cs.iter().map(|c| c.vector.clone()).collect();
            let report = CircuitReport {
                command: "circuits",
                n: a.n(),
                elements: cs.len(),
                max_degree: max_degree(&a, &vectors)?,
                max_true_degree: cs.iter().map(|c| c.true_degree).max().unwrap_or(0),
                multipliers: cs.iter().map(|c| c.multiplier).collect(),
                true_degrees: cs.iter().map(|c| c.true_degree).collect(),
                vectors,
            };
            let summary = vec![
                format!("elements: {}", report.elements),
                format!("max_degree: {}", report.max_degree),
                format!("max_true_degree: {}", report.max_true_degree),
            ];
            Ok(Output { text: vector_text(a.n(), &report.vectors, cli.pretty), summary, json: to_json(&report), exit_code: 0 })
        }
        Command::Universal { matrix } => {
            let a = load_config(matrix)?;
            check_graver_bits(&a, cli.max_graver_bits)?;
            let u = universal_gb_with(&a, &universal_options(cli))?;
            let report = UniversalReport { command: "universal", n: a.n(), elements: u.ugb.len(), initial_ideals: u.initial_ideals.len(), vectors: u.ugb };
            let summary = vec![format!("elements: {}", report.elements), format!("initial_ideals: {}", report.initial_ideals)];
            Ok(Output { text: vector_text(a.n(), &report.vectors, cli.pretty), summary, json: to_json(&report), exit_code: 0 })
        }
        Command::Solve { matrix, weight, rhs, method, tiebreak } => {
            let a = load_config(matrix)?;
            let w = weight_of(weight, a.n())?.ok_or_else(|| CliError::Usage("a weight is required (--weight or --weight-file)".into()))?;
            let b = rhs_of(rhs)?;
            let mut inst = IPInstance::new(a.clone(), w, b.clone())?;
            inst.tiebreak = (*tiebreak).into();
            let point = match method {
                Method::Reduce => match feasible_point(&a, &b)? {
                    Some(x) => {
                        let gb = groebner_basis(&a, &inst.order()?, cli.max_degree)?;
                        Some(normal_form(&x, &gb)?)
                    }
                    None => None,
                },
                Method::Eliminate => solve_ip_elimination(&inst)?,
            };
            let method = format!("{method:?}").to_lowercase();
            let (text, report) = match point {
                Some(x) => {
                    let cost = inst.cost(&x).to_string();
                    (
                        format!("{} cost {cost}\n", tuple(&x)),
                        SolveReport { command: "solve", method, status: "optimal", point: Some(x), cost: Some(cost) },
                    )
                }
                None => ("INFEASIBLE\n".to_string(), SolveReport { command: "solve", method, status: "infeasible", point: None, cost: None }),
            };
            let exit_code = if report.point.is_some() { 0 } else { 2 };
            Ok(Output { text, summary: Vec::new(), json: to_json(&report), exit_code })
        }
        Command::Fiber { matrix, rhs } => {
            let a = load_config(matrix)?;
            let b = rhs_of(rhs)?;
            let points = fiber_with_limit(&a, &b, cli.max_fiber)?;
            let text = VectorListFile::new(a.n(), points.clone()).to_string();
            let report = FiberReport { command: "fiber", count: points.len(), points };
            Ok(Output { text, summary: vec![format!("points: {}", report.count)], json: to_json(&report), exit_code: 0 })
        }
        Command::Fan { matrix, mode, weight } => {
            let a = load_config(matrix)?;
            let w = weight_of(weight, a.n())?;
            fan(cli, &a, *mode, w)
        }
        Command::Gen { kind } => {
            let m = generate(kind)?;
            let rows = m.to_i64_rows()?;
            let report = GenReport { command: "gen", rows: m.rows(), cols: m.cols(), matrix: rows.clone() };
            Ok(Output { text: MatrixFile::new(m.cols(), rows).to_string(), summary: Vec::new(), json: to_json(&report), exit_code: 0 })
        }
    }
}

fn fan(cli: &Cli, a: &ConfigMatrix, mode: FanMode, w: Option<Vec<BigRational>>) -> Result<Output> {
    let empty = FanReport { command: "fan", mode: "", initial_ideals: None, cones: None, facets: None };
    match mode {
        FanMode::Count => {
            if w.is_some() {
                return Err(CliError::Usage("count mode takes no weight".into()));
            }
            check_graver_bits(a, cli.max_graver_bits)?;
            let u = universal_gb_with(a, &universal_options(cli))?;
            let k = u.initial_ideals.len();
            let report = FanReport { mode: "count", initial_ideals: Some(k), ..empty };
            Ok(Output { text: format!("{k}\n"), summary: Vec::new(), json: to_json(&report), exit_code: 0 })
        }
        FanMode::Cones => {
            let cones = match w {
                Some(w) => {
                    let gb = groebner_basis(a, &order_of(a, &w, TieBreak::DegRevLex)?, cli.max_degree)?;
                    let cone = groebner_cone(&gb)?;
                    vec![ConeReport {
                        facets: cone.num_facets(),
                        lineality: cone.lineality_dim,
                        witness: rational_strings(&w),
                        initial_ideal: gb.initial_ideal(),
                    }]
                }
                None => {
                    check_graver_bits(a, cli.max_graver_bits)?;
                    let u = universal_gb_with(a, &universal_options(cli))?;
                    u.bases
                        .iter()
                        .zip(&u.witnesses)
                        .map(|(gb, wit)| {
                            let cone = groebner_cone(gb)?;
                            Ok(ConeReport {
                                facets: cone.num_facets(),
                                lineality: cone.lineality_dim,
                                witness: rational_strings(wit),
                                initial_ideal: gb.initial_ideal(),
                            })
                        })
                        .collect::<Result<_>>()?
                }
            };
            let text = cones.iter().map(|c| format!("facets {} witness ({})\n", c.facets, c.witness.join(","))).collect();
            let report = FanReport { mode: "cones", cones: Some(cones), ..empty };
            Ok(Output { text, summary: Vec::new(), json: to_json(&report), exit_code: 0 })
        }
        FanMode::Triangulate => {
            let w = w.ok_or_else(|| CliError::Usage("triangulate mode needs a weight".into()))?;
            let delta = regular_triangulation(a, &w)?;
            let facets: Vec<Vec<usize>> = delta.facets.iter().map(|f| f.iter().map(|v| v + 1).collect()).collect();
            let text = facets.iter().map(|f| f.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ") + "\n").collect();
            let report = FanReport { mode: "triangulate", facets: Some(facets), ..empty };
            Ok(Output { text, summary: Vec::new(), json: to_json(&report), exit_code: 0 })
        }
    }
}

fn generate(kind: &GenKind) -> Result<IntMatrix> {
    let m = match kind {
        GenKind::Segre { dims } => instances::segre(dims),
        GenKind::Hypersimplex2 { d } => instances::hypersimplex2(*d),
        GenKind::Lawrence { matrix } => {
            let m = load_matrix(matrix)?;
            IntMatrix::from_rows(&m.data).map(|m| lawrence(&m))
        }
        GenKind::MonomialCurve { exponents } => instances::monomial_curve(exponents),
        GenKind::TtGraph { s, l } => instances::tt_graph(*s, *l),
        GenKind::Transport { r, c } => instances::transport(*r, *c),
    };
    m.map_err(|e| match e {
        toric::Error::InvalidInput(msg) => CliError::Usage(msg),
        e => e.into(),
    })
}

/// Parses a weight file (exposed for round-trip tests).
pub fn parse_weight_file(text: &str) -> std::result::Result<WeightFile, ParseError> {
    WeightFile::parse(text)
}
