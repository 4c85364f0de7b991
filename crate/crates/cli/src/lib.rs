//! Command-line front end for `motive-core`.
//!
//! Every subcommand builds a [`Report`]: a JSON value and a plain-text rendering
//! of the same result. Output is a pure function of the arguments and input files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use motive_core::curve::{self, CurveProfile};
use motive_core::formats::{ClemensSchmidFile, CurveFile, DoubleComplexFile, GraphFile, StrataFile};
use motive_core::graph::{enumerate_rooted_forests, enumerate_spanning_trees, EdgeSubset, Multigraph};
use motive_core::hodge::{self, Filtration};
use motive_core::motive::{self, PsiRoute, POINT_COUNT_LIMIT};
use motive_core::polynomial::MPoly;
use motive_core::{Error, Rational};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(
    name = "motive",
    version,
    about = "Exact graph polynomials, curve invariants and spectral-sequence bookkeeping"
)]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Largest admissible point-count cost q^m.
    #[arg(long, global = true, default_value_t = POINT_COUNT_LIMIT, value_parser = positive_u128)]
    pub max_points: u128,

    /// Largest admissible determinant dimension for graph matrices.
    #[arg(long, global = true, default_value_t = MATRIX_DIM_LIMIT, value_parser = positive_usize)]
    pub max_matrix: usize,

    #[command(subcommand)]
    pub command: Command,
}

pub const MATRIX_DIM_LIMIT: usize = 64;

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_u128(s: &str) -> Result<u128, String> {
    match s.parse::<u128>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Tree,
    Config,
    Laplacian,
}

impl From<RouteArg> for PsiRoute {
    fn from(r: RouteArg) -> Self {
        match r {
            RouteArg::Tree => PsiRoute::Tree,
            RouteArg::Config => PsiRoute::Config,
            RouteArg::Laplacian => PsiRoute::Laplacian,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FiltrationArg {
    Columns,
    Rows,
}

impl From<FiltrationArg> for Filtration {
    fn from(f: FiltrationArg) -> Self {
        match f {
            FiltrationArg::Columns => Filtration::Columns,
            FiltrationArg::Rows => Filtration::Rows,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kirchhoff polynomial of a graph.
    Psi {
        /// Graph JSON file.
        file: PathBuf,
        /// Construction to use.
        #[arg(long, value_enum, default_value_t = RouteArg::Tree)]
        route: RouteArg,
    },
    /// Spanning trees: count them or list them.
    #[command(group(ArgGroup::new("mode").required(true).args(["count", "list"])))]
    Trees {
        file: PathBuf,
        /// Print the number of spanning trees (matrix-tree theorem).
        #[arg(long)]
        count: bool,
        /// List every spanning tree as its edge ids.
        #[arg(long)]
        list: bool,
    },
    /// Spanning forests with exactly one of the given roots in each tree.
    Forests {
        file: PathBuf,
        /// Comma-separated root vertices.
        #[arg(long, value_delimiter = ',', required = true)]
        roots: Vec<usize>,
    },
    /// Characteristic polynomial of the vertex-weighted Laplacian and its forest expansion.
    Charpoly { file: PathBuf },
    /// Cofactor of the weighted Laplacian against the rooted-tree sum.
    CofactorCheck { file: PathBuf, u: usize, v: usize },
    /// Projective point counts of the graph hypersurface over F_q.
    Points {
        file: PathBuf,
        /// Prime field size.
        #[arg(long)]
        q: u64,
    },
    /// Deletion-contraction recursion at one edge.
    DelCon {
        file: PathBuf,
        /// Edge id (neither a loop nor a bridge).
        #[arg(long)]
        edge: usize,
    },
    /// Invariants of a singular curve given by a modulus.
    #[command(subcommand)]
    Curve(CurveCommand),
    /// Spectral sequences, divisor weights and exactness checks.
    #[command(subcommand)]
    Ss(SsCommand),
}

#[derive(Debug, Subcommand)]
pub enum CurveCommand {
    /// delta = dim O'/O.
    Delta { file: PathBuf },
    /// Geometric, arithmetic genus and delta.
    Genus { file: PathBuf },
    /// Dimension split of the generalized Jacobian.
    Jacobian { file: PathBuf },
    /// Theta divisor dimensions.
    Theta { file: PathBuf },
    /// Dimensions in the analytic uniformization.
    Uniformization { file: PathBuf },
    /// Genus of a plane curve of degree d.
    Plucker(PluckerArgs),
}

#[derive(Debug, Args)]
pub struct PluckerArgs {
    /// Degree of the plane curve (at least 3).
    #[arg(long)]
    pub d: u32,
    /// Total delta invariant of the singularities, for the geometric genus.
    #[arg(long)]
    pub delta: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum SsCommand {
    /// Cohomology of the total complex of a double complex.
    Total { file: PathBuf },
    /// Pages E_0, E_1, E_2, ..., E_inf with the degeneration verdict.
    Pages {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = FiltrationArg::Columns)]
        filtration: FiltrationArg,
    },
    /// Weight-graded cohomology of a normal crossing divisor from its strata.
    Ncd { file: PathBuf },
    /// One Steenbrink E_1 entry, E_1^{-r, q+r}, from divisor strata.
    Steenbrink {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        r: i64,
        #[arg(long)]
        q: i64,
    },
    /// Exactness of a Clemens-Schmid sequence.
    CsCheck { file: PathBuf },
}

#[derive(Debug)]
pub enum CliError {
    Io { path: PathBuf, source: std::io::Error },
    Domain(Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io { path, source } => write!(f, "cannot read {}: {source}", path.display()),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

/// Result of one subcommand in both renderings.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub text: String,
}

impl Report {
    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn with_path(path: &Path, e: Error) -> CliError {
    match e {
        Error::Parse(msg) => CliError::Domain(Error::Parse(format!("{}: {msg}", path.display()))),
        other => CliError::Domain(other),
    }
}

fn load_graph(path: &Path) -> Result<(GraphFile, Multigraph), CliError> {
    let file = GraphFile::parse(&read(path)?).map_err(|e| with_path(path, e))?;
    let g = file.graph()?;
    Ok((file, g))
}

fn load_curve(path: &Path) -> Result<CurveProfile, CliError> {
    let file = CurveFile::parse(&read(path)?).map_err(|e| with_path(path, e))?;
    Ok(file.profile()?)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn polynomial(p: &MPoly) -> Value {
    json!({
        "nvars": p.nvars(),
        "polynomial": p.to_string(),
        "terms": to_value(&p.to_json_terms()),
    })
}

fn subsets(list: &[EdgeSubset]) -> Value {
    Value::Array(list.iter().map(|s| to_value(&s.edges())).collect())
}

fn subset_lines(list: &[EdgeSubset]) -> String {
    let mut out = String::new();
    for s in list {
        let ids: Vec<String> = s.edges().iter().map(usize::to_string).collect();
        writeln!(out, "{{{}}}", ids.join(", ")).unwrap();
    }
    out
}

/// Univariate rendering with descending powers of `lambda`.
fn lambda_polynomial(coeffs: &[Rational]) -> String {
    let mut p = MPoly::zero(1);
    for (s, c) in coeffs.iter().enumerate() {
        p = &p + &MPoly::monomial(1, vec![s as u32], c.clone());
    }
    p.to_string().replace("x0", "lambda")
}

fn grid_text(name: &str, grid: &[Vec<usize>]) -> String {
    let mut out = format!("{name}:\n");
    let height = grid.first().map_or(0, Vec::len);
    for q in (0..height).rev() {
        let row: Vec<String> = grid.iter().map(|col| format!("{:>3}", col[q])).collect();
        writeln!(out, "  q={q:<2}{}", row.join("")).unwrap();
    }
    out
}

fn matrix_guard(cli: &Cli, dim: usize) -> Result<(), CliError> {
    if dim > cli.max_matrix {
        return Err(CliError::Domain(Error::GuardExceeded {
            what: "matrix dimension",
            actual: dim as u128,
            limit: cli.max_matrix as u128,
        }));
    }
    Ok(())
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Psi { file, route } => {
            let (_, g) = load_graph(file)?;
            match route {
                RouteArg::Tree => {}
                RouteArg::Config => matrix_guard(cli, g.loop_number())?,
                RouteArg::Laplacian => matrix_guard(cli, g.vertex_count().saturating_sub(1))?,
            }
            let p = motive::psi(&g, (*route).into())?;
            let mut v = polynomial(&p);
            v["route"] = to_value(&PsiRoute::from(*route));
            Ok(Report { text: format!("{p}\n"), json: v })
        }
        Command::Trees { file, list, .. } => {
            let (_, g) = load_graph(file)?;
            if *list {
                let trees = enumerate_spanning_trees(&g)?;
                Ok(Report {
                    text: format!("{} spanning trees\n{}", trees.len(), subset_lines(&trees)),
                    json: json!({ "count": trees.len(), "trees": subsets(&trees) }),
                })
            } else {
                g.require_connected()?;
                matrix_guard(cli, g.vertex_count().saturating_sub(1))?;
                let count = motive::matrix_tree_count(&g);
                Ok(Report { text: format!("{count}\n"), json: json!({ "count": count.to_string() }) })
            }
        }
        Command::Forests { file, roots } => {
            let (_, g) = load_graph(file)?;
            let forests = enumerate_rooted_forests(&g, roots)?;
            Ok(Report {
                text: format!("{} rooted spanning forests\n{}", forests.len(), subset_lines(&forests)),
                json: json!({ "roots": roots, "count": forests.len(), "forests": subsets(&forests) }),
            })
        }
        Command::Charpoly { file } => {
            let (f, g) = load_graph(file)?;
            matrix_guard(cli, g.vertex_count())?;
            let wb = f.weights(&g)?;
            let report = motive::forest_charpoly_check(&g, &wb)?;
            let mut text = format!("det(lambda I - L) = {}\n", lambda_polynomial(&report.charpoly));
            let mut rows = Vec::new();
            for r in &report.rows {
                writeln!(
                    text,
                    "  s={}: coefficient {}, forest sum {}, sign {:+}, {}",
                    r.roots,
                    r.coefficient,
                    r.forest_sum,
                    r.sign,
                    if r.magnitude_matches && r.sign_matches { "ok" } else { "MISMATCH" }
                )
                .unwrap();
                rows.push(json!({
                    "roots": r.roots,
                    "coefficient": rational(&r.coefficient),
                    "forest_sum": rational(&r.forest_sum),
                    "sign": r.sign,
                    "magnitude_matches": r.magnitude_matches,
                    "sign_matches": r.sign_matches,
                }));
            }
            Ok(Report {
                text,
                json: json!({
                    "charpoly": report.charpoly.iter().map(rational).collect::<Vec<_>>(),
                    "forests": rows,
                    "all_match": report.all_match(),
                }),
            })
        }
        Command::CofactorCheck { file, u, v } => {
            let (f, g) = load_graph(file)?;
            matrix_guard(cli, g.vertex_count())?;
            let wb = f.weights(&g)?;
            let c = motive::cofactor_tree_identity(&g, &wb, *u, *v)?;
            Ok(Report {
                text: format!(
                    "signed cofactor {}\ntree side {}\n{}\n",
                    c.signed_cofactor,
                    c.tree_side,
                    if c.holds { "identity holds" } else { "identity FAILS" }
                ),
                json: json!({
                    "u": u,
                    "v": v,
                    "signed_cofactor": rational(&c.signed_cofactor),
                    "unsigned_minor": rational(&c.unsigned_minor),
                    "tree_side": rational(&c.tree_side),
                    "holds": c.holds,
                }),
            })
        }
        Command::Points { file, q } => {
            let (_, g) = load_graph(file)?;
            let p = motive::count_points_with_limit(&g, *q, cli.max_points)?;
            let n = |x: u128| Value::from(u64::try_from(x).expect("bounded by the cost guard"));
            Ok(Report {
                text: format!(
                    "q = {}, edges = {}\nhypersurface {}\ncomplement {}\nprojective space {}\n",
                    p.q, p.edges, p.hypersurface, p.complement, p.ambient
                ),
                json: json!({
                    "q": p.q,
                    "edges": p.edges,
                    "hypersurface": n(p.hypersurface),
                    "complement": n(p.complement),
                    "ambient": n(p.ambient),
                }),
            })
        }
        Command::DelCon { file, edge } => {
            let (_, g) = load_graph(file)?;
            let d = motive::deletion_contraction_check(&g, *edge)?;
            Ok(Report {
                text: format!(
                    "Psi = {}\nPsi(G/e) + x{edge} Psi(G-e) = {}\n{}\n",
                    d.psi,
                    d.recursion,
                    if d.holds { "recursion holds" } else { "recursion FAILS" }
                ),
                json: json!({
                    "edge": edge,
                    "psi": d.psi.to_string(),
                    "recursion": d.recursion.to_string(),
                    "holds": d.holds,
                }),
            })
        }
        Command::Curve(c) => curve_command(c),
        Command::Ss(s) => ss_command(s),
    }
}

fn curve_command(c: &CurveCommand) -> Result<Report, CliError> {
    match c {
        CurveCommand::Delta { file } => {
            let p = load_curve(file)?;
            let d = curve::delta(&p);
            Ok(Report { text: format!("delta = {d}\n"), json: json!({ "delta": d }) })
        }
        CurveCommand::Genus { file } => {
            let p = load_curve(file)?;
            let (d, pi) = (curve::delta(&p), curve::arithmetic_genus(&p));
            Ok(Report {
                text: format!("geometric genus {}\ndelta {d}\narithmetic genus {pi}\n", p.genus),
                json: json!({ "genus": p.genus, "delta": d, "arithmetic_genus": pi }),
            })
        }
        CurveCommand::Jacobian { file } => {
            let j = curve::jacobian_profile(&load_curve(file)?)?;
            Ok(Report {
                text: format!(
                    "dim {} = abelian {} + torus {} + unipotent {}\n",
                    j.dim_total, j.dim_abelian, j.torus_rank, j.unipotent_dim
                ),
                json: to_value(&j),
            })
        }
        CurveCommand::Theta { file } => {
            let t = curve::theta_profile(&load_curve(file)?)?;
            Ok(Report {
                text: format!(
                    "dim J {}\ndim theta {}\nsym^n surjective from n = {}\n",
                    t.jacobian_dim, t.theta_dim, t.surjective_at
                ),
                json: to_value(&t),
            })
        }
        CurveCommand::Uniformization { file } => {
            let u = curve::uniformization_check(&load_curve(file)?)?;
            Ok(Report {
                text: format!(
                    "dim {}\nlattice rank {}\n{}\n",
                    u.dim,
                    u.lattice_rank,
                    if u.compact { "compact" } else { "not compact" }
                ),
                json: to_value(&u),
            })
        }
        CurveCommand::Plucker(args) => {
            let p = curve::plucker(args.d)?;
            let mut json = to_value(&p);
            let mut text = format!("degree {}\narithmetic genus {}\n", p.degree, p.arithmetic_genus);
            if let Some(delta) = args.delta {
                let g = p.geometric_genus(delta);
                if g < 0 {
                    return Err(Error::Domain(format!(
                        "delta = {delta} exceeds the arithmetic genus {} of a degree {} curve",
                        p.arithmetic_genus, p.degree
                    ))
                    .into());
                }
                json["geometric_genus"] = Value::from(g);
                writeln!(text, "geometric genus {g}").unwrap();
            }
            Ok(Report { text, json })
        }
    }
}

fn ss_command(s: &SsCommand) -> Result<Report, CliError> {
    let complex = |path: &Path| -> Result<hodge::DoubleComplex, CliError> {
        let f = DoubleComplexFile::parse(&read(path)?).map_err(|e| with_path(path, e))?;
        Ok(f.complex()?)
    };
    let strata = |path: &Path| -> Result<hodge::StrataData, CliError> {
        let f = StrataFile::parse(&read(path)?).map_err(|e| with_path(path, e))?;
        Ok(f.strata()?)
    };
    match s {
        SsCommand::Total { file } => {
            let h = hodge::total_cohomology(&complex(file)?);
            let text: String = h.iter().enumerate().map(|(k, d)| format!("H^{k} = {d}\n")).collect();
            Ok(Report { text, json: json!({ "total_cohomology": h }) })
        }
        SsCommand::Pages { file, filtration } => {
            let ss = hodge::spectral_sequence(&complex(file)?, (*filtration).into());
            let mut text = String::new();
            for (r, page) in ss.pages.iter().enumerate() {
                text.push_str(&grid_text(&format!("E_{r}"), page));
            }
            text.push_str(&grid_text("E_inf", &ss.infinity));
            let h: Vec<String> = ss.total_cohomology.iter().map(usize::to_string).collect();
            writeln!(text, "total cohomology: {}", h.join(" ")).unwrap();
            if ss.degenerates_at_e2() {
                text.push_str("degenerates at E_2\n");
            } else {
                for d in &ss.discrepancies {
                    writeln!(
                        text,
                        "no degeneration at E_2 in degree {}: E_2 total {} vs cohomology {}",
                        d.degree, d.e2_total, d.cohomology
                    )
                    .unwrap();
                }
            }
            let mut json = to_value(&ss);
            json["degenerates_at_e2"] = Value::from(ss.degenerates_at_e2());
            Ok(Report { text, json })
        }
        SsCommand::Ncd { file } => {
            let h = hodge::ncd_betti(&strata(file)?)?;
            let mut text = String::new();
            for d in &h.degrees {
                let w: Vec<String> = d.weights.iter().map(|(w, n)| format!("Gr_{w} = {n}")).collect();
                writeln!(text, "H^{} = {}  [{}]", d.degree, d.dim, w.join(", ")).unwrap();
            }
            Ok(Report { text, json: to_value(&h) })
        }
        SsCommand::Steenbrink { file, r, q } => {
            let e = hodge::steenbrink_e1(&strata(file)?, *r, *q);
            let mut text = format!("dim E_1^({}, {}) = {}\n", -r, q + r, e.dim);
            for t in &e.terms {
                writeln!(text, "  k={}: H^{}(D^({})) ({}) dim {}", t.k, t.degree, t.level, t.twist, t.betti).unwrap();
            }
            Ok(Report { text, json: to_value(&e) })
        }
        SsCommand::CsCheck { file } => {
            let f = ClemensSchmidFile::parse(&read(file)?).map_err(|e| with_path(file, e))?;
            let report = hodge::clemens_schmid_check(&f.data()?)?;
            let mut text = String::new();
            for n in &report.nodes {
                writeln!(
                    text,
                    "{:<12} dim {:>2}  rank in {:>2}  rank out {:>2}  {}",
                    n.label,
                    n.dim,
                    n.rank_in,
                    n.rank_out,
                    if n.exact { "exact" } else { "NOT exact" }
                )
                .unwrap();
            }
            text.push_str(if report.exact { "sequence is exact\n" } else { "sequence is NOT exact\n" });
            Ok(Report { text, json: to_value(&report) })
        }
    }
}
