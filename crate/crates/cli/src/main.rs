//! `pclie`: exact computations in partially commutative Lie algebras.
//!
//! One graph per invocation, batch style. Output comes in two modes:
//! `human` for reading, `machine` for scripting — machine mode is a
//! byte-stable line format (documented in the README) and normal forms
//! print identically in both.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use pclie_core::{
    compare_centralizers, is_decomposable, parse_expr, search_decomposition, split, AlgebraError,
    FieldTag, Graph, LiePoly, MetabelianEngine, MultiDegree, SearchOutcome, SplitSetting,
    StructureTable, Variety, DEFAULT_DIM_CAP, DEFAULT_SEARCH_DIM_CAP,
};

#[derive(Parser)]
#[command(
    name = "pclie",
    version,
    about = "Exact algebra in graph-defined partially commutative Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Human,
    Machine,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dimensions of the quotient: per degree, and per multidegree.
    Info {
        /// Graph file (`n <count>` then `e <i> <j>` lines).
        graph: PathBuf,
        /// `metabelian`, `nilpotent:m`, or `free:k` (truncation window).
        #[arg(long)]
        variety: String,
        /// Degree window for metabelian listings.
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        /// Prime p for GF(p); rationals when absent.
        #[arg(long)]
        field: Option<u64>,
        #[arg(long, value_enum, default_value_t = OutputMode::Human)]
        output: OutputMode,
        /// Refuse nilpotent tables larger than this.
        #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
        dim_cap: usize,
    },
    /// Canonical normal form of an expression.
    Nf {
        graph: PathBuf,
        /// Expression, e.g. `2*[a1,a2] - 1/3*a3` or `[a1,[a2,a3]]`.
        expr: String,
        #[arg(long)]
        variety: String,
        #[arg(long)]
        field: Option<u64>,
        #[arg(long, value_enum, default_value_t = OutputMode::Human)]
        output: OutputMode,
        #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
        dim_cap: usize,
    },
    /// Direct-sum decomposability: verdict, canonical split, verification.
    Decompose {
        graph: PathBuf,
        /// Quotient in which the split is verified.
        #[arg(long, default_value = "nilpotent:3")]
        variety: String,
        /// Degree window for metabelian verification.
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        #[arg(long)]
        field: Option<u64>,
        #[arg(long, value_enum, default_value_t = OutputMode::Human)]
        output: OutputMode,
        /// Also list the finest split, one part per complement component.
        #[arg(long)]
        full: bool,
        /// `p m`: exhaustively search the class-m table over GF(p) as an
        /// independent check.
        #[arg(long, num_args = 2, value_names = ["P", "M"])]
        oracle: Option<Vec<u64>>,
        /// Refuse oracle searches above this ambient dimension.
        #[arg(long, default_value_t = DEFAULT_SEARCH_DIM_CAP)]
        search_cap: usize,
        #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
        dim_cap: usize,
    },
    /// Centralizer in the class-m quotient: computed kernel next to the
    /// graph prediction, compared on the faithful degree window.
    Centralizer {
        graph: PathBuf,
        /// Nilpotency class of the quotient.
        m: u32,
        expr: String,
        #[arg(long)]
        field: Option<u64>,
        #[arg(long, value_enum, default_value_t = OutputMode::Human)]
        output: OutputMode,
        #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
        dim_cap: usize,
    },
}

enum AppError {
    Input(String),
    CapExceeded(String),
    Invariant(String),
}

impl AppError {
    fn exit_code(&self) -> ExitCode {
        match self {
            AppError::Input(_) => ExitCode::from(2),
            AppError::CapExceeded(_) => ExitCode::from(3),
            AppError::Invariant(_) => ExitCode::from(4),
        }
    }

    fn message(&self) -> &str {
        match self {
            AppError::Input(m) | AppError::CapExceeded(m) | AppError::Invariant(m) => m,
        }
    }
}

impl From<AlgebraError> for AppError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::DimensionCap { .. } => AppError::CapExceeded(e.to_string()),
            AlgebraError::InvariantViolation(_) => AppError::Invariant(e.to_string()),
            _ => AppError::Input(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}

fn run(cmd: Cmd) -> Result<(), AppError> {
    match cmd {
        Cmd::Info {
            graph,
            variety,
            max_degree,
            field,
            output,
            dim_cap,
        } => cmd_info(&graph, &variety, max_degree, field, output, dim_cap),
        Cmd::Nf {
            graph,
            expr,
            variety,
            field,
            output,
            dim_cap,
        } => cmd_nf(&graph, &expr, &variety, field, output, dim_cap),
        Cmd::Decompose {
            graph,
            variety,
            max_degree,
            field,
            output,
            full,
            oracle,
            search_cap,
            dim_cap,
        } => cmd_decompose(
            &graph, &variety, max_degree, field, output, full, oracle, search_cap, dim_cap,
        ),
        Cmd::Centralizer {
            graph,
            m,
            expr,
            field,
            output,
            dim_cap,
        } => cmd_centralizer(&graph, m, &expr, field, output, dim_cap),
    }
}

fn load_graph(path: &Path) -> Result<Arc<Graph>, AppError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AppError::Input(format!("cannot read {}: {e}", path.display())))?;
    let g = Graph::load(&text).map_err(|e| AppError::Input(e.to_string()))?;
    Ok(Arc::new(g))
}

fn parse_field(field: Option<u64>) -> Result<FieldTag, AppError> {
    match field {
        None => Ok(FieldTag::Rational),
        Some(p) => FieldTag::fp(p).map_err(|e| AppError::Input(e.to_string())),
    }
}

fn parse_variety(text: &str) -> Result<Variety, AppError> {
    let bad = || {
        AppError::Input(format!(
            "unknown variety `{text}`; expected `metabelian`, `nilpotent:m`, or `free:k`"
        ))
    };
    match text.split_once(':') {
        None if text == "metabelian" => Ok(Variety::Metabelian),
        Some((kind @ ("nilpotent" | "free"), arg)) => {
            let k: u32 = arg.parse().map_err(|_| bad())?;
            if k < 2 {
                return Err(AppError::Input(format!(
                    "`{kind}:{k}` needs a class of at least 2"
                )));
            }
            Ok(Variety::Nilpotent(k))
        }
        _ => Err(bad()),
    }
}

fn build_table(
    graph: Arc<Graph>,
    m: u32,
    field: FieldTag,
    dim_cap: usize,
) -> Result<StructureTable, AppError> {
    Ok(StructureTable::build(graph, m, field, dim_cap)?)
}

fn cmd_info(
    path: &Path,
    variety: &str,
    max_degree: u32,
    field: Option<u64>,
    output: OutputMode,
    dim_cap: usize,
) -> Result<(), AppError> {
    let graph = load_graph(path)?;
    let field = parse_field(field)?;
    match parse_variety(variety)? {
        Variety::Metabelian => {
            let engine = MetabelianEngine::new(graph, field);
            let n = engine.context().n();
            let mut per_mdeg: Vec<(MultiDegree, usize)> = Vec::new();
            let mut per_degree = vec![0usize; max_degree as usize];
            for total in 1..=max_degree {
                for mdeg in MultiDegree::all_of_total(n, total) {
                    let dim = engine.component_dim(&mdeg)?;
                    if dim > 0 {
                        per_degree[(total - 1) as usize] += dim;
                        per_mdeg.push((mdeg, dim));
                    }
                }
            }
            let total: usize = per_degree.iter().sum();
            match output {
                OutputMode::Human => {
                    println!(
                        "{}, total {total} (degrees <= {max_degree})",
                        degree_summary(&per_degree)
                    );
                    for (mdeg, dim) in &per_mdeg {
                        println!("mdeg {}: {dim}", mdeg.plain());
                    }
                }
                OutputMode::Machine => {
                    for (k, d) in per_degree.iter().enumerate() {
                        println!("deg {} {d}", k + 1);
                    }
                    for (mdeg, dim) in &per_mdeg {
                        println!("mdeg {} {dim}", mdeg.plain());
                    }
                    println!("total {total}");
                }
            }
        }
        Variety::Nilpotent(m) => {
            let tbl = build_table(graph, m, field, dim_cap)?;
            let report = tbl.dim_report();
            let per_degree: Vec<usize> = report.per_degree.iter().map(|&(_, d)| d).collect();
            match output {
                OutputMode::Human => {
                    println!("{}, total {}", degree_summary(&per_degree), report.total);
                }
                OutputMode::Machine => {
                    for &(k, d) in &report.per_degree {
                        println!("deg {k} {d}");
                    }
                    for (mdeg, dim) in &report.per_mdeg {
                        println!("mdeg {} {dim}", mdeg.plain());
                    }
                    println!("total {}", report.total);
                }
            }
        }
    }
    Ok(())
}

/// `deg1: 3, deg2: 1`; a trailing run of zero dimensions collapses to
/// `rest 0`.
fn degree_summary(per_degree: &[usize]) -> String {
    let last_nonzero = per_degree.iter().rposition(|&d| d > 0).map_or(0, |k| k + 1);
    let mut parts: Vec<String> = per_degree[..last_nonzero]
        .iter()
        .enumerate()
        .map(|(k, d)| format!("deg{}: {d}", k + 1))
        .collect();
    if last_nonzero < per_degree.len() {
        parts.push("rest 0".into());
    }
    parts.join(", ")
}

fn cmd_nf(
    path: &Path,
    expr: &str,
    variety: &str,
    field: Option<u64>,
    output: OutputMode,
    dim_cap: usize,
) -> Result<(), AppError> {
    let graph = load_graph(path)?;
    let field = parse_field(field)?;
    let parsed = parse_expr(expr, graph.vertex_count(), field)
        .map_err(|e| AppError::Input(e.to_string()))?;
    let nf = match parse_variety(variety)? {
        Variety::Metabelian => MetabelianEngine::new(graph, field).nf_expr(&parsed)?,
        Variety::Nilpotent(m) => build_table(graph, m, field, dim_cap)?.nf_expr(&parsed)?,
    };
    // Normal forms print identically in both output modes.
    let _ = output;
    println!("{nf}");
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_decompose(
    path: &Path,
    variety: &str,
    max_degree: u32,
    field: Option<u64>,
    output: OutputMode,
    full: bool,
    oracle: Option<Vec<u64>>,
    search_cap: usize,
    dim_cap: usize,
) -> Result<(), AppError> {
    let graph = load_graph(path)?;
    let field = parse_field(field)?;
    let cert = is_decomposable(&graph)?;

    let decomposition = if cert.decomposable {
        let setting = match parse_variety(variety)? {
            Variety::Metabelian => SplitSetting::Metabelian { max_degree, field },
            Variety::Nilpotent(m) => SplitSetting::Nilpotent { m, field, dim_cap },
        };
        Some(split(&graph, setting)?)
    } else {
        None
    };

    let oracle_outcome = match oracle {
        Some(args) => {
            let p = u16::try_from(args[0])
                .map_err(|_| AppError::Input(format!("oracle prime {} too large", args[0])))?;
            let m = u32::try_from(args[1])
                .map_err(|_| AppError::Input(format!("oracle class {} too large", args[1])))?;
            Some(search_decomposition(Arc::clone(&graph), m, p, search_cap)?)
        }
        None => None,
    };

    match output {
        OutputMode::Human => {
            let mut line = String::new();
            match &decomposition {
                Some(d) => {
                    let pclie_core::SplitKind::Vertex { a1, a2 } = &d.kind else {
                        unreachable!("split always yields a vertex split");
                    };
                    line.push_str(&format!("decomposable: yes; A1={a1} A2={a2}"));
                    if d.report.all_pass() {
                        line.push_str("; verified");
                    } else {
                        line.push_str("; verification FAILED");
                    }
                }
                None => line.push_str("decomposable: no"),
            }
            match &oracle_outcome {
                Some(SearchOutcome::Found(d)) if d.report.all_pass() => {
                    line.push_str("; oracle: found, verified");
                }
                Some(SearchOutcome::Found(_)) => {
                    line.push_str("; oracle: found, verification FAILED");
                }
                Some(SearchOutcome::Exhausted(_)) => {
                    line.push_str("; oracle: exhausted, none found");
                }
                None => {}
            }
            println!("{line}");
            if let (true, Some(_)) = (full, &decomposition) {
                let parts: Vec<String> = cert
                    .complement_components
                    .iter()
                    .map(|c| c.to_string())
                    .collect();
                println!("components: {}", parts.join(" "));
            }
            if let Some(d) = &decomposition {
                if !d.report.all_pass() {
                    for l in d.report_lines() {
                        println!("{l}");
                    }
                }
            }
        }
        OutputMode::Machine => {
            println!(
                "decomposable {}",
                if cert.decomposable { "yes" } else { "no" }
            );
            if let Some(d) = &decomposition {
                for l in d.report_lines() {
                    println!("{l}");
                }
            }
            if full && cert.decomposable {
                for c in &cert.complement_components {
                    println!("component {}", c.plain());
                }
            }
            match &oracle_outcome {
                Some(SearchOutcome::Found(d)) => {
                    println!("oracle outcome found");
                    for l in d.report_lines() {
                        println!("oracle {l}");
                    }
                }
                Some(SearchOutcome::Exhausted(cert)) => {
                    for l in cert.report_lines() {
                        println!("oracle {l}");
                    }
                }
                None => {}
            }
        }
    }
    Ok(())
}

fn cmd_centralizer(
    path: &Path,
    m: u32,
    expr: &str,
    field: Option<u64>,
    output: OutputMode,
    dim_cap: usize,
) -> Result<(), AppError> {
    let graph = load_graph(path)?;
    let field = parse_field(field)?;
    let parsed = parse_expr(expr, graph.vertex_count(), field)
        .map_err(|e| AppError::Input(e.to_string()))?;
    let tbl = build_table(graph, m, field, dim_cap)?;
    let x = tbl.nf_expr(&parsed)?;
    let cmp = compare_centralizers(&tbl, &x)?;

    // Windowed coordinates are a prefix of the basis (it is sorted by
    // degree), so rows re-embed by zero-padding.
    let render = |s: &pclie_core::Subspace| -> Vec<LiePoly> {
        s.rows()
            .iter()
            .map(|row| {
                let mut v = row.clone();
                v.resize(tbl.dim(), tbl.context().field().zero());
                tbl.vec_to_poly(&v)
            })
            .collect()
    };
    let computed = render(&cmp.computed_windowed);
    let predicted = render(&cmp.predicted_windowed);
    let verdict = if cmp.matches { "MATCH" } else { "MISMATCH" };

    match output {
        OutputMode::Human => {
            println!("window: degrees <= {}", cmp.window);
            println!("computed: {}", render_list(&computed));
            println!("predicted: {}", render_list(&predicted));
            println!("{verdict}");
        }
        OutputMode::Machine => {
            println!("window {}", cmp.window);
            for p in &computed {
                println!("computed {p}");
            }
            for p in &predicted {
                println!("predicted {p}");
            }
            println!("verdict {verdict}");
        }
    }
    Ok(())
}

fn render_list(polys: &[LiePoly]) -> String {
    if polys.is_empty() {
        return "-".into();
    }
    polys
        .iter()
        .map(LiePoly::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}
