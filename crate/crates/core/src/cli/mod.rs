//! `hdbms` command-line front end.
//!
//! Exit status: 0 success, 1 usage error, 2 data error (unreadable or
//! malformed input, unknown node), 3 no path between the requested nodes.

mod format;

pub use format::{format_traversal, Style};

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::gen::{generate, GenSpec, GraphKind, WeightDist};
use crate::graph::{parse_edge_list_with_report, serialize_edge_list, to_dot, Direction, NodeId, WeightedGraph};
use crate::hdbms::{CandidateScope, HdbmsConfig, RootStep, SelectionPolicy, TauSchedule};
use crate::metrics::{bench, compare_report, reports_to_csv, reports_to_json, Engine};
use crate::search::{astar, bidirectional_search, CostModel, Heuristic, SearchError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_NO_PATH: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hdbms", version, about = "Hybrid depth-breadth graph search toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one algorithm from a root (and to a goal, for bidir/astar).
    Traverse(TraverseArgs),
    /// Run several traversal engines and tabulate their metrics.
    Compare(CompareArgs),
    /// Time one traversal engine over repeated runs.
    Bench(BenchArgs),
    /// Generate a synthetic graph in edge-list format.
    Gen(GenCommandArgs),
    /// Convert a graph to DOT or canonical edge-list text.
    Export(ExportArgs),
    /// Parse a graph and report its size.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
struct SourceArgs {
    /// Edge-list file to read.
    #[arg(long, conflicts_with = "kind")]
    input: Option<PathBuf>,
    #[command(flatten)]
    gen: GenArgs,
}

#[derive(Debug, Args)]
struct GenArgs {
    /// Generator to use instead of --input.
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    levels: Option<usize>,
    #[arg(long)]
    width: Option<usize>,
    /// `uniform01` or `fixed:<c>`.
    #[arg(long, default_value = "uniform01", value_parser = parse_weight_dist)]
    weights: WeightDist,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Er,
    Ba,
    Chain,
    Layered,
}

#[derive(Debug, Args)]
struct HdbmsArgs {
    #[arg(long, value_enum, default_value = "similarity")]
    policy: PolicyArg,
    /// Weight-distance threshold for local moves; omit to disable.
    #[arg(long)]
    tau: Option<f64>,
    #[arg(long, value_enum, default_value = "fixed")]
    tau_schedule: ScheduleArg,
    #[arg(long, value_enum, default_value = "depth-breadth")]
    scope: ScopeArg,
    #[arg(long, value_enum, default_value = "max-weight")]
    root_step: RootStepArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PolicyArg {
    Similarity,
    MaxWeight,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScheduleArg {
    Fixed,
    DensityScaled,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScopeArg {
    DepthBreadth,
    NeighborsOnly,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RootStepArg {
    MaxWeight,
    Policy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DirectionArg {
    Directed,
    Undirected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    Bfs,
    Dfs,
    Bidir,
    Astar,
    Hdbms,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Bfs,
    Dfs,
    Hdbms,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CostArg {
    Unit,
    WeightDifference,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Csv,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Dot,
    EdgeList,
}

#[derive(Debug, Args)]
struct TraverseArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long)]
    root: u64,
    #[arg(long, value_enum)]
    algo: AlgoArg,
    #[arg(long, value_enum, default_value = "directed")]
    direction: DirectionArg,
    #[command(flatten)]
    hdbms: HdbmsArgs,
    /// Target node for bidir/astar.
    #[arg(long)]
    goal: Option<u64>,
    #[arg(long, value_enum, default_value = "unit")]
    cost: CostArg,
    /// File of `<id> <estimate>` lines for astar; missing nodes estimate 0.
    #[arg(long)]
    heuristic: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
    #[arg(long, value_enum, default_value = "plain")]
    style: Style,
    /// Include wall-clock time in the output.
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long)]
    root: u64,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "bfs,dfs,hdbms")]
    algos: Vec<EngineArg>,
    #[arg(long, value_enum, default_value = "directed")]
    direction: DirectionArg,
    #[command(flatten)]
    hdbms: HdbmsArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long)]
    root: u64,
    #[arg(long, value_enum)]
    algo: EngineArg,
    #[arg(long, value_enum, default_value = "directed")]
    direction: DirectionArg,
    #[command(flatten)]
    hdbms: HdbmsArgs,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    repetitions: u64,
    #[arg(long, default_value_t = 10)]
    warmup: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GenCommandArgs {
    #[command(flatten)]
    gen: GenArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExportArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, value_enum, default_value = "dot")]
    format: ExportFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[command(flatten)]
    source: SourceArgs,
}

fn parse_weight_dist(s: &str) -> Result<WeightDist, String> {
    if s == "uniform01" {
        return Ok(WeightDist::Uniform01);
    }
    if let Some(c) = s.strip_prefix("fixed:") {
        let c: f64 = c.parse().map_err(|_| format!("bad fixed weight `{c}`"))?;
        return Ok(WeightDist::Fixed(c));
    }
    Err(format!("expected `uniform01` or `fixed:<c>`, got `{s}`"))
}

/// A failure mapped to an exit status.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn data(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_DATA,
            message: message.into(),
        }
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::NoPath { .. } => Failure {
                code: EXIT_NO_PATH,
                message: e.to_string(),
            },
            SearchError::InvalidTau(_) => Failure::usage(e.to_string()),
            _ => Failure::data(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

/// Parses `args` (including the program name) and executes the command.
/// Results go to `stdout` or the `--out` file; diagnostics to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = write!(stderr, "{}", e.render());
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };

    let (result, out) = match cli.command {
        Command::Traverse(a) => {
            let out = a.out.clone();
            (traverse(a, stderr), out)
        }
        Command::Compare(a) => {
            let out = a.out.clone();
            (compare(a, stderr), out)
        }
        Command::Bench(a) => {
            let out = a.out.clone();
            (bench_cmd(a, stderr), out)
        }
        Command::Gen(a) => {
            let out = a.out.clone();
            (gen_cmd(a), out)
        }
        Command::Export(a) => {
            let out = a.out.clone();
            (export(a, stderr), out)
        }
        Command::Validate(a) => (validate(a, stderr), None),
    };

    match result {
        Ok(text) => match out {
            Some(path) => match std::fs::write(&path, text) {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {}: {e}", path.display());
                    EXIT_DATA
                }
            },
            None => match stdout.write_all(text.as_bytes()) {
                Ok(()) => EXIT_OK,
                Err(_) => EXIT_DATA,
            },
        },
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn load(source: &SourceArgs, stderr: &mut dyn Write) -> Result<WeightedGraph, Failure> {
    match (&source.input, source.gen.kind) {
        (Some(path), _) => read_graph(path, stderr),
        (None, Some(_)) => {
            let spec = gen_spec(&source.gen)?;
            generate(&spec).map_err(|e| Failure::usage(e.to_string()))
        }
        (None, None) => Err(Failure::usage("one of --input or --kind is required")),
    }
}

fn read_graph(path: &Path, stderr: &mut dyn Write) -> Result<WeightedGraph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::data(format!("{}: {e}", path.display())))?;
    let (graph, report) =
        parse_edge_list_with_report(&text).map_err(|e| Failure::data(format!("{}: {e}", path.display())))?;
    if report.duplicate_edges > 0 {
        let _ = writeln!(
            stderr,
            "warning: {}: {} duplicate edge(s) ignored",
            path.display(),
            report.duplicate_edges
        );
    }
    if !report.out_of_range_weights.is_empty() {
        let ids: Vec<String> = report.out_of_range_weights.iter().map(|id| id.to_string()).collect();
        let _ = writeln!(
            stderr,
            "warning: {}: weights outside [0, 1] on node(s) {}",
            path.display(),
            ids.join(", ")
        );
    }
    Ok(graph)
}

fn gen_spec(args: &GenArgs) -> Result<GenSpec, Failure> {
    let need =
        |v: Option<usize>, flag: &str| v.ok_or_else(|| Failure::usage(format!("--{flag} is required for this --kind")));
    let kind = match args.kind.ok_or_else(|| Failure::usage("--kind is required"))? {
        KindArg::Er => GraphKind::ErdosRenyi {
            n: need(args.n, "n")?,
            p: args.p.ok_or_else(|| Failure::usage("--p is required for --kind er"))?,
        },
        KindArg::Ba => GraphKind::BarabasiAlbert {
            n: need(args.n, "n")?,
            m: need(args.m, "m")?,
        },
        KindArg::Chain => GraphKind::Chain { n: need(args.n, "n")? },
        KindArg::Layered => GraphKind::Layered {
            levels: need(args.levels, "levels")?,
            width: need(args.width, "width")?,
        },
    };
    let spec = GenSpec {
        kind,
        seed: args.seed,
        weights: args.weights,
    };
    spec.validate().map_err(|e| Failure::usage(e.to_string()))?;
    Ok(spec)
}

fn direction(d: DirectionArg) -> Direction {
    match d {
        DirectionArg::Directed => Direction::Directed,
        DirectionArg::Undirected => Direction::Undirected,
    }
}

fn hdbms_config(args: &HdbmsArgs, dir: DirectionArg) -> Result<HdbmsConfig, Failure> {
    if let Some(t) = args.tau {
        if !t.is_finite() || t < 0.0 {
            return Err(Failure::usage(format!("--tau must be finite and >= 0, got {t}")));
        }
    }
    Ok(HdbmsConfig {
        policy: match args.policy {
            PolicyArg::Similarity => SelectionPolicy::Similarity,
            PolicyArg::MaxWeight => SelectionPolicy::MaxWeight,
        },
        direction: direction(dir),
        tau: args.tau,
        tau_schedule: match args.tau_schedule {
            ScheduleArg::Fixed => TauSchedule::Fixed,
            ScheduleArg::DensityScaled => TauSchedule::DensityScaled,
        },
        scope: match args.scope {
            ScopeArg::DepthBreadth => CandidateScope::DepthBreadth,
            ScopeArg::NeighborsOnly => CandidateScope::NeighborsOnly,
        },
        root_step: match args.root_step {
            RootStepArg::MaxWeight => RootStep::MaxWeight,
            RootStepArg::Policy => RootStep::Policy,
        },
    })
}

fn engine(e: EngineArg, dir: DirectionArg, hdbms: &HdbmsArgs) -> Result<Engine, Failure> {
    Ok(match e {
        EngineArg::Bfs => Engine::Bfs(direction(dir)),
        EngineArg::Dfs => Engine::Dfs(direction(dir)),
        EngineArg::Hdbms => Engine::Hdbms(hdbms_config(hdbms, dir)?),
    })
}

fn read_heuristic(path: &Path) -> Result<Heuristic, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::data(format!("{}: {e}", path.display())))?;
    let mut estimates = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || {
            Failure::data(format!(
                "{}: line {}: token `{line}`: expected `<id> <estimate>`",
                path.display(),
                i + 1
            ))
        };
        let mut parts = line.split_whitespace();
        let (Some(id), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad());
        };
        let id: u64 = id.parse().map_err(|_| bad())?;
        let value: f64 = value.parse().map_err(|_| bad())?;
        estimates.push((NodeId(id), value));
    }
    Heuristic::from_estimates(estimates).map_err(|e| Failure::data(format!("{}: {e}", path.display())))
}

fn traverse(a: TraverseArgs, stderr: &mut dyn Write) -> Outcome {
    let graph = load(&a.source, stderr)?;
    let root = NodeId(a.root);

    if matches!(a.algo, AlgoArg::Bidir | AlgoArg::Astar) {
        let goal = NodeId(
            a.goal
                .ok_or_else(|| Failure::usage("--goal is required for bidir and astar"))?,
        );
        let started = std::time::Instant::now();
        let result = match a.algo {
            AlgoArg::Bidir => bidirectional_search(&graph, root, goal)?,
            _ => {
                let cost = match a.cost {
                    CostArg::Unit => CostModel::Unit,
                    CostArg::WeightDifference => CostModel::WeightDifference,
                };
                let h = match &a.heuristic {
                    Some(p) => read_heuristic(p)?,
                    None => Heuristic::zero(),
                };
                astar(&graph, root, goal, cost, &h)?
            }
        };
        let elapsed = started.elapsed().as_secs_f64();
        let path: Vec<String> = result.path.iter().map(|id| id.to_string()).collect();
        return match a.format {
            OutputFormat::Text => {
                let mut s = format!(
                    "path: {}\ncost: {}\nexpanded: {}\n",
                    path.join(" -> "),
                    result.cost,
                    result.expanded_count
                );
                if a.timing {
                    let _ = writeln!(s, "time: {} s", format::seconds(elapsed));
                }
                Ok(s)
            }
            OutputFormat::Json => {
                let mut v = serde_json::to_value(&result).expect("plain data");
                if a.timing {
                    v["elapsed_seconds"] = serde_json::json!(elapsed);
                }
                Ok(serde_json::to_string_pretty(&v).expect("plain data") + "\n")
            }
            OutputFormat::Csv => {
                let mut s = String::from("position,node\n");
                for (i, id) in result.path.iter().enumerate() {
                    let _ = writeln!(s, "{},{}", i + 1, id);
                }
                Ok(s)
            }
            OutputFormat::Dot => Err(Failure::usage("--format dot is only available for `export`")),
        };
    }

    let engine = match a.algo {
        AlgoArg::Bfs => engine(EngineArg::Bfs, a.direction, &a.hdbms)?,
        AlgoArg::Dfs => engine(EngineArg::Dfs, a.direction, &a.hdbms)?,
        _ => engine(EngineArg::Hdbms, a.direction, &a.hdbms)?,
    };
    let result = engine.run(&graph, root)?;
    match a.format {
        OutputFormat::Text => {
            let mut s = format_traversal(&result, a.style) + "\n";
            if a.timing {
                let _ = writeln!(s, "time: {} s", format::seconds(result.elapsed.as_secs_f64()));
            }
            Ok(s)
        }
        OutputFormat::Csv => Ok(format::traversal_csv(&result)),
        OutputFormat::Json => {
            let visits: Vec<serde_json::Value> = result
                .order
                .iter()
                .map(
                    |v| serde_json::json!({"node": v.node, "weight": v.weight, "kind": format::step_kind_name(v.kind)}),
                )
                .collect();
            let v = serde_json::json!({
                "algorithm": engine.label(),
                "config_summary": engine.summary(),
                "order": visits,
                "elapsed_seconds": if a.timing { serde_json::json!(result.elapsed.as_secs_f64()) } else { serde_json::Value::Null },
            });
            Ok(serde_json::to_string_pretty(&v).expect("plain data") + "\n")
        }
        OutputFormat::Dot => Err(Failure::usage("--format dot is only available for `export`")),
    }
}

fn compare(a: CompareArgs, stderr: &mut dyn Write) -> Outcome {
    if a.algos.is_empty() {
        return Err(Failure::usage("--algos needs at least one engine"));
    }
    let graph = load(&a.source, stderr)?;
    let engines = a
        .algos
        .iter()
        .map(|&e| engine(e, a.direction, &a.hdbms))
        .collect::<Result<Vec<_>, _>>()?;
    let rows = compare_report(&graph, NodeId(a.root), &engines)?;
    match a.format {
        OutputFormat::Csv => Ok(reports_to_csv(&rows, a.timing)),
        OutputFormat::Json => Ok(reports_to_json(&rows, a.timing) + "\n"),
        OutputFormat::Text => {
            let mut s = String::new();
            for r in &rows {
                let order: Vec<String> = r.order.iter().map(|id| id.to_string()).collect();
                let _ = writeln!(s, "{} [{}]", r.algorithm, r.config_summary);
                let _ = writeln!(s, "  order:        {}", order.join(", "));
                let _ = writeln!(s, "  completeness: {:.6}", r.completeness);
                let _ = writeln!(s, "  macd:         {:.6}", r.order_quality_macd);
                let _ = writeln!(s, "  dcg:          {:.6}", r.optimality_dcg);
                if a.timing {
                    let _ = writeln!(s, "  time (s):     {}", format::seconds(r.elapsed_seconds));
                }
            }
            Ok(s)
        }
        OutputFormat::Dot => Err(Failure::usage("--format dot is only available for `export`")),
    }
}

fn bench_cmd(a: BenchArgs, stderr: &mut dyn Write) -> Outcome {
    let graph = load(&a.source, stderr)?;
    let engine = engine(a.algo, a.direction, &a.hdbms)?;
    let r = bench(
        &graph,
        NodeId(a.root),
        &engine,
        a.repetitions as usize,
        a.warmup as usize,
    )?;
    match a.format {
        OutputFormat::Text => {
            let order: Vec<String> = r.order.iter().map(|id| id.to_string()).collect();
            let mut s = String::new();
            let _ = writeln!(s, "engine: {engine}");
            let _ = writeln!(s, "repetitions: {} (warmup {})", r.repetitions, r.warmup);
            let _ = writeln!(s, "order: {}", order.join(", "));
            let _ = writeln!(s, "deterministic: {}", r.deterministic);
            let _ = writeln!(s, "mean_seconds: {}", format::seconds(r.mean_seconds));
            let _ = writeln!(s, "stddev_seconds: {}", format::seconds(r.stddev_seconds));
            let _ = writeln!(s, "min_seconds: {}", format::seconds(r.min_seconds));
            Ok(s)
        }
        OutputFormat::Json => Ok(serde_json::to_string_pretty(&r).expect("plain data") + "\n"),
        OutputFormat::Csv => {
            let mut s = String::from(
                "algorithm,config_summary,repetitions,warmup,mean_seconds,stddev_seconds,min_seconds,deterministic\n",
            );
            let _ = writeln!(
                s,
                "{},\"{}\",{},{},{},{},{},{}",
                engine.label(),
                engine.summary(),
                r.repetitions,
                r.warmup,
                format::seconds(r.mean_seconds),
                format::seconds(r.stddev_seconds),
                format::seconds(r.min_seconds),
                r.deterministic
            );
            Ok(s)
        }
        OutputFormat::Dot => Err(Failure::usage("--format dot is only available for `export`")),
    }
}

fn gen_cmd(a: GenCommandArgs) -> Outcome {
    let spec = gen_spec(&a.gen)?;
    let graph = generate(&spec).map_err(|e| Failure::usage(e.to_string()))?;
    Ok(serialize_edge_list(&graph))
}

fn export(a: ExportArgs, stderr: &mut dyn Write) -> Outcome {
    let graph = load(&a.source, stderr)?;
    Ok(match a.format {
        ExportFormat::Dot => to_dot(&graph),
        ExportFormat::EdgeList => serialize_edge_list(&graph),
    })
}

fn validate(a: ValidateArgs, stderr: &mut dyn Write) -> Outcome {
    let graph = load(&a.source, stderr)?;
    Ok(format!("{} nodes, {} edges\n", graph.node_count(), graph.edge_count()))
}
