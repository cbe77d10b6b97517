//! The `districts` command line.
//!
//! Exit status: 0 success, 1 bad arguments / unreadable or malformed input,
//! 2 infeasible instance, 3 memory refusal, 4 unstable assignment.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use districts_core::circle::{run_circle_growing, CircleOptions};
use districts_core::grid::grid_graph;
use districts_core::rng::sample_centers;
use districts_core::solve::{solve, Algorithm, OracleKind, SolveError, SolveOptions};
use districts_core::verify::center_distances;
use districts_core::{
    equal_quotas, verify_stable, Assignment, Instance, InstanceError, MemoryBudget, RoadGraph,
    Verdict, VerifyError,
};

use crate::bench::{run_bench, write_csv, BenchConfig, BenchError};
use crate::io::{
    parse_dimacs, parse_tsv, read_assignment, read_assignment_inferring_centers, read_centers,
    read_quotas, summarize, write_assignment, write_tsv, ParseError, TraceWriter,
};
use crate::render::{render_geojson, render_svg, SvgOptions};

#[derive(Debug, Parser)]
#[command(name = "districts", version, about = "Stable graph districting with quotas")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Assign every node to a center and write the assignment as TSV.
    Solve(SolveArgs),
    /// Check an assignment for quota violations and blocking pairs.
    Verify(VerifyArgs),
    /// Time algorithms over random center sets and write CSV records.
    Bench(BenchArgs),
    /// Draw an assignment as an SVG map (and optionally GeoJSON).
    Render(RenderArgs),
    /// Write a grid graph with coordinates as TSV.
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    /// `.gr` files are DIMACS, everything else TSV.
    Auto,
    Dimacs,
    Tsv,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Graph file: DIMACS `.gr` or TSV edge list.
    pub graph: PathBuf,
    /// DIMACS coordinate file (`.co`).
    pub coords: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = GraphFormat::Auto)]
    pub format: GraphFormat,
    /// Keep only the largest connected component (reports what was dropped).
    #[arg(long)]
    pub largest_component: bool,
}

#[derive(Debug, Args)]
pub struct CenterArgs {
    /// File with one center node id per line.
    #[arg(long, conflicts_with = "random_centers")]
    pub centers: Option<PathBuf>,
    /// Draw this many distinct centers uniformly at random.
    #[arg(long, value_name = "K")]
    pub random_centers: Option<usize>,
    /// Seed for --random-centers.
    #[arg(long, default_value_t = 1, requires = "random_centers")]
    pub seed: u64,
}

#[derive(Debug, Args)]
#[group(multiple = false)]
pub struct MemoryArgs {
    /// Refuse runs whose estimated table size exceeds this many bytes.
    #[arg(long, value_name = "BYTES")]
    pub memory_cap_bytes: Option<u64>,
    /// Same cap expressed in (node, center) pair entries.
    #[arg(long, value_name = "ENTRIES")]
    pub memory_cap_pairs: Option<u64>,
    #[arg(long)]
    pub no_memory_cap: bool,
}

impl MemoryArgs {
    fn budget(&self) -> MemoryBudget {
        match (self.memory_cap_bytes, self.memory_cap_pairs, self.no_memory_cap) {
            (Some(b), _, _) => MemoryBudget::bytes(b),
            (_, Some(p), _) => MemoryBudget::pair_entries(p),
            (_, _, true) => MemoryBudget::unlimited(),
            _ => MemoryBudget::default(),
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, default_value = "nnc")]
    pub algo: Algorithm,
    /// Nearest-neighbor oracle for --algo nnc: incremental or truncated.
    #[arg(long, default_value = "incremental")]
    pub oracle: OracleKind,
    #[command(flatten)]
    pub centers: CenterArgs,
    /// `equal` or a file with one quota per center.
    #[arg(long, default_value = "equal")]
    pub quotas: String,
    #[command(flatten)]
    pub memory: MemoryArgs,
    /// Write circle-growing events here (requires --algo circle).
    #[arg(long, value_name = "FILE")]
    pub trace: Option<PathBuf>,
    /// Assignment TSV destination; standard output when omitted.
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Write a JSON summary of the districts here.
    #[arg(long, value_name = "FILE")]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, value_name = "FILE")]
    pub assignment: PathBuf,
    #[command(flatten)]
    pub centers: CenterArgs,
    #[arg(long, default_value = "equal")]
    pub quotas: String,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Graph file; omit when using --grid.
    #[arg(required_unless_present = "grid", conflicts_with = "grid")]
    pub graph: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = GraphFormat::Auto)]
    pub format: GraphFormat,
    #[arg(long)]
    pub largest_component: bool,
    /// Benchmark on a generated WxH grid instead of a file.
    #[arg(long, value_name = "WxH", value_parser = parse_grid)]
    pub grid: Option<(usize, usize)>,
    #[arg(long, requires = "grid")]
    pub jitter_seed: Option<u64>,
    /// Comma-separated center counts.
    #[arg(long = "k", value_delimiter = ',', required = true)]
    pub ks: Vec<usize>,
    /// Center sets per k.
    #[arg(long, default_value_t = 10)]
    pub runs: usize,
    /// Comma-separated algorithms; all five by default.
    #[arg(long, value_delimiter = ',', default_value = "gs-centers,gs-nodes,circle,nnc,mutual")]
    pub algos: Vec<Algorithm>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value = "incremental")]
    pub oracle: OracleKind,
    #[command(flatten)]
    pub memory: MemoryArgs,
    /// Write `NA` instead of wall times so output is reproducible.
    #[arg(long)]
    pub omit_timing: bool,
    /// Run center sets concurrently; times are then not comparable.
    #[arg(long)]
    pub parallel: bool,
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, value_name = "FILE")]
    pub assignment: PathBuf,
    /// Center list; by default the centers named in the assignment.
    #[arg(long, value_name = "FILE")]
    pub centers: Option<PathBuf>,
    /// SVG destination; standard output when omitted.
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub geojson: Option<PathBuf>,
    /// Coordinates are integer micro-degrees; GeoJSON gets degrees.
    #[arg(long)]
    pub microdegrees: bool,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_name = "WxH", value_parser = parse_grid)]
    pub grid: (usize, usize),
    /// Jitter edge weights in [1, 2) with this seed.
    #[arg(long)]
    pub jitter_seed: Option<u64>,
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WxH, got {s:?}"))?;
    let w: usize = w.parse().map_err(|_| format!("bad width {w:?}"))?;
    let h: usize = h.parse().map_err(|_| format!("bad height {h:?}"))?;
    if w == 0 || h == 0 {
        return Err("grid dimensions must be positive".into());
    }
    Ok((w, h))
}

/// A failure together with its exit status.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments, unreadable or malformed input, ids that do not match.
    Input(String),
    Infeasible(String),
    Memory(String),
    Unstable(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Infeasible(_) => 2,
            CliError::Memory(_) => 3,
            CliError::Unstable(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Infeasible(m) | CliError::Memory(m) | CliError::Unstable(m) => m,
        }
    }
}

fn input_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

impl From<InstanceError> for CliError {
    fn from(e: InstanceError) -> Self {
        CliError::Infeasible(format!("infeasible instance: {e}"))
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Memory(m) => CliError::Memory(format!("refused: {m}")),
            SolveError::Nnc(e) => CliError::Input(format!("internal solver error: {e}")),
        }
    }
}

fn open(path: &Path) -> Result<BufReader<File>, CliError> {
    File::open(path).map(BufReader::new).map_err(|e| input_err(path, e))
}

/// Opens `path` for writing, or standard output.
fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| input_err(p, e))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_err(path: Option<&Path>, e: impl std::fmt::Display) -> CliError {
    match path {
        Some(p) => input_err(p, e),
        None => CliError::Input(format!("standard output: {e}")),
    }
}

fn load_graph(path: &Path, coords: Option<&Path>, format: GraphFormat) -> Result<RoadGraph, CliError> {
    let dimacs = match format {
        GraphFormat::Dimacs => true,
        GraphFormat::Tsv => false,
        GraphFormat::Auto => path.extension().is_some_and(|e| e == "gr"),
    };
    let parsed: Result<RoadGraph, ParseError> = if dimacs {
        let co = coords.map(open).transpose()?;
        match (parse_dimacs(open(path)?, co), coords) {
            (Err(ParseError::Coordinates(e)), Some(c)) => return Err(input_err(c, e)),
            (r, _) => r,
        }
    } else {
        if let Some(c) = coords {
            return Err(CliError::Input(format!(
                "{}: coordinate files go with DIMACS graphs; TSV graphs carry `#node id x y` lines",
                c.display()
            )));
        }
        parse_tsv(open(path)?)
    };
    parsed.map_err(|e| input_err(path, e))
}

fn prepare_graph(args: &GraphArgs) -> Result<RoadGraph, CliError> {
    let g = load_graph(&args.graph, args.coords.as_deref(), args.format)?;
    trim(g, args.largest_component)
}

fn trim(g: RoadGraph, largest_component: bool) -> Result<RoadGraph, CliError> {
    if !largest_component {
        return Ok(g);
    }
    let h = g.largest_component().map_err(|e| CliError::Input(e.to_string()))?;
    eprintln!(
        "largest component: kept {} of {} nodes (-{}), {} of {} edges (-{})",
        h.node_count(),
        g.node_count(),
        g.node_count() - h.node_count(),
        h.edge_count(),
        g.edge_count(),
        g.edge_count() - h.edge_count()
    );
    Ok(h)
}

fn pick_centers(args: &CenterArgs, g: &RoadGraph) -> Result<Vec<usize>, CliError> {
    match (&args.centers, args.random_centers) {
        (Some(path), _) => read_centers(open(path)?, g).map_err(|e| input_err(path, e)),
        (None, Some(k)) => sample_centers(g.node_count(), k, args.seed)
            .map_err(|e| CliError::Infeasible(format!("infeasible instance: {e}"))),
        (None, None) => Err(CliError::Input(
            "give exactly one center source: --centers FILE or --random-centers K".into(),
        )),
    }
}

fn pick_quotas(source: &str, n: usize, k: usize) -> Result<Vec<usize>, CliError> {
    if source == "equal" {
        return Ok(equal_quotas(n, k)?);
    }
    let path = Path::new(source);
    read_quotas(open(path)?).map_err(|e| input_err(path, e))
}

pub fn cmd_solve(args: &SolveArgs) -> Result<(), CliError> {
    if args.trace.is_some() && args.algo != Algorithm::Circle {
        return Err(CliError::Input("--trace requires --algo circle".into()));
    }
    let g = prepare_graph(&args.graph)?;
    let centers = pick_centers(&args.centers, &g)?;
    let quotas = pick_quotas(&args.quotas, g.node_count(), centers.len())?;
    let inst = Instance::new(&g, centers, quotas)?;
    let opts = SolveOptions {
        budget: args.memory.budget(),
        oracle: args.oracle,
    };

    let start = Instant::now();
    let assignment = match &args.trace {
        Some(path) => {
            opts.budget
                .admit(Algorithm::Circle.memory_estimate(inst.node_count(), inst.center_count()))
                .map_err(SolveError::from)?;
            let file = BufWriter::new(File::create(path).map_err(|e| input_err(path, e))?);
            let mut tw = TraceWriter::new(&inst, file);
            let run = run_circle_growing(&inst, CircleOptions::default(), &mut tw);
            tw.finish().map_err(|e| input_err(path, e))?;
            run.assignment
        }
        None => solve(&inst, args.algo, &opts)?.assignment,
    };
    let elapsed = start.elapsed();
    eprintln!(
        "n={} m={} k={} algorithm={} time_ms={:.3}",
        g.node_count(),
        g.edge_count(),
        inst.center_count(),
        args.algo,
        elapsed.as_secs_f64() * 1e3
    );

    let out = args.output.as_deref();
    let mut w = sink(out)?;
    write_assignment(&inst, &assignment, &mut w).map_err(|e| write_err(out, e))?;
    if let Some(path) = &args.summary {
        let s = summarize(&inst, &assignment, Some(args.algo.name()));
        let mut w = sink(Some(path))?;
        serde_json::to_writer_pretty(&mut w, &s).map_err(|e| input_err(path, e))?;
        writeln!(w).and_then(|_| w.flush()).map_err(|e| input_err(path, e))?;
    }
    Ok(())
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let g = prepare_graph(&args.graph)?;
    let centers = pick_centers(&args.centers, &g)?;
    let quotas = pick_quotas(&args.quotas, g.node_count(), centers.len())?;
    let inst = Instance::new(&g, centers, quotas)?;
    let path = &args.assignment;
    let a = read_assignment(open(path)?, &g, inst.centers()).map_err(|e| input_err(path, e))?;
    let rows = center_distances(&inst);
    let id = |u: usize| g.original_id(u);
    let center_id = |c: usize| id(inst.centers()[c]);
    match verify_stable(&inst, &a, &rows) {
        Ok(Verdict::Stable) => {
            println!("STABLE");
            Ok(())
        }
        Ok(Verdict::Blocking(bp)) => Err(CliError::Unstable(format!(
            "UNSTABLE: blocking pair node {} center {}: d = {} < {} to assigned center {}, \
             and center {} holds node {} at {}",
            id(bp.node),
            center_id(bp.center),
            bp.dist,
            bp.assigned_dist,
            center_id(bp.assigned_center),
            center_id(bp.center),
            id(bp.worst_node),
            bp.worst_dist
        ))),
        Err(VerifyError::QuotaViolation { center, quota, actual }) => Err(CliError::Unstable(format!(
            "UNSTABLE: quota violated: center {} has {actual} nodes, quota is {quota}",
            center_id(center)
        ))),
        Err(e) => Err(CliError::Input(format!("{}: {e}", path.display()))),
    }
}

fn graph_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

pub fn cmd_bench(args: &BenchArgs) -> Result<(), CliError> {
    let (g, name) = match (&args.graph, args.grid) {
        (Some(path), _) => (load_graph(path, None, args.format)?, graph_name(path)),
        (None, Some((w, h))) => (grid_graph(w, h, args.jitter_seed), format!("grid-{w}x{h}")),
        (None, None) => unreachable!("clap requires a graph or --grid"),
    };
    let g = trim(g, args.largest_component)?;
    if !g.is_connected() {
        return Err(InstanceError::Disconnected {
            components: g.component_labels().1,
        }
        .into());
    }
    let cfg = BenchConfig {
        graph_name: name,
        ks: args.ks.clone(),
        runs: args.runs,
        seed: args.seed,
        algorithms: args.algos.clone(),
        budget: args.memory.budget(),
        oracle: args.oracle,
        parallel: args.parallel,
    };
    if cfg.parallel {
        eprintln!("warning: --parallel runs overlap; time_ms values are not comparable across rows");
    }
    let records = run_bench(&g, &cfg).map_err(|e| match e {
        BenchError::BadK { .. } => CliError::Infeasible(format!("infeasible instance: {e}")),
        BenchError::Instance(e) => e.into(),
        BenchError::Solve(e) => e.into(),
        BenchError::NoRuns => CliError::Input(e.to_string()),
    })?;
    let out = args.output.as_deref();
    let w = sink(out)?;
    write_csv(&records, w, args.omit_timing).map_err(|e| write_err(out, e))
}

pub fn cmd_render(args: &RenderArgs) -> Result<(), CliError> {
    let g = prepare_graph(&args.graph)?;
    let path = &args.assignment;
    let (centers, a): (Vec<usize>, Assignment) = match &args.centers {
        Some(cpath) => {
            let centers = read_centers(open(cpath)?, &g).map_err(|e| input_err(cpath, e))?;
            let a = read_assignment(open(path)?, &g, &centers).map_err(|e| input_err(path, e))?;
            (centers, a)
        }
        None => read_assignment_inferring_centers(open(path)?, &g).map_err(|e| input_err(path, e))?,
    };
    // the drawing shows districts as they are; quotas are what was assigned
    let quotas = a.member_counts(centers.len());
    let inst = Instance::new(&g, centers, quotas)?;
    let svg = render_svg(&inst, &a, &SvgOptions::default()).map_err(|e| input_err(&args.graph.graph, e))?;
    let out = args.output.as_deref();
    let mut w = sink(out)?;
    w.write_all(svg.as_bytes())
        .and_then(|_| w.flush())
        .map_err(|e| write_err(out, e))?;
    if let Some(gpath) = &args.geojson {
        let scale = if args.microdegrees { 1e-6 } else { 1.0 };
        let v = render_geojson(&inst, &a, scale).map_err(|e| input_err(&args.graph.graph, e))?;
        let mut w = sink(Some(gpath))?;
        serde_json::to_writer(&mut w, &v).map_err(|e| input_err(gpath, e))?;
        writeln!(w).and_then(|_| w.flush()).map_err(|e| input_err(gpath, e))?;
    }
    Ok(())
}

pub fn cmd_generate(args: &GenerateArgs) -> Result<(), CliError> {
    let (w, h) = args.grid;
    let g = grid_graph(w, h, args.jitter_seed);
    let out = args.output.as_deref();
    let sinkw = sink(out)?;
    write_tsv(&g, sinkw).map_err(|e| write_err(out, e))
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Render(a) => cmd_render(a),
        Command::Generate(a) => cmd_generate(a),
    }
}

/// Parses arguments, runs the command and returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.message());
            e.exit_code()
        }
    }
}
