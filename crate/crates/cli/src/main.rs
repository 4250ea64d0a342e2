//! Command line front end: generate benchmark graphs, run heuristic
//! combinations, call the exact solver, drive experiment sweeps, and turn
//! result CSVs into summary tables and tile diagrams.
//!
//! Exit codes: 0 success, 1 usage or malformed input, 2 I/O failure,
//! 3 instance too large for the exact solver (override with --force).
//!
//! Relative output paths resolve against `BOOKDRAW_OUT_DIR` when that
//! variable is set; absolute paths are used as given.

use std::fs;
use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use bookdraw::generators::{GeneratorError, GeneratorSpec, GraphClass};
use bookdraw::harness::{
    self, append_csv, canonicalize, parse_config, parse_pages, read_csv, render_csv,
    run_experiment, HarnessError,
};
use bookdraw::heuristics::NameError;
use bookdraw::{
    exact_book_crossing_number_with_guard, AnnealingSchedule, DrawingError, Graph, GraphError,
    HeuristicCombo, LocalSearchParams, OracleError, ScheduleError, SizeGuard, VoName,
};

const OUT_DIR_VAR: &str = "BOOKDRAW_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "bookdraw",
    version,
    about = "Book drawings: generators, heuristics, exact solver, experiment harness"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a benchmark graph and emit it in the graph text format
    Gen(GenArgs),
    /// Run one heuristic combination on a graph and emit the drawing
    Draw(DrawArgs),
    /// Exact minimum-crossing drawing of a small graph
    Exact(ExactArgs),
    /// Run an experiment config and append result records to a CSV
    Bench(BenchArgs),
    /// Summaries, tile diagram, and relative series from a results CSV
    Report(ReportArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Graph class: random-linear, random-quadratic, planar-topological,
    /// oneplanar-topological, kplanar-geometric, ktree, hypercube, ccc,
    /// toroidal, toroidal3
    #[arg(long)]
    class: String,
    /// Vertex count (classes with a free size)
    #[arg(long)]
    n: Option<usize>,
    /// Edges per vertex (random-linear, integer) or edge probability
    /// (random-quadratic)
    #[arg(long)]
    density: Option<f64>,
    /// Per-edge crossing budget (kplanar-geometric) or tree width (ktree)
    #[arg(long)]
    k: Option<usize>,
    /// Dimension (hypercube: 1..=32, ccc: 3..=32)
    #[arg(long)]
    d: Option<usize>,
    /// First cycle length (toroidal, toroidal3)
    #[arg(long)]
    i: Option<usize>,
    /// Second cycle length (toroidal, toroidal3)
    #[arg(long)]
    j: Option<usize>,
    /// Third cycle length (toroidal3)
    #[arg(long)]
    l: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file (stdout when absent)
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DrawArgs {
    /// Graph in the text format; "-" or absent reads stdin
    input: Option<PathBuf>,
    /// Number of pages
    #[arg(long)]
    k: usize,
    /// Vertex order heuristic: smlDgrDFS, randDFS, treeBFS, conCro,
    /// conGreedy, conGreedy+
    #[arg(long)]
    vo: String,
    /// Page assignment heuristic: ceilFloor, eLen, circular, earDecomp,
    /// slope, none (conGreedy+ assigns pages itself unless one is named)
    #[arg(long)]
    pa: Option<String>,
    /// Local search: greedyAlt, greedy+, sa, none
    #[arg(long)]
    ls: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Simulated annealing iteration budget
    #[arg(long)]
    sa_iters: Option<usize>,
    /// Simulated annealing start temperature (default derived per instance)
    #[arg(long)]
    sa_t0: Option<f64>,
    /// Simulated annealing geometric cooling factor
    #[arg(long)]
    sa_alpha: Option<f64>,
    /// Round cap for the greedy local searches (0 = run to convergence)
    #[arg(long)]
    max_rounds: Option<usize>,
    /// Output file (stdout when absent)
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExactArgs {
    /// Graph in the text format; "-" or absent reads stdin
    input: Option<PathBuf>,
    /// Number of pages
    #[arg(long)]
    k: usize,
    /// Ignore the instance-size guard and accept the exponential search
    #[arg(long)]
    force: bool,
    /// Output file (stdout when absent)
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Experiment config file
    config: PathBuf,
    /// Override the repetition count
    #[arg(long)]
    reps: Option<usize>,
    /// Override the master seed
    #[arg(long)]
    seed: Option<u64>,
    /// Override the page counts: "adaptive" or a comma-separated list
    #[arg(long)]
    pages: Option<String>,
    /// Override the annealing iteration budget
    #[arg(long)]
    sa_iters: Option<usize>,
    /// Override the annealing start temperature
    #[arg(long)]
    sa_t0: Option<f64>,
    /// Override the annealing cooling factor
    #[arg(long)]
    sa_alpha: Option<f64>,
    /// Override the greedy local-search round cap
    #[arg(long)]
    max_rounds: Option<usize>,
    /// Destination CSV (overrides the config; default results.csv)
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Rewrite the destination as one canonically ordered CSV with
    /// timings zeroed, for byte-exact comparison across reruns
    #[arg(long)]
    sorted: bool,
}

#[derive(Args)]
struct ReportArgs {
    /// Results CSV produced by `bench`
    csv: PathBuf,
    /// Combo label to normalize against, e.g. conCro-ceilFloor; adds
    /// relative.csv to the outputs
    #[arg(long)]
    baseline: Option<String>,
    /// Output directory (default: BOOKDRAW_OUT_DIR or the current directory)
    #[arg(short, long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Io(String),
    TooLarge(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Io(_) => 2,
            Failure::TooLarge(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Io(m) | Failure::TooLarge(m) => m,
        }
    }
}

macro_rules! usage_from {
    ($($ty:ty),*) => {
        $(impl From<$ty> for Failure {
            fn from(e: $ty) -> Self {
                Failure::Usage(e.to_string())
            }
        })*
    };
}

usage_from!(
    GraphError,
    DrawingError,
    NameError,
    GeneratorError,
    ScheduleError
);

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::TooLarge(e.to_string())
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Io(_) => Failure::Io(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version print to stdout and succeed; real parse
            // errors are usage failures
            let ok = e.exit_code() == 0;
            let _ = e.print();
            return ExitCode::from(if ok { 0 } else { 1 });
        }
    };
    let result = match cli.cmd {
        Cmd::Gen(a) => cmd_gen(a),
        Cmd::Draw(a) => cmd_draw(a),
        Cmd::Exact(a) => cmd_exact(a),
        Cmd::Bench(a) => cmd_bench(a),
        Cmd::Report(a) => cmd_report(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

/// Relative paths land under BOOKDRAW_OUT_DIR when it is set.
fn resolve_out(p: &Path) -> PathBuf {
    if p.is_absolute() {
        return p.to_path_buf();
    }
    match std::env::var(OUT_DIR_VAR) {
        Ok(dir) if !dir.is_empty() => Path::new(&dir).join(p),
        _ => p.to_path_buf(),
    }
}

fn ensure_parent(p: &Path) -> Result<(), Failure> {
    if let Some(parent) = p.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .map_err(|e| Failure::Io(format!("{}: {e}", parent.display())))?;
        }
    }
    Ok(())
}

fn read_input(p: Option<&Path>) -> Result<String, Failure> {
    match p {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn write_output(p: Option<&Path>, text: &str) -> Result<(), Failure> {
    match p {
        Some(p) => {
            let p = resolve_out(p);
            ensure_parent(&p)?;
            fs::write(&p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn require<T>(v: Option<T>, flag: &str, class: GraphClass) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("{flag} is required for class {class}")))
}

fn build_spec(a: &GenArgs) -> Result<GeneratorSpec, Failure> {
    let class: GraphClass = a.class.parse()?;
    let spec = match class {
        GraphClass::RandomLinear => {
            let d = require(a.density, "--density", class)?;
            if !(d.is_finite() && d.fract() == 0.0 && d >= 0.0 && d <= usize::MAX as f64) {
                return Err(Failure::Usage(format!(
                    "--density for {class} is a whole number of edges per vertex, got {d}"
                )));
            }
            GeneratorSpec::RandomLinear {
                n: require(a.n, "--n", class)?,
                a: d as usize,
            }
        }
        GraphClass::RandomQuadratic => GeneratorSpec::RandomQuadratic {
            n: require(a.n, "--n", class)?,
            p: require(a.density, "--density", class)?,
        },
        GraphClass::PlanarTopological => GeneratorSpec::PlanarTopological {
            n: require(a.n, "--n", class)?,
        },
        GraphClass::OneplanarTopological => GeneratorSpec::OneplanarTopological {
            n: require(a.n, "--n", class)?,
        },
        GraphClass::KplanarGeometric => GeneratorSpec::KplanarGeometric {
            n: require(a.n, "--n", class)?,
            k: require(a.k, "--k", class)?,
        },
        GraphClass::Ktree => GeneratorSpec::Ktree {
            n: require(a.n, "--n", class)?,
            k: require(a.k, "--k", class)?,
        },
        GraphClass::Hypercube => GeneratorSpec::Hypercube {
            d: require(a.d, "--d", class)?,
        },
        GraphClass::Ccc => GeneratorSpec::Ccc {
            d: require(a.d, "--d", class)?,
        },
        GraphClass::Toroidal => GeneratorSpec::Toroidal {
            i: require(a.i, "--i", class)?,
            j: require(a.j, "--j", class)?,
        },
        GraphClass::Toroidal3 => GeneratorSpec::Toroidal3 {
            i: require(a.i, "--i", class)?,
            j: require(a.j, "--j", class)?,
            l: require(a.l, "--l", class)?,
        },
    };
    let allowed: &[&str] = match class {
        GraphClass::RandomLinear | GraphClass::RandomQuadratic => &["n", "density"],
        GraphClass::PlanarTopological | GraphClass::OneplanarTopological => &["n"],
        GraphClass::KplanarGeometric | GraphClass::Ktree => &["n", "k"],
        GraphClass::Hypercube | GraphClass::Ccc => &["d"],
        GraphClass::Toroidal => &["i", "j"],
        GraphClass::Toroidal3 => &["i", "j", "l"],
    };
    let given = [
        ("n", a.n.is_some()),
        ("density", a.density.is_some()),
        ("k", a.k.is_some()),
        ("d", a.d.is_some()),
        ("i", a.i.is_some()),
        ("j", a.j.is_some()),
        ("l", a.l.is_some()),
    ];
    for (name, present) in given {
        if present && !allowed.contains(&name) {
            return Err(Failure::Usage(format!(
                "--{name} does not apply to class {class}"
            )));
        }
    }
    Ok(spec)
}

fn cmd_gen(a: GenArgs) -> Result<(), Failure> {
    let spec = build_spec(&a)?;
    let g = spec.generate(a.seed)?;
    write_output(a.out.as_deref(), &g.to_text())
}

/// "none" and an absent flag both mean "no stage here".
fn optional_name<T>(s: Option<&str>) -> Result<Option<T>, Failure>
where
    T: FromStr<Err = NameError>,
{
    match s {
        None | Some("none") => Ok(None),
        Some(x) => Ok(Some(x.parse::<T>()?)),
    }
}

fn check_pages(k: usize) -> Result<(), Failure> {
    if k == 0 {
        return Err(Failure::Usage("--k must be at least 1".into()));
    }
    Ok(())
}

fn cmd_draw(a: DrawArgs) -> Result<(), Failure> {
    check_pages(a.k)?;
    let vo: VoName = a.vo.parse()?;
    let combo = HeuristicCombo::new(
        vo,
        optional_name(a.pa.as_deref())?,
        optional_name(a.ls.as_deref())?,
    );
    let g = Graph::from_text(&read_input(a.input.as_deref())?)?;
    let defaults = AnnealingSchedule::default();
    let params = LocalSearchParams {
        schedule: AnnealingSchedule {
            iterations: a.sa_iters.unwrap_or(defaults.iterations),
            t0: a.sa_t0.or(defaults.t0),
            alpha: a.sa_alpha.or(defaults.alpha),
        },
        max_rounds: a.max_rounds.unwrap_or(0),
    };
    let mut d = bookdraw::heuristics::run_combo(&g, a.k, a.seed, &combo, &params)?;
    let crossings = d.crossings();
    write_output(a.out.as_deref(), &d.to_text())?;
    eprintln!("crossings: {crossings}");
    Ok(())
}

fn cmd_exact(a: ExactArgs) -> Result<(), Failure> {
    check_pages(a.k)?;
    let g = Graph::from_text(&read_input(a.input.as_deref())?)?;
    let guard = if a.force {
        SizeGuard::unlimited()
    } else {
        SizeGuard::drawing()
    };
    let (best, d) = exact_book_crossing_number_with_guard(&g, a.k, guard)?;
    write_output(a.out.as_deref(), &d.to_text())?;
    eprintln!("crossings: {best}");
    Ok(())
}

fn cmd_bench(a: BenchArgs) -> Result<(), Failure> {
    let text = fs::read_to_string(&a.config)
        .map_err(|e| Failure::Io(format!("{}: {e}", a.config.display())))?;
    let mut spec = parse_config(&text)?;
    if let Some(v) = a.reps {
        spec.reps = v;
    }
    if let Some(v) = a.seed {
        spec.master_seed = v;
    }
    if let Some(p) = &a.pages {
        spec.pages = parse_pages(p)?;
    }
    if let Some(v) = a.sa_iters {
        spec.ls_params.schedule.iterations = v;
    }
    if let Some(v) = a.sa_t0 {
        spec.ls_params.schedule.t0 = Some(v);
    }
    if let Some(v) = a.sa_alpha {
        spec.ls_params.schedule.alpha = Some(v);
    }
    if let Some(v) = a.max_rounds {
        spec.ls_params.max_rounds = v;
    }
    spec.validate()?;
    let output = run_experiment(&spec)?;
    for plan in &output.page_plans {
        let pages: Vec<String> = plan.pages.iter().map(|p| p.to_string()).collect();
        match &plan.sweep {
            Some(sw) => {
                let means: Vec<String> = sw.probe_means.iter().map(|m| format!("{m:.2}")).collect();
                eprintln!(
                    "# pages {}: {} (adaptive; probes: {}; best probe means: {})",
                    plan.graph,
                    pages.join(","),
                    sw.probes.join(", "),
                    means.join(",")
                );
            }
            None => eprintln!("# pages {}: {} (explicit)", plan.graph, pages.join(",")),
        }
    }
    let dest = a
        .out
        .clone()
        .or_else(|| spec.out_path.as_deref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("results.csv"));
    let dest = resolve_out(&dest);
    ensure_parent(&dest)?;
    let mut records = output.records;
    if a.sorted {
        canonicalize(&mut records);
        fs::write(&dest, render_csv(&records))
            .map_err(|e| Failure::Io(format!("{}: {e}", dest.display())))?;
    } else {
        append_csv(&dest, &records)?;
    }
    eprintln!("wrote {} records to {}", records.len(), dest.display());
    Ok(())
}

fn cmd_report(a: ReportArgs) -> Result<(), Failure> {
    let records = read_csv(&a.csv).map_err(|e| match e {
        HarnessError::Io(io) => Failure::Io(format!("{}: {io}", a.csv.display())),
        other => other.into(),
    })?;
    let dir = resolve_out(a.out.as_deref().unwrap_or_else(|| Path::new(".")));
    fs::create_dir_all(&dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
    let write = |name: &str, text: &str| -> Result<(), Failure> {
        let p = dir.join(name);
        fs::write(&p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))
    };
    let summaries = harness::report::summarize(&records);
    write("summary.csv", &harness::report::summary_csv(&summaries))?;
    let tiles = harness::report::tile_diagram(&records);
    write("tiles.csv", &tiles.csv)?;
    write("tiles.svg", &tiles.svg)?;
    let mut written = vec!["summary.csv", "tiles.csv", "tiles.svg"];
    if let Some(baseline) = &a.baseline {
        let (points, warnings) = harness::report::relative_lines(&records, baseline);
        for w in warnings {
            eprintln!("warning: {w}");
        }
        write("relative.csv", &harness::report::relative_csv(&points))?;
        written.push("relative.csv");
    }
    eprintln!("wrote {} to {}", written.join(", "), dir.display());
    Ok(())
}
