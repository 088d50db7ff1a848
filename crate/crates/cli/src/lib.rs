//! Command-line driver for the `dualball` library.
//!
//! Exit codes: 0 success, 1 domain failure (certification failed, budget
//! exhausted, unmet precondition), 2 usage or parse error.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use dualball::exact::parse_rational;
use dualball::geometry::{self, Polytope};
use dualball::reconstruct::{self, Budget};
use dualball::{json, plot, Error, LatticeVector, RatVector, SeminormSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "dualball", version, about = "Exact dual unit balls of integer-valued seminorms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the seminorm at a point.
    Eval {
        #[arg(long)]
        spec: PathBuf,
        /// Comma-separated integers or rationals, e.g. `1,-3/2`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Reconstruct the dual unit ball and write it with its certificates.
    Reconstruct(ReconstructArgs),
    /// Check a polytope against the seminorm on a lattice box.
    Certify {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        polytope: PathBuf,
        /// Sweep radius; defaults to 2·d·(largest vertex coordinate).
        #[arg(long)]
        radius: Option<u64>,
        /// Also write the report as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write plot data for a polytope or a probe trace.
    EmitPlot {
        #[arg(long, conflicts_with = "trace", required_unless_present = "trace")]
        polytope: Option<PathBuf>,
        /// A trace file written by `trace`.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = PlotFormat::Csv)]
        format: PlotFormat,
        /// Output path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Polar dual of a full-dimensional polytope with 0 in its interior.
    Polar {
        #[arg(long)]
        polytope: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Convex hull of a point list.
    Hull {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Trace a probe ray and check the decomposition inequalities at every step.
    Trace(TraceArgs),
}

#[derive(Debug, Args)]
pub struct ReconstructArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Certificates path; defaults to `<out stem>.certificates.json`.
    #[arg(long)]
    pub certificates: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Probe length per direction; defaults to 64·d·‖u‖∞.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub n_max: Option<u64>,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(2..))]
    pub window: u64,
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    pub attempts: u32,
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_rounds: u64,
    /// Probe directions one at a time.
    #[arg(long)]
    pub serial: bool,
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub direction: String,
    #[arg(long, allow_hyphen_values = true)]
    pub offset: Option<String>,
    /// A vertex of the dual ball maximising ⟨direction, ·⟩.
    #[arg(long, allow_hyphen_values = true)]
    pub y0: String,
    #[arg(long, default_value_t = 10)]
    pub n_max: u64,
    /// Dual ball to draw maximisers from; reconstructed when absent.
    #[arg(long)]
    pub polytope: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlotFormat {
    Csv,
    Obj,
}

/// A failure with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. }
            | Error::Malformed(_)
            | Error::DimensionMismatch { .. }
            | Error::ZeroVector
            | Error::EmptyPointSet
            | Error::NotTotal
            | Error::OracleViolation(_)
            | Error::IntegralityViolated(_) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        };
        Failure { code, message: e.to_string() }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn check_writable(path: &Path) -> CliResult<()> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() && !dir.is_dir() => {
            Err(Failure::usage(format!("{}: directory does not exist", dir.display())))
        }
        _ => Ok(()),
    }
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| Failure { code: EXIT_FAILURE, message: format!("{}: {e}", path.display()) })
}

fn load_spec(path: &Path) -> CliResult<SeminormSpec> {
    json::spec_from_str(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_polytope(path: &Path) -> CliResult<Polytope> {
    json::polytope_from_str(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// Parses `"1,-3/2"` into a rational vector.
pub fn parse_point(text: &str) -> CliResult<RatVector> {
    let coords = text
        .split(',')
        .map(|s| parse_rational(s.trim()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::usage(format!("point {text:?}: {e}")))?;
    Ok(RatVector(coords))
}

fn parse_lattice(text: &str, what: &str) -> CliResult<LatticeVector> {
    parse_point(text)?
        .to_lattice()
        .ok_or_else(|| Failure::usage(format!("{what} {text:?} must have integer coordinates")))
}

fn certificates_path(args: &ReconstructArgs) -> PathBuf {
    args.certificates.clone().unwrap_or_else(|| {
        let stem = args.out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        args.out.with_file_name(format!("{stem}.certificates.json"))
    })
}

fn cmd_eval(out: &mut dyn Write, spec: &Path, point: &str) -> CliResult<i32> {
    let spec = load_spec(spec)?;
    let x = parse_point(point)?;
    if x.dim() != spec.dim() {
        return Err(Error::DimensionMismatch { expected: spec.dim(), found: x.dim() }.into());
    }
    let v = spec.eval(&x)?;
    let _ = writeln!(out, "{}", json::format_rational(&v));
    Ok(EXIT_OK)
}

fn cmd_reconstruct(out: &mut dyn Write, args: &ReconstructArgs) -> CliResult<i32> {
    let spec = load_spec(&args.spec)?;
    let cert_path = certificates_path(args);
    check_writable(&args.out)?;
    check_writable(&cert_path)?;
    let budget = Budget {
        n_max: args.n_max,
        window: args.window as usize,
        attempts: args.attempts,
        max_rounds: args.max_rounds as usize,
        parallel: !args.serial,
        ..Budget::default()
    };
    let r = reconstruct::reconstruct(&spec, &budget, args.seed)?;
    write(&args.out, &json::to_pretty(&json::polytope_value(&r.polytope)))?;
    write(&cert_path, &json::to_pretty(&json::certificates_value(&r.certificates)))?;

    let p = &r.polytope;
    let _ = writeln!(out, "vertices: {}", p.vertices().len());
    let _ = writeln!(out, "all vertices integer: {}", if p.is_integral() { "yes" } else { "no" });
    let _ = writeln!(out, "affine dimension {}", p.affine_dim());
    if r.complete {
        let _ = writeln!(out, "complete after {} rounds", r.rounds);
        Ok(EXIT_OK)
    } else {
        let _ = writeln!(out, "incomplete: budget exhausted after {} rounds", r.rounds);
        Ok(EXIT_FAILURE)
    }
}

fn cmd_certify(
    out: &mut dyn Write,
    err: &mut dyn Write,
    spec: &Path,
    polytope: &Path,
    radius: Option<u64>,
    report_path: Option<&Path>,
) -> CliResult<i32> {
    let spec = load_spec(spec)?;
    let p = load_polytope(polytope)?;
    if let Some(path) = report_path {
        check_writable(path)?;
    }
    let radius = radius.unwrap_or_else(|| reconstruct::default_radius(&p));
    if radius == 0 {
        let _ = writeln!(err, "warning: radius 0 checks only the origin");
    }
    let report = reconstruct::certify(&spec, &p, radius)?;
    if let Some(path) = report_path {
        write(path, &json::to_pretty(&json::report_value(&report)))?;
    }
    let _ = writeln!(out, "{}", if report.pass { "PASS" } else { "FAIL" });
    let _ = writeln!(out, "points checked: {} (radius {})", report.checked_count, report.radius);
    if let Some(eq) = report.hull_equality {
        let _ = writeln!(out, "hull equality: {}", if eq { "yes" } else { "no" });
    }
    if let Some(ce) = &report.counterexample {
        let _ = writeln!(
            out,
            "counterexample: x = {}, N(x) = {}, h_P(x) = {}",
            ce.point,
            ce.oracle_value,
            json::format_rational(&ce.support_value)
        );
    }
    Ok(if report.pass { EXIT_OK } else { EXIT_FAILURE })
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => write(p, text),
        None => {
            let _ = out.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn cmd_emit_plot(
    out: &mut dyn Write,
    polytope: Option<&Path>,
    trace: Option<&Path>,
    format: PlotFormat,
    dest: Option<&Path>,
) -> CliResult<i32> {
    if let Some(path) = dest {
        check_writable(path)?;
    }
    let text = if let Some(path) = trace {
        if format != PlotFormat::Csv {
            return Err(Failure::usage("traces are emitted as CSV only"));
        }
        let (_, steps) = json::trace_from_str(&read(path)?)
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        plot::trace_csv(&steps)
    } else {
        let p = load_polytope(polytope.expect("clap requires --polytope or --trace"))?;
        let r = match format {
            PlotFormat::Csv => plot::polygon_csv(&p),
            PlotFormat::Obj => plot::obj_mesh(&p),
        };
        r.map_err(|e| Failure::usage(e.to_string()))?
    };
    emit(out, dest, &text)?;
    Ok(EXIT_OK)
}

fn cmd_polar(out: &mut dyn Write, polytope: &Path, dest: &Path) -> CliResult<i32> {
    let p = load_polytope(polytope)?;
    check_writable(dest)?;
    let q = geometry::polar(&p)?;
    write(dest, &json::to_pretty(&json::polytope_value(&q)))?;
    let _ = writeln!(out, "vertices: {}, facets: {}", q.vertices().len(), q.facets().len());
    Ok(EXIT_OK)
}

fn cmd_hull(out: &mut dyn Write, points: &Path, dest: &Path) -> CliResult<i32> {
    let pts = json::points_from_str(&read(points)?)
        .map_err(|e| Failure::usage(format!("{}: {e}", points.display())))?;
    check_writable(dest)?;
    let p = geometry::convex_hull(&pts)?;
    write(dest, &json::to_pretty(&json::polytope_value(&p)))?;
    let _ = writeln!(
        out,
        "vertices: {}, facets: {}, affine dimension {}",
        p.vertices().len(),
        p.facets().len(),
        p.affine_dim()
    );
    Ok(EXIT_OK)
}

fn cmd_trace(out: &mut dyn Write, args: &TraceArgs) -> CliResult<i32> {
    let spec = load_spec(&args.spec)?;
    let direction = parse_lattice(&args.direction, "direction")?;
    let offset = match &args.offset {
        Some(s) => parse_lattice(s, "offset")?,
        None => LatticeVector::zeros(spec.dim()),
    };
    let y0 = parse_lattice(&args.y0, "y0")?;
    if let Some(path) = &args.out {
        check_writable(path)?;
    }
    let ball = match &args.polytope {
        Some(path) => load_polytope(path)?,
        None => match spec.symmetrized_points() {
            Some(points) => Polytope::from_lattice_points(&points)?,
            None => reconstruct::reconstruct(&spec, &Budget::default(), args.seed)?.polytope,
        },
    };
    let steps = reconstruct::lemma_trace(&spec, &ball, &direction, &offset, &y0, args.n_max)?;
    let text = json::to_pretty(&json::trace_value(&y0, &steps));
    match &args.out {
        Some(path) => {
            write(path, &text)?;
            let _ = writeln!(out, "traced {} steps, chain holds at every step", steps.len());
        }
        None => {
            let _ = out.write_all(text.as_bytes());
        }
    }
    Ok(EXIT_OK)
}

/// Runs a parsed command, writing reports to `out` and diagnostics to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Eval { spec, point } => cmd_eval(out, spec, point),
        Command::Reconstruct(args) => cmd_reconstruct(out, args),
        Command::Certify { spec, polytope, radius, out: report } => {
            cmd_certify(out, err, spec, polytope, *radius, report.as_deref())
        }
        Command::EmitPlot { polytope, trace, format, out: dest } => {
            cmd_emit_plot(out, polytope.as_deref(), trace.as_deref(), *format, dest.as_deref())
        }
        Command::Polar { polytope, out: dest } => cmd_polar(out, polytope, dest),
        Command::Hull { points, out: dest } => cmd_hull(out, points, dest),
        Command::Trace(args) => cmd_trace(out, args),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            f.code
        }
    }
}

/// Parses `std::env::args` and runs; clap's own usage errors exit with 2.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(&cli, &mut stdout.lock(), &mut stderr.lock())
}
