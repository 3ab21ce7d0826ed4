//! Command-line front end. `run` takes the argument list and output sinks so
//! that it can be driven from tests; `main` only forwards the exit code.
//!
//! Exit codes: 0 when every certificate passes, 1 when a mathematical check
//! fails, 2 on usage, parse or input errors.

mod polyfile;
mod render;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::deltacert::{
    build_delta_model, local_maximality_certificate, CertError, ConditionBounds, HessianMode, Pipeline,
};
use crate::exactnum::{RatInterval, Rational};
use crate::globalbounds::global_bounds;
use crate::widthlab::{lattice_width, Functional, Hollowness, Vec3};

pub use polyfile::{parse_polytope_file, write_polytope_file, PolyFileError, PolytopeFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// The grid of `c` values used by `--sweep`.
pub const SWEEP: [(i64, i64); 7] = [(7, 1), (8, 1), (9, 1), (39, 4), (10, 1), (11, 1), (12, 1)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "hollowcert",
    version,
    about = "Exact lattice-width certificates for a hollow tetrahedron"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Cap on worker threads.
    #[arg(long, env = "HOLLOWCERT_JOBS", global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the tetrahedron: width, minimizing functionals, hollowness and
    /// the lattice points on its facets.
    VerifyDelta,
    /// First- and second-order certificate of strict local maximality.
    CertifyLocal {
        /// Positive rational, e.g. 39/4 or 9.75.
        #[arg(long, value_parser = parse_rational_arg, default_value = "39/4")]
        c: Rational,
    },
    /// Radii of the explicit neighborhood (one table row per c).
    CertifyNeighborhood(NeighborhoodArgs),
    /// Lattice width of a polytope given in a file.
    Width {
        #[arg(long)]
        polytope: std::path::PathBuf,
    },
    /// Certified global bounds on width maximizers and inscribed polytopes.
    GlobalBounds {
        /// Width of the printed enclosures, e.g. 10^-12 or 1/1000.
        #[arg(long, value_parser = parse_rational_arg, default_value = "10^-9")]
        precision: Rational,
    },
}

#[derive(Debug, Args)]
pub struct NeighborhoodArgs {
    #[arg(long, value_parser = parse_rational_arg, default_value = "39/4")]
    pub c: Rational,
    /// Run the full Hessian-determinant condition (minutes per value of c).
    #[arg(long)]
    pub with_hessian: bool,
    /// Non-certifying smoke run of the Hessian condition on the section
    /// keeping the first K s-variables.
    #[arg(long, value_name = "K", conflicts_with = "with_hessian")]
    pub section: Option<usize>,
    /// Bisection tolerance of the root bounds.
    #[arg(long, value_parser = parse_rational_arg, default_value = "10^-7")]
    pub tol: Rational,
    /// Run every c in 7, 8, 9, 39/4, 10, 11, 12 instead of --c.
    #[arg(long)]
    pub sweep: bool,
}

/// Accepts `p/q`, integers, exact decimals (`9.75`) and `10^-k`.
pub fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if let Some(k) = s.strip_prefix("10^-") {
        let k: u32 = k.parse().map_err(|_| format!("bad exponent in {s:?}"))?;
        return Ok(Rational::pow10_neg(k));
    }
    if s.contains('.') {
        return Rational::from_decimal(s).map_err(|e| e.to_string());
    }
    s.parse::<Rational>()
        .map_err(|_| format!("cannot parse {s:?} as a rational"))
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Math(String),
}

impl From<CertError> for Failure {
    fn from(e: CertError) -> Self {
        match e {
            CertError::NonPositiveC => Failure::Usage(e.to_string()),
            other => Failure::Math(other.to_string()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimizerRow {
    /// Coordinates in the dual basis.
    pub coords: [i64; 3],
    pub functional: Functional,
}

#[derive(Clone, Debug, Serialize)]
pub struct FacetRow {
    pub point: Vec3,
    /// Index (1-based) of the vertex opposite the facet.
    pub opposite_vertex: usize,
    pub barycentric: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyDeltaReport {
    pub width: String,
    pub width_enclosure: RatInterval,
    pub minimizers: Vec<MinimizerRow>,
    pub hollow: bool,
    pub facet_points: Vec<FacetRow>,
    pub difference_body_vertices: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WidthReport {
    pub width: String,
    pub width_enclosure: RatInterval,
    pub minimizers: Vec<MinimizerRow>,
    /// Only decided for simplices.
    pub hollow: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub rows: Vec<ConditionBounds>,
    pub passed: bool,
}

fn enclosure(x: &crate::exactnum::QSqrt2) -> RatInterval {
    let (lo, hi) = x.bracket(64);
    RatInterval::new(lo, hi).expect("ordered bracket")
}

fn emit<T: Serialize>(out: &mut dyn Write, format: Format, value: &T, text: impl FnOnce() -> String) {
    let s = match format {
        Format::Json => serde_json::to_string_pretty(value).expect("serializable report") + "\n",
        Format::Text => text(),
    };
    let _ = out.write_all(s.as_bytes());
}

fn verify_delta(out: &mut dyn Write, format: Format) -> Result<bool, Failure> {
    let model = build_delta_model()?;
    let minimizers = model
        .width
        .coords
        .iter()
        .zip(&model.width.minimizers)
        .map(|(c, f)| MinimizerRow {
            coords: *c,
            functional: f.clone(),
        })
        .collect();
    let facet_points = model
        .p
        .iter()
        .zip(&model.p_barycentric)
        .enumerate()
        .map(|(i, (p, b))| FacetRow {
            point: p.clone(),
            opposite_vertex: i + 1,
            barycentric: b.iter().map(ToString::to_string).collect(),
        })
        .collect();
    let report = VerifyDeltaReport {
        width: model.width.width.to_string(),
        width_enclosure: enclosure(&model.width.width),
        minimizers,
        hollow: model.hollow,
        facet_points,
        difference_body_vertices: model.difference_vertices.len(),
        passed: true,
    };
    emit(out, format, &report, || render::verify_delta(&report));
    Ok(report.passed)
}

fn certify_local(out: &mut dyn Write, format: Format, c: &Rational) -> Result<bool, Failure> {
    let cert = local_maximality_certificate(c)?;
    emit(out, format, &cert, || render::local(&cert));
    Ok(cert.verdict)
}

fn certify_neighborhood(out: &mut dyn Write, format: Format, args: &NeighborhoodArgs) -> Result<bool, Failure> {
    if args.tol.signum() <= 0 {
        return Err(Failure::Usage("--tol must be positive".into()));
    }
    let mode = match (args.with_hessian, args.section) {
        (true, _) => HessianMode::Full,
        (false, Some(k)) if (1..=8).contains(&k) => HessianMode::Section(k),
        (false, Some(_)) => return Err(Failure::Usage("--section must be between 1 and 8".into())),
        (false, None) => HessianMode::Skip,
    };
    let cs: Vec<Rational> = if args.sweep {
        SWEEP.iter().map(|&(n, d)| Rational::new(n, d)).collect()
    } else {
        if args.c.signum() <= 0 {
            return Err(Failure::Usage("c must be positive".into()));
        }
        vec![args.c.clone()]
    };
    let pipeline = Pipeline::new(&args.tol)?;
    if !args.sweep {
        let report = pipeline.certify(&cs[0], mode, &args.tol)?;
        emit(out, format, &report, || render::neighborhood(&report, mode));
        return Ok(report.passed);
    }
    let mut rows = Vec::new();
    let mut passed = true;
    for c in &cs {
        let r = pipeline.certify(c, mode, &args.tol)?;
        passed &= r.passed;
        rows.push(r.bounds);
    }
    let report = SweepReport { rows, passed };
    emit(out, format, &report, || render::sweep(&report.rows, mode));
    Ok(passed)
}

fn width(out: &mut dyn Write, format: Format, path: &std::path::Path) -> Result<bool, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let file = parse_polytope_file(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    if !file.polytope.is_full_dimensional() {
        return Err(Failure::Usage(format!(
            "{}: polytope is not full-dimensional",
            path.display()
        )));
    }
    let w = lattice_width(&file.polytope, &file.lattice).map_err(|e| Failure::Usage(e.to_string()))?;
    let hollow = if file.polytope.vertices().len() == 4 {
        crate::widthlab::hollow_check(&file.polytope, &file.lattice)
            .ok()
            .map(|h| h == Hollowness::Hollow)
    } else {
        None
    };
    let report = WidthReport {
        width: w.width.to_string(),
        width_enclosure: enclosure(&w.width),
        minimizers: w
            .coords
            .iter()
            .zip(&w.minimizers)
            .map(|(c, f)| MinimizerRow {
                coords: *c,
                functional: f.clone(),
            })
            .collect(),
        hollow,
    };
    emit(out, format, &report, || render::width(&report));
    Ok(true)
}

fn bounds(out: &mut dyn Write, format: Format, precision: &Rational) -> Result<bool, Failure> {
    if precision.signum() <= 0 {
        return Err(Failure::Usage("--precision must be positive".into()));
    }
    let report = global_bounds(precision).map_err(|e| Failure::Math(e.to_string()))?;
    emit(out, format, &report, || render::global(&report));
    Ok(report.passed)
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    if let Some(n) = cli.jobs {
        if n == 0 {
            let _ = writeln!(err, "error: --jobs must be at least 1");
            return EXIT_USAGE;
        }
        // Only the first call in a process can size the global pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let result = match &cli.command {
        Command::VerifyDelta => verify_delta(out, cli.format),
        Command::CertifyLocal { c } => certify_local(out, cli.format, c),
        Command::CertifyNeighborhood(args) => certify_neighborhood(out, cli.format, args),
        Command::Width { polytope } => width(out, cli.format, polytope),
        Command::GlobalBounds { precision } => bounds(out, cli.format, precision),
    };
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILED,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Math(msg)) => {
            let _ = writeln!(err, "check failed: {msg}");
            EXIT_FAILED
        }
    }
}
