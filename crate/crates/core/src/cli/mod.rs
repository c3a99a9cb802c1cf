//! The `reeb-toolkit` command line.
//!
//! Every verb prints a JSON report on stdout, or a plain table with
//! `--human`. Exit status is 0 on success, 2 for malformed input and 1 when
//! a computation fails or a verification does not hold.

mod commands;
mod human;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

use crate::{Error, Result};

/// Default verification tolerance, overridable through `REEB_TOOLKIT_TOL`.
pub const DEFAULT_TOL: f64 = 1e-9;
pub const TOL_ENV: &str = "REEB_TOOLKIT_TOL";

#[derive(Parser, Debug)]
#[command(name = "reeb-toolkit", version, about = "Bott-integrable contact structures: numerics and homological decisions")]
pub struct Cli {
    /// Print a table instead of JSON.
    #[arg(long, global = true)]
    pub human: bool,

    #[command(subcommand)]
    pub command: Command,
}

/// Where a Lutz curve comes from: a JSON file, or the cat-torus form
/// `alpha_n` on `[--t0, --t1]`.
#[derive(Args, Debug, Clone)]
pub struct CurveSource {
    /// Curve JSON file.
    #[arg(long, value_name = "PATH")]
    pub curve: Option<PathBuf>,
    /// Use `alpha_n` of the cat torus.
    #[arg(long, value_name = "INT")]
    pub n: Option<u32>,
}

#[derive(Args, Debug, Clone)]
pub struct Window {
    #[arg(long, value_name = "FLOAT", allow_hyphen_values = true)]
    pub t0: Option<f64>,
    #[arg(long, value_name = "FLOAT", allow_hyphen_values = true)]
    pub t1: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct ManifoldArg {
    /// Graph-manifold description (JSON). Names of shipped fixtures resolve
    /// even when no such file exists on disk.
    #[arg(long, value_name = "PATH")]
    pub manifold: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sample the contact condition `Delta < 0` on a curve.
    CheckContact {
        #[command(flatten)]
        source: CurveSource,
        #[command(flatten)]
        window: Window,
    },
    /// Integrate the Reeb flow with fixed-step RK4.
    ReebFlow {
        #[command(flatten)]
        source: CurveSource,
        /// Transverse coordinate of the starting point (`--t0`).
        #[command(flatten)]
        window: Window,
        #[arg(long = "T", value_name = "FLOAT")]
        duration: f64,
        #[arg(long, value_name = "FLOAT", default_value_t = 1e-3)]
        dt: f64,
        #[arg(long, value_name = "FLOAT", default_value_t = 0.0, allow_hyphen_values = true)]
        x1: f64,
        #[arg(long, value_name = "FLOAT", default_value_t = 0.0, allow_hyphen_values = true)]
        x2: f64,
        /// Write the trajectory as CSV.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Total turning angle of the curve about the origin.
    Winding {
        #[command(flatten)]
        source: CurveSource,
        #[command(flatten)]
        window: Window,
    },
    /// Full twists relative to `alpha_0` on the same domain.
    Torsion {
        #[command(flatten)]
        source: CurveSource,
        #[command(flatten)]
        window: Window,
    },
    /// Insert a full Lutz twist on the window `[--t0, --t1]`.
    LutzTwist {
        #[command(flatten)]
        source: CurveSource,
        #[command(flatten)]
        window: Window,
        /// Write the twisted curve (tabulated) as JSON.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Critical set of `r^2 + chi(r) cos(theta)`.
    Perturb {
        #[arg(long, value_name = "FLOAT", default_value_t = 1.0)]
        delta: f64,
        #[arg(long, value_name = "FLOAT", default_value_t = 0.25)]
        epsilon: f64,
    },
    /// Abelian group presented by a relation matrix (default: the cat torus).
    Homology {
        /// JSON array of integer rows.
        #[arg(long, value_name = "PATH", conflicts_with = "manifold")]
        matrix: Option<PathBuf>,
        /// Number of generators when the matrix has no rows.
        #[arg(long, value_name = "INT")]
        ngens: Option<usize>,
        /// Report `H1(M)` of a description instead.
        #[arg(long, value_name = "PATH")]
        manifold: Option<PathBuf>,
    },
    /// Smith normal form with transforms (default: the cat torus relations).
    Snf {
        #[arg(long, value_name = "PATH")]
        matrix: Option<PathBuf>,
        #[arg(long, value_name = "INT")]
        ngens: Option<usize>,
    },
    /// The JSJ complex of a description.
    Jsj {
        #[command(flatten)]
        manifold: ManifoldArg,
    },
    /// Can the class be represented by a graph link?
    DecideGraphlink {
        #[command(flatten)]
        manifold: ManifoldArg,
        /// Coordinates `a ++ b`, comma separated.
        #[arg(long, value_name = "INTS", value_parser = parse_ints, allow_hyphen_values = true)]
        class: Ints,
    },
    /// Is an overtwisted structure with this Euler class Bott integrable?
    DecideBott {
        #[command(flatten)]
        manifold: ManifoldArg,
        /// Poincare dual of the Euler class, `a ++ b`, comma separated.
        #[arg(long, value_name = "INTS", value_parser = parse_ints, allow_hyphen_values = true)]
        euler: Ints,
    },
    /// Euler class from a critical link.
    Euler {
        #[command(flatten)]
        manifold: ManifoldArg,
        /// Critical link JSON; defaults to the link built for a shipped fixture.
        #[arg(long, value_name = "PATH")]
        link: Option<PathBuf>,
    },
    /// Check the algebra of obstruction classes.
    D2 {
        #[command(flatten)]
        manifold: ManifoldArg,
        /// JSON with `d12, d23, d13, e1, e2` and optionally `d21`.
        #[arg(long = "d2", value_name = "PATH")]
        tuple: PathBuf,
        /// Also report `d2(xi^K, eta3)` for a Lutz twist along this class.
        #[arg(long, value_name = "INTS", value_parser = parse_ints, allow_hyphen_values = true)]
        class: Option<Ints>,
    },
    /// Check the identities of the cat-torus family `alpha_n`.
    CatmapVerify {
        #[arg(long, value_name = "INT")]
        n: u32,
    },
}

/// A comma separated integer list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ints(pub Vec<BigInt>);

fn parse_ints(s: &str) -> std::result::Result<Ints, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Ints(Vec::new()));
    }
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<BigInt>()
                .map_err(|_| format!("not an integer: {:?}", p.trim()))
        })
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(Ints)
}

/// Tolerance from the environment, or [`DEFAULT_TOL`].
pub fn tolerance() -> Result<f64> {
    match std::env::var(TOL_ENV) {
        Err(_) => Ok(DEFAULT_TOL),
        Ok(v) => match v.trim().parse::<f64>() {
            Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
            _ => Err(Error::field(TOL_ENV, format!("expected a positive number, got {v:?}"))),
        },
    }
}

/// Parse `argv`, run the command and write its report. Returns the exit
/// status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    match commands::dispatch(&cli.command) {
        Ok(outcome) => {
            let text = if cli.human {
                human::render(&outcome.report)
            } else {
                serde_json::to_string_pretty(&outcome.report).expect("reports are plain JSON") + "\n"
            };
            let _ = out.write_all(text.as_bytes());
            if let Some(msg) = &outcome.failure {
                let _ = writeln!(err, "verification failed: {msg}");
                1
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_validation() {
                2
            } else {
                1
            }
        }
    }
}
