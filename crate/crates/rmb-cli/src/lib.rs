//! Command-line driver for radial-mean-body computations.
//!
//! Subcommands: `decompose`, `eval`, `boundary`, `certify`,
//! `oracle-compare`, `approx-converge`, `experiment-matrix-norm`,
//! `render`. Exit codes: 0 success, 1 usage or input error, 2 a
//! convexity check failed (scientifically interesting, operationally
//! fine).

pub mod commands;
pub mod formats;
pub mod svg;
pub mod threads;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub const DEFAULT_SEED: u64 = 20240601;
pub const DEFAULT_SAMPLES: usize = 2048;
pub const DEFAULT_MC_SAMPLES: u64 = 1_000_000;

/// Exit code for a failed convexity check.
pub const EXIT_CHECK_FAILED: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "rmb",
    version,
    about = "Radial mean bodies of planar convex polygons: closed-form norms, oracles, convexity certificates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct PolygonArg {
    /// Polygon JSON file: {"vertices": [[x, y], ...]}.
    #[arg(long)]
    pub polygon: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Alternating-vector decomposition for one direction, as JSON.
    Decompose {
        #[command(flatten)]
        polygon: PolygonArg,
        /// Direction "x,y" (must avoid vertex-difference lines).
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the norm of one vector.
    Eval {
        #[command(flatten)]
        polygon: PolygonArg,
        #[arg(long, allow_hyphen_values = true)]
        p: f64,
        /// Query vector "x,y".
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Also admit p > 0.
        #[arg(long)]
        extended_range: bool,
    },
    /// Sample the unit level set; CSV (angle,x,y) plus optional SVG.
    Boundary {
        #[command(flatten)]
        polygon: PolygonArg,
        #[arg(long, allow_hyphen_values = true)]
        p: f64,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        /// csv | svg (svg adds a figure next to the CSV; needs --out-dir).
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long)]
        extended_range: bool,
    },
    /// Numerical convexity certificate, as JSON; exit 2 when a check fails.
    Certify {
        #[command(flatten)]
        polygon: PolygonArg,
        #[arg(long, allow_hyphen_values = true)]
        p: f64,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        /// Perturbation magnitude for non-general-position input.
        #[arg(long, default_value_t = 1e-6)]
        delta: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        extended_range: bool,
        /// Certificate file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed form vs X-ray oracle vs Monte Carlo, as CSV.
    OracleCompare {
        #[command(flatten)]
        polygon: PolygonArg,
        #[arg(long, allow_hyphen_values = true)]
        p: f64,
        #[arg(long, default_value_t = 16)]
        directions: usize,
        #[arg(long, default_value_t = DEFAULT_MC_SAMPLES)]
        mc_samples: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        extended_range: bool,
    },
    /// Inscribed regular m-gons of the disc against the disc value, as CSV.
    ApproxConverge {
        #[arg(long, allow_hyphen_values = true)]
        p: f64,
        /// Vertex counts, e.g. "8,16,32,64".
        #[arg(long, value_delimiter = ',', default_values_t = vec![8usize, 16, 32, 64])]
        m_list: Vec<usize>,
        #[arg(long, default_value_t = 16)]
        directions: usize,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
    },
    /// Hessian scan of the invariant matrix p-norm on diagonal matrices.
    ExperimentMatrixNorm {
        #[arg(long, allow_hyphen_values = true)]
        p: f64,
        /// Grid "min,max,n" over [min,max]^2.
        #[arg(long, default_value = "0.1,3,50")]
        grid: String,
        #[arg(long, default_value_t = 1e-4)]
        h: f64,
    },
    /// Emit the polygon/level-set figure (SVG) and its CSV table.
    Render {
        #[command(flatten)]
        polygon: PolygonArg,
        #[arg(long, allow_hyphen_values = true)]
        p: f64,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long)]
        extended_range: bool,
    },
}

/// Parse "a,b" into a vector.
pub fn parse_vec2(raw: &str) -> anyhow::Result<rmb_core::geometry::Vec2> {
    let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
    anyhow::ensure!(parts.len() == 2, "expected \"x,y\", got {raw:?}");
    let x: f64 = parts[0].parse()?;
    let y: f64 = parts[1].parse()?;
    anyhow::ensure!(
        x.is_finite() && y.is_finite(),
        "non-finite components in {raw:?}"
    );
    Ok(rmb_core::geometry::Vec2::new(x, y))
}

/// Validate the exponent against the admitted range, with the user-facing
/// message fixed by the interface contract.
pub fn validate_p(p: f64, extended: bool) -> anyhow::Result<()> {
    let base = p > -1.0 && p < 0.0;
    if base || (extended && p > 0.0 && p.is_finite()) {
        Ok(())
    } else if extended {
        anyhow::bail!("p must lie in (-1,0) or (0,inf)")
    } else {
        anyhow::bail!("p must lie in (-1,0)")
    }
}

/// Run a parsed invocation; returns the process exit code.
pub fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Decompose { polygon, x, out } => commands::decompose(&polygon.polygon, &x, out),
        Command::Eval {
            polygon,
            p,
            x,
            extended_range,
        } => commands::eval(&polygon.polygon, p, &x, extended_range),
        Command::Boundary {
            polygon,
            p,
            samples,
            format,
            out_dir,
            extended_range,
        } => commands::boundary(
            &polygon.polygon,
            p,
            samples,
            &format,
            out_dir,
            extended_range,
        ),
        Command::Certify {
            polygon,
            p,
            samples,
            delta,
            seed,
            extended_range,
            out,
        } => commands::certify(
            &polygon.polygon,
            p,
            samples,
            delta,
            seed,
            extended_range,
            out,
        ),
        Command::OracleCompare {
            polygon,
            p,
            directions,
            mc_samples,
            seed,
            extended_range,
        } => commands::oracle_compare(
            &polygon.polygon,
            p,
            directions,
            mc_samples,
            seed,
            extended_range,
        ),
        Command::ApproxConverge {
            p,
            m_list,
            directions,
            radius,
        } => commands::approx_converge(p, &m_list, directions, radius),
        Command::ExperimentMatrixNorm { p, grid, h } => {
            commands::experiment_matrix_norm(p, &grid, h)
        }
        Command::Render {
            polygon,
            p,
            samples,
            out_dir,
            extended_range,
        } => commands::render(&polygon.polygon, p, samples, &out_dir, extended_range),
    }
}
