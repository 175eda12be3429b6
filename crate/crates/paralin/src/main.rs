use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use paralin::grid::GridSpec;
use paralin::{commands, render, UsageError};

#[derive(Parser)]
#[command(
    name = "paralin",
    version,
    about = "Linearizing coordinates for the quadratic family f(w) = lambda*w + w^2"
)]
struct Cli {
    /// Worker thread count (default: rayon's choice; PARALIN_THREADS as fallback)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct GridArgs {
    /// Pixel counts, NXxNY
    #[arg(long, default_value = "400x400")]
    grid: String,
    /// Window x0,x1,y0,y1 in the w-plane
    #[arg(long, default_value = "-1.6,0.6,-1.1,1.1", allow_hyphen_values = true)]
    bounds: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Filled-Julia-set membership mask (PPM + mirror CSV)
    Julia {
        /// Multiplier lambda in (0, 1]
        #[arg(long)]
        lambda: f64,
        #[command(flatten)]
        grid: GridArgs,
        /// Iteration budget for the membership proxy
        #[arg(long, default_value_t = 100_000)]
        max_iter: usize,
        /// Output PPM path (a CSV is written beside it)
        #[arg(long)]
        out: PathBuf,
    },
    /// Equipotential bands of Phi_f (lambda < 1) or Phi_g (lambda = 1)
    Equipotential {
        #[arg(long)]
        lambda: f64,
        #[command(flatten)]
        grid: GridArgs,
        /// Per-pixel evaluation tolerance
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 100_000)]
        max_iter: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate u_eps at one point of the conjugated plane
    Linearize {
        #[arg(long)]
        lambda: f64,
        /// Evaluation point, "re" or "re,im"
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Base point a (default: the sector vertex 2R)
        #[arg(long, allow_hyphen_values = true)]
        base: Option<String>,
        /// Sector radius R
        #[arg(long, default_value_t = 10.0)]
        radius: f64,
        /// Sector half-opening offset alpha in [0, pi/2)
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        /// Deviation exponent sigma in (0, 1]
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        /// Deviation bound M
        #[arg(long, default_value_t = 1.2)]
        m_bound: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// sup_E |Phi_f - Phi_g| table over a lambda list approaching 1
    Converge {
        /// CSV of points (header re,im); wins over --segment sampling
        #[arg(long)]
        points: Option<PathBuf>,
        /// Real segment "x0,x1" to sample when no point file is given
        #[arg(long, default_value = "-0.6,-0.4", allow_hyphen_values = true)]
        segment: String,
        /// Sample count on the segment
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Seed for random sampling (evenly spaced without it)
        #[arg(long)]
        seed: Option<u64>,
        /// Comma list of lambda values (default 1 - 2^-k, k = 4..=10)
        #[arg(long, allow_hyphen_values = true)]
        lambdas: Option<String>,
        #[arg(long, default_value_t = 100_000)]
        max_iter: usize,
        /// Final-row pass threshold on sup|Phi_f - Phi_g|
        #[arg(long, default_value_t = 1e-2)]
        threshold: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Growth-bound table for Li_s(1 - eps) on the real axis
    Polylog {
        /// Re s = sigma in (0, 1]
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        /// Comma list of eps values in (0, 0.1)
        #[arg(long, default_value = "1e-2,1e-3,1e-4,1e-5,1e-6")]
        eps: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Optional CSV output path
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_complex(s: &str) -> Result<Complex64> {
    let parse = |t: &str| -> Result<f64> {
        t.trim()
            .parse()
            .map_err(|_| UsageError(format!("expected a number, got {t:?}")).into())
    };
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(parse(re)?, parse(im)?)),
        None => Ok(Complex64::new(parse(s)?, 0.0)),
    }
}

fn parse_f64_list(s: &str, flag: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| UsageError(format!("{flag} has a bad number: {t:?}")).into())
        })
        .collect()
}

fn run(cli: Cli) -> Result<i32> {
    render::init_threads(cli.threads)?;
    match cli.cmd {
        Cmd::Julia {
            lambda,
            grid,
            max_iter,
            out,
        } => {
            let spec = GridSpec::parse(&grid.grid, &grid.bounds)?;
            commands::julia(lambda, spec, max_iter, &out)
        }
        Cmd::Equipotential {
            lambda,
            grid,
            tol,
            max_iter,
            out,
        } => {
            let spec = GridSpec::parse(&grid.grid, &grid.bounds)?;
            commands::equipotential(lambda, spec, tol, max_iter, &out)
        }
        Cmd::Linearize {
            lambda,
            z,
            base,
            radius,
            alpha,
            sigma,
            m_bound,
            tol,
        } => {
            let z = parse_complex(&z)?;
            let base = base.as_deref().map(parse_complex).transpose()?;
            commands::linearize(lambda, z, base, radius, alpha, sigma, m_bound, tol)
        }
        Cmd::Converge {
            points,
            segment,
            count,
            seed,
            lambdas,
            max_iter,
            threshold,
            out,
        } => {
            let seg = parse_f64_list(&segment, "--segment")?;
            if seg.len() != 2 {
                return Err(UsageError("--segment expects x0,x1".into()).into());
            }
            let pts = commands::sample_points(points.as_deref(), (seg[0], seg[1]), count, seed)?;
            let lambdas = match lambdas {
                Some(s) => parse_f64_list(&s, "--lambdas")?,
                None => (4..=10).map(|k| 1.0 - 2f64.powi(-k)).collect(),
            };
            commands::converge(&pts, &lambdas, max_iter, threshold, &out)
        }
        Cmd::Polylog {
            sigma,
            eps,
            tol,
            out,
        } => {
            let eps = parse_f64_list(&eps, "--eps")?;
            commands::polylog_table(sigma, &eps, tol, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(paralin::exit_code_for(&err) as u8)
        }
    }
}
