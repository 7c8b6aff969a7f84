//! `mathieu` — evaluate alternating Mathieu-type series, their asymptotics,
//! kernels and the refutation scan from the command line.

mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mathieu_core::Error;

use output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "mathieu",
    version,
    about = "Alternating Mathieu-type series toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Target tolerance (absolute for series and integrals, relative to
    /// the right-hand side for `refute`).
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bernoulli and Euler polynomials of degree `--terms`.
    Poly(PolyArgs),
    /// Σ 2(−1)^{k−1} k^β/(k^α + r²)^μ, or the shifted series when `--t` is given.
    Series(SeriesArgs),
    /// Terms of the large-t expansion of the shifted series.
    Asym(AsymArgs),
    /// Tabulate a kernel on [0, --u] and list its sign changes.
    Kernel(KernelArgs),
    /// Both sides of the integral inequality for cases 1–3.
    Integral(IntegralArgs),
    /// Certified scan of S(r) against 2/(1+r²)^μ.
    Refute(RefuteArgs),
    /// The constants s_n.
    Constants(ConstantsArgs),
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    /// Degree n (≤ 63).
    #[arg(long)]
    pub terms: usize,
    /// Evaluate both polynomials at this point (exactly, then rounded).
    #[arg(long, allow_negative_numbers = true)]
    pub u: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub mu: f64,
    /// Restrict to the conditions of case 1–5.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
    pub case: Option<u8>,
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long)]
    pub r_min: Option<f64>,
    #[arg(long)]
    pub r_max: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    /// Evaluate the shifted series at this `t` instead (`--mu` is then μ_thm).
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long)]
    pub gamma: Option<u32>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub u: f64,
}

#[derive(Debug, Args)]
pub struct AsymArgs {
    #[arg(long)]
    pub gamma: u32,
    #[arg(long)]
    pub alpha: u32,
    /// μ_thm (> −1).
    #[arg(long, allow_negative_numbers = true)]
    pub mu: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub u: f64,
    /// Highest term index N.
    #[arg(long, default_value_t = 3)]
    pub terms: u32,
    /// Compare the truncated expansion with the series at this `t`.
    #[arg(long)]
    pub t: Option<f64>,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=5))]
    pub case: u8,
    #[arg(long, default_value_t = 2.0)]
    pub mu: f64,
    /// Right end of the tabulated range.
    #[arg(long, default_value_t = 10.0)]
    pub u: f64,
    #[arg(long, default_value_t = 101)]
    pub points: usize,
}

#[derive(Debug, Args)]
pub struct IntegralArgs {
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=5))]
    pub case: u8,
    #[arg(long, default_value_t = 2.0)]
    pub mu: f64,
    #[arg(long)]
    pub r: f64,
}

#[derive(Debug, Args)]
pub struct RefuteArgs {
    /// Family member β = 4m + 5.
    #[arg(long, default_value_t = 1, conflicts_with = "beta")]
    pub m: u32,
    /// Scan an arbitrary β instead of the family (control runs).
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long, default_value_t = 2)]
    pub alpha: u32,
    #[arg(long, default_value_t = 6.0)]
    pub mu: f64,
    #[arg(long, default_value_t = 5.0)]
    pub r_min: f64,
    #[arg(long, default_value_t = 50.0)]
    pub r_max: f64,
    #[arg(long, default_value_t = 16)]
    pub points: usize,
}

#[derive(Debug, Args)]
pub struct ConstantsArgs {
    #[arg(long = "s-n")]
    pub s_n: u32,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::InvalidParams(_) | Error::DegreeCap { .. } => 2,
        Error::PrecisionFloor { .. } | Error::NoConvergence { .. } | Error::Overflow(_) => 3,
        Error::Unsupported(_) => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = cli.tol;
    let report = match cli.command {
        Command::Poly(a) => commands::poly(&a),
        Command::Series(a) => commands::series(&a, tol),
        Command::Asym(a) => commands::asym(&a, tol),
        Command::Kernel(a) => commands::kernel(&a),
        Command::Integral(a) => commands::integral(&a, tol),
        Command::Refute(a) => commands::refute(&a, tol),
        Command::Constants(a) => commands::constants(&a),
    };
    match report {
        Ok(report) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not an error worth reporting
            let _ = stdout.write_all(report.render(cli.format).as_bytes());
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
