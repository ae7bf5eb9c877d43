mod commands;
mod record;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use record::Format;

#[derive(Parser, Debug)]
#[command(name = "mxr", version, about = "Parity vectors and conjugacies of T(x) = x/2 | (mx + r)/2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// Odd multiplier m.
    #[arg(long, global = true, default_value_t = 3, allow_negative_numbers = true)]
    pub m: i64,
    /// Odd offset r.
    #[arg(long, global = true, default_value_t = 1, allow_negative_numbers = true)]
    pub r: i64,
    /// Input "a/b" or integer. Scans accept a comma-separated list.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Truncation depth (bits).
    #[arg(long, global = true)]
    pub k: Option<u32>,
    /// Step budget for orbits, or sample count for scans.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Target absolute error for omega-hat.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tolerance: f64,
    /// Numerator/denominator bound for rational reconstruction.
    #[arg(long, global = true)]
    pub bound: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
    /// Write records here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum FormatArg {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Iterate T with cycle detection.
    Orbit,
    /// Parity vector Q(x), exact or mod 2^k.
    Q,
    /// Inverse of Q applied to the 2-adic expansion of x.
    Phi,
    /// Omega(x) exactly, when the orbit of x closes.
    Omega,
    /// The truncation Omega_k(x) as a rational.
    OmegaK,
    /// Real-valued evaluation of the Omega series.
    OmegaHat,
    /// Density of odd steps along the orbit.
    Nu,
    /// The permutation x -> Q(x) mod 2^k of Z/2^k.
    Qbar,
    /// Omega and Omega-hat of (5,1) on small odd integers and 0.
    Table1,
    /// Randomized check of the proved identities.
    Identities,
    /// Search for rational Omega(x) with unknown Q(x).
    ScanPairs,
    /// Existence scan for Omega-hat.
    ScanHat,
}

pub enum Failure {
    Usage(String),
    Precondition(String),
}

impl From<mxr::Error> for Failure {
    fn from(e: mxr::Error) -> Self {
        match e {
            mxr::Error::Malformed(_) | mxr::Error::ZeroDenominator(_) => Failure::Usage(e.to_string()),
            _ => Failure::Precondition(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let echo = argv[1..].join(" ");
    let result = commands::run(cli.command, &cli.opts, echo).and_then(|rec| {
        let format = match cli.opts.format {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Text => Format::Text,
        };
        let bytes = rec.render(format).map_err(Failure::Usage)?;
        write_out(cli.opts.out.as_ref(), &bytes)
            .map_err(|e| Failure::Usage(format!("cannot write output: {e}")))
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn write_out(path: Option<&PathBuf>, bytes: &[u8]) -> io::Result<()> {
    match path {
        Some(p) => File::create(p)?.write_all(bytes),
        None => io::stdout().lock().write_all(bytes),
    }
}
