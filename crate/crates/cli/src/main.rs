use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use krv_core::krv::DivMode;
use krv_lab::commands::{self, Format, Report};
use krv_lab::CliError;

#[derive(Parser)]
#[command(name = "krv-lab", version, about = "Graded pieces of the elliptic Kashiwara-Vergne Lie algebra")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for parallel sweeps (0 picks the number of cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Accept divergence in the span of tr([x,y]^k).
    #[arg(long, global = true)]
    relaxed_div: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Table of dim krv^(weight,j) for j = 1..j-max against the closed formula.
    Dims {
        #[arg(long)]
        weight: usize,
        #[arg(long)]
        j_max: usize,
    },
    /// Integer-normalized basis of krv^(i,j).
    Basis { i: usize, j: usize },
    /// The generator delta_n for even n.
    Delta { n: u32 },
    /// Run a property suite (leibniz, euler, cocycle, roundtrip, smallwheels, crosscheck or all).
    Verify {
        suite: String,
        #[arg(long, default_value_t = 50)]
        cases: usize,
    },
    /// Evaluate an expression.
    Eval { expr: String },
    /// Dimensions of the weight-3 polynomial model up to a degree.
    Poly {
        #[arg(long, default_value_t = 12)]
        d_max: u32,
    },
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let mode = if cli.relaxed_div { DivMode::Relaxed } else { DivMode::Strict };
    match &cli.command {
        Command::Dims { weight, j_max } => commands::dims(*weight, *j_max, cli.format, mode),
        Command::Basis { i, j } => commands::basis(*i, *j, cli.format, mode),
        Command::Delta { n } => commands::delta_report(*n, cli.format),
        Command::Verify { suite, cases } => commands::verify(suite, cli.seed, *cases, cli.format),
        Command::Eval { expr } => commands::eval(expr, cli.format),
        Command::Poly { d_max } => commands::poly(*d_max, cli.format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build();
    let result = match pool {
        Ok(pool) => pool.install(|| run(&cli)),
        Err(e) => Err(CliError::Usage(e.to_string())),
    };
    match result {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(report.body.as_bytes()).is_err() {
                return ExitCode::from(CliError::USAGE_EXIT);
            }
            if report.success {
                ExitCode::SUCCESS
            } else {
                eprintln!("krv-lab: verification failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("krv-lab: {e}");
            ExitCode::from(CliError::USAGE_EXIT)
        }
    }
}
