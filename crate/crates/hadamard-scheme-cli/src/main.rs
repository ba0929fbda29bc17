//! Command-line driver for the `hadamard-scheme` verification toolkit.
//!
//! Every subcommand assembles a [`Report`](hadamard_scheme::report::Report)
//! of named checks with exact residuals or certificates attached, prints it
//! as text or JSON, and sets the exit code:
//!
//! * `0` — every check passed (skipped checks do not fail a run),
//! * `1` — at least one check failed (the report carries a witness),
//! * `2` — the run could not be carried out (bad arguments, unsupported
//!   family/parameters, unreadable input file).

mod commands;
mod opts;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hadamard_scheme::exact::check_precision;
use hadamard_scheme::report::{OutputFormat, Report};
use hadamard_scheme::Result;

use commands::{dense, hadamard, nomura, params, sturm};
use opts::OutputArg;

#[derive(Parser, Debug)]
#[command(
    name = "hadamard-scheme",
    version,
    about = "Exact verification toolkit for complex Hadamard matrices in the \
             Bose-Mesner algebra of a four-class association scheme"
)]
struct Cli {
    /// Mantissa bits for floating-point checks (minimum 128).
    #[arg(
        long,
        global = true,
        env = "HADAMARD_SCHEME_PRECISION",
        default_value_t = 256
    )]
    precision: u32,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputArg::Text)]
    output: OutputArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify the symbolic intersection-number tables and specialize them
    /// at one parameter point.
    Params(params::ParamsArgs),
    /// Verify that a weight family realizes a complex Hadamard matrix.
    Hadamard(hadamard::HadamardArgs),
    /// Run the parameter-level Nomura-algebra dimension analysis.
    Nomura(nomura::NomuraArgs),
    /// Check a concrete realization file entry by entry against W W* = nI.
    Dense(dense::DenseArgs),
    /// Count real roots of a rational polynomial with Sturm chains.
    Sturm(sturm::SturmArgs),
}

fn run(cli: Cli) -> Result<Report> {
    check_precision(cli.precision)?;
    let output: OutputFormat = cli.output.into();
    match cli.command {
        Command::Params(args) => params::run(args, cli.precision, output),
        Command::Hadamard(args) => hadamard::run(args, cli.precision, output),
        Command::Nomura(args) => nomura::run(args, cli.precision, output),
        Command::Dense(args) => dense::run(args, cli.precision, output),
        Command::Sturm(args) => sturm::run(args, cli.precision, output),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            match report.config.output {
                OutputFormat::Text => print!("{}", report.render_text()),
                OutputFormat::Json => println!("{}", report.to_json()),
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
