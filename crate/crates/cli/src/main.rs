//! Command-line surface for the spline library.
//!
//! Exit codes: 0 success, 2 malformed input or configuration, 3 parity
//! violation, 4 singular system, 1 anything else.

mod commands;
mod errors;
mod io;

use clap::{Parser, Subcommand};

use errors::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "splinedft",
    version,
    about = "Interpolating splines of arbitrary degree from equispaced samples",
    long_about = "Builds interpolating splines of arbitrary degree from equispaced samples \
via a discrete-Fourier-transform formulation, estimates unknown boundary conditions by \
least squares, and reproduces the published accuracy tables.\n\n\
A sample file with N+1 equally spaced nodes describes N subintervals; commands that take \
an interval count N expect that convention."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a spline from samples and evaluate or serialize it.
    Interpolate(commands::interpolate::InterpolateArgs),
    /// Run the error-table benchmark grid.
    Bench(commands::bench::BenchArgs),
    /// Compare fresh benchmark rows against the published cells.
    Table(commands::table::TableArgs),
    /// Transform-accuracy demonstration on the damped oscillator.
    #[command(name = "ft-demo")]
    FtDemo(commands::ft_demo::FtDemoArgs),
    /// Quick internal sanity checks.
    Selftest(commands::selftest::SelftestArgs),
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Interpolate(args) => commands::interpolate::run(args),
        Command::Bench(args) => commands::bench::run(args),
        Command::Table(args) => commands::table::run(args),
        Command::FtDemo(args) => commands::ft_demo::run(args),
        Command::Selftest(args) => commands::selftest::run(args),
    }
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
