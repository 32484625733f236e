use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use wavetrace::cli;

#[derive(Parser)]
#[command(name = "wavetrace", version, about = "Wave-potential ray tracing of launched beams")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate one configuration and write trajectories.csv, summary.json, pattern.svg
    Run {
        config: PathBuf,
        /// Overrides output.dir
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regenerate one of the six reference figures at eps = 0.25
    Reproduce {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=6))]
        figure: u8,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Compare the rays with the paraxial grid solution
    OracleCompare {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One run per value of epsilon, N, xi0, d_tau or n_rays
    Sweep {
        config: PathBuf,
        parameter: String,
        #[arg(required = true)]
        values: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print every config key with its default
    Defaults,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { cli::EXIT_CONFIG as u8 } else { 0 });
        }
    };
    let code = match args.command {
        Command::Run { config, out } => cli::cmd_run(&config, out.as_deref()),
        Command::Reproduce { figure, out } => cli::cmd_reproduce(figure, &out),
        Command::OracleCompare { config, out } => cli::cmd_oracle_compare(&config, out.as_deref()),
        Command::Sweep { config, parameter, values, out } => cli::cmd_sweep(&config, &parameter, &values, out.as_deref()),
        Command::Defaults => cli::cmd_defaults(),
    };
    ExitCode::from(code as u8)
}
