//! Command-line front end: argument parsing and dispatch only; all logic
//! lives in [`secrecy_ee::cli`].

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use secrecy_ee::cli;

#[derive(Parser)]
#[command(
    name = "secrecy-ee",
    version,
    about = "Secrecy outage capacity and secrecy energy efficiency of an \
             amplify-and-forward large-scale-MIMO relay link",
    after_help = "Set SECRECY_EE_THREADS to bound the worker pool (0 = automatic). \
                  Results are identical at any thread count."
)]
struct CliArgs {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the energy-efficient relay power allocation for one scenario.
    Solve {
        /// Scenario JSON file.
        #[arg(long)]
        config: PathBuf,
        /// Emit the full report as JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Also write the parsed scenario back out in canonical form
        /// (linear power keys, all solver knobs explicit).
        #[arg(long = "dump-config", value_name = "PATH")]
        dump_config: Option<PathBuf>,
    },
    /// Record Dinkelbach convergence traces across source powers as CSV.
    Trace {
        /// Scenario JSON file (its p_s is replaced per run).
        #[arg(long)]
        config: PathBuf,
        /// Source powers in dB, comma separated (e.g. --ps-db 0,4,10).
        #[arg(long = "ps-db", value_delimiter = ',', allow_hyphen_values = true)]
        ps_db: Vec<f64>,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare allocation schemes over a parameter grid, as CSV.
    Sweep {
        /// Sweep description JSON file.
        #[arg(long)]
        spec: PathBuf,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Monte Carlo cross-check of the closed form, as JSON.
    Validate {
        /// Scenario JSON file.
        #[arg(long)]
        config: PathBuf,
        /// Number of channel draws (at least 1000).
        #[arg(long)]
        samples: usize,
        /// RNG seed; same seed, same report, at any thread count.
        #[arg(long)]
        seed: u64,
        /// Output JSON path.
        #[arg(long)]
        out: PathBuf,
    },
}

/// Applies SECRECY_EE_THREADS to the global rayon pool. `0` or an unset
/// variable keeps the automatic sizing; garbage values warn and fall back.
fn configure_threads() {
    let Ok(raw) = std::env::var("SECRECY_EE_THREADS") else {
        return;
    };
    match raw.trim().parse::<usize>() {
        Ok(0) => {}
        Ok(n) => {
            // Failure means a pool already exists, which only happens in
            // test harnesses; the run stays correct either way.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        Err(_) => {
            eprintln!(
                "warning: SECRECY_EE_THREADS={raw} is not a thread count; using automatic sizing"
            );
        }
    }
}

fn main() {
    configure_threads();
    let args = CliArgs::parse();
    let code = match args.command {
        Command::Solve {
            config,
            json,
            dump_config,
        } => cli::cmd_solve(&config, json, dump_config.as_deref()),
        Command::Trace { config, ps_db, out } => cli::cmd_trace(&config, &ps_db, &out),
        Command::Sweep { spec, out } => cli::cmd_sweep(&spec, &out),
        Command::Validate {
            config,
            samples,
            seed,
            out,
        } => cli::cmd_validate(&config, samples, seed, &out),
    };
    std::process::exit(code);
}
