use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ellsurf_cli::commands::{self, FuzzConfig, Output, Transform};
use ellsurf_core::search::SearchBudget;

/// Exact real topology of elliptic surfaces given by Weierstrass data.
#[derive(Parser)]
#[command(name = "ellsurf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a document holds valid minimal Weierstrass data.
    Validate { file: String },
    /// Fiber table, arcs, topology of the real locus and bound checks.
    Report {
        file: String,
        #[arg(long, conflicts_with = "text")]
        json: bool,
        #[arg(long)]
        text: bool,
    },
    /// Twist or I0*-transform a triple and print the new document.
    Transform(TransformArgs),
    /// Check bounds, twist duality and oracle agreement on random real-generic triples.
    Fuzz {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run the oracle on every n-th trial.
        #[arg(long, default_value_t = 1)]
        oracle_stride: u64,
    },
    /// Construct a triple with a prescribed number of real components.
    Search {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        components: u32,
        #[arg(long, default_value_t = 2000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest numerator of the random section roots.
        #[arg(long, default_value_t = 6)]
        height: u32,
    },
    /// Compare the topology with the independent cell-complex computation.
    OracleCheck { file: String },
}

#[derive(Args)]
struct TransformArgs {
    file: String,
    #[arg(long, required_unless_present = "i0star", conflicts_with = "i0star")]
    twist: bool,
    /// The two points a, b (exact rationals).
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
    i0star: Option<Vec<String>>,
    /// Check every property of the transformation.
    #[arg(long)]
    verify: bool,
}

fn threads_from_env() -> Option<usize> {
    std::env::var("ELLSURF_THREADS").ok()?.trim().parse().ok()
}

fn run(cli: Cli) -> Output {
    match cli.command {
        Command::Validate { file } => commands::validate_file(&file),
        Command::Report { file, json, .. } => commands::report_file(&file, json),
        Command::Transform(a) => {
            let op = match a.i0star {
                Some(v) => Transform::I0Star(v[0].clone(), v[1].clone()),
                None => Transform::Twist,
            };
            commands::transform_file(&a.file, &op, a.verify)
        }
        Command::Fuzz { k, trials, seed, oracle_stride } => {
            commands::fuzz(&FuzzConfig { k, trials, seed, oracle_stride, threads: threads_from_env() })
        }
        Command::Search { k, components, budget, seed, height } => commands::search(
            k,
            components,
            SearchBudget { max_candidates: budget, rng_seed: seed, coefficient_height_bound: height },
        ),
        Command::OracleCheck { file } => commands::oracle_check_file(&file),
    }
}

fn main() -> ExitCode {
    let out = run(Cli::parse());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
