use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use avote_cli::commands;
use avote_cli::config::{load_config, ResolvedConfig};
use avote_cli::output::Meta;
use avote_cli::{exit_code, hint_for};
use avote_core::error::Result;

#[derive(Parser)]
#[command(
    name = "avote",
    version,
    about = "Anchored-voting experiments: menu measures, win-probability bounds, welfare deltas, figure data, and an invariant verifier"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// JSON experiment configuration
    #[arg(long)]
    config: PathBuf,
    /// Overrides the config seed (otherwise derived from the config bytes)
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides the Monte Carlo sample count
    #[arg(long)]
    samples: Option<u64>,
    /// Output directory (falls back to the config's "out", then ./out)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cut sample counts for a fast smoke run
    #[arg(long)]
    quick: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Level-set masses of the report menu, standard and anchored
    Measure(CommonArgs),
    /// Win-probability sandwich per anchor strength, with verdicts
    Bounds(CommonArgs),
    /// Expected welfare change and the decrease-probability bound
    Welfare(CommonArgs),
    /// Planar cell polygons and the anchor-condition grid (m = 3)
    Figures(CommonArgs),
    /// Run the invariant battery and write a machine-readable summary
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Optional config; only its seed and out fields are used
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for verify.json
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run the reduced-scale battery (same checks, fewer samples)
    #[arg(long)]
    quick: bool,
}

fn resolve(args: &CommonArgs) -> Result<(ResolvedConfig, Meta, PathBuf)> {
    let mut rc = load_config(&args.config, args.seed, args.samples)?;
    if args.quick {
        rc.samples = (rc.samples / 10).max(1_000);
    }
    let meta = Meta {
        config_hash: rc.config_hash.clone(),
        seed: rc.seed,
    };
    let out = args
        .out
        .clone()
        .or_else(|| rc.config.out.clone())
        .unwrap_or_else(|| PathBuf::from("out"));
    eprintln!(
        "config {} seed {} samples {}",
        rc.config_hash, rc.seed, rc.samples
    );
    Ok((rc, meta, out))
}

fn run() -> Result<bool> {
    let cli = Cli::parse();
    match cli.command {
        Command::Measure(args) => {
            let (rc, meta, out) = resolve(&args)?;
            announce(commands::measure::run(&rc, &meta, &out)?);
        }
        Command::Bounds(args) => {
            let (rc, meta, out) = resolve(&args)?;
            announce(commands::bounds::run(&rc, &meta, &out)?);
        }
        Command::Welfare(args) => {
            let (rc, meta, out) = resolve(&args)?;
            announce(commands::welfare::run(&rc, &meta, &out)?);
        }
        Command::Figures(args) => {
            let (rc, meta, out) = resolve(&args)?;
            announce(commands::figures::run(&rc, &meta, &out)?);
        }
        Command::Verify(args) => {
            let (seed, hash, config_out) = match &args.config {
                Some(path) => {
                    let rc = load_config(path, args.seed, None)?;
                    (rc.seed, rc.config_hash.clone(), rc.config.out.clone())
                }
                None => (args.seed.unwrap_or(0), "none".to_string(), None),
            };
            let meta = Meta {
                config_hash: hash,
                seed,
            };
            let out = args
                .out
                .clone()
                .or(config_out)
                .unwrap_or_else(|| PathBuf::from("out"));
            eprintln!("config {} seed {}", meta.config_hash, seed);
            let outcome = commands::verify::run(args.quick, seed, &meta, &out)?;
            return Ok(outcome.all_passed);
        }
    }
    Ok(true)
}

fn announce(paths: Vec<PathBuf>) {
    for p in paths {
        eprintln!("wrote {}", p.display());
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        // a completed verify run with failing checks
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            if let Some(hint) = hint_for(&e) {
                eprintln!("hint: {hint}");
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
