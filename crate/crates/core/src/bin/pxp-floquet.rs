use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pxp_floquet::acceptance::{self, Level};
use pxp_floquet::cli::{self, config::RunConfig, ErrorRecord, EXIT_NUMERICAL};

#[derive(Parser)]
#[command(
    version,
    about = "Floquet experiments on driven Rydberg-blockade chains"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a TOML config.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Worker threads; defaults to $PXP_FLOQUET_THREADS, then all cores.
        #[arg(long)]
        threads: Option<usize>,
        /// Output directory (default: the config's `output_dir`, else `results`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance suite.
    Verify {
        #[arg(long, value_enum, default_value = "fast")]
        level: LevelArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Fast,
    Full,
}

fn fail(e: &pxp_floquet::Error) -> ExitCode {
    let rec = ErrorRecord::from(e);
    eprintln!(
        "{}",
        serde_json::to_string(&rec).unwrap_or_else(|_| rec.message.clone())
    );
    ExitCode::from(rec.exit_code as u8)
}

fn main() -> ExitCode {
    match Args::parse().command {
        Command::Run {
            config,
            threads,
            out,
        } => {
            let cfg = match RunConfig::load(&config) {
                Ok(c) => c,
                Err(e) => return fail(&e),
            };
            let threads = cli::resolve_threads(threads, cfg.threads);
            let out = out
                .or_else(|| cfg.output_dir.as_ref().map(PathBuf::from))
                .unwrap_or_else(|| "results".into());
            cli::single_threaded_blas();
            match cli::run::run(&cfg, threads, &out) {
                Ok(manifest) => {
                    println!("{}", manifest.display());
                    ExitCode::SUCCESS
                }
                Err(e) => fail(&e),
            }
        }
        Command::Verify { level } => {
            let level = match level {
                LevelArg::Fast => Level::Fast,
                LevelArg::Full => Level::Full,
            };
            let outcomes = acceptance::run_level(level, |o| println!("{o}"));
            let failed = outcomes.iter().filter(|o| !o.pass).count();
            println!(
                "{} of {} criteria passed",
                outcomes.len() - failed,
                outcomes.len()
            );
            if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_NUMERICAL as u8)
            }
        }
    }
}
