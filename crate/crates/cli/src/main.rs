use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use stokes_cli::{run, ExperimentConfig, RunOptions, EXIT_CONFIG};
use stokes_symbols::MuConvention;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Convention {
    Paper,
    Carried,
}

/// Runs a Stokes Dirichlet-to-Neumann experiment described by a JSON config.
#[derive(Debug, Parser)]
#[command(name = "stokes-dtn", version, about)]
struct Args {
    /// Experiment config (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides `outputs.directory` in the config.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Viscosity convention; overrides `conventions.mu` in the config.
    #[arg(long, value_enum)]
    convention: Option<Convention>,
    /// Worker threads for dense linear algebra.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    threads: u16,
}

fn exit(code: i32) -> ExitCode {
    ExitCode::from(u8::try_from(code).unwrap_or(u8::MAX))
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return exit(code);
        }
    };
    let threads = usize::from(args.threads);
    faer::set_global_parallelism(if threads == 1 { faer::Par::Seq } else { faer::Par::rayon(threads) });

    let options = RunOptions {
        out_dir: args.out,
        convention: args.convention.map(|c| match c {
            Convention::Paper => MuConvention::Paper,
            Convention::Carried => MuConvention::Carried,
        }),
    };
    let result = ExperimentConfig::load(&args.config).and_then(|loaded| run(&loaded, &options));
    match result {
        Ok(outcome) => {
            for file in &outcome.files {
                println!("{}", file.display());
            }
            if outcome.audit_passed == Some(false) {
                eprintln!("audit: one or more checks failed (see the report)");
            }
            exit(outcome.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit(e.exit_code())
        }
    }
}
