//! pzlab: reproduction pipelines for the prime/zeta-zero duality
//! measurements. Exit codes: 0 success, 1 computational failure,
//! 2 input/config error.

mod commands;
mod config;
mod errors;
mod report;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::analysis::{self, EntropyCommand};
use commands::rgcmd::RgCommand;
use commands::validate::ValidateKind;
use config::ConfigOverrides;
use errors::CliResult;

#[derive(Parser)]
#[command(name = "pzlab", version, about = "prime/zeta-zero duality laboratory")]
struct Cli {
    #[command(flatten)]
    overrides: ConfigOverrides,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scale sweep: per-L estimates, extrapolation fits, convergence SVG.
    Sweep,
    /// Benchmarks with known ground truth.
    Validate {
        #[arg(value_enum, default_value = "all")]
        kind: ValidateKind,
    },
    /// Gamma_0(N) geometric-spectral survey table.
    Survey {
        /// Fixture CSV `family,k,N,gamma1` (default: the vendored twelve).
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// kappa_IR used for the bound columns.
        #[arg(long, default_value_t = pzlab_core::modular::KAPPA_IR_DEFAULT)]
        kappa_ir: f64,
    },
    /// RG flow tools.
    Rg {
        #[command(subcommand)]
        cmd: RgCommand,
    },
    /// Box(/correlation) dimension of a prime residue subset.
    Dim {
        #[arg(long, default_value_t = 1000)]
        limit: u64,
        /// Use the best-R^2 4-point dynamic window.
        #[arg(long)]
        dynamic: bool,
        /// Also compute the correlation dimension.
        #[arg(long)]
        correlation: bool,
    },
    /// Regularity index of the zero potential at scale L.
    Zr {
        #[arg(long, default_value_t = 1000.0)]
        l: f64,
        /// Clamped instead of periodic boundary.
        #[arg(long)]
        clamped: bool,
    },
    /// Entropy estimators.
    Entropy {
        #[command(subcommand)]
        cmd: EntropyCommand,
    },
    /// LZ78 compression of the prime indicator sequence.
    Compress {
        #[arg(long, default_value_t = 100000)]
        n: u64,
    },
}

fn configure_threads() {
    if let Ok(v) = std::env::var("PZLAB_THREADS") {
        match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => pzlab_core::exec::configure_threads(n),
            _ => eprintln!("warning: ignoring invalid PZLAB_THREADS={v:?}"),
        }
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    let cfg = cli.overrides.resolve()?;
    let timestamp = !cli.overrides.no_timestamp;
    match &cli.command {
        Command::Sweep => commands::sweep::run(&cfg, timestamp),
        Command::Validate { kind } => commands::validate::run(*kind),
        Command::Survey { fixtures, kappa_ir } => {
            commands::survey::run(fixtures.as_ref(), &cfg.output_dir, *kappa_ir)
        }
        Command::Rg { cmd } => commands::rgcmd::run(cmd, &cfg.output_dir, timestamp),
        Command::Dim {
            limit,
            dynamic,
            correlation,
        } => analysis::dim(&cfg, *limit, *dynamic, *correlation),
        Command::Zr { l, clamped } => analysis::zr(&cfg, *l, *clamped),
        Command::Entropy { cmd } => analysis::entropy(&cfg, cmd),
        Command::Compress { n } => analysis::compress(&cfg, *n),
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pzlab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
