//! CLI for the Hessian-stratification toolkit: one subcommand per claim
//! family, each emitting a deterministic report. Exit code 0 iff every
//! claim passes.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use hessloci::commands::{
    self, CommandError, CubicSource, HilbertTarget, DEFAULT_ENUM_PRIMES, DEFAULT_HILBERT_PRIME,
};
use hessloci::hessian::NamedCubic;
use hessloci::report::Report;

#[derive(Parser)]
#[command(name = "hessloci", version, about = "Hessian rank-stratum toolkit")]
struct Cli {
    /// Write the machine-readable report to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Identity batteries over seeded random cubics.
    Identities {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Primes for the batteries (repeatable).
        #[arg(long = "prime")]
        primes: Vec<u64>,
    },
    /// Rank census, singular-locus certificate, and correspondence checks.
    Strata {
        /// Named cubic: fermat | klein6 | cuspidal3.
        #[arg(long)]
        cubic: Option<String>,
        /// Seed for a random smooth cubic (used when --cubic is absent).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 11)]
        prime: u64,
        /// Allow censuses beyond two million points.
        #[arg(long)]
        slow: bool,
    },
    /// Minor-ideal Hilbert windows, fits, and extracted invariants.
    Hilbert {
        /// klein-surface | adler-curve | cubic-surface-points.
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = DEFAULT_HILBERT_PRIME)]
        prime: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include the large fit windows.
        #[arg(long)]
        slow: bool,
    },
    /// Closed-form intersection numbers and the 2-torsion certificate.
    Chern,
    /// Cohomology table, Koszul certificates, and the cover profile.
    Bott {
        #[arg(long)]
        slow: bool,
    },
}

fn run(cli: &Cli) -> Result<Report, CommandError> {
    match &cli.command {
        Command::Identities { seed, primes } => {
            let primes = if primes.is_empty() {
                DEFAULT_ENUM_PRIMES.to_vec()
            } else {
                primes.clone()
            };
            commands::cmd_identities(*seed, &primes)
        }
        Command::Strata {
            cubic,
            seed,
            n,
            prime,
            slow,
        } => {
            let source = match cubic {
                Some(name) => CubicSource::Named(name.parse::<NamedCubic>()?),
                None => CubicSource::Seeded(*seed),
            };
            commands::cmd_strata(&source, *n, *prime, *slow)
        }
        Command::Hilbert {
            target,
            prime,
            seed,
            slow,
        } => {
            let target = target.parse::<HilbertTarget>()?;
            commands::cmd_hilbert(target, *prime, *seed, *slow)
        }
        Command::Chern => commands::cmd_chern(),
        Command::Bott { slow } => commands::cmd_bott(*slow),
    }
}

fn main() {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.human_summary(start.elapsed().as_millis()));
            if let Some(path) = &cli.json {
                if let Err(e) = std::fs::write(path, report.to_json()) {
                    eprintln!("error writing {}: {e}", path.display());
                    std::process::exit(2);
                }
            }
            std::process::exit(if report.all_pass() { 0 } else { 1 });
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
