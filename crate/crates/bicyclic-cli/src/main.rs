use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use bicyclic_cli::{
    cmd_bounds, cmd_census, cmd_deform_demo, cmd_psi, cmd_verify, BoundsConfig, CensusConfig,
    CmdError, DeformDemoConfig, ExitKind, PsiConfig, Report, VerifyConfig,
};

/// Bicyclic polytopes on the symmetric moment curve: construction, face
/// censuses, edge-threshold estimation, and verification suites.
#[derive(Parser)]
#[command(name = "bicyclic", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the equally spaced instance and enumerate its faces
    Census {
        /// curve order; the ambient dimension is 2k
        #[arg(long)]
        k: usize,
        /// number of equally spaced points (even)
        #[arg(long)]
        n: usize,
        /// largest vertex count enumerated
        #[arg(long, default_value_t = 3)]
        cap: usize,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// directory of committed hull fixtures
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Bracket the edge threshold ψ_k by bisection with verified certificates
    Psi {
        #[arg(long)]
        k: usize,
        /// bracket width to reach (radians)
        #[arg(long)]
        tol: f64,
        /// LP grid size for the certificate search (default 720k)
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run a named verification suite
    Verify {
        /// smilansky | deformation | newton | delta0 | noflat | b6 | neighborly
        #[arg(long)]
        suite: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// arc length parameter for the b6 and neighborly suites
        #[arg(long)]
        arc: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Sandwich tables: certified lower counts against the simplicial bound
    Bounds {
        #[arg(long)]
        k: usize,
        /// face dimension
        #[arg(long)]
        j: usize,
        /// comma-separated instance sizes
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Deform the regular-simplex root configuration and emit plot data
    DeformDemo {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        lambda: f64,
        /// two-column text output (angle, modulus)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<Report, CmdError> {
    match cli.command {
        Command::Census {
            k,
            n,
            cap,
            json,
            csv,
            fixtures,
            seed,
        } => cmd_census(&CensusConfig {
            k,
            n,
            cap,
            json,
            csv,
            fixtures,
            seed,
        }),
        Command::Psi { k, tol, grid, json } => cmd_psi(&PsiConfig { k, tol, grid, json }),
        Command::Verify {
            suite,
            k,
            n,
            trials,
            arc,
            seed,
            fixtures,
            json,
        } => cmd_verify(&VerifyConfig {
            suite,
            k,
            n,
            trials,
            arc,
            seed,
            fixtures,
            json,
        }),
        Command::Bounds { k, j, n, csv, json } => cmd_bounds(&BoundsConfig {
            k,
            j,
            n_list: n,
            csv,
            json,
        }),
        Command::DeformDemo {
            k,
            lambda,
            out,
            json,
        } => cmd_deform_demo(&DeformDemoConfig {
            k,
            lambda,
            out,
            json,
        }),
    }
}

fn main() {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(cli) {
        Ok(report) => {
            report.print_human();
            println!("  elapsed: {:.2?}", start.elapsed());
            let kind = if report.all_pass() {
                ExitKind::Pass
            } else {
                ExitKind::ClaimFailure
            };
            std::process::exit(kind.code());
        }
        Err(err) => {
            eprintln!("error: {}", err.message);
            std::process::exit(err.kind.code());
        }
    }
}
