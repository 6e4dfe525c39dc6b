use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use scf_evo::commands::{self, parse_values, CommandError, SweepSelection};
use scf_evo::{parse_config, RunConfig};
use scf_evo_core::Param;

/// Tripartite supply-chain-finance evolutionary game.
#[derive(Parser)]
#[command(name = "scf-evo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides `out_dir` from the config.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the configured initial states to trajectory CSVs.
    Simulate {
        #[command(flatten)]
        common: Common,
        /// Also write an SVG chart per trajectory.
        #[arg(long)]
        svg: bool,
        /// Use the 28 lattice starting points instead of `initial`.
        #[arg(long)]
        lattice: bool,
    },
    /// Write the equilibrium and stability report as CSV.
    Equilibria {
        #[command(flatten)]
        common: Common,
    },
    /// Print the stability classification and scenario conditions.
    Classify {
        #[command(flatten)]
        common: Common,
    },
    /// Run a builtin or custom parameter sweep.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Builtin sweep: Cg, m, e, Cm, I or all.
        #[arg(long, conflicts_with_all = ["param", "values"])]
        name: Option<String>,
        /// Parameter for a custom sweep.
        #[arg(long, requires = "values")]
        param: Option<String>,
        /// Comma-separated increasing values for a custom sweep.
        #[arg(long, requires = "param")]
        values: Option<String>,
        /// Accepted for symmetry; sweeps always write SVG charts.
        #[arg(long)]
        svg: bool,
    },
}

fn load(common: &Common) -> Result<RunConfig, CommandError> {
    let text = std::fs::read_to_string(&common.config).map_err(|source| CommandError::Io {
        path: common.config.clone(),
        source,
    })?;
    let mut cfg = parse_config(&text)?;
    if let Some(out) = &common.out {
        cfg.out_dir = out.clone();
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), CommandError> {
    match cli.command {
        Command::Simulate {
            common,
            svg,
            lattice,
        } => {
            let cfg = load(&common)?;
            for path in commands::simulate(&cfg, svg, lattice)? {
                println!("{}", path.display());
            }
        }
        Command::Equilibria { common } => {
            let cfg = load(&common)?;
            println!("{}", commands::equilibria(&cfg)?.display());
        }
        Command::Classify { common } => {
            let cfg = load(&common)?;
            commands::classify(&cfg, io::stdout().lock()).map_err(|source| CommandError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            })?;
        }
        Command::Sweep {
            common,
            name,
            param,
            values,
            svg: _,
        } => {
            let cfg = load(&common)?;
            let selection = match (param, values) {
                (Some(param), Some(values)) => SweepSelection::Custom {
                    parameter: Param::from_name(&param).ok_or_else(|| {
                        CommandError::Usage(format!("unknown parameter {param:?}"))
                    })?,
                    values: parse_values(&values)?,
                },
                _ => SweepSelection::named(name.as_deref().unwrap_or("all"))?,
            };
            for result in commands::sweep(&cfg, &selection)? {
                let cells = result.cells.len();
                let converged = result
                    .cells
                    .iter()
                    .filter(|c| c.convergence.converged)
                    .count();
                println!(
                    "sweep {}: {cells} cells, {converged} converged, field claims {}",
                    result.parameter,
                    if result.field_claims_pass() {
                        "pass"
                    } else {
                        "FAIL"
                    }
                );
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
