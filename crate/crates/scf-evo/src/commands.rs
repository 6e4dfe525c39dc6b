//! The four subcommands, as library functions writing into a directory.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use scf_evo_core::{
    analyze, default_initial_states, integrate, DynamicsError, Param, SweepError, SweepParameter,
    SweepResult, SweepSpec, Trajectory,
};

use crate::config::{ConfigError, RunConfig};
use crate::csv::{
    fmt_report, write_claims, write_equilibria_report, write_sweep_summary, write_trajectory_csv,
    CsvError,
};
use crate::svg::{render_svg_plot, PlotError, Series};

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Usage(String),
    #[error("sweep: {0}")]
    Sweep(SweepError),
    #[error("integration: {0}")]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Csv(#[from] CsvError),
    #[error(transparent)]
    Plot(#[from] PlotError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

impl CommandError {
    /// 1 for bad input, 2 for failures while running.
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Config(_) | CommandError::Usage(_) => 1,
            CommandError::Sweep(e) => match e {
                SweepError::Integration { .. } => 2,
                _ => 1,
            },
            _ => 2,
        }
    }
}

impl From<SweepError> for CommandError {
    fn from(e: SweepError) -> Self {
        CommandError::Sweep(e)
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CommandError + '_ {
    move |source| CommandError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn create_dir(dir: &Path) -> Result<(), CommandError> {
    fs::create_dir_all(dir).map_err(io_err(dir))
}

fn create(path: &Path) -> Result<BufWriter<File>, CommandError> {
    File::create(path).map(BufWriter::new).map_err(io_err(path))
}

fn coordinate_series(traj: &Trajectory) -> Vec<Series> {
    ["x", "y", "z"]
        .iter()
        .enumerate()
        .map(|(axis, name)| {
            Series::new(
                *name,
                traj.samples
                    .iter()
                    .map(|s| (s.t, s.state.to_array()[axis]))
                    .collect(),
            )
        })
        .collect()
}

/// Integrates each initial state into `trajectory_s<k>.csv` (and `.svg`).
///
/// With `lattice`, the configured initial states are replaced by the 28
/// sweep starting points.
pub fn simulate(cfg: &RunConfig, svg: bool, lattice: bool) -> Result<Vec<PathBuf>, CommandError> {
    let initial = if lattice {
        default_initial_states()
    } else {
        cfg.initial.clone()
    };
    create_dir(&cfg.out_dir)?;
    let mut written = Vec::new();
    for (k, s0) in initial.iter().enumerate() {
        let traj = integrate(&cfg.params, s0, &cfg.integration)?;
        let path = cfg.out_dir.join(format!("trajectory_s{k}.csv"));
        write_trajectory_csv(&traj, create(&path)?)?;
        written.push(path);
        if svg && traj.samples.len() >= 2 {
            let path = cfg.out_dir.join(format!("trajectory_s{k}.svg"));
            render_svg_plot(
                &coordinate_series(&traj),
                "t",
                "probability",
                create(&path)?,
            )?;
            written.push(path);
        }
    }
    Ok(written)
}

/// Writes `equilibria.csv` with the scenario block.
pub fn equilibria(cfg: &RunConfig) -> Result<PathBuf, CommandError> {
    let report = analyze(&cfg.params);
    create_dir(&cfg.out_dir)?;
    let path = cfg.out_dir.join("equilibria.csv");
    write_equilibria_report(
        &report.points,
        &report.verdicts,
        Some(&report.scenarios),
        create(&path)?,
    )?;
    Ok(path)
}

/// Plain-text stability summary.
pub fn classify<W: Write>(cfg: &RunConfig, mut out: W) -> io::Result<()> {
    let report = analyze(&cfg.params);
    for (pt, verdict) in report.points.iter().zip(&report.verdicts) {
        let coords = match pt.coords {
            Some(c) => format!("({})", c.map(fmt_report).join(", ")),
            None => "undefined".to_string(),
        };
        match verdict {
            Some(v) => {
                let eig: Vec<String> = v
                    .eigenvalues
                    .iter()
                    .map(|l| match fmt_report(l.im).as_str() {
                        "0" => fmt_report(l.re),
                        im if im.starts_with('-') => format!("{}{im}i", fmt_report(l.re)),
                        im => format!("{}+{im}i", fmt_report(l.re)),
                    })
                    .collect();
                writeln!(
                    out,
                    "{} {coords} valid={} eigenvalues=[{}] {}",
                    pt.label,
                    pt.valid,
                    eig.join(", "),
                    v.class
                )?;
            }
            None => writeln!(out, "{} {coords} valid={}", pt.label, pt.valid)?,
        }
    }
    for (k, check) in report.scenarios.checks().iter().enumerate() {
        writeln!(
            out,
            "scenario{} {}: {} ({} < 0, {} < 0)",
            k + 1,
            check.point,
            check.holds,
            fmt_report(check.operands[0]),
            fmt_report(check.operands[1])
        )?;
    }
    let ess: Vec<String> = report
        .evolutionarily_stable()
        .map(|p| p.label.to_string())
        .collect();
    writeln!(
        out,
        "evolutionarily stable: {}",
        if ess.is_empty() {
            "none".to_string()
        } else {
            ess.join(", ")
        }
    )?;
    out.flush()
}

#[derive(Debug, Clone, PartialEq)]
pub enum SweepSelection {
    Builtin(Vec<SweepParameter>),
    Custom { parameter: Param, values: Vec<f64> },
}

impl SweepSelection {
    /// `all` or one of `Cg`, `m`, `e`, `Cm`, `I`.
    pub fn named(name: &str) -> Result<SweepSelection, CommandError> {
        if name == "all" {
            return Ok(SweepSelection::Builtin(SweepParameter::ALL.to_vec()));
        }
        Param::from_name(name)
            .and_then(SweepParameter::from_param)
            .map(|s| SweepSelection::Builtin(vec![s]))
            .ok_or_else(|| {
                CommandError::Usage(format!(
                    "no builtin sweep named {name:?} (expected Cg, m, e, Cm, I or all)"
                ))
            })
    }

    /// Builtin sweeps start from the 28 lattice states; custom ones from the
    /// configured initial states.
    pub fn specs(&self, cfg: &RunConfig) -> Vec<SweepSpec> {
        match self {
            SweepSelection::Builtin(list) => list
                .iter()
                .map(|s| SweepSpec {
                    base: cfg.params,
                    parameter: s.param(),
                    values: s.builtin_values().to_vec(),
                    initial_states: default_initial_states(),
                    integration: cfg.integration,
                })
                .collect(),
            SweepSelection::Custom { parameter, values } => vec![SweepSpec {
                base: cfg.params,
                parameter: *parameter,
                values: values.clone(),
                initial_states: cfg.initial.clone(),
                integration: cfg.integration,
            }],
        }
    }
}

/// Everything one sweep writes, under `dir`.
pub fn write_sweep(result: &SweepResult, dir: &Path) -> Result<Vec<PathBuf>, CommandError> {
    create_dir(dir)?;
    let mut written = Vec::new();
    for cell in &result.cells {
        let path = dir.join(format!(
            "cell_v{}_s{}.csv",
            cell.value_index, cell.state_index
        ));
        write_trajectory_csv(&cell.trajectory, create(&path)?)?;
        written.push(path);
    }
    let path = dir.join("summary.csv");
    write_sweep_summary(result, create(&path)?)?;
    written.push(path);
    let path = dir.join("claims.csv");
    write_claims(result, create(&path)?)?;
    written.push(path);

    let name = result.parameter.name();
    for (axis, coord) in ["x", "y", "z"].iter().enumerate() {
        let series: Vec<Series> = result
            .cells
            .iter()
            .filter(|c| c.state_index == 0)
            .map(|c| {
                Series::new(
                    format!("{name}={:?}", c.value),
                    c.trajectory
                        .samples
                        .iter()
                        .map(|s| (s.t, s.state.to_array()[axis]))
                        .collect(),
                )
            })
            .collect();
        if series.iter().all(|s| s.points.len() >= 2) && !series.is_empty() {
            let path = dir.join(format!("{coord}.svg"));
            render_svg_plot(&series, "t", coord, create(&path)?)?;
            written.push(path);
        }
    }
    Ok(written)
}

/// Runs each selected sweep into `<out>/sweep_<param>/`.
pub fn sweep(
    cfg: &RunConfig,
    selection: &SweepSelection,
) -> Result<Vec<SweepResult>, CommandError> {
    let mut results = Vec::new();
    for spec in selection.specs(cfg) {
        let result = scf_evo_core::run_sweep(&spec)?;
        let dir = cfg.out_dir.join(format!("sweep_{}", spec.parameter.name()));
        write_sweep(&result, &dir)?;
        results.push(result);
    }
    Ok(results)
}

/// Parses `1,1.5,2`.
pub fn parse_values(text: &str) -> Result<Vec<f64>, CommandError> {
    text.split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|e| CommandError::Usage(format!("bad sweep value {v:?}: {e}")))
        })
        .collect()
}
