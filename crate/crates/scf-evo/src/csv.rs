//! CSV output for trajectories, equilibrium reports and sweep summaries.

use std::io::{self, BufRead, Write};

use scf_evo_core::{
    EquilibriumPoint, ScenarioReport, StabilityVerdict, StrategyState, SweepResult, Trajectory,
};

pub const TRAJECTORY_HEADER: &str = "t,x,y,z";
pub const EQUILIBRIA_HEADER: &str = "label,x,y,z,valid,re1,im1,re2,im2,re3,im3,class";

#[derive(Debug, thiserror::Error)]
pub enum CsvError {
    #[error("trajectory has no samples")]
    EmptyTrajectory,
    #[error("{points} equilibrium points but {verdicts} verdicts")]
    Misaligned { points: usize, verdicts: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Counts bytes passed through to the inner writer.
struct Counting<W> {
    inner: W,
    bytes: usize,
}

impl<W: Write> Write for Counting<W> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.bytes += n;
        Ok(n)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

/// Shortest decimal that parses back to the same `f64`.
pub fn fmt_exact(v: f64) -> String {
    format!("{v}")
}

/// Rounded to 12 significant digits, for human-facing tables. Negative zero
/// prints as `0`.
pub fn fmt_report(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    let rounded: f64 = format!("{v:.11e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        "0".to_string()
    } else {
        format!("{rounded}")
    }
}

/// Writes `t,x,y,z` rows with LF endings. Returns the byte count.
pub fn write_trajectory_csv<W: Write>(traj: &Trajectory, sink: W) -> Result<usize, CsvError> {
    if traj.samples.is_empty() {
        return Err(CsvError::EmptyTrajectory);
    }
    let mut out = Counting {
        inner: sink,
        bytes: 0,
    };
    writeln!(out, "{TRAJECTORY_HEADER}")?;
    for s in &traj.samples {
        writeln!(
            out,
            "{},{},{},{}",
            fmt_exact(s.t),
            fmt_exact(s.state.x),
            fmt_exact(s.state.y),
            fmt_exact(s.state.z)
        )?;
    }
    out.flush()?;
    Ok(out.bytes)
}

/// Reads back what [`write_trajectory_csv`] produced.
pub fn read_trajectory_csv<R: BufRead>(source: R) -> Result<Vec<(f64, StrategyState)>, CsvError> {
    let mut rows = Vec::new();
    for (k, line) in source.lines().enumerate() {
        let line = line?;
        if k == 0 {
            if line != TRAJECTORY_HEADER {
                return Err(CsvError::Parse {
                    line: 1,
                    message: format!("expected header {TRAJECTORY_HEADER:?}"),
                });
            }
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(CsvError::Parse {
                line: k + 1,
                message: format!("expected 4 fields, got {}", fields.len()),
            });
        }
        let mut v = [0.0; 4];
        for (slot, field) in v.iter_mut().zip(&fields) {
            *slot = field.parse().map_err(|e| CsvError::Parse {
                line: k + 1,
                message: format!("{field:?}: {e}"),
            })?;
        }
        rows.push((
            v[0],
            StrategyState {
                x: v[1],
                y: v[2],
                z: v[3],
            },
        ));
    }
    Ok(rows)
}

/// One row per equilibrium, then a `# scenario` comment block.
///
/// Undefined points have empty coordinate and eigenvalue fields and class
/// `undefined`.
pub fn write_equilibria_report<W: Write>(
    points: &[EquilibriumPoint],
    verdicts: &[Option<StabilityVerdict>],
    scenario: Option<&ScenarioReport>,
    sink: W,
) -> Result<usize, CsvError> {
    if points.len() != verdicts.len() {
        return Err(CsvError::Misaligned {
            points: points.len(),
            verdicts: verdicts.len(),
        });
    }
    let mut out = Counting {
        inner: sink,
        bytes: 0,
    };
    writeln!(out, "{EQUILIBRIA_HEADER}")?;
    for (pt, verdict) in points.iter().zip(verdicts) {
        let coords = match pt.coords {
            Some(c) => c.map(fmt_report).join(","),
            None => ",,".to_string(),
        };
        let (eigen, class) = match verdict {
            Some(v) => (
                v.eigenvalues
                    .iter()
                    .map(|l| format!("{},{}", fmt_report(l.re), fmt_report(l.im)))
                    .collect::<Vec<_>>()
                    .join(","),
                v.class.name(),
            ),
            None => (",,,,,".to_string(), "undefined"),
        };
        writeln!(out, "{},{coords},{},{eigen},{class}", pt.label, pt.valid)?;
    }
    if let Some(report) = scenario {
        writeln!(out, "# scenario")?;
        writeln!(out, "# name,point,holds,operand1,operand2")?;
        for (k, check) in report.checks().iter().enumerate() {
            writeln!(
                out,
                "# scenario{},{},{},{},{}",
                k + 1,
                check.point,
                check.holds,
                fmt_report(check.operands[0]),
                fmt_report(check.operands[1])
            )?;
        }
    }
    out.flush()?;
    Ok(out.bytes)
}

pub const SWEEP_SUMMARY_HEADER: &str = "value_index,state_index,value,x0,y0,z0,converged,\
x_end,y_end,z_end,speed,nearest,distance,mean_x,mean_y,mean_z";

/// One row per sweep cell.
pub fn write_sweep_summary<W: Write>(result: &SweepResult, sink: W) -> Result<usize, CsvError> {
    let mut out = Counting {
        inner: sink,
        bytes: 0,
    };
    writeln!(out, "{SWEEP_SUMMARY_HEADER}")?;
    for c in &result.cells {
        let r = &c.convergence;
        let (nearest, distance) = match r.nearest_equilibrium {
            Some((label, d)) => (label.name().to_string(), fmt_exact(d)),
            None => (String::new(), String::new()),
        };
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            c.value_index,
            c.state_index,
            fmt_exact(c.value),
            fmt_exact(c.initial.x),
            fmt_exact(c.initial.y),
            fmt_exact(c.initial.z),
            r.converged,
            fmt_exact(r.terminal_state.x),
            fmt_exact(r.terminal_state.y),
            fmt_exact(r.terminal_state.z),
            fmt_exact(r.terminal_speed),
            nearest,
            distance,
            fmt_exact(c.means[0]),
            fmt_exact(c.means[1]),
            fmt_exact(c.means[2]),
        )?;
    }
    out.flush()?;
    Ok(out.bytes)
}

pub const CLAIMS_HEADER: &str = "kind,value,claim,verdict,min,max,fd_gap";

/// Field claims per swept value, then the reported trajectory comparisons.
pub fn write_claims<W: Write>(result: &SweepResult, sink: W) -> Result<usize, CsvError> {
    let mut out = Counting {
        inner: sink,
        bytes: 0,
    };
    writeln!(out, "{CLAIMS_HEADER}")?;
    for (value, claims) in result.values.iter().zip(&result.field_claims) {
        for c in claims {
            writeln!(
                out,
                "field,{},{},{:?},{},{},{}",
                fmt_exact(*value),
                c.claim,
                c.verdict,
                fmt_exact(c.min_analytic),
                fmt_exact(c.max_analytic),
                fmt_exact(c.max_fd_gap)
            )?;
        }
    }
    for t in &result.trajectory_claims {
        let means: Vec<String> = t.means.iter().map(|m| fmt_exact(*m)).collect();
        writeln!(
            out,
            "trajectory,,{},{},{},,",
            t.description,
            if t.holds { "Holds" } else { "DoesNotHold" },
            means.join(" ")
        )?;
    }
    out.flush()?;
    Ok(out.bytes)
}
