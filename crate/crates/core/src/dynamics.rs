//! Fixed-step RK4 integration of the replicator field.

use alloc::vec::Vec;
use core::fmt;

use crate::equilibrium::EquilibriumLabel;
use crate::field::replicator_field;
use crate::params::GameParameters;
use crate::state::{StrategyState, CLAMP_TOLERANCE};

/// Default speed threshold for [`detect_convergence`].
pub const DEFAULT_SPEED_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationConfig {
    pub dt: f64,
    pub horizon: f64,
    /// Record every n-th step; the final step is always recorded.
    pub record_every: usize,
}

impl Default for IntegrationConfig {
    fn default() -> Self {
        IntegrationConfig {
            dt: 0.01,
            horizon: 20.0,
            record_every: 10,
        }
    }
}

impl IntegrationConfig {
    /// `horizon / dt`, rounded. Fails unless that ratio is integral to within
    /// `1e-9` relative and at least one.
    pub fn steps(&self) -> Result<usize, DynamicsError> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(DynamicsError::InvalidConfig("dt must be positive"));
        }
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return Err(DynamicsError::InvalidConfig("horizon must be positive"));
        }
        if self.record_every == 0 {
            return Err(DynamicsError::InvalidConfig(
                "record_every must be at least 1",
            ));
        }
        let ratio = self.horizon / self.dt;
        let n = libm::round(ratio);
        if n < 1.0 || (ratio - n).abs() > 1e-9 * n.max(1.0) {
            return Err(DynamicsError::InvalidConfig(
                "horizon must be an integer multiple of dt",
            ));
        }
        if n > usize::MAX as f64 {
            return Err(DynamicsError::InvalidConfig("too many steps"));
        }
        Ok(n as usize)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DynamicsError {
    InvalidConfig(&'static str),
    InitialOutsideCube([f64; 3]),
    /// A step produced NaN/inf or left the cube by more than the clamp
    /// tolerance, which means `dt` is too large.
    StepFailed {
        time: f64,
        excursion: f64,
    },
}

impl fmt::Display for DynamicsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynamicsError::InvalidConfig(msg) => write!(f, "invalid integration config: {msg}"),
            DynamicsError::InitialOutsideCube(s) => {
                write!(f, "initial state {s:?} is outside the unit cube")
            }
            DynamicsError::StepFailed { time, excursion } => write!(
                f,
                "integration step at t = {time} left the unit cube by {excursion} (dt too large?)"
            ),
        }
    }
}

impl core::error::Error for DynamicsError {}

fn offset(s: &StrategyState, k: &[f64; 3], h: f64) -> StrategyState {
    StrategyState {
        x: s.x + h * k[0],
        y: s.y + h * k[1],
        z: s.z + h * k[2],
    }
}

/// One classical RK4 step without clamping.
fn rk4_raw(p: &GameParameters, s: &StrategyState, dt: f64) -> StrategyState {
    let k1 = replicator_field(p, s).to_array();
    let k2 = replicator_field(p, &offset(s, &k1, dt / 2.0)).to_array();
    let k3 = replicator_field(p, &offset(s, &k2, dt / 2.0)).to_array();
    let k4 = replicator_field(p, &offset(s, &k3, dt)).to_array();
    let mut incr = [0.0; 3];
    for i in 0..3 {
        incr[i] = (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) / 6.0;
    }
    offset(s, &incr, dt)
}

/// Returns the clamped state and the pre-clamp excursion.
fn checked_step(
    p: &GameParameters,
    s: &StrategyState,
    dt: f64,
    time: f64,
) -> Result<(StrategyState, f64), DynamicsError> {
    let raw = rk4_raw(p, s, dt);
    let excursion = raw.cube_excursion();
    match raw.clamp_within(CLAMP_TOLERANCE) {
        Some(next) => Ok((next, excursion)),
        None => Err(DynamicsError::StepFailed {
            time,
            excursion: if excursion.is_finite() {
                excursion
            } else {
                f64::INFINITY
            },
        }),
    }
}

/// One RK4 step, snapped back into the cube.
pub fn step_rk4(
    p: &GameParameters,
    s: &StrategyState,
    dt: f64,
) -> Result<StrategyState, DynamicsError> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(DynamicsError::InvalidConfig("dt must be positive"));
    }
    if !s.in_cube() {
        return Err(DynamicsError::InitialOutsideCube(s.to_array()));
    }
    checked_step(p, s, dt, 0.0).map(|(next, _)| next)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub state: StrategyState,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub params: GameParameters,
    pub config: IntegrationConfig,
    /// Largest pre-clamp distance outside the cube over all steps.
    pub max_excursion: f64,
}

impl Trajectory {
    pub fn last(&self) -> Option<&Sample> {
        self.samples.last()
    }

    /// Mean of one coordinate (0 = x, 1 = y, 2 = z) over the recorded samples.
    pub fn mean(&self, axis: usize) -> f64 {
        if self.samples.is_empty() {
            return f64::NAN;
        }
        let total: f64 = self.samples.iter().map(|s| s.state.to_array()[axis]).sum();
        total / self.samples.len() as f64
    }
}

/// Integrates from `s0` over `cfg.horizon`. Deterministic.
pub fn integrate(
    p: &GameParameters,
    s0: &StrategyState,
    cfg: &IntegrationConfig,
) -> Result<Trajectory, DynamicsError> {
    let n = cfg.steps()?;
    if !s0.in_cube() {
        return Err(DynamicsError::InitialOutsideCube(s0.to_array()));
    }
    let mut samples = Vec::with_capacity(n / cfg.record_every + 2);
    samples.push(Sample { t: 0.0, state: *s0 });
    let mut state = *s0;
    let mut max_excursion = 0.0f64;
    for k in 1..=n {
        let time = (k - 1) as f64 * cfg.dt;
        let (next, excursion) = checked_step(p, &state, cfg.dt, time)?;
        state = next;
        max_excursion = max_excursion.max(excursion);
        if k % cfg.record_every == 0 || k == n {
            let t = if k == n {
                cfg.horizon
            } else {
                k as f64 * cfg.dt
            };
            samples.push(Sample { t, state });
        }
    }
    Ok(Trajectory {
        samples,
        params: *p,
        config: *cfg,
        max_excursion,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceReport {
    pub converged: bool,
    pub terminal_state: StrategyState,
    /// Max-norm of the field at the terminal state.
    pub terminal_speed: f64,
    pub nearest_equilibrium: Option<(EquilibriumLabel, f64)>,
}

/// Checks the field speed at the last sample and finds the closest
/// candidate equilibrium. `None` for an empty trajectory.
pub fn detect_convergence(
    traj: &Trajectory,
    speed_tol: f64,
    candidates: &[(EquilibriumLabel, [f64; 3])],
) -> Option<ConvergenceReport> {
    let last = traj.last()?;
    let terminal_speed = replicator_field(&traj.params, &last.state).speed();
    let nearest_equilibrium = candidates
        .iter()
        .map(|(label, c)| (*label, last.state.distance(c)))
        .fold(
            None,
            |best: Option<(EquilibriumLabel, f64)>, cur| match best {
                Some(b) if b.1 <= cur.1 => Some(b),
                _ => Some(cur),
            },
        );
    Some(ConvergenceReport {
        converged: terminal_speed < speed_tol,
        terminal_state: last.state,
        terminal_speed,
        nearest_equilibrium,
    })
}
