//! One-parameter sweeps over the model and the checks attached to them.
//!
//! Each sweep integrates every `(value, initial state)` cell. Two kinds of
//! checks ride along: sign checks on the parameter derivatives of the
//! vector field, which gate, and comparisons of time-averaged trajectories
//! across the swept values, which are only reported.

use alloc::vec::Vec;
use core::fmt;

use crate::dynamics::{
    detect_convergence, integrate, ConvergenceReport, DynamicsError, IntegrationConfig, Trajectory,
    DEFAULT_SPEED_TOL,
};
use crate::equilibrium::{enumerate_equilibria, EquilibriumLabel};
use crate::field::replicator_field;
use crate::params::{GameParameters, Param, ValidationErrors};
use crate::state::StrategyState;

/// Parameters with a builtin sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepParameter {
    Cg,
    M,
    E,
    Cm,
    I,
}

impl SweepParameter {
    pub const ALL: [SweepParameter; 5] = [
        SweepParameter::Cg,
        SweepParameter::M,
        SweepParameter::E,
        SweepParameter::Cm,
        SweepParameter::I,
    ];

    pub fn param(self) -> Param {
        match self {
            SweepParameter::Cg => Param::Cg,
            SweepParameter::M => Param::M,
            SweepParameter::E => Param::E,
            SweepParameter::Cm => Param::Cm,
            SweepParameter::I => Param::I,
        }
    }

    pub fn from_param(param: Param) -> Option<SweepParameter> {
        SweepParameter::ALL.into_iter().find(|s| s.param() == param)
    }

    /// Values used by the builtin experiment.
    pub fn builtin_values(self) -> [f64; 3] {
        match self {
            SweepParameter::Cg => [1.0, 1.5, 2.0],
            SweepParameter::M => [0.20, 0.25, 0.30],
            SweepParameter::E => [0.25, 0.30, 0.35],
            SweepParameter::Cm => [1.5, 2.0, 2.5],
            SweepParameter::I => [10.0, 12.0, 14.0],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base: GameParameters,
    pub parameter: Param,
    /// Strictly increasing.
    pub values: Vec<f64>,
    pub initial_states: Vec<StrategyState>,
    pub integration: IntegrationConfig,
}

/// `(0.5, 0.5, 0.5)` followed by the lattice `{0.25, 0.5, 0.75}^3`.
pub fn default_initial_states() -> Vec<StrategyState> {
    let levels = [0.25, 0.5, 0.75];
    let mut out = Vec::with_capacity(28);
    out.push(StrategyState::splat(0.5));
    for x in levels {
        for y in levels {
            for z in levels {
                out.push(StrategyState { x, y, z });
            }
        }
    }
    out
}

/// The five experiments: sweeps over `C_g`, `m`, `e`, `C_m` and `I` around
/// the baseline.
pub fn builtin_experiments() -> Vec<SweepSpec> {
    SweepParameter::ALL
        .iter()
        .map(|s| SweepSpec {
            base: GameParameters::baseline(),
            parameter: s.param(),
            values: s.builtin_values().to_vec(),
            initial_states: default_initial_states(),
            integration: IntegrationConfig::default(),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum SweepError {
    NoValues,
    NoInitialStates,
    ValuesNotIncreasing {
        index: usize,
    },
    InvalidParameters {
        value: f64,
        errors: ValidationErrors,
    },
    Integration {
        value_index: usize,
        state_index: usize,
        source: DynamicsError,
    },
}

impl fmt::Display for SweepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepError::NoValues => f.write_str("sweep has no values"),
            SweepError::NoInitialStates => f.write_str("sweep has no initial states"),
            SweepError::ValuesNotIncreasing { index } => {
                write!(
                    f,
                    "sweep values must be strictly increasing (at index {index})"
                )
            }
            SweepError::InvalidParameters { value, errors } => {
                write!(f, "sweep value {value} gives invalid parameters: {errors}")
            }
            SweepError::Integration {
                value_index,
                state_index,
                source,
            } => write!(
                f,
                "cell (value {value_index}, initial state {state_index}): {source}"
            ),
        }
    }
}

impl core::error::Error for SweepError {}

impl SweepSpec {
    /// Parameter set for each swept value.
    pub fn parameter_sets(&self) -> Result<Vec<GameParameters>, SweepError> {
        if self.values.is_empty() {
            return Err(SweepError::NoValues);
        }
        if self.initial_states.is_empty() {
            return Err(SweepError::NoInitialStates);
        }
        if let Some(k) = self
            .values
            .windows(2)
            .position(|w| w[0].partial_cmp(&w[1]) != Some(core::cmp::Ordering::Less))
        {
            return Err(SweepError::ValuesNotIncreasing { index: k + 1 });
        }
        self.values
            .iter()
            .map(|&v| {
                self.base
                    .with(self.parameter, v)
                    .map_err(|errors| SweepError::InvalidParameters { value: v, errors })
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    pub value_index: usize,
    pub state_index: usize,
    pub value: f64,
    pub initial: StrategyState,
    pub convergence: ConvergenceReport,
    /// Time averages of `(x, y, z)` over the recorded samples.
    pub means: [f64; 3],
    pub trajectory: Trajectory,
}

/// Which way a time-averaged coordinate should move as the swept value
/// grows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    NonIncreasing,
    NonDecreasing,
}

/// Comparison of one coordinate's time average across the swept values,
/// from the first initial state.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryClaim {
    pub description: &'static str,
    pub axis: usize,
    pub direction: Direction,
    pub means: Vec<f64>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub parameter: Param,
    pub values: Vec<f64>,
    /// Ordered by value index, then initial-state index.
    pub cells: Vec<SweepCell>,
    /// Field-derivative checks per swept value, aligned with `values`.
    pub field_claims: Vec<Vec<ClaimOutcome>>,
    pub trajectory_claims: Vec<TrajectoryClaim>,
}

impl SweepResult {
    pub fn cell(&self, value_index: usize, state_index: usize) -> Option<&SweepCell> {
        self.cells
            .iter()
            .find(|c| c.value_index == value_index && c.state_index == state_index)
    }

    /// True when every gating field claim passed for every value.
    pub fn field_claims_pass(&self) -> bool {
        self.field_claims
            .iter()
            .flatten()
            .all(|c| c.verdict != ClaimVerdict::Fail)
    }
}

fn trajectory_claim_table(param: Param) -> &'static [(&'static str, usize, Direction)] {
    use Direction::*;
    match param {
        Param::Cg => &[
            (
                "bank improves fintech less often as C_g grows",
                0,
                NonIncreasing,
            ),
            (
                "A provides credit more often as C_g grows",
                1,
                NonDecreasing,
            ),
            ("B uses the bank less often as C_g grows", 2, NonIncreasing),
        ],
        Param::M => &[
            ("B uses the bank less often as m grows", 2, NonIncreasing),
            ("A provides credit more often as m grows", 1, NonDecreasing),
        ],
        Param::E => &[
            (
                "B uses the bank slightly more often as e grows",
                2,
                NonDecreasing,
            ),
            (
                "A provides credit slightly more often as e grows",
                1,
                NonDecreasing,
            ),
        ],
        Param::Cm => &[
            (
                "B uses the bank slightly more often as C_m grows",
                2,
                NonDecreasing,
            ),
            (
                "bank improves fintech more often as C_m grows",
                0,
                NonDecreasing,
            ),
            (
                "A provides credit slightly more often as C_m grows",
                1,
                NonDecreasing,
            ),
        ],
        Param::I => &[("B uses the bank more often as I grows", 2, NonDecreasing)],
        _ => &[],
    }
}

/// Integrates every cell and attaches the claim evaluations.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult, SweepError> {
    let sets = spec.parameter_sets()?;
    let mut cells = Vec::with_capacity(sets.len() * spec.initial_states.len());
    let mut field_claims = Vec::with_capacity(sets.len());

    for (value_index, p) in sets.iter().enumerate() {
        let candidates: Vec<(EquilibriumLabel, [f64; 3])> = enumerate_equilibria(p)
            .into_iter()
            .filter(|pt| pt.valid)
            .filter_map(|pt| pt.coords.map(|c| (pt.label, c)))
            .collect();
        for (state_index, s0) in spec.initial_states.iter().enumerate() {
            let trajectory =
                integrate(p, s0, &spec.integration).map_err(|source| SweepError::Integration {
                    value_index,
                    state_index,
                    source,
                })?;
            let convergence = detect_convergence(&trajectory, DEFAULT_SPEED_TOL, &candidates)
                .expect("integrate always records the initial state");
            let means = [trajectory.mean(0), trajectory.mean(1), trajectory.mean(2)];
            cells.push(SweepCell {
                value_index,
                state_index,
                value: spec.values[value_index],
                initial: *s0,
                convergence,
                means,
                trajectory,
            });
        }
        field_claims.push(evaluate_field_claims(p));
    }

    let per_state = spec.initial_states.len();
    let trajectory_claims = trajectory_claim_table(spec.parameter)
        .iter()
        .map(|&(description, axis, direction)| {
            let means: Vec<f64> = (0..sets.len())
                .map(|v| cells[v * per_state].means[axis])
                .collect();
            let holds = means.windows(2).all(|w| match direction {
                Direction::NonIncreasing => w[1] <= w[0],
                Direction::NonDecreasing => w[1] >= w[0],
            });
            TrajectoryClaim {
                description,
                axis,
                direction,
                means,
                holds,
            }
        })
        .collect();

    Ok(SweepResult {
        parameter: spec.parameter,
        values: spec.values.clone(),
        cells,
        field_claims,
        trajectory_claims,
    })
}

/// A sign statement about a parameter derivative of one field component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldClaim {
    /// `d fx / d C_g < 0`
    BankImproveFallsWithCg,
    /// `d fz / d m < 0`
    BankChannelFallsWithM,
    /// `d fz / d e > 0`
    BankChannelRisesWithE,
    /// `d fy / d e > 0`
    CreditRisesWithE,
    /// `d fy / d C_m > 0`
    CreditRisesWithCm,
    /// `d fz / d C_m > 0`
    BankChannelRisesWithCm,
    /// `d fz / d I`, sign depends on the state; reported only.
    BankChannelVsI,
}

impl FieldClaim {
    pub const ALL: [FieldClaim; 7] = [
        FieldClaim::BankImproveFallsWithCg,
        FieldClaim::BankChannelFallsWithM,
        FieldClaim::BankChannelRisesWithE,
        FieldClaim::CreditRisesWithE,
        FieldClaim::CreditRisesWithCm,
        FieldClaim::BankChannelRisesWithCm,
        FieldClaim::BankChannelVsI,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FieldClaim::BankImproveFallsWithCg => "dfx/dCg<0",
            FieldClaim::BankChannelFallsWithM => "dfz/dm<0",
            FieldClaim::BankChannelRisesWithE => "dfz/de>0",
            FieldClaim::CreditRisesWithE => "dfy/de>0",
            FieldClaim::CreditRisesWithCm => "dfy/dCm>0",
            FieldClaim::BankChannelRisesWithCm => "dfz/dCm>0",
            FieldClaim::BankChannelVsI => "dfz/dI",
        }
    }

    pub fn parameter(self) -> Param {
        match self {
            FieldClaim::BankImproveFallsWithCg => Param::Cg,
            FieldClaim::BankChannelFallsWithM => Param::M,
            FieldClaim::BankChannelRisesWithE | FieldClaim::CreditRisesWithE => Param::E,
            FieldClaim::CreditRisesWithCm | FieldClaim::BankChannelRisesWithCm => Param::Cm,
            FieldClaim::BankChannelVsI => Param::I,
        }
    }

    /// 0 = fx, 1 = fy, 2 = fz.
    pub fn component(self) -> usize {
        match self {
            FieldClaim::BankImproveFallsWithCg => 0,
            FieldClaim::CreditRisesWithE | FieldClaim::CreditRisesWithCm => 1,
            _ => 2,
        }
    }

    /// Expected sign, `None` when only reported.
    pub fn sign(self) -> Option<f64> {
        match self {
            FieldClaim::BankImproveFallsWithCg | FieldClaim::BankChannelFallsWithM => Some(-1.0),
            FieldClaim::BankChannelVsI => None,
            _ => Some(1.0),
        }
    }

    /// Closed-form derivative at `s`.
    pub fn analytic(self, p: &GameParameters, s: &StrategyState) -> f64 {
        let r = p.raw();
        let StrategyState { x, y, z } = *s;
        let by = y * (1.0 - y);
        let bz = z * (1.0 - z);
        match self {
            FieldClaim::BankImproveFallsWithCg => -x * (1.0 - x),
            FieldClaim::BankChannelFallsWithM => -bz * r.w * r.i,
            FieldClaim::BankChannelRisesWithE => bz * y * r.i,
            FieldClaim::CreditRisesWithE => by * (1.0 - z) * r.i * r.v,
            FieldClaim::CreditRisesWithCm => by * (1.0 - z),
            FieldClaim::BankChannelRisesWithCm => bz * y,
            FieldClaim::BankChannelVsI => bz * (r.w * (1.0 - r.m) - y * (1.0 - r.e)),
        }
    }

    /// Central difference of the field component in the claim's parameter.
    pub fn finite_difference(self, p: &GameParameters, s: &StrategyState, h: f64) -> f64 {
        let param = self.parameter();
        let v = p.get(param);
        let plus = replicator_field(&p.perturbed(param, v + h), s).to_array();
        let minus = replicator_field(&p.perturbed(param, v - h), s).to_array();
        (plus[self.component()] - minus[self.component()]) / (2.0 * h)
    }
}

impl fmt::Display for FieldClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimVerdict {
    Pass,
    Fail,
    Reported,
}

/// One claim checked over a set of states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClaimOutcome {
    pub claim: FieldClaim,
    pub verdict: ClaimVerdict,
    pub min_analytic: f64,
    pub max_analytic: f64,
    /// Largest `|analytic - finite difference|`.
    pub max_fd_gap: f64,
    pub states: usize,
}

const CLAIM_FD_STEP: f64 = 1e-6;
const CLAIM_FD_TOL: f64 = 1e-6;

/// Interior grid `{0.25, 0.5, 0.75}^3`.
pub fn interior_grid() -> Vec<StrategyState> {
    default_initial_states().split_off(1)
}

/// Field-derivative sign checks on the interior grid.
pub fn evaluate_field_claims(p: &GameParameters) -> Vec<ClaimOutcome> {
    evaluate_field_claims_at(p, &interior_grid())
}

/// Field-derivative sign checks at the given states.
///
/// The sign must be strict at states strictly inside the cube and may be
/// zero on the boundary, where boundary factors vanish.
pub fn evaluate_field_claims_at(p: &GameParameters, states: &[StrategyState]) -> Vec<ClaimOutcome> {
    FieldClaim::ALL
        .iter()
        .map(|&claim| {
            let mut min_analytic = f64::INFINITY;
            let mut max_analytic = f64::NEG_INFINITY;
            let mut max_fd_gap = 0.0f64;
            let mut ok = true;
            for s in states {
                let a = claim.analytic(p, s);
                let fd = claim.finite_difference(p, s, CLAIM_FD_STEP);
                min_analytic = min_analytic.min(a);
                max_analytic = max_analytic.max(a);
                max_fd_gap = max_fd_gap.max((a - fd).abs());
                if let Some(sign) = claim.sign() {
                    let interior = s.to_array().iter().all(|&c| c > 0.0 && c < 1.0);
                    let sign_ok = if interior {
                        sign * a > 0.0 && sign * fd > 0.0
                    } else {
                        sign * a >= 0.0 && sign * fd >= -CLAIM_FD_TOL
                    };
                    ok &= sign_ok;
                }
            }
            ok &= max_fd_gap <= CLAIM_FD_TOL;
            let verdict = match (claim.sign(), ok) {
                (None, _) => ClaimVerdict::Reported,
                (Some(_), true) => ClaimVerdict::Pass,
                (Some(_), false) => ClaimVerdict::Fail,
            };
            ClaimOutcome {
                claim,
                verdict,
                min_analytic,
                max_analytic,
                max_fd_gap,
                states: states.len(),
            }
        })
        .collect()
}
