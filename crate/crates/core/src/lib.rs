//! Three-party evolutionary game of agricultural supply chain finance.
//!
//! A bank decides whether to improve its fintech (`x`), a core enterprise A
//! decides whether to on-lend commercial credit (`y`), and an SME B picks a
//! financing channel, bank or A (`z`). This crate evaluates the payoff
//! matrix, integrates the replicator dynamics, enumerates and classifies the
//! equilibria, and runs the builtin parameter sweeps.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the command
//! line live in the `scf-evo` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod dynamics;
pub mod eigen;
pub mod equilibrium;
pub mod field;
pub mod params;
pub mod payoff;
pub mod stability;
pub mod state;
pub mod sweep;

pub use dynamics::{
    detect_convergence, integrate, step_rk4, ConvergenceReport, DynamicsError, IntegrationConfig,
    Sample, Trajectory, DEFAULT_SPEED_TOL,
};
pub use eigen::{eigenvalues3, Complex, EigenError};
pub use equilibrium::{
    enumerate_equilibria, jacobian, jacobian_fd, residual, EquilibriumLabel, EquilibriumPoint,
    InvalidStep, Jacobian,
};
pub use field::{replicator_field, replicator_field_expanded, Velocity};
pub use params::{GameParameters, Param, ParamError, RawParameters, ValidationErrors};
pub use payoff::{expected_payoffs, outcome_payoffs, ExpectedPayoffs, Outcome, PayoffTable};
pub use stability::{
    analyze, classify, scenario_report, EquilibriumReport, ScenarioCheck, ScenarioReport,
    StabilityClass, StabilityVerdict, HYPERBOLICITY_EPS,
};
pub use state::{StateError, StrategyState, CLAMP_TOLERANCE};
pub use sweep::{
    builtin_experiments, default_initial_states, evaluate_field_claims, evaluate_field_claims_at,
    interior_grid, run_sweep, ClaimOutcome, ClaimVerdict, Direction, FieldClaim, SweepCell,
    SweepError, SweepParameter, SweepResult, SweepSpec, TrajectoryClaim,
};
