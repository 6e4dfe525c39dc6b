mod common;

use common::{arb_params, field_by_hand};
use proptest::prelude::*;
use scf_evo_core::{
    default_initial_states, integrate, GameParameters, IntegrationConfig, StrategyState,
};

fn terminal(p: &GameParameters, s0: StrategyState, dt: f64, horizon: f64) -> [f64; 3] {
    let cfg = IntegrationConfig {
        dt,
        horizon,
        record_every: 1,
    };
    integrate(p, &s0, &cfg)
        .unwrap()
        .last()
        .unwrap()
        .state
        .to_array()
}

fn max_diff(a: [f64; 3], b: [f64; 3]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(u, v)| (u - v).abs())
        .fold(0.0, f64::max)
}

fn euler(p: &GameParameters, s0: [f64; 3], dt: f64, steps: usize) -> [f64; 3] {
    let mut s = s0;
    for _ in 0..steps {
        let f = field_by_hand(p, s);
        for k in 0..3 {
            s[k] = (s[k] + dt * f[k]).clamp(0.0, 1.0);
        }
    }
    s
}

#[test]
fn fourth_order_convergence_on_a_smooth_interior_run() {
    let p = GameParameters::baseline();
    let s0 = StrategyState {
        x: 0.3,
        y: 0.4,
        z: 0.6,
    };
    let reference = terminal(&p, s0, 1e-4, 1.0);
    let coarse = max_diff(terminal(&p, s0, 0.1, 1.0), reference);
    let fine = max_diff(terminal(&p, s0, 0.05, 1.0), reference);
    assert!(
        coarse / fine >= 8.0,
        "error ratio {} ({coarse} / {fine})",
        coarse / fine
    );
}

#[test]
fn euler_oracle_agrees_with_rk4_at_baseline() {
    let p = GameParameters::baseline();
    let rk4 = terminal(&p, StrategyState::splat(0.5), 0.01, 20.0);
    let oracle = euler(&p, [0.5; 3], 1e-4, 200_000);
    assert!(max_diff(rk4, oracle) < 1e-3, "{rk4:?} vs {oracle:?}");
}

#[test]
fn step_halving_is_stable_at_baseline() {
    let p = GameParameters::baseline();
    let a = terminal(&p, StrategyState::splat(0.5), 0.01, 20.0);
    let b = terminal(&p, StrategyState::splat(0.5), 0.005, 20.0);
    assert!(max_diff(a, b) <= 1e-6);
}

#[test]
fn vertices_stay_put() {
    let p = GameParameters::baseline();
    for bits in 0..8u8 {
        let v = StrategyState {
            x: f64::from(bits & 1),
            y: f64::from((bits >> 1) & 1),
            z: f64::from((bits >> 2) & 1),
        };
        assert_eq!(terminal(&p, v, 0.01, 5.0), v.to_array());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn trajectories_stay_in_the_cube(p in arb_params()) {
        let cfg = IntegrationConfig { dt: 0.01, horizon: 5.0, record_every: 10 };
        for s0 in default_initial_states() {
            let traj = integrate(&p, &s0, &cfg).unwrap();
            prop_assert!(traj.max_excursion <= 1e-9);
            prop_assert!(traj.samples.iter().all(|s| s.state.in_cube()));
        }
    }
}
