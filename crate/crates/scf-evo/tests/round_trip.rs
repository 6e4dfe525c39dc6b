use std::path::PathBuf;

use proptest::prelude::*;
use scf_evo::{
    parse_config, read_trajectory_csv, serialize_config, write_trajectory_csv, RunConfig,
};
use scf_evo_core::{
    integrate, GameParameters, IntegrationConfig, RawParameters, Sample, StrategyState, Trajectory,
};

fn arb_params() -> impl Strategy<Value = GameParameters> {
    (
        (1e-3..=50.0f64, 0.0..=5.0f64, 0.0..=5.0f64, 0.0..=5.0f64),
        (0.0..1.0f64, 0.0..1.0f64, 0.0..=5.0f64, 0.0..=5.0f64),
        (0.0..=5.0f64, 0.0..=1.0f64, 0.0..=1.0f64, 0.0..=1.0f64),
    )
        .prop_map(
            |((i, r_gf, c_g, c_gf), (m, e, c_m, c_af), (c_bf, u, v, w))| {
                RawParameters {
                    i,
                    r_gf,
                    c_g,
                    c_gf,
                    m,
                    e,
                    c_m,
                    c_af,
                    c_bf,
                    u,
                    v,
                    w,
                }
                .validate()
                .unwrap()
            },
        )
}

fn arb_state() -> impl Strategy<Value = StrategyState> {
    (0.0..=1.0f64, 0.0..=1.0f64, 0.0..=1.0f64).prop_map(|(x, y, z)| StrategyState { x, y, z })
}

fn arb_config() -> impl Strategy<Value = RunConfig> {
    (
        arb_params(),
        1e-4..0.5f64,
        1usize..400,
        1usize..50,
        proptest::collection::vec(arb_state(), 1..6),
        "[a-z][a-z0-9_/]{0,12}",
    )
        .prop_map(|(params, dt, n, record_every, initial, out)| RunConfig {
            params,
            integration: IntegrationConfig {
                dt,
                horizon: dt * n as f64,
                record_every,
            },
            initial,
            out_dir: PathBuf::from(out),
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn config_round_trips(cfg in arb_config()) {
        let text = serialize_config(&cfg);
        let back = parse_config(&text).unwrap();
        prop_assert_eq!(back, cfg);
    }

    #[test]
    fn synthetic_trajectory_csv_round_trips(
        rows in proptest::collection::vec((0.0..1e6f64, arb_state()), 1..50)
    ) {
        let traj = Trajectory {
            samples: rows.iter().map(|&(t, state)| Sample { t, state }).collect(),
            params: GameParameters::baseline(),
            config: IntegrationConfig::default(),
            max_excursion: 0.0,
        };
        let mut buf = Vec::new();
        write_trajectory_csv(&traj, &mut buf).unwrap();
        let back = read_trajectory_csv(buf.as_slice()).unwrap();
        prop_assert_eq!(back.len(), rows.len());
        for ((t, s), sample) in back.iter().zip(&traj.samples) {
            prop_assert_eq!(t.to_bits(), sample.t.to_bits());
            for (a, b) in s.to_array().iter().zip(sample.state.to_array()) {
                prop_assert_eq!(a.to_bits(), b.to_bits());
            }
        }
    }

    #[test]
    fn integrated_trajectory_csv_round_trips(p in arb_params(), s0 in arb_state()) {
        let cfg = IntegrationConfig { dt: 0.05, horizon: 2.0, record_every: 3 };
        let traj = integrate(&p, &s0, &cfg).unwrap();
        let mut buf = Vec::new();
        write_trajectory_csv(&traj, &mut buf).unwrap();
        let back = read_trajectory_csv(buf.as_slice()).unwrap();
        let original: Vec<(f64, StrategyState)> =
            traj.samples.iter().map(|s| (s.t, s.state)).collect();
        prop_assert_eq!(back, original);
    }
}

#[test]
fn default_run_spans_zero_to_horizon() {
    let cfg = RunConfig::default();
    let traj = integrate(&cfg.params, &cfg.initial[0], &cfg.integration).unwrap();
    let mut buf = Vec::new();
    write_trajectory_csv(&traj, &mut buf).unwrap();
    let rows = read_trajectory_csv(buf.as_slice()).unwrap();
    assert_eq!(rows.first().unwrap().0, 0.0);
    assert_eq!(rows.last().unwrap().0, 20.0);
    assert_eq!(rows.len(), 201);
}
