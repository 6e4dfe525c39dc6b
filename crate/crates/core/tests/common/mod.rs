#![allow(dead_code)]

use proptest::prelude::*;
use scf_evo_core::{GameParameters, RawParameters, StrategyState};

/// Costs in [0,5], I in [1,20], rates in [0,0.5], probabilities in [0,1].
pub fn arb_params() -> impl Strategy<Value = GameParameters> {
    (
        (1.0..=20.0f64, 0.0..=5.0f64, 0.0..=5.0f64, 0.0..=5.0f64),
        (0.0..=0.5f64, 0.0..=0.5f64, 0.0..=5.0f64, 0.0..=5.0f64),
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
                .expect("generated parameters are in range")
            },
        )
}

pub fn arb_state() -> impl Strategy<Value = StrategyState> {
    (0.0..=1.0f64, 0.0..=1.0f64, 0.0..=1.0f64).prop_map(|(x, y, z)| StrategyState { x, y, z })
}

pub fn arb_interior_state() -> impl Strategy<Value = StrategyState> {
    (0.01..0.99f64, 0.01..0.99f64, 0.01..0.99f64).prop_map(|(x, y, z)| StrategyState { x, y, z })
}

/// The replicator field typed out directly from the model equations,
/// independent of the library.
pub fn field_by_hand(p: &GameParameters, s: [f64; 3]) -> [f64; 3] {
    let r = p.raw();
    let [x, y, z] = s;
    [
        x * (1.0 - x) * (z * r.c_gf - r.c_g),
        y * (1.0 - y) * (1.0 - z) * (r.c_m - r.c_af + r.i * r.e * r.v),
        z * (1.0 - z)
            * (r.w * r.i * (1.0 - r.m) - (1.0 - x) * r.c_bf - y * (r.i - r.c_m - r.e * r.i)),
    ]
}

pub fn grid27() -> Vec<[f64; 3]> {
    let levels = [0.25, 0.5, 0.75];
    let mut out = Vec::new();
    for x in levels {
        for y in levels {
            for z in levels {
                out.push([x, y, z]);
            }
        }
    }
    out
}
