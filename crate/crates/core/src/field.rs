//! Replicator vector field, in closed form and by direct expansion.

use crate::params::GameParameters;
use crate::payoff::expected_payoffs;
use crate::state::StrategyState;

/// Time derivatives of `(x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Velocity {
    pub fx: f64,
    pub fy: f64,
    pub fz: f64,
}

impl Velocity {
    pub fn to_array(self) -> [f64; 3] {
        [self.fx, self.fy, self.fz]
    }

    /// Max-norm.
    pub fn speed(&self) -> f64 {
        self.fx.abs().max(self.fy.abs()).max(self.fz.abs())
    }
}

/// Simplified replicator field:
///
/// ```text
/// fx = x (1 - x) (z C_gf - C_g)
/// fy = y (1 - y) (1 - z) (C_m - C_af + I e v)
/// fz = z (1 - z) [w I (1 - m) - (1 - x) C_bf - y (I - C_m - e I)]
/// ```
///
/// Accepts any finite triple; the Jacobian and the mixed equilibria need it
/// outside the cube.
pub fn replicator_field(p: &GameParameters, s: &StrategyState) -> Velocity {
    let r = p.raw();
    let StrategyState { x, y, z } = *s;
    let fx = x * (1.0 - x) * (z * r.c_gf - r.c_g);
    let fy = y * (1.0 - y) * (1.0 - z) * p.a_margin();
    let fz =
        z * (1.0 - z) * (r.w * r.i * (1.0 - r.m) - (1.0 - x) * r.c_bf - y * p.a_channel_value());
    Velocity { fx, fy, fz }
}

/// `x (E11 - Ex)`, `y (E21 - Ey)`, `z (E31 - Ez)` computed from the
/// eight-outcome weighted sums. Independent of [`replicator_field`].
pub fn replicator_field_expanded(p: &GameParameters, s: &StrategyState) -> Velocity {
    let e = expected_payoffs(p, s);
    Velocity {
        fx: s.x * (e.e11 - e.e_bar_x),
        fy: s.y * (e.e21 - e.e_bar_y),
        fz: s.z * (e.e31 - e.e_bar_z),
    }
}
