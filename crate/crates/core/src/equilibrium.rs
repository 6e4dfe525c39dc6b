//! Rest points of the replicator field and its Jacobian.

use alloc::vec::Vec;
use core::fmt;

use crate::field::replicator_field;
use crate::params::GameParameters;
use crate::state::StrategyState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EquilibriumLabel {
    E1,
    E2,
    E3,
    E4,
    E5,
    E6,
    E7,
    E8,
}

impl EquilibriumLabel {
    pub const ALL: [EquilibriumLabel; 8] = [
        EquilibriumLabel::E1,
        EquilibriumLabel::E2,
        EquilibriumLabel::E3,
        EquilibriumLabel::E4,
        EquilibriumLabel::E5,
        EquilibriumLabel::E6,
        EquilibriumLabel::E7,
        EquilibriumLabel::E8,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EquilibriumLabel::E1 => "E1",
            EquilibriumLabel::E2 => "E2",
            EquilibriumLabel::E3 => "E3",
            EquilibriumLabel::E4 => "E4",
            EquilibriumLabel::E5 => "E5",
            EquilibriumLabel::E6 => "E6",
            EquilibriumLabel::E7 => "E7",
            EquilibriumLabel::E8 => "E8",
        }
    }

    /// Pure-strategy corner for E1..E6.
    pub fn vertex(self) -> Option<[f64; 3]> {
        Some(match self {
            EquilibriumLabel::E1 => [0.0, 0.0, 0.0],
            EquilibriumLabel::E2 => [1.0, 0.0, 0.0],
            EquilibriumLabel::E3 => [0.0, 1.0, 0.0],
            EquilibriumLabel::E4 => [1.0, 1.0, 0.0],
            EquilibriumLabel::E5 => [0.0, 0.0, 1.0],
            EquilibriumLabel::E6 => [1.0, 0.0, 1.0],
            EquilibriumLabel::E7 | EquilibriumLabel::E8 => return None,
        })
    }
}

impl fmt::Display for EquilibriumLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumPoint {
    pub label: EquilibriumLabel,
    /// `None` when the defining formula divides by zero.
    pub coords: Option<[f64; 3]>,
    /// Every coordinate lies in `[0, 1]`.
    pub valid: bool,
}

impl EquilibriumPoint {
    pub fn state(&self) -> Option<StrategyState> {
        self.coords.map(StrategyState::from_array)
    }

    pub fn is_vertex(&self) -> bool {
        self.label.vertex().is_some()
    }
}

/// E1..E6 are cube vertices; E7 and E8 lie on the `y = 1` and `y = 0`
/// faces with `z = C_g / C_gf` and may fall outside the cube.
pub fn enumerate_equilibria(p: &GameParameters) -> Vec<EquilibriumPoint> {
    let r = p.raw();
    let (i, e, m, w) = (r.i, r.e, r.m, r.w);
    let defined = r.c_bf > 0.0 && r.c_gf > 0.0;

    EquilibriumLabel::ALL
        .iter()
        .map(|&label| {
            let coords = match label {
                EquilibriumLabel::E7 if defined => Some([
                    (r.c_bf - r.c_m + i - i * e - i * w + i * m * w) / r.c_bf,
                    1.0,
                    r.c_g / r.c_gf,
                ]),
                EquilibriumLabel::E8 if defined => {
                    Some([(r.c_bf - i * w + i * m * w) / r.c_bf, 0.0, r.c_g / r.c_gf])
                }
                EquilibriumLabel::E7 | EquilibriumLabel::E8 => None,
                _ => label.vertex(),
            };
            let valid =
                coords.is_some_and(|c| c.iter().all(|v| v.is_finite() && (0.0..=1.0).contains(v)));
            EquilibriumPoint {
                label,
                coords,
                valid,
            }
        })
        .collect()
}

/// Max-norm of the field at a point.
pub fn residual(p: &GameParameters, coords: &[f64; 3]) -> f64 {
    replicator_field(p, &StrategyState::from_array(*coords)).speed()
}

/// Row `i` holds the partial derivatives of `(fx, fy, fz)[i]` with respect
/// to `(x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jacobian(pub [[f64; 3]; 3]);

impl Jacobian {
    pub fn entries(&self) -> &[[f64; 3]; 3] {
        &self.0
    }

    pub fn is_diagonal(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| i == j || self.0[i][j] == 0.0))
    }

    pub fn max_abs_diff(&self, other: &Jacobian) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Analytic Jacobian. Defined for any finite point, inside the cube or not.
pub fn jacobian(p: &GameParameters, s: &[f64; 3]) -> Jacobian {
    let r = p.raw();
    let [x, y, z] = *s;
    let margin = p.a_margin();
    let a_value = p.a_channel_value();
    let bracket = r.w * r.i * (1.0 - r.m) - (1.0 - x) * r.c_bf - y * a_value;
    let bx = x * (1.0 - x);
    let by = y * (1.0 - y);
    let bz = z * (1.0 - z);
    Jacobian([
        [(1.0 - 2.0 * x) * (z * r.c_gf - r.c_g), 0.0, bx * r.c_gf],
        [0.0, (1.0 - 2.0 * y) * (1.0 - z) * margin, -by * margin],
        [bz * r.c_bf, -bz * a_value, (1.0 - 2.0 * z) * bracket],
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvalidStep;

impl fmt::Display for InvalidStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("finite-difference step must be positive and finite")
    }
}

impl core::error::Error for InvalidStep {}

/// Central-difference Jacobian of [`replicator_field`].
pub fn jacobian_fd(p: &GameParameters, s: &[f64; 3], h: f64) -> Result<Jacobian, InvalidStep> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(InvalidStep);
    }
    let mut out = [[0.0; 3]; 3];
    for col in 0..3 {
        let mut plus = *s;
        let mut minus = *s;
        plus[col] += h;
        minus[col] -= h;
        let fp = replicator_field(p, &StrategyState::from_array(plus)).to_array();
        let fm = replicator_field(p, &StrategyState::from_array(minus)).to_array();
        for row in 0..3 {
            out[row][col] = (fp[row] - fm[row]) / (2.0 * h);
        }
    }
    Ok(Jacobian(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Param;

    #[test]
    fn baseline_mixed_points() {
        let pts = enumerate_equilibria(&GameParameters::baseline());
        assert_eq!(pts.len(), 8);
        let e7 = pts[6];
        let c = e7.coords.unwrap();
        assert!((c[0] - 0.6).abs() < 1e-12);
        assert_eq!(&c[1..], &[1.0, 1.0]);
        assert!(e7.valid);
        let e8 = pts[7];
        assert!((e8.coords.unwrap()[0] + 5.4).abs() < 1e-12);
        assert!(!e8.valid);
    }

    #[test]
    fn vertices_listed_in_order() {
        let p = GameParameters::baseline().with(Param::Cm, 3.0).unwrap();
        let pts = enumerate_equilibria(&p);
        let expect = [
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [1.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
            [1.0, 0.0, 1.0],
        ];
        for (pt, c) in pts.iter().zip(expect) {
            assert_eq!(pt.coords, Some(c));
            assert!(pt.valid);
        }
    }

    #[test]
    fn zero_guarantee_cost_leaves_mixed_points_undefined() {
        let p = GameParameters::baseline().with(Param::Cbf, 0.0).unwrap();
        let pts = enumerate_equilibria(&p);
        assert!(pts[6].coords.is_none() && !pts[6].valid);
        assert!(pts[7].coords.is_none() && !pts[7].valid);
    }

    #[test]
    fn valid_points_are_rest_points() {
        let p = GameParameters::baseline();
        for pt in enumerate_equilibria(&p).iter().filter(|pt| pt.valid) {
            assert!(residual(&p, &pt.coords.unwrap()) < 1e-10, "{}", pt.label);
        }
    }

    #[test]
    fn baseline_origin_jacobian() {
        let j = jacobian(&GameParameters::baseline(), &[0.0, 0.0, 0.0]);
        assert!(j.is_diagonal());
        assert!((j.0[0][0] + 1.0).abs() < 1e-12);
        assert!((j.0[1][1] - 2.5).abs() < 1e-12);
        assert!((j.0[2][2] - 5.4).abs() < 1e-12);
    }

    #[test]
    fn analytic_matches_central_differences() {
        let p = GameParameters::baseline();
        let s = [0.5, 0.5, 0.5];
        let a = jacobian(&p, &s);
        let n = jacobian_fd(&p, &s, 1e-5).unwrap();
        assert!(a.max_abs_diff(&n) < 1e-6);
    }

    #[test]
    fn vertex_fd_off_diagonals_vanish() {
        let p = GameParameters::baseline();
        for label in &EquilibriumLabel::ALL[..6] {
            let n = jacobian_fd(&p, &label.vertex().unwrap(), 1e-5).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        assert!(
                            n.0[i][j].abs() <= 1e-9,
                            "{label} [{i}][{j}] = {}",
                            n.0[i][j]
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn zero_step_rejected() {
        assert_eq!(
            jacobian_fd(&GameParameters::baseline(), &[0.5; 3], 0.0),
            Err(InvalidStep)
        );
    }
}
