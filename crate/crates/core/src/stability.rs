//! Linear stability of the equilibria and the four stable-point scenarios.

use alloc::vec::Vec;
use core::fmt;

use crate::eigen::{eigenvalues3, Complex};
use crate::equilibrium::{enumerate_equilibria, jacobian, EquilibriumLabel, EquilibriumPoint};
use crate::params::GameParameters;

/// Real parts within this distance of zero count as zero.
pub const HYPERBOLICITY_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StabilityClass {
    Stable,
    Unstable,
    Saddle,
    NonHyperbolic,
}

impl StabilityClass {
    pub fn name(self) -> &'static str {
        match self {
            StabilityClass::Stable => "stable",
            StabilityClass::Unstable => "unstable",
            StabilityClass::Saddle => "saddle",
            StabilityClass::NonHyperbolic => "non-hyperbolic",
        }
    }

    pub fn from_eigenvalues(values: &[Complex; 3]) -> StabilityClass {
        if values.iter().any(|l| l.re.abs() <= HYPERBOLICITY_EPS) {
            StabilityClass::NonHyperbolic
        } else if values.iter().all(|l| l.re < 0.0) {
            StabilityClass::Stable
        } else if values.iter().all(|l| l.re > 0.0) {
            StabilityClass::Unstable
        } else {
            StabilityClass::Saddle
        }
    }
}

impl fmt::Display for StabilityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityVerdict {
    /// Axis order for the diagonal Jacobians at vertices, sorted otherwise.
    pub eigenvalues: [Complex; 3],
    pub class: StabilityClass,
}

impl StabilityVerdict {
    /// Number of eigenvalues with real part below `-HYPERBOLICITY_EPS`.
    pub fn attracting_directions(&self) -> usize {
        self.eigenvalues
            .iter()
            .filter(|l| l.re < -HYPERBOLICITY_EPS)
            .count()
    }
}

/// Eigenvalues of the analytic Jacobian at `point`. `None` for undefined
/// points.
///
/// E7 and E8 get a verdict like any other point, but they are never taken
/// as evolutionarily stable; see [`EquilibriumReport::evolutionarily_stable`].
pub fn classify(p: &GameParameters, point: &EquilibriumPoint) -> Option<StabilityVerdict> {
    let coords = point.coords?;
    let j = jacobian(p, &coords);
    let eigenvalues = eigenvalues3(j.entries()).ok()?;
    Some(StabilityVerdict {
        eigenvalues,
        class: StabilityClass::from_eigenvalues(&eigenvalues),
    })
}

/// Two strict inequalities `lhs < 0` with their operand values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioCheck {
    pub point: EquilibriumLabel,
    pub operands: [f64; 2],
    pub holds: bool,
}

impl ScenarioCheck {
    fn new(point: EquilibriumLabel, a: f64, b: f64) -> Self {
        ScenarioCheck {
            point,
            operands: [a, b],
            holds: a < -HYPERBOLICITY_EPS && b < -HYPERBOLICITY_EPS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioReport {
    /// E1: `C_m - C_af + I e v < 0` and `I w - C_bf - I m w < 0`.
    pub scenario1: ScenarioCheck,
    /// E3: `C_af - C_m - I e v < 0` and `C_m - C_bf - I + I e + I w - I m w < 0`.
    pub scenario2: ScenarioCheck,
    /// E5: `C_gf - C_g < 0` and `C_bf - I w + I m w < 0`.
    pub scenario3: ScenarioCheck,
    /// E6: `C_g - C_gf < 0` and `I m w - I w < 0`.
    pub scenario4: ScenarioCheck,
}

impl ScenarioReport {
    pub fn checks(&self) -> [ScenarioCheck; 4] {
        [
            self.scenario1,
            self.scenario2,
            self.scenario3,
            self.scenario4,
        ]
    }
}

/// Evaluates the four stable-point conditions. Ties count as failures.
pub fn scenario_report(p: &GameParameters) -> ScenarioReport {
    let r = p.raw();
    let (i, e, m, w, v) = (r.i, r.e, r.m, r.w, r.v);
    ScenarioReport {
        scenario1: ScenarioCheck::new(
            EquilibriumLabel::E1,
            r.c_m - r.c_af + i * e * v,
            i * w - r.c_bf - i * m * w,
        ),
        scenario2: ScenarioCheck::new(
            EquilibriumLabel::E3,
            r.c_af - r.c_m - i * e * v,
            r.c_m - r.c_bf - i + i * e + i * w - i * m * w,
        ),
        scenario3: ScenarioCheck::new(
            EquilibriumLabel::E5,
            r.c_gf - r.c_g,
            r.c_bf - i * w + i * m * w,
        ),
        scenario4: ScenarioCheck::new(EquilibriumLabel::E6, r.c_g - r.c_gf, i * m * w - i * w),
    }
}

/// Everything known about the equilibria of one parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumReport {
    pub points: Vec<EquilibriumPoint>,
    /// Aligned with `points`.
    pub verdicts: Vec<Option<StabilityVerdict>>,
    pub scenarios: ScenarioReport,
}

impl EquilibriumReport {
    /// Vertices whose verdict is `Stable`. Interior and edge points are
    /// excluded even when their linearization is attracting.
    pub fn evolutionarily_stable(&self) -> impl Iterator<Item = &EquilibriumPoint> {
        self.points
            .iter()
            .zip(&self.verdicts)
            .filter(|(pt, v)| {
                pt.is_vertex() && v.is_some_and(|v| v.class == StabilityClass::Stable)
            })
            .map(|(pt, _)| pt)
    }
}

pub fn analyze(p: &GameParameters) -> EquilibriumReport {
    let points = enumerate_equilibria(p);
    let verdicts = points.iter().map(|pt| classify(p, pt)).collect();
    EquilibriumReport {
        points,
        verdicts,
        scenarios: scenario_report(p),
    }
}
