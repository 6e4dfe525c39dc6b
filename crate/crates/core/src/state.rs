use core::fmt;

/// Largest excursion outside `[0, 1]` that is treated as rounding noise.
pub const CLAMP_TOLERANCE: f64 = 1e-12;

/// Mixed-strategy point in the unit cube.
///
/// `x`: probability the bank improves its fintech. `y`: probability
/// enterprise A provides commercial credit. `z`: probability enterprise B
/// chooses bank financing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategyState {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateError {
    NotFinite,
    OutsideCube { coordinate: char, value: f64 },
}

impl fmt::Display for StateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateError::NotFinite => f.write_str("state has a non-finite coordinate"),
            StateError::OutsideCube { coordinate, value } => {
                write!(f, "{coordinate} = {value} is outside [0,1]")
            }
        }
    }
}

impl core::error::Error for StateError {}

impl StrategyState {
    /// Checked constructor.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self, StateError> {
        let s = StrategyState { x, y, z };
        for (coordinate, value) in [('x', x), ('y', y), ('z', z)] {
            if !value.is_finite() {
                return Err(StateError::NotFinite);
            }
            if !(0.0..=1.0).contains(&value) {
                return Err(StateError::OutsideCube { coordinate, value });
            }
        }
        Ok(s)
    }

    pub const fn splat(v: f64) -> Self {
        StrategyState { x: v, y: v, z: v }
    }

    pub const fn from_array(a: [f64; 3]) -> Self {
        StrategyState {
            x: a[0],
            y: a[1],
            z: a[2],
        }
    }

    pub const fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn in_cube(&self) -> bool {
        self.to_array().iter().all(|v| (0.0..=1.0).contains(v))
    }

    pub fn is_vertex(&self) -> bool {
        self.to_array().iter().all(|&v| v == 0.0 || v == 1.0)
    }

    /// Largest distance of any coordinate from `[0, 1]`.
    pub fn cube_excursion(&self) -> f64 {
        self.to_array()
            .iter()
            .map(|&v| {
                if v < 0.0 {
                    -v
                } else if v > 1.0 {
                    v - 1.0
                } else {
                    0.0
                }
            })
            .fold(0.0, f64::max)
    }

    /// Snap into the cube if the excursion is within `tolerance`.
    pub fn clamp_within(self, tolerance: f64) -> Option<Self> {
        if !self.to_array().iter().all(|v| v.is_finite()) {
            return None;
        }
        if self.cube_excursion() > tolerance {
            return None;
        }
        Some(StrategyState {
            x: self.x.clamp(0.0, 1.0),
            y: self.y.clamp(0.0, 1.0),
            z: self.z.clamp(0.0, 1.0),
        })
    }

    pub fn distance(&self, other: &[f64; 3]) -> f64 {
        let d = [self.x - other[0], self.y - other[1], self.z - other[2]];
        libm::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2])
    }
}
