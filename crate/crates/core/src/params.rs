//! Model parameters and their validation.

use alloc::vec::Vec;
use core::fmt;

/// Names of the twelve model scalars.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    I,
    Rgf,
    Cg,
    Cgf,
    M,
    E,
    Cm,
    Caf,
    Cbf,
    U,
    V,
    W,
}

impl Param {
    pub const ALL: [Param; 12] = [
        Param::I,
        Param::Rgf,
        Param::Cg,
        Param::Cgf,
        Param::M,
        Param::E,
        Param::Cm,
        Param::Caf,
        Param::Cbf,
        Param::U,
        Param::V,
        Param::W,
    ];

    /// Key used in config files and reports.
    pub fn name(self) -> &'static str {
        match self {
            Param::I => "I",
            Param::Rgf => "Rgf",
            Param::Cg => "Cg",
            Param::Cgf => "Cgf",
            Param::M => "m",
            Param::E => "e",
            Param::Cm => "Cm",
            Param::Caf => "Caf",
            Param::Cbf => "Cbf",
            Param::U => "u",
            Param::V => "v",
            Param::W => "w",
        }
    }

    pub fn from_name(name: &str) -> Option<Param> {
        Param::ALL.iter().copied().find(|p| p.name() == name)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Unchecked parameter values, as read from a config or built by hand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawParameters {
    /// Financing amount needed by enterprise B.
    pub i: f64,
    /// Initial revenue of the bank.
    pub r_gf: f64,
    /// Bank's fintech investment cost.
    pub c_g: f64,
    /// Bank's loan cost before enhancing fintech.
    pub c_gf: f64,
    /// Bank loan interest rate.
    pub m: f64,
    /// Enterprise A financing interest rate.
    pub e: f64,
    /// Mediation fee charged by enterprise A.
    pub c_m: f64,
    /// Borrowing cost for enterprise A.
    pub c_af: f64,
    /// Credit guarantee cost for B when the bank has not upgraded.
    pub c_bf: f64,
    /// Probability B repays the bank.
    pub u: f64,
    /// Probability B repays enterprise A.
    pub v: f64,
    /// Probability B obtains bank financing approval.
    pub w: f64,
}

impl RawParameters {
    /// The parameter set used for the numerical experiments.
    pub const fn baseline() -> Self {
        RawParameters {
            i: 10.0,
            r_gf: 0.0,
            c_g: 1.0,
            c_gf: 1.0,
            m: 0.2,
            e: 0.25,
            c_m: 1.5,
            c_af: 1.0,
            c_bf: 1.0,
            u: 0.85,
            v: 0.8,
            w: 0.8,
        }
    }

    pub fn get(&self, param: Param) -> f64 {
        match param {
            Param::I => self.i,
            Param::Rgf => self.r_gf,
            Param::Cg => self.c_g,
            Param::Cgf => self.c_gf,
            Param::M => self.m,
            Param::E => self.e,
            Param::Cm => self.c_m,
            Param::Caf => self.c_af,
            Param::Cbf => self.c_bf,
            Param::U => self.u,
            Param::V => self.v,
            Param::W => self.w,
        }
    }

    pub fn set(&mut self, param: Param, value: f64) {
        let slot = match param {
            Param::I => &mut self.i,
            Param::Rgf => &mut self.r_gf,
            Param::Cg => &mut self.c_g,
            Param::Cgf => &mut self.c_gf,
            Param::M => &mut self.m,
            Param::E => &mut self.e,
            Param::Cm => &mut self.c_m,
            Param::Caf => &mut self.c_af,
            Param::Cbf => &mut self.c_bf,
            Param::U => &mut self.u,
            Param::V => &mut self.v,
            Param::W => &mut self.w,
        };
        *slot = value;
    }

    /// Checks every constraint and collects all violations.
    pub fn validate(self) -> Result<GameParameters, ValidationErrors> {
        let mut errors = Vec::new();
        for param in Param::ALL {
            let value = self.get(param);
            if !value.is_finite() {
                errors.push(ParamError::NotFinite(param));
                continue;
            }
            match param {
                Param::I => {
                    if value <= 0.0 {
                        errors.push(ParamError::NotPositive(param));
                    }
                }
                Param::U | Param::V | Param::W => {
                    if !(0.0..=1.0).contains(&value) {
                        errors.push(ParamError::ProbabilityOutOfRange(param, value));
                    }
                }
                Param::M | Param::E => {
                    if !(0.0..1.0).contains(&value) {
                        errors.push(ParamError::RateOutOfRange(param, value));
                    }
                }
                _ => {
                    if value < 0.0 {
                        errors.push(ParamError::Negative(param, value));
                    }
                }
            }
        }
        if errors.is_empty() {
            Ok(GameParameters(self))
        } else {
            Err(ValidationErrors(errors))
        }
    }
}

/// A single violated constraint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamError {
    NotFinite(Param),
    NotPositive(Param),
    Negative(Param, f64),
    ProbabilityOutOfRange(Param, f64),
    RateOutOfRange(Param, f64),
}

impl ParamError {
    pub fn param(&self) -> Param {
        match *self {
            ParamError::NotFinite(p)
            | ParamError::NotPositive(p)
            | ParamError::Negative(p, _)
            | ParamError::ProbabilityOutOfRange(p, _)
            | ParamError::RateOutOfRange(p, _) => p,
        }
    }
}

impl fmt::Display for ParamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamError::NotFinite(p) => write!(f, "{p} must be finite"),
            ParamError::NotPositive(p) => write!(f, "{p} must be positive"),
            ParamError::Negative(p, v) => write!(f, "{p} must be non-negative (got {v})"),
            ParamError::ProbabilityOutOfRange(p, v) => write!(f, "{p} out of [0,1] (got {v})"),
            ParamError::RateOutOfRange(p, v) => write!(f, "{p} out of [0,1) (got {v})"),
        }
    }
}

impl core::error::Error for ParamError {}

/// Every constraint a raw parameter set violated, in parameter order.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationErrors(pub Vec<ParamError>);

impl ValidationErrors {
    pub fn errors(&self) -> &[ParamError] {
        &self.0
    }
}

impl fmt::Display for ValidationErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, err) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{err}")?;
        }
        Ok(())
    }
}

impl core::error::Error for ValidationErrors {}

/// A validated parameter set. Construct through [`RawParameters::validate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GameParameters(RawParameters);

impl GameParameters {
    pub fn baseline() -> Self {
        GameParameters(RawParameters::baseline())
    }

    pub fn raw(&self) -> &RawParameters {
        &self.0
    }

    pub fn get(&self, param: Param) -> f64 {
        self.0.get(param)
    }

    /// Copy with one scalar replaced, revalidated.
    pub fn with(&self, param: Param, value: f64) -> Result<GameParameters, ValidationErrors> {
        let mut raw = self.0;
        raw.set(param, value);
        raw.validate()
    }

    /// Copy with one scalar replaced and no validation. Used for finite
    /// differences that may step just outside the admissible box.
    pub(crate) fn perturbed(&self, param: Param, value: f64) -> GameParameters {
        let mut raw = self.0;
        raw.set(param, value);
        GameParameters(raw)
    }

    /// Net return to A of on-lending: `C_m - C_af + I e v`.
    pub fn a_margin(&self) -> f64 {
        let p = &self.0;
        p.c_m - p.c_af + p.i * p.e * p.v
    }

    /// B's payoff from financing through A when A provides: `I - C_m - e I`.
    pub fn a_channel_value(&self) -> f64 {
        let p = &self.0;
        p.i - p.c_m - p.e * p.i
    }

    /// B's payoff from an approved loan at an upgraded bank: `w (I - m I)`.
    pub fn bank_channel_value(&self) -> f64 {
        let p = &self.0;
        p.w * (p.i - p.m * p.i)
    }
}

impl Default for GameParameters {
    fn default() -> Self {
        GameParameters::baseline()
    }
}
