//! Flat JSON run configuration.
//!
//! ```json
//! {"I": 10, "Rgf": 0, "Cg": 1, "Cgf": 1, "m": 0.2, "e": 0.25, "Cm": 1.5,
//!  "Caf": 1, "Cbf": 1, "u": 0.85, "v": 0.8, "w": 0.8,
//!  "dt": 0.01, "horizon": 20, "record_every": 10,
//!  "initial": [[0.5, 0.5, 0.5]], "out_dir": "out"}
//! ```
//!
//! The twelve model keys are required. The rest fall back to defaults.
//! Unknown keys are rejected.

use std::fmt;
use std::path::PathBuf;

use scf_evo_core::{GameParameters, IntegrationConfig, Param, RawParameters, StrategyState};
use serde::{Deserialize, Serialize};

pub const DEFAULT_OUT_DIR: &str = "out";

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: GameParameters,
    pub integration: IntegrationConfig,
    pub initial: Vec<StrategyState>,
    pub out_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            params: GameParameters::baseline(),
            integration: IntegrationConfig::default(),
            initial: vec![StrategyState::splat(0.5)],
            out_dir: PathBuf::from(DEFAULT_OUT_DIR),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    #[serde(rename = "I")]
    i: f64,
    #[serde(rename = "Rgf")]
    r_gf: f64,
    #[serde(rename = "Cg")]
    c_g: f64,
    #[serde(rename = "Cgf")]
    c_gf: f64,
    m: f64,
    e: f64,
    #[serde(rename = "Cm")]
    c_m: f64,
    #[serde(rename = "Caf")]
    c_af: f64,
    #[serde(rename = "Cbf")]
    c_bf: f64,
    u: f64,
    v: f64,
    w: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dt: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    horizon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    record_every: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    initial: Option<Vec<[f64; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    out_dir: Option<String>,
}

/// Line and column (1-based) in the source document.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {} column {}", self.line, self.column)
    }
}

/// One out-of-range value.
#[derive(Debug, Clone, PartialEq)]
pub struct RangeIssue {
    pub key: String,
    pub message: String,
    pub position: Option<Position>,
}

impl fmt::Display for RangeIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.key, self.message)?;
        if let Some(pos) = self.position {
            write!(f, " (at {pos})")?;
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("malformed config at {position}: {message}")]
    Malformed { message: String, position: Position },
    #[error("unknown config key \"{key}\" at {position}")]
    UnknownKey { key: String, position: Position },
    #[error("invalid config: {}", join(.issues))]
    OutOfRange { issues: Vec<RangeIssue> },
}

fn join(issues: &[RangeIssue]) -> String {
    issues
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// Where `"key":` first appears in `text`.
fn key_position(text: &str, key: &str) -> Option<Position> {
    let needle = format!("\"{key}\"");
    let mut from = 0;
    while let Some(found) = text[from..].find(&needle) {
        let start = from + found;
        let rest = text[start + needle.len()..].trim_start();
        if rest.starts_with(':') {
            let before = &text[..start];
            let line = before.matches('\n').count() + 1;
            let column = before.rfind('\n').map_or(start, |nl| start - nl - 1) + 1;
            return Some(Position { line, column });
        }
        from = start + needle.len();
    }
    None
}

fn unknown_field_name(message: &str) -> Option<String> {
    let rest = message.strip_prefix("unknown field `")?;
    rest.find('`').map(|end| rest[..end].to_string())
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let doc: Document = serde_json::from_str(text).map_err(|err| {
        let position = Position {
            line: err.line(),
            column: err.column(),
        };
        let message = err.to_string();
        match unknown_field_name(&message) {
            Some(key) => ConfigError::UnknownKey {
                position: key_position(text, &key).unwrap_or(position),
                key,
            },
            None => ConfigError::Malformed { message, position },
        }
    })?;

    let mut issues = Vec::new();
    let raw = RawParameters {
        i: doc.i,
        r_gf: doc.r_gf,
        c_g: doc.c_g,
        c_gf: doc.c_gf,
        m: doc.m,
        e: doc.e,
        c_m: doc.c_m,
        c_af: doc.c_af,
        c_bf: doc.c_bf,
        u: doc.u,
        v: doc.v,
        w: doc.w,
    };
    let params = match raw.validate() {
        Ok(p) => Some(p),
        Err(errors) => {
            for err in errors.errors() {
                let key = err.param().name();
                issues.push(RangeIssue {
                    key: key.to_string(),
                    message: err.to_string(),
                    position: key_position(text, key),
                });
            }
            None
        }
    };

    let defaults = IntegrationConfig::default();
    let record_every = match doc.record_every {
        None => defaults.record_every,
        Some(n) => usize::try_from(n).unwrap_or(usize::MAX),
    };
    let integration = IntegrationConfig {
        dt: doc.dt.unwrap_or(defaults.dt),
        horizon: doc.horizon.unwrap_or(defaults.horizon),
        record_every,
    };
    if let Err(err) = integration.steps() {
        let key = if !(integration.dt > 0.0 && integration.dt.is_finite()) {
            "dt"
        } else if record_every == 0 {
            "record_every"
        } else {
            "horizon"
        };
        issues.push(RangeIssue {
            key: key.to_string(),
            message: err.to_string(),
            position: key_position(text, key),
        });
    }

    let mut initial = Vec::new();
    for (k, c) in doc
        .initial
        .unwrap_or_else(|| vec![[0.5, 0.5, 0.5]])
        .into_iter()
        .enumerate()
    {
        match StrategyState::new(c[0], c[1], c[2]) {
            Ok(s) => initial.push(s),
            Err(err) => issues.push(RangeIssue {
                key: "initial".to_string(),
                message: format!("entry {k}: {err}"),
                position: key_position(text, "initial"),
            }),
        }
    }
    if initial.is_empty() && issues.is_empty() {
        issues.push(RangeIssue {
            key: "initial".to_string(),
            message: "at least one initial state is required".to_string(),
            position: key_position(text, "initial"),
        });
    }

    match params {
        Some(params) if issues.is_empty() => Ok(RunConfig {
            params,
            integration,
            initial,
            out_dir: PathBuf::from(doc.out_dir.unwrap_or_else(|| DEFAULT_OUT_DIR.to_string())),
        }),
        _ => Err(ConfigError::OutOfRange { issues }),
    }
}

/// Pretty JSON with every key present. `parse_config` reads it back to an
/// identical [`RunConfig`].
pub fn serialize_config(cfg: &RunConfig) -> String {
    let r = cfg.params.raw();
    let doc = Document {
        i: r.i,
        r_gf: r.r_gf,
        c_g: r.c_g,
        c_gf: r.c_gf,
        m: r.m,
        e: r.e,
        c_m: r.c_m,
        c_af: r.c_af,
        c_bf: r.c_bf,
        u: r.u,
        v: r.v,
        w: r.w,
        dt: Some(cfg.integration.dt),
        horizon: Some(cfg.integration.horizon),
        record_every: Some(cfg.integration.record_every as u64),
        initial: Some(cfg.initial.iter().map(|s| s.to_array()).collect()),
        out_dir: Some(cfg.out_dir.to_string_lossy().into_owned()),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("config serializes");
    text.push('\n');
    text
}

/// Keys accepted in a config document.
pub fn known_keys() -> Vec<&'static str> {
    let mut keys: Vec<&'static str> = Param::ALL.iter().map(|p| p.name()).collect();
    keys.extend(["dt", "horizon", "record_every", "initial", "out_dir"]);
    keys
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASELINE: &str = r#"{"I": 10, "Rgf": 0, "Cg": 1, "Cgf": 1, "m": 0.2, "e": 0.25,
        "Cm": 1.5, "Caf": 1, "Cbf": 1, "u": 0.85, "v": 0.8, "w": 0.8}"#;

    fn with_extra(extra: &str) -> String {
        format!("{}, {extra}}}", BASELINE.trim_end_matches('}'))
    }

    #[test]
    fn baseline_gets_defaults() {
        let cfg = parse_config(BASELINE).unwrap();
        assert_eq!(cfg, RunConfig::default());
    }

    #[test]
    fn unknown_key_is_named() {
        let err = parse_config(&with_extra(r#""q": 1"#)).unwrap_err();
        match err {
            ConfigError::UnknownKey { key, position } => {
                assert_eq!(key, "q");
                assert_eq!(position.line, 2);
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn one_initial_state() {
        let cfg = parse_config(&with_extra(r#""initial": [[0.5,0.5,0.5]]"#)).unwrap();
        assert_eq!(cfg.initial, vec![StrategyState::splat(0.5)]);
    }

    #[test]
    fn out_of_range_values_carry_key_and_position() {
        let text = BASELINE.replace("\"u\": 0.85", "\"u\": 1.5");
        let err = parse_config(&text).unwrap_err();
        let ConfigError::OutOfRange { issues } = err else {
            panic!("wrong error");
        };
        assert_eq!(issues.len(), 1);
        assert_eq!(issues[0].key, "u");
        assert!(issues[0].message.starts_with("u out of [0,1]"));
        assert_eq!(issues[0].position.unwrap().line, 2);
    }

    #[test]
    fn bad_integration_and_initial() {
        let err = parse_config(&with_extra(r#""dt": -1, "initial": [[0.5, 2, 0]]"#)).unwrap_err();
        let ConfigError::OutOfRange { issues } = err else {
            panic!("wrong error");
        };
        let keys: Vec<&str> = issues.iter().map(|i| i.key.as_str()).collect();
        assert_eq!(keys, ["dt", "initial"]);
    }

    #[test]
    fn malformed_and_missing() {
        assert!(matches!(
            parse_config("{\"I\": 10,"),
            Err(ConfigError::Malformed { .. })
        ));
        assert!(matches!(
            parse_config("{\"I\": 10}"),
            Err(ConfigError::Malformed { .. })
        ));
    }

    #[test]
    fn round_trip_default() {
        let cfg = RunConfig::default();
        assert_eq!(parse_config(&serialize_config(&cfg)).unwrap(), cfg);
    }

    #[test]
    fn key_positions() {
        let text = "{\n  \"I\": 1,\n    \"Cg\": 2}";
        assert_eq!(
            key_position(text, "Cg"),
            Some(Position { line: 3, column: 5 })
        );
        assert_eq!(key_position(text, "e"), None);
    }
}
