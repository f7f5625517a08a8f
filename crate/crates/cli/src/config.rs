use std::path::PathBuf;

use nonrecip_core::spectral::QuadratureConfig;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{Map, Value};

use crate::dataset::Format;
use crate::error::CliError;

/// Converts `value` into `T`, reporting the JSON path of the first offending field.
pub fn parse<T: DeserializeOwned>(value: Value) -> Result<T, CliError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        CliError::config(path, e.into_inner().to_string())
    })
}

/// Splits a config document into the shared blocks and the command-specific remainder.
pub fn split(text: &str) -> Result<(CommonConfig, Value), CliError> {
    let mut value: Value = serde_json::from_str(text).map_err(|e| CliError::config(".", e.to_string()))?;
    let Some(object) = value.as_object_mut() else {
        return Err(CliError::config(".", "config must be a JSON object"));
    };
    let mut shared = Map::new();
    for key in ["quadrature", "output"] {
        if let Some(v) = object.remove(key) {
            shared.insert(key.to_owned(), v);
        }
    }
    Ok((parse(Value::Object(shared))?, value))
}

/// Blocks shared by every command.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommonConfig {
    #[serde(default)]
    pub quadrature: Option<QuadratureConfig>,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    #[default]
    Lin,
    Log,
}

#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Range {
    pub from: f64,
    pub to: f64,
    pub points: usize,
    #[serde(default)]
    pub scale: Scale,
}

/// Either an explicit list or an evenly spaced range.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum ValueGrid {
    List(Vec<f64>),
    Range(Range),
}

impl ValueGrid {
    /// Expands the grid; `field` names the config path for error messages.
    pub fn values(&self, field: &str) -> Result<Vec<f64>, CliError> {
        let values = match self {
            Self::List(v) => v.clone(),
            Self::Range(r) => {
                if r.points == 0 {
                    return Err(CliError::config(format!("{field}.points"), "must be at least 1"));
                }
                if !(r.from.is_finite() && r.to.is_finite()) {
                    return Err(CliError::config(field, "from and to must be finite"));
                }
                if r.points == 1 {
                    vec![r.from]
                } else {
                    let last = (r.points - 1) as f64;
                    match r.scale {
                        Scale::Lin => (0..r.points)
                            .map(|i| r.from + (r.to - r.from) * i as f64 / last)
                            .collect(),
                        Scale::Log => {
                            if r.from <= 0.0 || r.to <= 0.0 {
                                return Err(CliError::config(
                                    format!("{field}.scale"),
                                    "log spacing needs positive from and to",
                                ));
                            }
                            let ratio = (r.to / r.from).ln();
                            // Endpoints exact, not round-tripped through exp/ln.
                            (0..r.points)
                                .map(|i| match i {
                                    0 => r.from,
                                    i if i == r.points - 1 => r.to,
                                    i => r.from * (ratio * i as f64 / last).exp(),
                                })
                                .collect()
                        }
                    }
                }
            }
        };
        if values.is_empty() {
            return Err(CliError::config(field, "no values"));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(CliError::config(format!("{field}[{i}]"), "values must be finite"));
        }
        Ok(values)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
pub enum SweepVariable {
    #[serde(rename = "d")]
    Distance,
    #[serde(rename = "B")]
    Field,
    T1,
    T2,
    #[serde(rename = "phi")]
    Angle,
}

impl SweepVariable {
    pub fn header(self) -> &'static str {
        match self {
            Self::Distance => "d [m]",
            Self::Field => "B [T]",
            Self::T1 => "T1 [K]",
            Self::T2 => "T2 [K]",
            Self::Angle => "phi [rad]",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub variable: SweepVariable,
    pub values: ValueGrid,
}

impl Sweep {
    /// Values checked for physical range: `d > 0`, temperatures `≥ 0`.
    pub fn points(&self) -> Result<Vec<f64>, CliError> {
        let values = self.values.values("sweep.values")?;
        let ok = |v: f64| match self.variable {
            SweepVariable::Distance => v > 0.0,
            SweepVariable::T1 | SweepVariable::T2 => v >= 0.0,
            SweepVariable::Field | SweepVariable::Angle => true,
        };
        if let Some(i) = values.iter().position(|&v| !ok(v)) {
            return Err(CliError::config(
                format!("sweep.values[{i}]"),
                format!("{} out of range: {:e}", self.variable.header(), values[i]),
            ));
        }
        Ok(values)
    }
}

/// Sweep points, or a single point holding `current` when no sweep is given.
pub fn sweep_points(
    sweep: &Option<Sweep>,
    fallback: SweepVariable,
    current: f64,
) -> Result<(SweepVariable, Vec<f64>), CliError> {
    match sweep {
        Some(s) => Ok((s.variable, s.points()?)),
        None => Ok((fallback, vec![current])),
    }
}
