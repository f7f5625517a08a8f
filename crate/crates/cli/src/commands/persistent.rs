use nonrecip_core::spectral::QuadratureConfig;
use nonrecip_core::two_particle::{persistent_current, TwoParticleScene};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::Value;

use super::{apply_two_particle, warn_validity};
use crate::config::{parse, sweep_points, Sweep, SweepVariable};
use crate::dataset::Dataset;
use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PersistentConfig {
    scene: TwoParticleScene,
    /// Common temperature of both particles and the environment, K; defaults to particle 1's.
    #[serde(default, rename = "T")]
    temperature: Option<f64>,
    /// Exchange the particles before evaluating.
    #[serde(default)]
    swap: bool,
    #[serde(default)]
    sweep: Option<Sweep>,
}

pub fn run(value: Value, cfg: &QuadratureConfig) -> Result<Dataset, CliError> {
    let config: PersistentConfig = parse(value)?;
    let base = if config.swap {
        config.scene.swapped()
    } else {
        config.scene
    };
    let common = config.temperature.unwrap_or(base.particle1.temperature);
    if !(common.is_finite() && common >= 0.0) {
        return Err(CliError::config("T", "temperature must be finite and non-negative"));
    }
    let (variable, values) = sweep_points(&config.sweep, SweepVariable::Angle, base.position.phi)?;
    // Both temperature variables set the common temperature.
    let points = values
        .iter()
        .map(|&v| match variable {
            SweepVariable::T1 | SweepVariable::T2 => Ok((base, v)),
            other => Ok((apply_two_particle(&base, other, v)?, common)),
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    for (s, _) in &points {
        warn_validity(s);
    }
    let results = points
        .par_iter()
        .map(|(s, t)| persistent_current(s, *t, cfg))
        .collect::<Result<Vec<_>, _>>()?;

    let mut data = Dataset::new([
        variable.header(),
        "H_1to2_general [W]",
        "H_1to2_closed [W]",
        "relative_gap [1]",
    ]);
    for (v, h) in values.iter().zip(&results) {
        data.push(vec![
            (*v).into(),
            h.general.into(),
            h.closed.into(),
            h.relative_gap.into(),
        ]);
    }
    Ok(data)
}
