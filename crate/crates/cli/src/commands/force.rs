use nonrecip_core::constants::SPEED_OF_LIGHT;
use nonrecip_core::materials::PlateMaterial;
use nonrecip_core::plate::{
    gravity_force, total_force, total_force_near_field, toy_force, toy_force_shape, PlateScene,
};
use nonrecip_core::spectral::QuadratureConfig;
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::Value;

use super::apply_plate;
use crate::config::{parse, sweep_points, Sweep, SweepVariable, ValueGrid};
use crate::dataset::{Cell, Dataset};
use crate::error::CliError;

/// Density of InSb, kg/m³.
const DEFAULT_PARTICLE_DENSITY: f64 = 5780.0;

fn default_density() -> f64 {
    DEFAULT_PARTICLE_DENSITY
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
enum Mode {
    #[default]
    Plate,
    /// Mirror force shape `f(x)` for a delta-line particle.
    Toy,
}

/// Delta-line particle above a mirror; adds the dimensional force column.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ToyParticle {
    /// m³·rad/s.
    alpha0: f64,
    omega0: f64,
    #[serde(rename = "T")]
    temperature: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ForceConfig {
    #[serde(default)]
    mode: Mode,
    #[serde(default)]
    scene: Option<PlateScene>,
    /// Particle density for the weight, kg/m³.
    #[serde(default = "default_density", rename = "rho")]
    density: f64,
    #[serde(default)]
    sweep: Option<Sweep>,
    /// Grid of `x = ω0·d/c` for the toy mode.
    #[serde(default)]
    x: Option<ValueGrid>,
    #[serde(default)]
    toy: Option<ToyParticle>,
}

pub fn run(value: Value, cfg: &QuadratureConfig) -> Result<Dataset, CliError> {
    let config: ForceConfig = parse(value)?;
    match config.mode {
        Mode::Plate => plate(&config, cfg),
        Mode::Toy => toy(&config),
    }
}

fn plate(config: &ForceConfig, cfg: &QuadratureConfig) -> Result<Dataset, CliError> {
    let Some(scene) = config.scene else {
        return Err(CliError::config("scene", "plate mode needs a scene"));
    };
    if !(config.density.is_finite() && config.density > 0.0) {
        return Err(CliError::config("rho", "density must be positive"));
    }
    let (variable, values) = sweep_points(&config.sweep, SweepVariable::Distance, scene.distance)?;
    let scenes = values
        .iter()
        .map(|&v| apply_plate(&scene, variable, v))
        .collect::<Result<Vec<_>, _>>()?;
    let weight = gravity_force(scene.particle.radius, config.density);
    let rows = scenes
        .par_iter()
        .map(|s| -> Result<_, CliError> {
            let full = total_force(s, cfg)?;
            let near = match s.plate {
                PlateMaterial::PerfectConductor => None,
                _ => Some(total_force_near_field(s, cfg)?.total),
            };
            Ok((full, near))
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut data = Dataset::new([
        variable.header(),
        "F_self [N]",
        "F_interaction [N]",
        "F_environment [N]",
        "F_total [N]",
        "F_total/F_g [1]",
        "F_nearfield_closed [N]",
    ]);
    for (v, (f, near)) in values.iter().zip(rows) {
        data.push(vec![
            (*v).into(),
            f.self_force.into(),
            f.interaction.into(),
            (0.0 - (f.env_self + f.env_interaction)).into(),
            f.total.into(),
            (f.total / weight).into(),
            near.map_or(Cell::Missing, Cell::Number),
        ]);
    }
    Ok(data)
}

fn toy(config: &ForceConfig) -> Result<Dataset, CliError> {
    let Some(grid) = &config.x else {
        return Err(CliError::config("x", "toy mode needs an x grid"));
    };
    let xs = grid.values("x")?;
    if let Some(i) = xs.iter().position(|&x| x <= 0.0) {
        return Err(CliError::config(format!("x[{i}]"), "x must be positive"));
    }
    let mut columns = vec!["x [1]", "f(x) [1]"];
    if config.toy.is_some() {
        columns.extend(["d [m]", "F_toy [N]"]);
    }
    let mut data = Dataset::new(columns);
    for x in xs {
        let mut row: Vec<Cell> = vec![x.into(), toy_force_shape(x).into()];
        if let Some(p) = config.toy {
            let d = x * SPEED_OF_LIGHT / p.omega0;
            row.extend([d.into(), toy_force(p.alpha0, p.omega0, p.temperature, d).into()]);
        }
        data.push(row);
    }
    Ok(data)
}
