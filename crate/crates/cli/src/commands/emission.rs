use nonrecip_core::spectral::{integrate_omega_try, planck_theta, QuadratureConfig};
use nonrecip_core::two_particle::{
    self_emission_closed, self_emission_oracle, vacuum_emission_density, CylindricalPosition, EmissionBreakdown,
    Orientation, TwoParticleScene,
};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::Value;

use super::{apply_two_particle, warn_validity};
use crate::config::{parse, sweep_points, Sweep, SweepVariable};
use crate::dataset::{Cell, Dataset};
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
enum Curve {
    Parallel,
    Perpendicular,
    /// Separation along x with the field switched off.
    B0,
    /// The scene geometry as given.
    Scene,
}

impl Curve {
    fn label(self) -> &'static str {
        match self {
            Self::Parallel => "parallel",
            Self::Perpendicular => "perpendicular",
            Self::B0 => "b0",
            Self::Scene => "scene",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
enum Method {
    /// Direct 3×3 trace assembly; any geometry and material.
    #[default]
    Oracle,
    /// g-function closed forms; requires aligned geometry and `αs = 0`.
    Closed,
}

fn default_curves() -> Vec<Curve> {
    vec![Curve::Parallel, Curve::Perpendicular, Curve::B0]
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EmissionConfig {
    scene: TwoParticleScene,
    #[serde(default)]
    sweep: Option<Sweep>,
    #[serde(default = "default_curves")]
    curves: Vec<Curve>,
    #[serde(default)]
    method: Method,
}

/// Isolated particle 2 at zero field, the normalization reference.
fn reference_emission(scene: &TwoParticleScene, cfg: &QuadratureConfig) -> Result<f64, CliError> {
    let particle = {
        let mut p = scene.particle2;
        p.material = p.material.with_field(0.0);
        p
    };
    let t2 = particle.temperature;
    let [h] = integrate_omega_try(
        |omega| {
            let a = particle.polarizability(omega)?;
            Ok([planck_theta(omega, t2) * vacuum_emission_density(&a, omega)])
        },
        t2,
        cfg,
        &scene.with_field(0.0).omega_hints(),
    )?;
    Ok(h)
}

fn curve_scene(scene: &TwoParticleScene, curve: Curve) -> Result<(TwoParticleScene, Option<Orientation>), CliError> {
    let d = scene.separation();
    Ok(match curve {
        Curve::Parallel => (
            scene.with_position(CylindricalPosition::parallel(d))?,
            Some(Orientation::Parallel),
        ),
        Curve::Perpendicular => (
            scene.with_position(CylindricalPosition::perpendicular(d, scene.position.phi))?,
            Some(Orientation::Perpendicular),
        ),
        Curve::B0 => (
            scene.with_field(0.0).with_position(CylindricalPosition::parallel(d))?,
            Some(Orientation::Parallel),
        ),
        Curve::Scene => (*scene, None),
    })
}

fn evaluate(
    scene: &TwoParticleScene,
    curve: Curve,
    method: Method,
    cfg: &QuadratureConfig,
) -> Result<EmissionBreakdown, CliError> {
    let (s, orientation) = curve_scene(scene, curve)?;
    Ok(match (method, orientation) {
        (Method::Closed, Some(o)) => self_emission_closed(&s, o, cfg)?,
        _ => self_emission_oracle(&s, cfg)?,
    })
}

pub fn run(value: Value, cfg: &QuadratureConfig) -> Result<Dataset, CliError> {
    let config: EmissionConfig = parse(value)?;
    if config.curves.is_empty() {
        return Err(CliError::config("curves", "at least one curve is required"));
    }
    let (variable, values) = sweep_points(&config.sweep, SweepVariable::Distance, config.scene.separation())?;
    let scenes = values
        .iter()
        .map(|&v| apply_two_particle(&config.scene, variable, v))
        .collect::<Result<Vec<_>, _>>()?;
    for s in &scenes {
        warn_validity(s);
    }
    let jobs: Vec<(usize, Curve)> = (0..scenes.len())
        .flat_map(|i| config.curves.iter().map(move |&c| (i, c)))
        .collect();
    let references = scenes
        .par_iter()
        .map(|s| reference_emission(s, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let results = jobs
        .par_iter()
        .map(|&(i, curve)| evaluate(&scenes[i], curve, config.method, cfg))
        .collect::<Result<Vec<_>, _>>()?;

    let mut data = Dataset::new([
        variable.header(),
        "curve",
        "H_total [W]",
        "H_vacuum [W]",
        "H_pp [W]",
        "H_mm [W]",
        "H_normalized [1]",
    ]);
    for (&(i, curve), h) in jobs.iter().zip(&results) {
        data.push(vec![
            values[i].into(),
            Cell::from(curve.label()),
            h.total.into(),
            h.vacuum.into(),
            h.plus_plus.into(),
            h.minus_minus.into(),
            (h.total / references[i]).into(),
        ]);
    }
    Ok(data)
}
