pub mod bound;
pub mod emission;
pub mod force;
pub mod persistent;
pub mod selftest;

use nonrecip_core::plate::PlateScene;
use nonrecip_core::two_particle::{TwoParticleScene, ValidityWarning};

use crate::config::SweepVariable;
use crate::error::CliError;

/// Copy of `scene` with one sweep variable set.
pub fn apply_two_particle(
    scene: &TwoParticleScene,
    variable: SweepVariable,
    value: f64,
) -> Result<TwoParticleScene, CliError> {
    let mut s = *scene;
    match variable {
        SweepVariable::Distance => return Ok(s.with_position(s.position.with_distance(value))?),
        SweepVariable::Field => return Ok(s.with_field(value)),
        SweepVariable::T1 => s.particle1.temperature = value,
        SweepVariable::T2 => s.particle2.temperature = value,
        SweepVariable::Angle => s.position.phi = value,
    }
    Ok(s)
}

pub fn apply_plate(scene: &PlateScene, variable: SweepVariable, value: f64) -> Result<PlateScene, CliError> {
    let [t1, t2, t_env] = scene.temperatures();
    Ok(match variable {
        SweepVariable::Distance => scene.with_distance(value)?,
        SweepVariable::Field => scene.with_field(value),
        SweepVariable::T1 => scene.with_temperatures([value, t2, t_env])?,
        SweepVariable::T2 => scene.with_temperatures([t1, value, t_env])?,
        SweepVariable::Angle => {
            return Err(CliError::config(
                "sweep.variable",
                "phi has no meaning for a plate scene",
            ))
        }
    })
}

pub fn warn_validity(scene: &TwoParticleScene) {
    for w in scene.validity_warnings() {
        let text = match w {
            ValidityWarning::RadiusNotSmallComparedToSeparation {
                particle,
                radius,
                separation,
            } => {
                format!("particle {particle}: R = {radius:e} m is not below d/4 (d = {separation:e} m)")
            }
            ValidityWarning::RadiusExceedsSkinDepth {
                particle,
                radius,
                skin_depth,
            } => {
                format!("particle {particle}: R = {radius:e} m exceeds the skin depth {skin_depth:e} m")
            }
            ValidityWarning::RadiusNotSmallComparedToThermalWavelength {
                particle,
                radius,
                wavelength,
            } => {
                format!("particle {particle}: R = {radius:e} m is not below lambda_T/10 (lambda_T = {wavelength:e} m)")
            }
        };
        eprintln!("warning: {text}");
    }
}
