use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

use super::kernels::{plate_kernels, static_reflection, PlateKernels};
use super::scene::{GyrotropicLoss, PlateParticle, PlateScene};
use crate::constants::{SPEED_OF_LIGHT, STANDARD_GRAVITY};
use crate::error::{Error, Result};
use crate::materials::{ParticleMaterial, PlateMaterial};
use crate::spectral::{integrate_omega_try, planck_theta, OmegaHints, QuadratureConfig, SpectralCurve, SpectralKind};

/// Integrates a density that is linear in `Im α`; a delta-line particle collapses the ω integral.
pub(crate) fn integrate_loss<const N: usize, F>(
    particle: &PlateParticle,
    t_scale: f64,
    cfg: &QuadratureConfig,
    hints: &OmegaHints,
    density: F,
) -> Result<[f64; N]>
where
    F: Fn(f64, GyrotropicLoss) -> Result<[f64; N]> + Sync,
{
    if let ParticleMaterial::DeltaToy(toy) = particle.material {
        let line = GyrotropicLoss {
            alpha_f: toy.alpha0,
            alpha_s: 0.0,
        };
        return density(toy.omega0, line);
    }
    integrate_omega_try(
        |omega| {
            let alpha = particle.material.polarizability(omega, particle.radius)?;
            density(
                omega,
                GyrotropicLoss {
                    alpha_f: alpha.alpha_f.im,
                    alpha_s: alpha.alpha_s.im,
                },
            )
        },
        t_scale,
        cfg,
        hints,
    )
}

/// Lateral force per unit Θ and ω, N·s/(rad·J).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ForceDensities {
    pub self_force: f64,
    pub interaction_evanescent: f64,
    pub interaction_propagating: f64,
}

impl ForceDensities {
    pub fn from_kernels(omega: f64, kernels: &PlateKernels, loss: GyrotropicLoss) -> Self {
        let w = 4.0 / omega;
        Self {
            self_force: -w * loss.alpha_f * kernels.reflected,
            interaction_evanescent: w * loss.alpha_f * kernels.evanescent,
            interaction_propagating: -w * loss.alpha_s * kernels.propagating,
        }
    }

    pub fn interaction(&self) -> f64 {
        self.interaction_evanescent + self.interaction_propagating
    }
}

pub fn force_densities(scene: &PlateScene, omega: f64, cfg: &QuadratureConfig) -> Result<ForceDensities> {
    let alpha = scene.polarizability(omega)?;
    let kernels = plate_kernels(&scene.plate, omega, scene.distance, cfg)?;
    let loss = GyrotropicLoss {
        alpha_f: alpha.alpha_f.im,
        alpha_s: alpha.alpha_s.im,
    };
    Ok(ForceDensities::from_kernels(omega, &kernels, loss))
}

/// Force from fluctuations inside the particle at temperature `temperature`, N.
pub fn self_force(scene: &PlateScene, temperature: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let [f] = integrate_loss(
        &scene.particle,
        temperature,
        cfg,
        &scene.omega_hints(),
        |omega, loss| {
            let kernels = plate_kernels(&scene.plate, omega, scene.distance, cfg)?;
            Ok([planck_theta(omega, temperature) * ForceDensities::from_kernels(omega, &kernels, loss).self_force])
        },
    )?;
    Ok(f)
}

/// Force from fluctuations inside the plate, split by branch, N.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct InteractionForce {
    pub evanescent: f64,
    pub propagating: f64,
    pub total: f64,
}

pub fn interaction_force(scene: &PlateScene, temperature: f64, cfg: &QuadratureConfig) -> Result<InteractionForce> {
    let [evanescent, propagating] = integrate_loss(
        &scene.particle,
        temperature,
        cfg,
        &scene.omega_hints(),
        |omega, loss| {
            let kernels = plate_kernels(&scene.plate, omega, scene.distance, cfg)?;
            let f = ForceDensities::from_kernels(omega, &kernels, loss);
            let theta = planck_theta(omega, temperature);
            Ok([theta * f.interaction_evanescent, theta * f.interaction_propagating])
        },
    )?;
    Ok(InteractionForce {
        evanescent,
        propagating,
        total: evanescent + propagating,
    })
}

/// Spectral forces at the scene temperatures, N·s/rad.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ForceSpectra {
    pub self_force: SpectralCurve,
    pub interaction: SpectralCurve,
    pub env_self: SpectralCurve,
    pub env_interaction: SpectralCurve,
}

/// Lateral force `F = F_self(T2) + F_int(T1) − F_self(Tenv) − F_int(Tenv)`, N.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ForceBreakdown {
    #[serde(rename = "self")]
    pub self_force: f64,
    pub interaction: f64,
    pub env_self: f64,
    pub env_interaction: f64,
    pub total: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectra: Option<ForceSpectra>,
}

impl ForceBreakdown {
    pub fn assemble(self_force: f64, interaction: f64, env_self: f64, env_interaction: f64) -> Self {
        Self {
            self_force,
            interaction,
            env_self,
            env_interaction,
            total: (self_force + interaction) - (env_self + env_interaction),
            spectra: None,
        }
    }
}

fn max_temperature(scene: &PlateScene) -> f64 {
    scene.temperatures().into_iter().fold(0.0, f64::max)
}

pub fn total_force(scene: &PlateScene, cfg: &QuadratureConfig) -> Result<ForceBreakdown> {
    let [t1, t2, t_env] = scene.temperatures();
    let [own, plate, env_own, env_plate] = integrate_loss(
        &scene.particle,
        max_temperature(scene),
        cfg,
        &scene.omega_hints(),
        |omega, loss| {
            let kernels = plate_kernels(&scene.plate, omega, scene.distance, cfg)?;
            let f = ForceDensities::from_kernels(omega, &kernels, loss);
            let env = planck_theta(omega, t_env);
            Ok([
                planck_theta(omega, t2) * f.self_force,
                planck_theta(omega, t1) * f.interaction(),
                env * f.self_force,
                env * f.interaction(),
            ])
        },
    )?;
    Ok(ForceBreakdown::assemble(own, plate, env_own, env_plate))
}

/// [`total_force`] together with the four spectra on `omega_grid`.
pub fn total_force_with_spectra(
    scene: &PlateScene,
    cfg: &QuadratureConfig,
    omega_grid: Vec<f64>,
) -> Result<ForceBreakdown> {
    let [t1, t2, t_env] = scene.temperatures();
    let densities = omega_grid
        .par_iter()
        .map(|&omega| force_densities(scene, omega, cfg))
        .collect::<Result<Vec<_>>>()?;
    let curve = |pick: &dyn Fn(&ForceDensities) -> f64, t: f64| SpectralCurve {
        omega_grid: omega_grid.clone(),
        density: omega_grid
            .iter()
            .zip(&densities)
            .map(|(&w, f)| planck_theta(w, t) * pick(f))
            .collect(),
        kind: SpectralKind::Force,
    };
    let spectra = ForceSpectra {
        self_force: curve(&|f| f.self_force, t2),
        interaction: curve(&|f| f.interaction(), t1),
        env_self: curve(&|f| f.self_force, t_env),
        env_interaction: curve(&|f| f.interaction(), t_env),
    };
    let mut breakdown = total_force(scene, cfg)?;
    breakdown.spectra = Some(spectra);
    Ok(breakdown)
}

pub fn self_force_spectrum(
    scene: &PlateScene,
    temperature: f64,
    omega_grid: Vec<f64>,
    cfg: &QuadratureConfig,
) -> Result<SpectralCurve> {
    SpectralCurve::tabulate(omega_grid, SpectralKind::Force, |omega| {
        Ok(planck_theta(omega, temperature) * force_densities(scene, omega, cfg)?.self_force)
    })
}

pub fn interaction_force_spectrum(
    scene: &PlateScene,
    temperature: f64,
    omega_grid: Vec<f64>,
    cfg: &QuadratureConfig,
) -> Result<SpectralCurve> {
    SpectralCurve::tabulate(omega_grid, SpectralKind::Force, |omega| {
        Ok(planck_theta(omega, temperature) * force_densities(scene, omega, cfg)?.interaction())
    })
}

/// Near-field self force density per unit Θ: `−(3/4πd⁴ω)·Im β·Im αf`.
pub fn self_force_near_field_density(plate: &PlateMaterial, omega: f64, distance: f64, loss: GyrotropicLoss) -> f64 {
    -3.0 / (4.0 * PI * distance.powi(4) * omega) * static_reflection(plate, omega).im * loss.alpha_f
}

fn require_dielectric(plate: &PlateMaterial) -> Result<()> {
    match plate {
        PlateMaterial::PerfectConductor => Err(Error::UnsupportedMaterial(
            "the near-field plate forms need a dielectric plate; use the mirror forms".into(),
        )),
        PlateMaterial::Lorentz(_) => Ok(()),
    }
}

/// Self force in the `d ≪ λ` limit, N.
pub fn self_force_near_field(scene: &PlateScene, temperature: f64, cfg: &QuadratureConfig) -> Result<f64> {
    require_dielectric(&scene.plate)?;
    let [f] = integrate_loss(
        &scene.particle,
        temperature,
        cfg,
        &scene.omega_hints(),
        |omega, loss| {
            let density = self_force_near_field_density(&scene.plate, omega, scene.distance, loss);
            Ok([planck_theta(omega, temperature) * density])
        },
    )?;
    Ok(f)
}

/// Interaction force in the `d ≪ λ` limit; the opposite of the near-field self force, N.
pub fn interaction_force_near_field(scene: &PlateScene, temperature: f64, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(-self_force_near_field(scene, temperature, cfg)?)
}

pub fn total_force_near_field(scene: &PlateScene, cfg: &QuadratureConfig) -> Result<ForceBreakdown> {
    require_dielectric(&scene.plate)?;
    let [t1, t2, t_env] = scene.temperatures();
    let [own, plate, env] = integrate_loss(
        &scene.particle,
        max_temperature(scene),
        cfg,
        &scene.omega_hints(),
        |omega, loss| {
            let f = self_force_near_field_density(&scene.plate, omega, scene.distance, loss);
            Ok([
                planck_theta(omega, t2) * f,
                -planck_theta(omega, t1) * f,
                planck_theta(omega, t_env) * f,
            ])
        },
    )?;
    Ok(ForceBreakdown::assemble(own, plate, env, -env))
}

/// Near-field emission of the particle into the plate per unit Θ: `Im β·Im(αp + 3αd)/(4πd³)`, W·s/(rad·J).
pub fn plate_nf_emission_density(scene: &PlateScene, omega: f64) -> Result<f64> {
    let alpha = scene.polarizability(omega)?;
    Ok(
        static_reflection(&scene.plate, omega).im * (alpha.alpha_p.im + 3.0 * alpha.alpha_d.im)
            / (4.0 * PI * scene.distance.powi(3)),
    )
}

/// Near-field heat exchanged with the plate by a particle at `temperature`, W.
pub fn plate_nf_emission(scene: &PlateScene, temperature: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let [h] = integrate_omega_try(
        |omega| Ok([planck_theta(omega, temperature) * plate_nf_emission_density(scene, omega)?]),
        temperature,
        cfg,
        &scene.omega_hints(),
    )?;
    Ok(h)
}

/// Weight `ρ·(4π/3)R³·g` of a sphere, N.
pub fn gravity_force(radius: f64, density: f64) -> f64 {
    density * 4.0 * PI / 3.0 * radius.powi(3) * STANDARD_GRAVITY
}

/// Mirror self force: the reflected kernel with `rᴺ = 1`, N.
pub fn mirror_self_force(
    distance: f64,
    particle: &PlateParticle,
    temperature: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let scene = PlateScene::new(
        PlateMaterial::PerfectConductor,
        *particle,
        distance,
        [0.0, temperature, 0.0],
    )?;
    self_force(&scene, temperature, cfg)
}

/// Small-distance mirror force `−(8/15π)·d·∫(dω/ω)Θ·(ω/c)⁵·Im αf`, N.
pub fn mirror_self_force_near_field(
    distance: f64,
    particle: &PlateParticle,
    temperature: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let hints = OmegaHints {
        resonances: particle.material.resonances(),
        oscillation_distance: None,
    };
    let [f] = integrate_loss(particle, temperature, cfg, &hints, |omega, loss| {
        let k = omega / SPEED_OF_LIGHT;
        Ok([planck_theta(omega, temperature) / omega * k.powi(5) * loss.alpha_f])
    })?;
    Ok(-8.0 / (15.0 * PI) * distance * f)
}

/// Large-distance mirror force `(1/πd²)·∫(dω/ω)Θ·(ω/c)²·Im αf·sin(2ωd/c)`, N.
pub fn mirror_self_force_far_field(
    distance: f64,
    particle: &PlateParticle,
    temperature: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let hints = OmegaHints {
        resonances: particle.material.resonances(),
        oscillation_distance: Some(distance),
    };
    let [f] = integrate_loss(particle, temperature, cfg, &hints, |omega, loss| {
        let k = omega / SPEED_OF_LIGHT;
        Ok([planck_theta(omega, temperature) / omega * k * k * (2.0 * k * distance).sin() * loss.alpha_f])
    })?;
    Ok(f / (PI * distance * distance))
}
