//! Per-frequency check `|f(ω)|·c ≤ h(ω)·(c/ω)·k_y^max` between lateral force and near-field heat exchange.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::Write;

use crate::constants::SPEED_OF_LIGHT;
use crate::error::Result;
use crate::materials::{fresnel_rn_evanescent, ParticleMaterial, PlateMaterial};
use crate::plate::{force_densities, plate_nf_emission_density, PlateScene};
use crate::spectral::{planck_theta, QuadratureConfig};

/// Violations smaller than this fraction of the largest right-hand side are ignored.
pub const BOUND_RELATIVE_TOLERANCE: f64 = 1e-3;

/// Largest lateral wavenumber carried by the exchanged modes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum KyMax {
    /// `1/d`, the near-field choice.
    #[default]
    InverseDistance,
    /// `ω/c`, the far-field alternative.
    LightLine,
    /// A fixed value, rad/m.
    Fixed(f64),
}

impl KyMax {
    pub fn at(&self, omega: f64, distance: f64) -> f64 {
        match self {
            Self::InverseDistance => 1.0 / distance,
            Self::LightLine => omega / SPEED_OF_LIGHT,
            Self::Fixed(k) => *k,
        }
    }
}

/// Which force is bounded by which heat flow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundChannel {
    /// Self force against self emission of the particle.
    SelfForce,
    /// Interaction force against transfer from the plate.
    Interaction,
}

/// Aligned per-frequency arrays of both sides of the bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub channel: BoundChannel,
    pub ky_max: KyMax,
    pub temperature: f64,
    pub omega_grid: Vec<f64>,
    /// `|f(ω)|·c`, J/rad.
    pub lhs: Vec<f64>,
    /// `h(ω)·(c/ω)·k_y^max`, J/rad.
    pub rhs: Vec<f64>,
    pub margin: Vec<f64>,
    pub violated: Vec<bool>,
    /// `BOUND_RELATIVE_TOLERANCE·max(rhs)`.
    pub abs_tol: f64,
}

impl BoundReport {
    fn from_sides(
        channel: BoundChannel,
        ky_max: KyMax,
        temperature: f64,
        omega_grid: Vec<f64>,
        sides: Vec<(f64, f64)>,
    ) -> Self {
        let (lhs, rhs): (Vec<f64>, Vec<f64>) = sides.into_iter().unzip();
        let abs_tol = BOUND_RELATIVE_TOLERANCE * rhs.iter().copied().fold(0.0, f64::max);
        let margin: Vec<f64> = rhs.iter().zip(&lhs).map(|(r, l)| r - l).collect();
        let violated = margin.iter().map(|m| *m < -abs_tol).collect();
        Self {
            channel,
            ky_max,
            temperature,
            omega_grid,
            lhs,
            rhs,
            margin,
            violated,
            abs_tol,
        }
    }

    pub fn violation_count(&self) -> usize {
        self.violated.iter().filter(|v| **v).count()
    }

    pub fn holds(&self) -> bool {
        self.violation_count() == 0
    }

    /// Smallest `margin/rhs` over points with a nonzero right-hand side.
    pub fn min_relative_margin(&self) -> Option<f64> {
        self.margin
            .iter()
            .zip(&self.rhs)
            .filter(|(_, r)| **r > 0.0)
            .map(|(m, r)| m / r)
            .reduce(f64::min)
    }

    /// CSV with the columns `omega, lhs, rhs, margin, violated`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(
            out,
            "omega [rad/s],lhs [J/rad],rhs [J/rad],margin [J/rad],violated [bool]"
        )?;
        for i in 0..self.omega_grid.len() {
            writeln!(
                out,
                "{:e},{:e},{:e},{:e},{}",
                self.omega_grid[i], self.lhs[i], self.rhs[i], self.margin[i], self.violated[i]
            )?;
        }
        Ok(())
    }
}

fn check_bound(
    scene: &PlateScene,
    temperature: f64,
    ky_max: KyMax,
    omega_grid: Vec<f64>,
    cfg: &QuadratureConfig,
    channel: BoundChannel,
) -> Result<BoundReport> {
    let sides = omega_grid
        .par_iter()
        .map(|&omega| {
            let theta = planck_theta(omega, temperature);
            if theta == 0.0 {
                return Ok((0.0, 0.0));
            }
            let f = force_densities(scene, omega, cfg)?;
            let force = match channel {
                BoundChannel::SelfForce => f.self_force,
                BoundChannel::Interaction => f.interaction(),
            };
            let heat = theta * plate_nf_emission_density(scene, omega)?;
            let lhs = (theta * force).abs() * SPEED_OF_LIGHT;
            let rhs = heat * SPEED_OF_LIGHT / omega * ky_max.at(omega, scene.distance);
            Ok((lhs, rhs))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundReport::from_sides(channel, ky_max, temperature, omega_grid, sides))
}

/// Spectral self force of the particle at `temperature` against its near-field emission into the plate.
pub fn check_bound_self(
    scene: &PlateScene,
    temperature: f64,
    ky_max: KyMax,
    omega_grid: Vec<f64>,
    cfg: &QuadratureConfig,
) -> Result<BoundReport> {
    check_bound(scene, temperature, ky_max, omega_grid, cfg, BoundChannel::SelfForce)
}

/// Spectral interaction force from the plate at `temperature` against the near-field transfer it sends.
pub fn check_bound_interaction(
    scene: &PlateScene,
    temperature: f64,
    ky_max: KyMax,
    omega_grid: Vec<f64>,
    cfg: &QuadratureConfig,
) -> Result<BoundReport> {
    check_bound(scene, temperature, ky_max, omega_grid, cfg, BoundChannel::Interaction)
}

/// Smallest `(Im αd − |Im αf|)/Im αd` on `omega_grid`; non-negative when the passivity step holds.
pub fn gyrotropic_passivity_margin(material: &ParticleMaterial, radius: f64, omega_grid: &[f64]) -> Result<f64> {
    let mut worst = f64::INFINITY;
    for &omega in omega_grid {
        let a = material.polarizability(omega, radius)?;
        let diagonal = a.alpha_d.im;
        let slack = diagonal - a.alpha_f.im.abs();
        worst = worst.min(if diagonal > 0.0 { slack / diagonal } else { slack });
    }
    Ok(worst)
}

/// Evanescent heat integrand `k⊥³·e^{−2κd}·Im rᴺ` at decay constant `kappa`; non-negative for a passive plate.
pub fn evanescent_heat_integrand(plate: &PlateMaterial, omega: f64, kappa: f64, distance: f64) -> f64 {
    let k0 = omega / SPEED_OF_LIGHT;
    let k_perp = (k0 * k0 + kappa * kappa).sqrt();
    let reflection = match plate.permittivity(omega) {
        Some(eps) => fresnel_rn_evanescent(k0, kappa, eps).im,
        None => 0.0,
    };
    k_perp.powi(3) * (-2.0 * kappa * distance).exp() * reflection
}
