//! Dielectric models, polarizabilities and the Fresnel coefficient of a plate.

mod fresnel;
mod permittivity;
mod polarizability;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use fresnel::{fresnel_rn, sqrt_decaying};
pub(crate) use fresnel::{fresnel_rn_evanescent, fresnel_rn_propagating};
pub use permittivity::{
    eps_magneto, eps_plate, skin_depth, tensor_skin_depth, DrudeMagnetoModel, LorentzModel, LorentzPlateModel,
    PermittivityEntries, UniaxialLorentzModel,
};
pub use polarizability::{
    alpha_matrix, eps_to_alpha, passivity_check, passivity_check_with_tolerance, DeltaToyModel, FixedAlphaModel,
    PassivityReport, PolarizabilityEntries, PASSIVITY_TOLERANCE,
};

use crate::error::{Error, Result};
use crate::spectral::Resonance;
use crate::tensor::check_frequency;

/// Material of a small particle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ParticleMaterial {
    DrudeMagneto(DrudeMagnetoModel),
    UniaxialLorentz(UniaxialLorentzModel),
    FixedAlpha(FixedAlphaModel),
    DeltaToy(DeltaToyModel),
}

impl ParticleMaterial {
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::DrudeMagneto(m) => m.validate(),
            Self::UniaxialLorentz(m) => m.validate(),
            Self::FixedAlpha(_) => Ok(()),
            Self::DeltaToy(m) => {
                if m.omega0 > 0.0 && m.omega0.is_finite() && m.alpha0.is_finite() {
                    Ok(())
                } else {
                    Err(Error::InvalidScene(format!(
                        "delta_toy requires finite alpha0 and omega0 > 0: {m:?}"
                    )))
                }
            }
        }
    }

    /// Permittivity entries, when the material is described by a permittivity.
    pub fn permittivity(&self, omega: f64) -> Result<Option<PermittivityEntries>> {
        match self {
            Self::DrudeMagneto(m) => eps_magneto(m, omega).map(Some),
            Self::UniaxialLorentz(m) => m.permittivity(omega).map(Some),
            Self::FixedAlpha(_) | Self::DeltaToy(_) => Ok(None),
        }
    }

    pub fn polarizability(&self, omega: f64, radius: f64) -> Result<PolarizabilityEntries> {
        check_frequency(omega)?;
        let from_eps = |eps: PermittivityEntries| {
            eps_to_alpha(&eps, radius).map_err(|e| match e {
                Error::ResonantDenominator { .. } => Error::ResonantDenominator { omega: Some(omega) },
                other => other,
            })
        };
        match self {
            Self::DrudeMagneto(m) => from_eps(eps_magneto(m, omega)?),
            Self::UniaxialLorentz(m) => from_eps(m.permittivity(omega)?),
            Self::FixedAlpha(m) => Ok(m.polarizability(radius)),
            Self::DeltaToy(_) => Err(Error::UnsupportedMaterial(
                "delta_toy has no pointwise polarizability; use the mirror toy force".into(),
            )),
        }
    }

    pub fn resonances(&self) -> Vec<Resonance> {
        match self {
            Self::DrudeMagneto(m) => m.resonances(),
            Self::UniaxialLorentz(m) => m.resonances(),
            Self::FixedAlpha(_) => Vec::new(),
            Self::DeltaToy(m) => vec![Resonance::new(m.omega0, 1e-6 * m.omega0)],
        }
    }

    /// Magnetic field in tesla, for field-dependent materials.
    pub fn field(&self) -> Option<f64> {
        match self {
            Self::DrudeMagneto(m) => Some(m.field),
            _ => None,
        }
    }

    /// Copy with the field replaced; materials without a field are returned unchanged.
    pub fn with_field(&self, field: f64) -> Self {
        match self {
            Self::DrudeMagneto(m) => Self::DrudeMagneto(m.with_field(field)),
            other => *other,
        }
    }
}

/// Material of the half-space below a particle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PlateMaterial {
    Lorentz(LorentzModel),
    PerfectConductor,
}

impl PlateMaterial {
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Lorentz(m) => m.validate(),
            Self::PerfectConductor => Ok(()),
        }
    }

    /// Permittivity of a dielectric plate; `None` for the perfect conductor.
    pub fn permittivity(&self, omega: f64) -> Option<Complex64> {
        match self {
            Self::Lorentz(m) => Some(m.permittivity(omega)),
            Self::PerfectConductor => None,
        }
    }

    pub fn resonances(&self) -> Vec<Resonance> {
        match self {
            Self::Lorentz(m) => m.resonances(),
            Self::PerfectConductor => Vec::new(),
        }
    }
}
