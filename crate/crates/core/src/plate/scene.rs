use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::materials::{ParticleMaterial, PlateMaterial, PolarizabilityEntries};
use crate::spectral::{OmegaHints, Resonance};

/// Sphere above the plate: material and radius `R` (m).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlateParticle {
    pub material: ParticleMaterial,
    #[serde(rename = "R")]
    pub radius: f64,
}

/// Plate below `z = 0`, particle center at height `d`, field along x, force along y.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PlateSceneDocument", into = "PlateSceneDocument")]
pub struct PlateScene {
    pub plate: PlateMaterial,
    pub particle: PlateParticle,
    /// Plate surface to particle center, m.
    pub distance: f64,
    /// Plate temperature, K.
    pub plate_temperature: f64,
    /// Particle temperature, K.
    pub particle_temperature: f64,
    pub environment_temperature: f64,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlateSceneDocument {
    plate: PlateMaterial,
    particle: PlateParticle,
    d: f64,
    #[serde(rename = "T1")]
    t1: f64,
    #[serde(rename = "T2")]
    t2: f64,
    #[serde(rename = "Tenv")]
    t_env: f64,
}

impl TryFrom<PlateSceneDocument> for PlateScene {
    type Error = Error;
    fn try_from(doc: PlateSceneDocument) -> Result<Self> {
        Self::new(doc.plate, doc.particle, doc.d, [doc.t1, doc.t2, doc.t_env])
    }
}

impl From<PlateScene> for PlateSceneDocument {
    fn from(s: PlateScene) -> Self {
        Self {
            plate: s.plate,
            particle: s.particle,
            d: s.distance,
            t1: s.plate_temperature,
            t2: s.particle_temperature,
            t_env: s.environment_temperature,
        }
    }
}

/// Imaginary parts of the entries that drive the lateral force, m³.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct GyrotropicLoss {
    pub alpha_f: f64,
    pub alpha_s: f64,
}

impl PlateScene {
    /// Temperatures are `[T1 (plate), T2 (particle), Tenv]`.
    pub fn new(plate: PlateMaterial, particle: PlateParticle, distance: f64, temperatures: [f64; 3]) -> Result<Self> {
        plate.validate()?;
        particle.material.validate()?;
        if !(particle.radius > 0.0 && particle.radius.is_finite()) {
            return Err(Error::InvalidScene(format!(
                "particle.R must be positive, got {}",
                particle.radius
            )));
        }
        if !(distance > particle.radius && distance.is_finite()) {
            return Err(Error::InvalidScene(format!(
                "d = {distance:e} m must exceed R = {:e} m",
                particle.radius
            )));
        }
        for (name, t) in ["T1", "T2", "Tenv"].iter().zip(temperatures) {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(Error::InvalidScene(format!("{name} must be non-negative, got {t}")));
            }
        }
        let [plate_temperature, particle_temperature, environment_temperature] = temperatures;
        Ok(Self {
            plate,
            particle,
            distance,
            plate_temperature,
            particle_temperature,
            environment_temperature,
        })
    }

    pub fn with_distance(&self, distance: f64) -> Result<Self> {
        Self::new(self.plate, self.particle, distance, self.temperatures())
    }

    pub fn with_temperatures(&self, temperatures: [f64; 3]) -> Result<Self> {
        Self::new(self.plate, self.particle, self.distance, temperatures)
    }

    pub fn with_field(&self, field: f64) -> Self {
        let mut s = *self;
        s.particle.material = s.particle.material.with_field(field);
        s
    }

    pub fn temperatures(&self) -> [f64; 3] {
        [
            self.plate_temperature,
            self.particle_temperature,
            self.environment_temperature,
        ]
    }

    pub fn polarizability(&self, omega: f64) -> Result<PolarizabilityEntries> {
        self.particle.material.polarizability(omega, self.particle.radius)
    }

    pub fn resonances(&self) -> Vec<Resonance> {
        let mut r = self.plate.resonances();
        r.extend(self.particle.material.resonances());
        r
    }

    pub fn omega_hints(&self) -> OmegaHints {
        OmegaHints {
            resonances: self.resonances(),
            oscillation_distance: Some(self.distance),
        }
    }
}
