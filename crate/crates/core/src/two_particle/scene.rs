use serde::{Deserialize, Serialize};

use crate::constants::{BOLTZMANN, HBAR};
use crate::error::{Error, Result};
use crate::materials::{tensor_skin_depth, ParticleMaterial, PolarizabilityEntries};
use crate::spectral::{thermal_wavelength, OmegaHints, Resonance};
use crate::tensor::Vec3;

/// A small sphere: material, radius `R` (m) and temperature `T` (K).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParticleSpec {
    pub material: ParticleMaterial,
    #[serde(rename = "R")]
    pub radius: f64,
    #[serde(rename = "T")]
    pub temperature: f64,
}

impl ParticleSpec {
    pub fn new(material: ParticleMaterial, radius: f64, temperature: f64) -> Self {
        Self {
            material,
            radius,
            temperature,
        }
    }

    pub fn validate(&self, label: &str) -> Result<()> {
        self.material.validate()?;
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::InvalidScene(format!(
                "{label}.R must be positive, got {}",
                self.radius
            )));
        }
        if !(self.temperature >= 0.0 && self.temperature.is_finite()) {
            return Err(Error::InvalidScene(format!(
                "{label}.T must be non-negative, got {}",
                self.temperature
            )));
        }
        Ok(())
    }

    pub fn polarizability(&self, omega: f64) -> Result<PolarizabilityEntries> {
        self.material.polarizability(omega, self.radius)
    }
}

/// Cylindrical coordinates about the field axis x: `(x, r·cosφ, r·sinφ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CylindricalPosition {
    pub r: f64,
    pub phi: f64,
    pub x: f64,
}

impl CylindricalPosition {
    /// On the field axis at distance `d`.
    pub fn parallel(d: f64) -> Self {
        Self { r: 0.0, phi: 0.0, x: d }
    }

    /// In the plane normal to the field at distance `d` and azimuth `phi`.
    pub fn perpendicular(d: f64, phi: f64) -> Self {
        Self { r: d, phi, x: 0.0 }
    }

    pub fn distance(&self) -> f64 {
        self.r.hypot(self.x)
    }

    pub fn to_cartesian(&self) -> Vec3 {
        let (s, c) = self.phi.sin_cos();
        Vec3::new(self.x, self.r * c, self.r * s)
    }

    /// Position seen from the other particle.
    pub fn inverted(&self) -> Self {
        Self {
            r: self.r,
            phi: self.phi + std::f64::consts::PI,
            x: -self.x,
        }
    }

    /// Same direction at a new distance.
    pub fn with_distance(&self, d: f64) -> Self {
        let s = d / self.distance();
        Self {
            r: self.r * s,
            phi: self.phi,
            x: self.x * s,
        }
    }
}

/// Relative placement used by the closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// Separation along the field.
    Parallel,
    /// Separation normal to the field.
    Perpendicular,
}

impl Orientation {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Parallel => "parallel",
            Self::Perpendicular => "perpendicular",
        }
    }
}

/// A point-particle validity condition that fails for a scene.
#[derive(Clone, Debug, PartialEq)]
pub enum ValidityWarning {
    RadiusNotSmallComparedToSeparation { particle: u8, radius: f64, separation: f64 },
    RadiusExceedsSkinDepth { particle: u8, radius: f64, skin_depth: f64 },
    RadiusNotSmallComparedToThermalWavelength { particle: u8, radius: f64, wavelength: f64 },
}

/// Particle 1 at the origin, particle 2 at `position`; the field points along x.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SceneDocument", into = "SceneDocument")]
pub struct TwoParticleScene {
    pub particle1: ParticleSpec,
    pub particle2: ParticleSpec,
    pub position: CylindricalPosition,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PositionedParticle {
    material: ParticleMaterial,
    #[serde(rename = "R")]
    radius: f64,
    #[serde(rename = "T")]
    temperature: f64,
    position: CylindricalPosition,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SceneDocument {
    particle1: ParticleSpec,
    particle2: PositionedParticle,
}

impl TryFrom<SceneDocument> for TwoParticleScene {
    type Error = Error;
    fn try_from(doc: SceneDocument) -> Result<Self> {
        let p2 = doc.particle2;
        Self::new(
            doc.particle1,
            ParticleSpec::new(p2.material, p2.radius, p2.temperature),
            p2.position,
        )
    }
}

impl From<TwoParticleScene> for SceneDocument {
    fn from(s: TwoParticleScene) -> Self {
        Self {
            particle1: s.particle1,
            particle2: PositionedParticle {
                material: s.particle2.material,
                radius: s.particle2.radius,
                temperature: s.particle2.temperature,
                position: s.position,
            },
        }
    }
}

impl TwoParticleScene {
    pub fn new(particle1: ParticleSpec, particle2: ParticleSpec, position: CylindricalPosition) -> Result<Self> {
        particle1.validate("particle1")?;
        particle2.validate("particle2")?;
        let d = position.distance();
        if ![position.r, position.phi, position.x].iter().all(|v| v.is_finite()) || position.r < 0.0 {
            return Err(Error::InvalidScene(format!(
                "particle2.position must be finite with r >= 0: {position:?}"
            )));
        }
        if !(d > particle1.radius + particle2.radius) {
            return Err(Error::InvalidScene(format!(
                "separation {d:e} m must exceed R1 + R2 = {:e} m",
                particle1.radius + particle2.radius
            )));
        }
        Ok(Self {
            particle1,
            particle2,
            position,
        })
    }

    pub fn separation(&self) -> f64 {
        self.position.distance()
    }

    pub fn particle2_location(&self) -> Vec3 {
        self.position.to_cartesian()
    }

    pub fn polarizabilities(&self, omega: f64) -> Result<(PolarizabilityEntries, PolarizabilityEntries)> {
        Ok((
            self.particle1.polarizability(omega)?,
            self.particle2.polarizability(omega)?,
        ))
    }

    /// Particles exchanged; the geometry is seen from the former particle 2.
    pub fn swapped(&self) -> Self {
        Self {
            particle1: self.particle2,
            particle2: self.particle1,
            position: self.position.inverted(),
        }
    }

    /// Both particles in field `field` (tesla).
    pub fn with_field(&self, field: f64) -> Self {
        let mut s = *self;
        s.particle1.material = s.particle1.material.with_field(field);
        s.particle2.material = s.particle2.material.with_field(field);
        s
    }

    /// Field direction reversed for both particles.
    pub fn with_reversed_field(&self) -> Self {
        let mut s = *self;
        for p in [&mut s.particle1, &mut s.particle2] {
            if let Some(b) = p.material.field() {
                p.material = p.material.with_field(-b);
            }
        }
        s
    }

    pub fn with_position(&self, position: CylindricalPosition) -> Result<Self> {
        Self::new(self.particle1, self.particle2, position)
    }

    pub fn resonances(&self) -> Vec<Resonance> {
        let mut r = self.particle1.material.resonances();
        r.extend(self.particle2.material.resonances());
        r
    }

    pub fn omega_hints(&self) -> OmegaHints {
        OmegaHints {
            resonances: self.resonances(),
            oscillation_distance: Some(self.separation()),
        }
    }

    /// Checks `R < d/4`, `R` below the skin depth in the thermal band, and `R < λ_T/10`.
    pub fn validity_warnings(&self) -> Vec<ValidityWarning> {
        let d = self.separation();
        let mut out = Vec::new();
        for (label, p) in [(1u8, &self.particle1), (2u8, &self.particle2)] {
            if p.radius >= d / 4.0 {
                out.push(ValidityWarning::RadiusNotSmallComparedToSeparation {
                    particle: label,
                    radius: p.radius,
                    separation: d,
                });
            }
            let wavelength = thermal_wavelength(p.temperature);
            if p.radius >= wavelength / 10.0 {
                out.push(ValidityWarning::RadiusNotSmallComparedToThermalWavelength {
                    particle: label,
                    radius: p.radius,
                    wavelength,
                });
            }
            if let Some(delta) = thermal_band_skin_depth(&p.material, p.temperature) {
                if p.radius >= delta {
                    out.push(ValidityWarning::RadiusExceedsSkinDepth {
                        particle: label,
                        radius: p.radius,
                        skin_depth: delta,
                    });
                }
            }
        }
        out
    }
}

/// Smallest tensor skin depth on `[0.1, 10]·k_B·T/ħ`, sampled at 200 log-spaced points.
pub fn thermal_band_skin_depth(material: &ParticleMaterial, temperature: f64) -> Option<f64> {
    if temperature <= 0.0 {
        return None;
    }
    let center = BOLTZMANN * temperature / HBAR;
    let mut smallest: Option<f64> = None;
    for i in 0..200 {
        let omega = center * 10f64.powf(-1.0 + 2.0 * i as f64 / 199.0);
        let eps = material.permittivity(omega).ok().flatten()?;
        let delta = tensor_skin_depth(omega, &eps);
        smallest = Some(smallest.map_or(delta, |s: f64| s.min(delta)));
    }
    smallest
}
