use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::fresnel::sqrt_decaying;
use crate::constants::SPEED_OF_LIGHT;
use crate::error::{Error, Result};
use crate::spectral::Resonance;
use crate::tensor::{check_frequency, CMat3};

/// Entries of the gyrotropic permittivity tensor with the static field along x.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PermittivityEntries {
    pub eps_p: Complex64,
    pub eps_d: Complex64,
    pub eps_s: Complex64,
    pub eps_f: Complex64,
}

impl PermittivityEntries {
    pub fn isotropic(eps: Complex64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Self {
            eps_p: eps,
            eps_d: eps,
            eps_s: zero,
            eps_f: zero,
        }
    }

    /// `[[εp,0,0],[0,εd,εs−iεf],[0,εs+iεf,εd]]`.
    pub fn matrix(&self) -> CMat3 {
        let i = Complex64::i();
        let zero = Complex64::new(0.0, 0.0);
        CMat3([
            [self.eps_p, zero, zero],
            [zero, self.eps_d, self.eps_s - i * self.eps_f],
            [zero, self.eps_s + i * self.eps_f, self.eps_d],
        ])
    }

    /// Eigen-permittivities of the yz block, `εd ± √(εs² + εf²)`.
    pub fn transverse_eigenvalues(&self) -> [Complex64; 2] {
        let split = (self.eps_s * self.eps_s + self.eps_f * self.eps_f).sqrt();
        [self.eps_d + split, self.eps_d - split]
    }
}

/// Drude response of a doped semiconductor in a static magnetic field along x.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DrudeMagnetoModel {
    pub eps_inf: f64,
    pub omega_p: f64,
    pub omega_tau: f64,
    #[serde(rename = "omega_B_per_T")]
    pub omega_b_per_tesla: f64,
    /// Field strength in tesla; the sign sets the direction along x.
    #[serde(rename = "B")]
    pub field: f64,
}

impl DrudeMagnetoModel {
    pub const INSB_EPS_INF: f64 = 15.7;
    pub const INSB_OMEGA_P: f64 = 7.4e14;
    pub const INSB_OMEGA_TAU: f64 = 6.3e12;
    pub const INSB_OMEGA_B_PER_TESLA: f64 = 2.2e12;

    /// n-doped InSb in a field of `field` tesla.
    pub fn insb(field: f64) -> Self {
        Self {
            eps_inf: Self::INSB_EPS_INF,
            omega_p: Self::INSB_OMEGA_P,
            omega_tau: Self::INSB_OMEGA_TAU,
            omega_b_per_tesla: Self::INSB_OMEGA_B_PER_TESLA,
            field,
        }
    }

    pub fn with_field(self, field: f64) -> Self {
        Self { field, ..self }
    }

    pub fn cyclotron_frequency(&self) -> f64 {
        self.omega_b_per_tesla * self.field
    }

    /// Frequency where `Re εp = −2` for vanishing damping.
    pub fn surface_frequency(&self) -> f64 {
        self.omega_p / (self.eps_inf + 2.0).sqrt()
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.eps_inf,
            self.omega_p,
            self.omega_tau,
            self.omega_b_per_tesla,
            self.field,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !finite || self.omega_p <= 0.0 || self.omega_tau <= 0.0 || self.eps_inf < 1.0 {
            return Err(Error::InvalidScene(format!(
                "drude_magneto requires finite values, omega_p > 0, omega_tau > 0, eps_inf >= 1: {self:?}"
            )));
        }
        Ok(())
    }

    pub fn resonances(&self) -> Vec<Resonance> {
        let wb = self.cyclotron_frequency().abs();
        let wsp = self.surface_frequency();
        let width = self.omega_tau;
        let mut out = vec![Resonance::new(wsp, width), Resonance::new(width, width)];
        if wb > 0.0 {
            let root = (wb * wb + 4.0 * wsp * wsp).sqrt();
            out.push(Resonance::new(0.5 * (root + wb), width));
            out.push(Resonance::new(0.5 * (root - wb), width));
            out.push(Resonance::new(wb, width));
        }
        out
    }
}

/// Evaluates the Drude magneto-optical entries; `εs = 0`.
pub fn eps_magneto(model: &DrudeMagnetoModel, omega: f64) -> Result<PermittivityEntries> {
    check_frequency(omega)?;
    let wb = model.cyclotron_frequency();
    let wp2 = model.omega_p * model.omega_p;
    let damped = Complex64::new(omega, model.omega_tau);
    let gyro_denominator = (damped * damped - wb * wb) * omega;
    Ok(PermittivityEntries {
        eps_p: model.eps_inf - wp2 / (damped * omega),
        eps_d: model.eps_inf - damped * wp2 / gyro_denominator,
        eps_s: Complex64::new(0.0, 0.0),
        eps_f: -(wb * wp2) / gyro_denominator,
    })
}

/// Single Lorentz oscillator `1 + C1·ω1²/(ω1² − ω² − iγ1ω)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LorentzModel {
    #[serde(rename = "C1")]
    pub strength: f64,
    #[serde(rename = "omega1")]
    pub omega_1: f64,
    #[serde(rename = "gamma1")]
    pub gamma_1: f64,
}

pub type LorentzPlateModel = LorentzModel;

impl LorentzModel {
    /// Plate parameters tuned so its surface mode overlaps the InSb particle resonance.
    pub const fn reference_plate() -> Self {
        Self {
            strength: 2.0,
            omega_1: 1.15e14,
            gamma_1: 7e10,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = [self.omega_1, self.gamma_1].iter().all(|v| v.is_finite() && *v > 0.0)
            && self.strength.is_finite()
            && self.strength >= 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidScene(format!(
                "lorentz requires finite C1 >= 0 and positive omega1, gamma1: {self:?}"
            )))
        }
    }

    pub fn permittivity(&self, omega: f64) -> Complex64 {
        let w1sq = self.omega_1 * self.omega_1;
        let denom = Complex64::new(w1sq - omega * omega, -self.gamma_1 * omega);
        1.0 + self.strength * w1sq / denom
    }

    /// Frequency where `Re ε = −1` for vanishing damping.
    pub fn surface_frequency(&self) -> f64 {
        self.omega_1 * (1.0 + 0.5 * self.strength).sqrt()
    }

    /// Frequency where `Re ε = −2` for vanishing damping.
    pub fn sphere_frequency(&self) -> f64 {
        self.omega_1 * (1.0 + self.strength / 3.0).sqrt()
    }

    pub fn longitudinal_frequency(&self) -> f64 {
        self.omega_1 * (1.0 + self.strength).sqrt()
    }

    pub fn resonances(&self) -> Vec<Resonance> {
        let w = 0.5 * self.gamma_1;
        vec![
            Resonance::new(self.omega_1, w),
            Resonance::new(self.sphere_frequency(), w),
            Resonance::new(self.surface_frequency(), w),
            Resonance::new(self.longitudinal_frequency(), w),
        ]
    }
}

pub fn eps_plate(model: &LorentzPlateModel, omega: f64) -> Complex64 {
    model.permittivity(omega)
}

/// Reciprocal uniaxial crystal with its optical axis bisecting y and z.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UniaxialLorentzModel {
    pub ordinary: LorentzModel,
    pub extraordinary: LorentzModel,
}

impl UniaxialLorentzModel {
    pub fn validate(&self) -> Result<()> {
        self.ordinary.validate()?;
        self.extraordinary.validate()
    }

    pub fn permittivity(&self, omega: f64) -> Result<PermittivityEntries> {
        check_frequency(omega)?;
        let eps_o = self.ordinary.permittivity(omega);
        let eps_e = self.extraordinary.permittivity(omega);
        Ok(PermittivityEntries {
            eps_p: eps_o,
            eps_d: (eps_o + eps_e) * 0.5,
            eps_s: (eps_e - eps_o) * 0.5,
            eps_f: Complex64::new(0.0, 0.0),
        })
    }

    pub fn resonances(&self) -> Vec<Resonance> {
        let mut out = self.ordinary.resonances();
        out.extend(self.extraordinary.resonances());
        out
    }
}

/// Penetration depth `c/(ω·Im√ε)`; infinite for a lossless entry.
pub fn skin_depth(omega: f64, eps_entry: Complex64) -> f64 {
    let im = sqrt_decaying(eps_entry).im;
    if im > 0.0 {
        SPEED_OF_LIGHT / (omega * im)
    } else {
        f64::INFINITY
    }
}

/// Smallest skin depth over `εp`, `εd` and the transverse eigen-permittivities.
pub fn tensor_skin_depth(omega: f64, eps: &PermittivityEntries) -> f64 {
    let [plus, minus] = eps.transverse_eigenvalues();
    [eps.eps_p, eps.eps_d, plus, minus]
        .into_iter()
        .map(|e| skin_depth(omega, e))
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_field_is_isotropic() {
        let e = eps_magneto(&DrudeMagnetoModel::insb(0.0), 1e14).unwrap();
        assert_eq!(e.eps_f, Complex64::new(0.0, 0.0));
        assert!((e.eps_d - e.eps_p).norm() <= 1e-14 * e.eps_p.norm());
    }

    #[test]
    fn insb_defaults() {
        let m = DrudeMagnetoModel::insb(10.0);
        assert_eq!(m.omega_p, 7.4e14);
        assert_eq!(m.omega_tau, 6.3e12);
        assert_eq!(m.eps_inf, 15.7);
        assert_eq!(m.cyclotron_frequency(), 2.2e13);
    }

    #[test]
    fn gyrotropic_entry_is_odd_in_field() {
        for &w in &[1e12, 3e13, 1.7e14, 1e15] {
            let up = eps_magneto(&DrudeMagnetoModel::insb(7.0), w).unwrap();
            let down = eps_magneto(&DrudeMagnetoModel::insb(-7.0), w).unwrap();
            assert_eq!(up.eps_f, -down.eps_f);
            assert_eq!(up.eps_d, down.eps_d);
            assert_eq!(up.eps_p, down.eps_p);
        }
    }

    #[test]
    fn drude_rejects_nonpositive_frequency() {
        assert!(eps_magneto(&DrudeMagnetoModel::insb(1.0), 0.0).is_err());
    }

    #[test]
    fn lorentz_static_limit() {
        let m = LorentzModel::reference_plate();
        assert!((m.permittivity(1e-3) - Complex64::new(3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn lorentz_is_lossy_on_log_grid() {
        let m = LorentzModel::reference_plate();
        for k in 0..=400 {
            let w = 10f64.powf(12.0 + 4.0 * k as f64 / 400.0);
            assert!(m.permittivity(w).im > 0.0, "omega = {w}");
        }
    }

    #[test]
    fn lossless_entry_has_infinite_skin_depth() {
        assert_eq!(skin_depth(1e14, Complex64::new(4.0, 0.0)), f64::INFINITY);
        assert!(skin_depth(1e14, Complex64::new(-4.0, 0.0)).is_finite());
    }

    #[test]
    fn good_conductor_skin_depth() {
        let w = 1e14;
        let got = skin_depth(w, Complex64::new(0.0, 1e6));
        let want = SPEED_OF_LIGHT / (w * (1e6f64 / 2.0).sqrt());
        assert!((got - want).abs() < 1e-12 * want);
    }

    #[test]
    fn uniaxial_structure() {
        let m = UniaxialLorentzModel {
            ordinary: LorentzModel::reference_plate(),
            extraordinary: LorentzModel {
                strength: 3.0,
                omega_1: 9e13,
                gamma_1: 1e11,
            },
        };
        let e = m.permittivity(1e14).unwrap();
        assert!((e.eps_s + e.eps_p - e.eps_d).norm() < 1e-14 * e.eps_d.norm());
        assert_eq!(e.eps_f, Complex64::new(0.0, 0.0));
    }
}
