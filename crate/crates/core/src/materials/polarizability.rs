use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::permittivity::PermittivityEntries;
use crate::error::{Error, Result};
use crate::tensor::CMat3;

/// Smallest eigenvalue of `α_I` tolerated by [`passivity_check`], m³.
pub const PASSIVITY_TOLERANCE: f64 = 1e-18;

/// Entries of the polarizability matrix in m³, with the particle radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarizabilityEntries {
    pub alpha_p: Complex64,
    pub alpha_d: Complex64,
    pub alpha_s: Complex64,
    pub alpha_f: Complex64,
    pub radius: f64,
}

impl PolarizabilityEntries {
    pub fn zero(radius: f64) -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self {
            alpha_p: z,
            alpha_d: z,
            alpha_s: z,
            alpha_f: z,
            radius,
        }
    }

    pub fn isotropic(alpha: Complex64, radius: f64) -> Self {
        Self {
            alpha_p: alpha,
            alpha_d: alpha,
            ..Self::zero(radius)
        }
    }

    pub fn matrix(&self) -> CMat3 {
        alpha_matrix(self)
    }

    /// `α_I`, the Hermitian part of the matrix.
    pub fn hermitian_matrix(&self) -> CMat3 {
        self.matrix().hermitian_part()
    }

    /// Applies `f` to every entry.
    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            alpha_p: f(self.alpha_p),
            alpha_d: f(self.alpha_d),
            alpha_s: f(self.alpha_s),
            alpha_f: f(self.alpha_f),
            radius: self.radius,
        }
    }
}

/// Clausius–Mossotti mapping of the permittivity entries, scaled by `R³`.
pub fn eps_to_alpha(eps: &PermittivityEntries, radius: f64) -> Result<PolarizabilityEntries> {
    let volume = radius.powi(3);
    let p_denominator = eps.eps_p + 2.0;
    let shifted = eps.eps_d + 2.0;
    let block_denominator = shifted * shifted - (eps.eps_s * eps.eps_s + eps.eps_f * eps.eps_f);
    if p_denominator.norm() == 0.0 || block_denominator.norm() == 0.0 {
        return Err(Error::ResonantDenominator { omega: None });
    }
    let alpha = PolarizabilityEntries {
        alpha_p: (eps.eps_p - 1.0) / p_denominator * volume,
        alpha_d: (1.0 - 3.0 * shifted / block_denominator) * volume,
        alpha_s: 3.0 * eps.eps_s / block_denominator * volume,
        alpha_f: 3.0 * eps.eps_f / block_denominator * volume,
        radius,
    };
    let finite = [alpha.alpha_p, alpha.alpha_d, alpha.alpha_s, alpha.alpha_f]
        .iter()
        .all(|z| z.re.is_finite() && z.im.is_finite());
    if finite {
        Ok(alpha)
    } else {
        Err(Error::ResonantDenominator { omega: None })
    }
}

/// `[[αp,0,0],[0,αd,αs−iαf],[0,αs+iαf,αd]]`.
pub fn alpha_matrix(alpha: &PolarizabilityEntries) -> CMat3 {
    let i = Complex64::i();
    let zero = Complex64::new(0.0, 0.0);
    CMat3([
        [alpha.alpha_p, zero, zero],
        [zero, alpha.alpha_d, alpha.alpha_s - i * alpha.alpha_f],
        [zero, alpha.alpha_s + i * alpha.alpha_f, alpha.alpha_d],
    ])
}

/// Eigenvalues of `α_I` and the verdict of the passivity test.
#[derive(Clone, Debug, PartialEq)]
pub struct PassivityReport {
    pub passive: bool,
    /// Ascending eigenvalues of `α_I`, m³.
    pub eigenvalues: [f64; 3],
    /// Eigenvalues below the tolerance.
    pub violations: Vec<f64>,
    pub tolerance: f64,
}

/// Checks that `α_I` is positive semidefinite within [`PASSIVITY_TOLERANCE`].
pub fn passivity_check(alpha: &PolarizabilityEntries) -> PassivityReport {
    passivity_check_with_tolerance(alpha, PASSIVITY_TOLERANCE)
}

pub fn passivity_check_with_tolerance(alpha: &PolarizabilityEntries, tolerance: f64) -> PassivityReport {
    let h = alpha.hermitian_matrix();
    // The x row decouples; the yz block is a 2×2 Hermitian matrix.
    let a = h[(1, 1)].re;
    let c = h[(2, 2)].re;
    let b = h[(1, 2)];
    let mean = 0.5 * (a + c);
    let radius = (0.5 * (a - c)).hypot(b.norm());
    let mut eigenvalues = [h[(0, 0)].re, mean - radius, mean + radius];
    eigenvalues.sort_by(f64::total_cmp);
    let violations: Vec<f64> = eigenvalues.iter().copied().filter(|&e| e < -tolerance).collect();
    PassivityReport {
        passive: violations.is_empty(),
        eigenvalues,
        violations,
        tolerance,
    }
}

/// Frequency-independent polarizability entries in units of `R³`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedAlphaModel {
    #[serde(default)]
    pub alpha_p: Complex64,
    #[serde(default)]
    pub alpha_d: Complex64,
    #[serde(default)]
    pub alpha_s: Complex64,
    #[serde(default)]
    pub alpha_f: Complex64,
}

impl FixedAlphaModel {
    pub fn polarizability(&self, radius: f64) -> PolarizabilityEntries {
        let v = radius.powi(3);
        PolarizabilityEntries {
            alpha_p: self.alpha_p * v,
            alpha_d: self.alpha_d * v,
            alpha_s: self.alpha_s * v,
            alpha_f: self.alpha_f * v,
            radius,
        }
    }
}

/// Gyrotropic response concentrated at one frequency: `Im αf = α0·δ(ω − ω0)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeltaToyModel {
    /// Spectral weight of `Im αf`, m³·rad/s.
    pub alpha0: f64,
    pub omega0: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn isotropic_permittivity_gives_clausius_mossotti() {
        let eps = c(-3.0, 0.4);
        let a = eps_to_alpha(&PermittivityEntries::isotropic(eps), 2.0).unwrap();
        let cm = (eps - 1.0) / (eps + 2.0) * 8.0;
        assert!((a.alpha_p - cm).norm() < 1e-14 * cm.norm());
        assert!((a.alpha_d - cm).norm() < 1e-14 * cm.norm());
        assert_eq!(a.alpha_s, c(0.0, 0.0));
        assert_eq!(a.alpha_f, c(0.0, 0.0));
    }

    #[test]
    fn vacuum_has_no_polarizability() {
        let a = eps_to_alpha(&PermittivityEntries::isotropic(c(1.0, 0.0)), 1e-8).unwrap();
        assert_eq!(a.alpha_p, c(0.0, 0.0));
        assert_eq!(a.alpha_d, c(0.0, 0.0));
    }

    #[test]
    fn resonant_denominator_is_reported() {
        let r = eps_to_alpha(&PermittivityEntries::isotropic(c(-2.0, 0.0)), 1.0);
        assert!(matches!(r, Err(Error::ResonantDenominator { .. })));
    }

    #[test]
    fn gyrotropic_entry_sits_in_antisymmetric_block() {
        let mut a = PolarizabilityEntries::zero(1.0);
        a.alpha_f = c(0.2, 0.5);
        let (plus, minus) = a.matrix().sym_antisym_split();
        assert_eq!(plus, CMat3::zero());
        assert_eq!(minus[(1, 2)], -Complex64::i() * a.alpha_f);
        assert_eq!(minus[(2, 1)], Complex64::i() * a.alpha_f);
    }

    #[test]
    fn anisotropic_entry_sits_in_symmetric_block() {
        let mut a = PolarizabilityEntries::zero(1.0);
        a.alpha_s = c(0.2, 0.5);
        let (plus, minus) = a.matrix().sym_antisym_split();
        assert_eq!(minus, CMat3::zero());
        assert_eq!(plus[(1, 2)], a.alpha_s);
        assert_eq!(plus[(2, 1)], a.alpha_s);
    }

    #[test]
    fn gyrotropic_loss_beyond_diagonal_loss_is_active() {
        let mut a = PolarizabilityEntries::zero(1.0);
        a.alpha_d = c(0.0, 1.0);
        a.alpha_f = c(0.0, 2.0);
        let report = passivity_check(&a);
        assert!(!report.passive);
        assert_eq!(report.violations, vec![-1.0]);
    }

    #[test]
    fn lossless_is_passive_boundary() {
        let a = PolarizabilityEntries {
            alpha_p: c(1.0, 0.0),
            alpha_d: c(2.0, 0.0),
            alpha_s: c(0.5, 0.0),
            alpha_f: c(0.3, 0.0),
            radius: 1.0,
        };
        let report = passivity_check(&a);
        assert!(report.passive);
        assert!(report.eigenvalues.iter().all(|e| e.abs() < 1e-15));
    }
}
