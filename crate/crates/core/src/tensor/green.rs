use num_complex::Complex64;
use std::f64::consts::PI;

use super::{CMat3, Vec3};
use crate::constants::SPEED_OF_LIGHT;
use crate::error::{Error, Result};

/// Separations below this many meters count as coincident.
pub const DEFAULT_COINCIDENCE_EPS: f64 = 1e-12;

/// Retardation polynomials of the free dyadic Green's tensor at `x = ωd/c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PQPair {
    pub p: Complex64,
    pub q: Complex64,
}

impl PQPair {
    pub fn at(x: f64) -> Self {
        let x2 = x * x;
        Self {
            p: Complex64::new(-1.0 + x2, x),
            q: Complex64::new(3.0 - x2, -3.0 * x),
        }
    }
}

pub(crate) fn check_frequency(omega: f64) -> Result<()> {
    if omega > 0.0 && omega.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveFrequency { omega })
    }
}

/// Non-local part of the free Green's tensor between `r` and `rprime`.
pub fn g0_free(r: Vec3, rprime: Vec3, omega: f64) -> Result<CMat3> {
    g0_free_with_eps(r, rprime, omega, DEFAULT_COINCIDENCE_EPS)
}

pub fn g0_free_with_eps(r: Vec3, rprime: Vec3, omega: f64, eps: f64) -> Result<CMat3> {
    check_frequency(omega)?;
    let sep = r - rprime;
    let d = sep.norm();
    if !(d >= eps) {
        return Err(Error::CoincidentPoints {
            separation: d,
            epsilon: eps,
        });
    }
    Ok(g0_from_separation(sep, omega))
}

pub(crate) fn g0_from_separation(sep: Vec3, omega: f64) -> CMat3 {
    let d2 = sep.norm_squared();
    let d = d2.sqrt();
    let x = omega * d / SPEED_OF_LIGHT;
    let PQPair { p, q } = PQPair::at(x);
    let wavelength_factor = (SPEED_OF_LIGHT / omega).powi(2);
    let prefactor = Complex64::from_polar(1.0, x) * (wavelength_factor / (4.0 * PI * d2 * d2 * d));
    let s = sep.to_array();
    CMat3::from_fn(|i, j| {
        let diag = if i == j { p * d2 } else { Complex64::new(0.0, 0.0) };
        (diag + q * (s[i] * s[j])) * prefactor
    })
}

/// `Im G0(r, r)`, the radiative self term `(ω/6πc)·I`.
pub fn g0_coincident_imag(omega: f64) -> Result<CMat3> {
    check_frequency(omega)?;
    let v = omega / (6.0 * PI * SPEED_OF_LIGHT);
    Ok(CMat3::identity().scale_real(v))
}

/// Real part of the free tensor at coincidence; never defined.
pub fn g0_coincident_real(_omega: f64) -> Result<CMat3> {
    Err(Error::CoincidentRealPart)
}

/// Scattered part `4πk²·G0(r,r1)·α1·G0(r1,r′)` of the tensor dressed by a dipole at `r1`.
pub fn g1_scattered(r: Vec3, rprime: Vec3, omega: f64, alpha1: &CMat3, r1: Vec3) -> Result<CMat3> {
    let to_r = g0_free(r, r1, omega)?;
    let from_rprime = g0_free(r1, rprime, omega)?;
    let k = omega / SPEED_OF_LIGHT;
    Ok((to_r * *alpha1 * from_rprime).scale_real(4.0 * PI * k * k))
}

/// Free tensor dressed by a dipole at `r1`, for distinct outer points.
pub fn g1_dressed(r: Vec3, rprime: Vec3, omega: f64, alpha1: &CMat3, r1: Vec3) -> Result<CMat3> {
    let free = g0_free(r, rprime, omega)?;
    Ok(free + g1_scattered(r, rprime, omega, alpha1, r1)?)
}

/// Hermitian part of the dressed tensor; coincident outer points use the radiative self term.
pub fn g1_dressed_hermitian(r: Vec3, rprime: Vec3, omega: f64, alpha1: &CMat3, r1: Vec3) -> Result<CMat3> {
    let scattered = g1_scattered(r, rprime, omega, alpha1, r1)?.hermitian_part();
    if (r - rprime).norm() < DEFAULT_COINCIDENCE_EPS {
        Ok(g0_coincident_imag(omega)? + scattered)
    } else {
        Ok(g0_free(r, rprime, omega)?.hermitian_part() + scattered)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_at_origin() {
        let pq = PQPair::at(0.0);
        assert_eq!(pq.p, Complex64::new(-1.0, 0.0));
        assert_eq!(pq.q, Complex64::new(3.0, 0.0));
    }

    #[test]
    fn coincident_points_are_rejected() {
        let r = Vec3::new(1e-6, 0.0, 0.0);
        assert!(matches!(g0_free(r, r, 1e14), Err(Error::CoincidentPoints { .. })));
        assert!(g0_free(Vec3::ZERO, Vec3::new(1e-12, 0.0, 0.0), 1e14).is_ok());
    }

    #[test]
    fn nonpositive_frequency_is_rejected() {
        assert!(g0_free(Vec3::ZERO, Vec3::new(1e-6, 0.0, 0.0), 0.0).is_err());
        assert!(g0_coincident_imag(-1.0).is_err());
    }

    #[test]
    fn coincident_imaginary_part_at_unit_frequency() {
        let g = g0_coincident_imag(1.0).unwrap();
        let expected = 1.0 / (6.0 * PI * SPEED_OF_LIGHT);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { expected } else { 0.0 };
                assert_eq!(g[(i, j)].re, want);
            }
        }
    }

    #[test]
    fn coincident_real_part_is_an_error() {
        assert_eq!(g0_coincident_real(1e14), Err(Error::CoincidentRealPart));
    }

    #[test]
    fn static_limit_is_dipolar() {
        let omega = 1e10;
        let sep = Vec3::new(3e-9, -1e-9, 2e-9);
        let g = g0_free(sep, Vec3::ZERO, omega).unwrap();
        let d = sep.norm();
        let unit = sep * (1.0 / d);
        let pref = (SPEED_OF_LIGHT / omega).powi(2) / (4.0 * PI * d.powi(3));
        let u = unit.to_array();
        for i in 0..3 {
            for j in 0..3 {
                let delta = if i == j { 1.0 } else { 0.0 };
                let want = pref * (-delta + 3.0 * u[i] * u[j]);
                assert!((g[(i, j)].re - want).abs() < 1e-9 * pref);
            }
        }
    }
}
