use num_complex::Complex64;
use std::f64::consts::PI;

use super::mirror::mirror_bracket;
use crate::constants::SPEED_OF_LIGHT;
use crate::error::Result;
use crate::materials::{fresnel_rn_evanescent, fresnel_rn_propagating, PlateMaterial};
use crate::spectral::{integrate_kperp_split, EvanescentNode, PropagatingNode, QuadratureConfig};

/// k⊥ integrals of the plate response at one frequency, m⁻⁴.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PlateKernels {
    /// `∫₀^∞ (dk⊥/2π)·k⊥³·Im[rᴺ·e^{2ik_z d}]`.
    pub reflected: f64,
    /// `∫_{ω/c}^∞ (dk⊥/2π)·k⊥³·e^{−2|k_z|d}·Im rᴺ`.
    pub evanescent: f64,
    /// `∫₀^{ω/c} (dk⊥/2π)·k⊥³·½(1 − |rᴺ|²)`.
    pub propagating: f64,
}

/// Quasi-static reflection `(ε − 1)/(ε + 1)`; one for the perfect conductor.
pub fn static_reflection(plate: &PlateMaterial, omega: f64) -> Complex64 {
    match plate.permittivity(omega) {
        Some(eps) => (eps - 1.0) / (eps + 1.0),
        None => Complex64::new(1.0, 0.0),
    }
}

pub fn plate_kernels(plate: &PlateMaterial, omega: f64, distance: f64, cfg: &QuadratureConfig) -> Result<PlateKernels> {
    let Some(eps) = plate.permittivity(omega) else {
        let x = omega * distance / SPEED_OF_LIGHT;
        return Ok(PlateKernels {
            reflected: mirror_bracket(x) / (16.0 * PI * distance.powi(4)),
            ..PlateKernels::default()
        });
    };
    let k0 = omega / SPEED_OF_LIGHT;
    let surface_pole = k0 * (eps / (eps + 1.0)).sqrt();
    let parts = integrate_kperp_split(
        |n: PropagatingNode| {
            let r = fresnel_rn_propagating(n.sin_theta, n.cos_theta, eps);
            let phase = Complex64::from_polar(1.0, 2.0 * k0 * n.cos_theta * distance);
            let k3 = n.k_perp.powi(3);
            [(r * phase).im * k3, 0.0, 0.5 * (1.0 - r.norm_sqr()) * k3]
        },
        |n: EvanescentNode| {
            let r = fresnel_rn_evanescent(k0, n.kappa, eps);
            let v = r.im * (-2.0 * n.kappa * distance).exp() * n.k_perp.powi(3);
            [v, v, 0.0]
        },
        omega,
        distance,
        cfg,
        &[surface_pole],
    )?;
    let total = parts.total();
    let norm = 1.0 / (2.0 * PI);
    Ok(PlateKernels {
        reflected: total[0] * norm,
        evanescent: parts.evanescent[1] * norm,
        propagating: parts.propagating[2] * norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::LorentzModel;

    #[test]
    fn near_field_kernel_is_static_reflection() {
        let plate = PlateMaterial::Lorentz(LorentzModel::reference_plate());
        let d = 5e-9;
        let cfg = QuadratureConfig::default();
        for &w in &[5e13, 1.6e14, 3e14] {
            let k = plate_kernels(&plate, w, d, &cfg).unwrap();
            let want = static_reflection(&plate, w).im * 3.0 / (16.0 * PI * d.powi(4));
            assert!(
                (k.evanescent - want).abs() < 1e-3 * want.abs(),
                "{w}: {} {want}",
                k.evanescent
            );
            assert!((k.reflected - want).abs() < 1e-3 * want.abs());
        }
    }

    fn fresnel_reflected(eps: Complex64, omega: f64, d: f64) -> f64 {
        let k0 = omega / SPEED_OF_LIGHT;
        let parts = integrate_kperp_split(
            |n: PropagatingNode| {
                let r = fresnel_rn_propagating(n.sin_theta, n.cos_theta, eps);
                [(r * Complex64::from_polar(1.0, 2.0 * k0 * n.cos_theta * d)).im * n.k_perp.powi(3)]
            },
            |n: EvanescentNode| {
                let r = fresnel_rn_evanescent(k0, n.kappa, eps);
                [r.im * (-2.0 * n.kappa * d).exp() * n.k_perp.powi(3)]
            },
            omega,
            d,
            &QuadratureConfig::default(),
            &[],
        )
        .unwrap();
        parts.total()[0] / (2.0 * PI)
    }

    #[test]
    fn huge_permittivity_approaches_mirror() {
        let d = 1e-6;
        for x in [2.0, 5.0] {
            let w = x * SPEED_OF_LIGHT / d;
            let mirror = plate_kernels(&PlateMaterial::PerfectConductor, w, d, &QuadratureConfig::default())
                .unwrap()
                .reflected;
            let gap =
                |scale: f64| (fresnel_reflected(Complex64::new(scale, scale), w, d) - mirror).abs() / mirror.abs();
            let (coarse, fine) = (gap(1e8), gap(1e12));
            assert!(coarse < 1e-3, "x = {x}: {coarse}");
            // The gap closes like |ε|^(-1/2).
            assert!(fine < 2e-2 * coarse, "x = {x}: {fine} vs {coarse}");
        }
    }
}
