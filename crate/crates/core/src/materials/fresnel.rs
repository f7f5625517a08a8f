use num_complex::Complex64;

use crate::constants::SPEED_OF_LIGHT;

/// Square root on the branch with non-negative imaginary part.
pub fn sqrt_decaying(z: Complex64) -> Complex64 {
    let s = z.sqrt();
    if s.im < 0.0 {
        -s
    } else {
        s
    }
}

/// Electric (TM) reflection coefficient of a half-space with permittivity `eps1`.
pub fn fresnel_rn(omega: f64, k_perp: f64, eps1: Complex64) -> Complex64 {
    let k0 = omega / SPEED_OF_LIGHT;
    let kz = sqrt_decaying(Complex64::new(k0 * k0 - k_perp * k_perp, 0.0));
    let kz1 = sqrt_decaying(eps1 * (k0 * k0) - k_perp * k_perp);
    (eps1 * kz - kz1) / (eps1 * kz + kz1)
}

/// Reflection coefficient at the propagating angle with `k⊥ = k0·sinθ`.
pub(crate) fn fresnel_rn_propagating(sin_theta: f64, cos_theta: f64, eps1: Complex64) -> Complex64 {
    let kz1 = sqrt_decaying(eps1 - sin_theta * sin_theta);
    (eps1 * cos_theta - kz1) / (eps1 * cos_theta + kz1)
}

/// Reflection coefficient for the evanescent wave with decay rate `kappa = √(k⊥² − k0²)`.
pub(crate) fn fresnel_rn_evanescent(k0: f64, kappa: f64, eps1: Complex64) -> Complex64 {
    let kz = Complex64::new(0.0, kappa);
    let kz1 = sqrt_decaying((eps1 - 1.0) * (k0 * k0) - kappa * kappa);
    (eps1 * kz - kz1) / (eps1 * kz + kz1)
}
