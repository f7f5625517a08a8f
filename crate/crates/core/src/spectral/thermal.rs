use crate::constants::{BOLTZMANN, HBAR, SPEED_OF_LIGHT};

/// Mean photon energy `ħω/(e^{ħω/kT} − 1)` in joules; zero at `T = 0`.
pub fn planck_theta(omega: f64, temperature: f64) -> f64 {
    if temperature <= 0.0 {
        return 0.0;
    }
    let energy = HBAR * omega;
    energy / (energy / (BOLTZMANN * temperature)).exp_m1()
}

/// `ħc/(k_B T)`; infinite at `T = 0`.
pub fn thermal_wavelength(temperature: f64) -> f64 {
    if temperature <= 0.0 {
        return f64::INFINITY;
    }
    HBAR * SPEED_OF_LIGHT / (BOLTZMANN * temperature)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_temperature_is_empty() {
        for &w in &[1e10, 1e14, 1e16] {
            assert_eq!(planck_theta(w, 0.0), 0.0);
        }
    }

    #[test]
    fn classical_limit() {
        let t = 300.0;
        let w = 0.01 * BOLTZMANN * t / HBAR;
        let ratio = planck_theta(w, t) / (BOLTZMANN * t);
        assert!((ratio - 1.0).abs() < 0.01);
    }

    #[test]
    fn deep_quantum_tail_is_finite() {
        let v = planck_theta(1e17, 1.0);
        assert_eq!(v, 0.0);
        let v = planck_theta(1e15, 300.0);
        assert!(v > 0.0 && v.is_finite());
    }

    #[test]
    fn thermal_wavelength_scaling() {
        let l300 = thermal_wavelength(300.0);
        assert!((l300 - 7.634e-6).abs() < 0.01e-6);
        let ratio = thermal_wavelength(10.0) / l300;
        assert!((ratio - 30.0).abs() < 1e-12);
        assert_eq!(thermal_wavelength(0.0), f64::INFINITY);
        assert!(thermal_wavelength(1e300) < 1e-290);
    }
}
