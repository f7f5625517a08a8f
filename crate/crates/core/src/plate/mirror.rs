use std::f64::consts::PI;

use crate::constants::SPEED_OF_LIGHT;
use crate::spectral::planck_theta;

/// Below this argument the bracket is summed as a power series to avoid cancellation.
const SERIES_LIMIT: f64 = 1.0;

/// Odd power series `Σ_{n≥2} (−1)ⁿ·2^{2n}·8n(n−1)/(2n+1)!·x^{2n+1−shift}`.
fn bracket_series(x: f64, shift: i32) -> f64 {
    let x2 = x * x;
    // Term for n = 2 without its power of x: 2⁴·16/5!.
    let mut coefficient = 16.0 * 16.0 / 120.0;
    let mut power = x.powi(5 - shift);
    let mut sum = 0.0;
    for n in 2..60 {
        let term = coefficient * power;
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
        let nf = n as f64;
        // Ratio of consecutive coefficients, n → n+1.
        coefficient *= -4.0 * (nf + 1.0) / (nf - 1.0) / ((2.0 * nf + 2.0) * (2.0 * nf + 3.0));
        power *= x2;
    }
    sum
}

/// `3sin2x − 6x·cos2x − 4x²·sin2x`, the mirror bracket at `x = ωd/c`.
pub fn mirror_bracket(x: f64) -> f64 {
    if x.abs() < SERIES_LIMIT {
        return bracket_series(x, 0);
    }
    let (s, c) = (2.0 * x).sin_cos();
    3.0 * s - 6.0 * x * c - 4.0 * x * x * s
}

/// `f(x) = x⁻⁴[−3sin2x + 6x·cos2x + 4x²·sin2x]`; tends to `−32x/15` at small `x`.
pub fn toy_force_shape(x: f64) -> f64 {
    if x.abs() < SERIES_LIMIT {
        return -bracket_series(x, 4);
    }
    -mirror_bracket(x) / x.powi(4)
}

/// `x⁵·f′(x) = 12sin2x − 24x·cos2x − 20x²·sin2x + 8x³·cos2x`.
pub fn toy_force_slope_numerator(x: f64) -> f64 {
    let (s, c) = (2.0 * x).sin_cos();
    12.0 * s - 24.0 * x * c - 20.0 * x * x * s + 8.0 * x.powi(3) * c
}

/// Argument of the largest `|f(x)|`, the root of `f′` bracketed by `[1, 1.5]`.
pub fn toy_force_peak() -> f64 {
    let (mut lo, mut hi) = (1.0, 1.5);
    let lo_sign = toy_force_slope_numerator(lo).signum();
    while hi - lo > 4.0 * f64::EPSILON * hi {
        let mid = 0.5 * (lo + hi);
        if toy_force_slope_numerator(mid).signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Mirror self force for `Im αf = α0·δ(ω − ω0)`, N; `alpha0` in m³·rad/s.
pub fn toy_force(alpha0: f64, omega0: f64, temperature: f64, distance: f64) -> f64 {
    let shape = toy_force_shape(omega0 * distance / SPEED_OF_LIGHT);
    planck_theta(omega0, temperature) * omega0.powi(3) * alpha0 * shape / (4.0 * PI * SPEED_OF_LIGHT.powi(4))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn direct(x: f64) -> f64 {
        let (s, c) = (2.0 * x).sin_cos();
        3.0 * s - 6.0 * x * c - 4.0 * x * x * s
    }

    #[test]
    fn series_joins_closed_form() {
        for &x in &[0.6, 0.8, 0.99, 1.0, 1.2] {
            let series = bracket_series(x, 0);
            assert!((series - direct(x)).abs() < 1e-13 * direct(x).abs().max(1.0), "{x}");
        }
    }

    #[test]
    fn shape_small_argument() {
        let x = 1e-3;
        let f = toy_force_shape(x);
        assert!(((f - (-32.0 * x / 15.0)) / f).abs() < 1e-3);
    }

    #[test]
    fn peak_near_five_quarters() {
        let x = toy_force_peak();
        assert!((x - 1.25).abs() < 0.05, "{x}");
    }

    #[test]
    fn toy_force_sign_follows_shape() {
        let d = 1e-6;
        let omega0 = 1.25 * SPEED_OF_LIGHT / d;
        let f = toy_force(1e-20, omega0, 300.0, d);
        assert!(f < 0.0);
        assert_eq!(toy_force(1e-20, omega0, 0.0, d), 0.0);
    }
}
