use serde::Serialize;
use std::f64::consts::PI;

use super::scene::TwoParticleScene;
use crate::constants::SPEED_OF_LIGHT;
use crate::error::{Error, Result};
use crate::materials::PolarizabilityEntries;
use crate::spectral::{integrate_omega_try, planck_theta, QuadratureConfig, SpectralCurve, SpectralKind};
use crate::tensor::{g0_free, CMat3, Vec3};

/// Largest tolerated gap between the two persistent-current evaluations, relative to their amplitude.
pub const PERSISTENT_AGREEMENT: f64 = 1e-6;

/// Fraction of the cancellation scale below which a persistent current is indistinguishable from zero.
const CANCELLATION_FLOOR: f64 = 1e-6;

/// `Re Tr{α1I^a·G0*·α2I^b·G0}` for the symmetric (+) and antisymmetric (−) pieces, m².
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransferTraces {
    pub full: f64,
    pub plus_plus: f64,
    pub minus_minus: f64,
    pub plus_minus: f64,
    pub minus_plus: f64,
}

fn trace_chain(a: &CMat3, g_conj: &CMat3, b: &CMat3, g: &CMat3) -> f64 {
    (*a * *g_conj * *b * *g).trace().re
}

/// Traces entering the transfer from particle 1 (origin) to particle 2.
pub fn transfer_traces(scene: &TwoParticleScene, omega: f64) -> Result<TransferTraces> {
    let (a1, a2) = scene.polarizabilities(omega)?;
    traces_between(&a1, &a2, scene.particle2_location(), omega)
}

fn traces_between(
    a1: &PolarizabilityEntries,
    a2: &PolarizabilityEntries,
    r2: Vec3,
    omega: f64,
) -> Result<TransferTraces> {
    let g = g0_free(Vec3::ZERO, r2, omega)?;
    let g_conj = g.conj();
    let (s1, n1) = a1.hermitian_matrix().sym_antisym_split();
    let (s2, n2) = a2.hermitian_matrix().sym_antisym_split();
    Ok(TransferTraces {
        full: trace_chain(&a1.hermitian_matrix(), &g_conj, &a2.hermitian_matrix(), &g),
        plus_plus: trace_chain(&s1, &g_conj, &s2, &g),
        minus_minus: trace_chain(&n1, &g_conj, &n2, &g),
        plus_minus: trace_chain(&s1, &g_conj, &n2, &g),
        minus_plus: trace_chain(&n1, &g_conj, &s2, &g),
    })
}

/// `‖α1I‖‖α2I‖‖G0‖²` bounds each trace entering the persistent current, so round-off in
/// their difference stays below a few ulp of it even when the ± parts vanish.
fn cancellation_bound(a1: &PolarizabilityEntries, a2: &PolarizabilityEntries, r2: Vec3, omega: f64) -> Result<f64> {
    let g = g0_free(Vec3::ZERO, r2, omega)?.frobenius_norm();
    let pieces = a1.hermitian_matrix().frobenius_norm() * a2.hermitian_matrix().frobenius_norm();
    Ok(2.0 * pieces * g * g)
}

/// `(32π/c⁴)·ω⁴`, converting a transfer trace into power per unit Θ and ω.
fn transfer_weight(omega: f64) -> f64 {
    32.0 * PI * (omega / SPEED_OF_LIGHT).powi(4)
}

/// Transfer 1 → 2 per unit Θ, W·s/(rad·J).
pub fn heat_transfer_density(scene: &TwoParticleScene, omega: f64) -> Result<f64> {
    Ok(transfer_weight(omega) * transfer_traces(scene, omega)?.full)
}

/// Heat emitted by particle 1 at `T1` and absorbed by particle 2, W.
pub fn heat_transfer_12(scene: &TwoParticleScene, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(heat_transfer_12_detailed(scene, cfg)?.total)
}

/// Heat emitted by particle 2 at `T2` and absorbed by particle 1, W.
pub fn heat_transfer_21(scene: &TwoParticleScene, cfg: &QuadratureConfig) -> Result<f64> {
    heat_transfer_12(&scene.swapped(), cfg)
}

/// Transfer 1 → 2 with its pieces, W.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct TransferBreakdown {
    pub plus_plus: f64,
    pub minus_minus: f64,
    /// Sum of the `+−` and `−+` pieces.
    pub mixed: f64,
    pub total: f64,
}

pub fn heat_transfer_12_detailed(scene: &TwoParticleScene, cfg: &QuadratureConfig) -> Result<TransferBreakdown> {
    let t1 = scene.particle1.temperature;
    let [total, pp, mm, mixed] = integrate_omega_try(
        |omega| {
            let t = transfer_traces(scene, omega)?;
            let w = transfer_weight(omega) * planck_theta(omega, t1);
            Ok([
                w * t.full,
                w * t.plus_plus,
                w * t.minus_minus,
                w * (t.plus_minus + t.minus_plus),
            ])
        },
        t1,
        cfg,
        &scene.omega_hints(),
    )?;
    Ok(TransferBreakdown {
        plus_plus: pp,
        minus_minus: mm,
        mixed,
        total,
    })
}

/// Spectral transfer 1 → 2 at `T1`, W·s/rad.
pub fn heat_transfer_spectrum(scene: &TwoParticleScene, omega_grid: Vec<f64>) -> Result<SpectralCurve> {
    let t1 = scene.particle1.temperature;
    SpectralCurve::tabulate(omega_grid, SpectralKind::Heat, |omega| {
        Ok(heat_transfer_density(scene, omega)? * planck_theta(omega, t1))
    })
}

/// Net heat flowing 1 → 2 in global equilibrium, evaluated three ways, W.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PersistentCurrent {
    /// `(64π/c⁴)∫Θω⁴[Tr{α1I⁺G0*α2I⁻G0} − Tr{α2I⁺G0*α1I⁻G0}]`.
    pub general: f64,
    /// `(16r²cos2φ/πc³d⁵)∫Θω³(Im α1s·Im α2f − Im α2s·Im α1f)`.
    pub closed: f64,
    /// Difference of the full transfer integrals 1 → 2 and 2 → 1; loses digits to cancellation.
    pub full_difference: f64,
    /// `|general − closed|` relative to the amplitude, floored at a millionth of the cancellation scale.
    pub relative_gap: f64,
    /// Scale of the closed form with `|cos2φ|` and every product replaced by its magnitude.
    pub amplitude: f64,
    /// Power particle 2 hands on to the environment (and particle 1 draws from it).
    pub environment_exchange: f64,
}

/// Persistent-current integrands per unit Θ, W·s/(rad·J).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PersistentDensity {
    pub general: f64,
    pub closed: f64,
    /// Closed form with `|cos2φ|` and each product replaced by its magnitude.
    pub amplitude: f64,
    /// Norm bound `2‖α1I‖‖α2I‖‖G0‖²` on the traces whose difference gives `general`.
    pub cancellation_scale: f64,
    pub full_difference: f64,
}

impl PersistentDensity {
    fn to_array(self) -> [f64; 5] {
        [
            self.general,
            self.closed,
            self.amplitude,
            self.cancellation_scale,
            self.full_difference,
        ]
    }
}

pub fn persistent_current_density(scene: &TwoParticleScene, omega: f64) -> Result<PersistentDensity> {
    let (a1, a2) = scene.polarizabilities(omega)?;
    let r2 = scene.particle2_location();
    let forward = traces_between(&a1, &a2, r2, omega)?;
    let backward = traces_between(&a2, &a1, r2, omega)?;
    let w = transfer_weight(omega);

    let p = scene.position;
    let d = scene.separation();
    let geometric = 16.0 * p.r * p.r / (PI * d.powi(5)) * (omega / SPEED_OF_LIGHT).powi(3);
    let forward_product = a1.alpha_s.im * a2.alpha_f.im;
    let backward_product = a2.alpha_s.im * a1.alpha_f.im;
    Ok(PersistentDensity {
        general: 2.0 * w * (forward.plus_minus - backward.plus_minus),
        closed: geometric * (2.0 * p.phi).cos() * (forward_product - backward_product),
        amplitude: geometric * (forward_product.abs() + backward_product.abs()),
        cancellation_scale: 2.0 * w * cancellation_bound(&a1, &a2, r2, omega)?,
        full_difference: w * (forward.full - backward.full),
    })
}

/// Persistent current at common temperature `temperature`; errors if the evaluations disagree.
pub fn persistent_current(
    scene: &TwoParticleScene,
    temperature: f64,
    cfg: &QuadratureConfig,
) -> Result<PersistentCurrent> {
    let mut scene = *scene;
    scene.particle1.temperature = temperature;
    scene.particle2.temperature = temperature;
    // The floor rides along so a vanishing current is resolved to round-off instead of to zero.
    let [general, closed, amplitude, floor, full_difference] = integrate_omega_try(
        |omega| {
            let theta = planck_theta(omega, temperature);
            let mut density = persistent_current_density(&scene, omega)?;
            density.cancellation_scale *= CANCELLATION_FLOOR;
            Ok(density.to_array().map(|x| x * theta))
        },
        temperature,
        cfg,
        &scene.omega_hints(),
    )?;
    let scale = amplitude.max(floor).max(general.abs()).max(closed.abs());
    let relative_gap = if scale > 0.0 {
        (general - closed).abs() / scale
    } else {
        0.0
    };
    if relative_gap > PERSISTENT_AGREEMENT {
        return Err(Error::PersistentMismatch {
            general,
            closed,
            gap: relative_gap,
        });
    }
    Ok(PersistentCurrent {
        general,
        closed,
        full_difference,
        relative_gap,
        amplitude,
        environment_exchange: general,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::{FixedAlphaModel, ParticleMaterial};
    use crate::two_particle::scene::{CylindricalPosition, ParticleSpec};
    use num_complex::Complex64;

    fn fixed(p: Complex64, d: Complex64, s: Complex64, f: Complex64) -> ParticleMaterial {
        ParticleMaterial::FixedAlpha(FixedAlphaModel {
            alpha_p: p,
            alpha_d: d,
            alpha_s: s,
            alpha_f: f,
        })
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn scene(position: CylindricalPosition) -> TwoParticleScene {
        let m1 = fixed(c(0.3, 0.2), c(0.1, 0.4), c(0.2, 0.3), c(0.0, 0.0));
        let m2 = fixed(c(0.5, 0.1), c(0.2, 0.3), c(0.0, 0.0), c(0.1, -0.2));
        TwoParticleScene::new(
            ParticleSpec::new(m1, 10e-9, 300.0),
            ParticleSpec::new(m2, 10e-9, 300.0),
            position,
        )
        .unwrap()
    }

    #[test]
    fn split_traces_add_up() {
        let s = scene(CylindricalPosition {
            r: 70e-9,
            phi: 0.4,
            x: 30e-9,
        });
        for &w in &[1e13, 1e14, 3e14] {
            let t = transfer_traces(&s, w).unwrap();
            let sum = t.plus_plus + t.minus_minus + t.plus_minus + t.minus_plus;
            assert!((sum - t.full).abs() <= 1e-12 * t.full.abs());
        }
    }

    #[test]
    fn density_matches_explicit_form_per_frequency() {
        let s = scene(CylindricalPosition {
            r: 70e-9,
            phi: 0.4,
            x: -30e-9,
        });
        for &w in &[1e13, 2e14, 1e15] {
            let PersistentDensity {
                general,
                closed,
                amplitude,
                full_difference: full,
                ..
            } = persistent_current_density(&s, w).unwrap();
            assert!((general - closed).abs() <= 1e-10 * amplitude, "{general} {closed}");
            let magnitude = 32.0 * PI * (w / SPEED_OF_LIGHT).powi(4) * transfer_traces(&s, w).unwrap().full.abs();
            assert!((general - full).abs() <= 1e-12 * magnitude, "{general} {full}");
        }
    }

    #[test]
    fn persistent_current_vanishes_at_quarter_angle() {
        let s = scene(CylindricalPosition::perpendicular(100e-9, std::f64::consts::FRAC_PI_4));
        let cfg = QuadratureConfig::default().with_rel_tol(1e-7);
        let h = persistent_current(&s, 300.0, &cfg).unwrap();
        assert!(h.general.abs() < 1e-10 * h.amplitude);
    }
}
