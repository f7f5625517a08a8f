use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use super::scene::{Orientation, TwoParticleScene};
use crate::constants::SPEED_OF_LIGHT;
use crate::error::{Error, Result};
use crate::materials::PolarizabilityEntries;
use crate::spectral::{integrate_omega_try, planck_theta, QuadratureConfig, SpectralCurve, SpectralKind};
use crate::tensor::{g0_coincident_imag, g1_scattered, PQPair, Vec3};

/// Self emission of particle 2 split into vacuum, reciprocal (++) and nonreciprocal (−−) parts, W.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct EmissionBreakdown {
    pub vacuum: f64,
    pub plus_plus: f64,
    pub minus_minus: f64,
    pub total: f64,
}

impl EmissionBreakdown {
    pub fn from_parts(vacuum: f64, plus_plus: f64, minus_minus: f64) -> Self {
        Self {
            vacuum,
            plus_plus,
            minus_minus,
            total: vacuum + plus_plus + minus_minus,
        }
    }

    /// Part caused by particle 1.
    pub fn scattered(&self) -> f64 {
        self.plus_plus + self.minus_minus
    }
}

/// Per-frequency traces `Tr{α2I·G1I(r2,r2)}` and their symmetric/antisymmetric pieces, m².
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SelfEmissionTraces {
    pub vacuum: f64,
    pub plus_plus: f64,
    pub minus_minus: f64,
    pub plus_minus: f64,
    pub minus_plus: f64,
    /// Trace of the full scattered product, before splitting.
    pub undecomposed: f64,
}

/// Assembles both matrices and contracts them directly.
pub fn self_emission_traces(scene: &TwoParticleScene, omega: f64) -> Result<SelfEmissionTraces> {
    let (a1, a2) = scene.polarizabilities(omega)?;
    traces_from_matrices(&a1, &a2, scene.particle2_location(), omega)
}

pub(crate) fn traces_from_matrices(
    a1: &PolarizabilityEntries,
    a2: &PolarizabilityEntries,
    r2: Vec3,
    omega: f64,
) -> Result<SelfEmissionTraces> {
    let alpha2_i = a2.hermitian_matrix();
    let scattered_i = g1_scattered(r2, r2, omega, &a1.matrix(), Vec3::ZERO)?.hermitian_part();
    let vacuum = alpha2_i.trace_of_product(&g0_coincident_imag(omega)?).re;
    let (alpha_sym, alpha_anti) = alpha2_i.sym_antisym_split();
    let (green_sym, green_anti) = scattered_i.sym_antisym_split();
    Ok(SelfEmissionTraces {
        vacuum,
        plus_plus: alpha_sym.trace_of_product(&green_sym).re,
        minus_minus: alpha_anti.trace_of_product(&green_anti).re,
        plus_minus: alpha_sym.trace_of_product(&green_anti).re,
        minus_plus: alpha_anti.trace_of_product(&green_sym).re,
        undecomposed: alpha2_i.trace_of_product(&scattered_i).re,
    })
}

/// `(8/c²)·ω²·Θ(ω,T)`, converting a trace into a spectral heat density.
fn trace_weight(omega: f64, temperature: f64) -> f64 {
    8.0 * omega * omega / (SPEED_OF_LIGHT * SPEED_OF_LIGHT) * planck_theta(omega, temperature)
}

/// Oracle result with the pieces that should vanish or coincide.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OracleEmission {
    pub breakdown: EmissionBreakdown,
    /// Integral of the undecomposed scattered trace, W.
    pub undecomposed: f64,
    /// Integral of the mixed `+−` and `−+` traces, W.
    pub cross: f64,
}

pub fn self_emission_oracle(scene: &TwoParticleScene, cfg: &QuadratureConfig) -> Result<EmissionBreakdown> {
    Ok(self_emission_oracle_detailed(scene, cfg)?.breakdown)
}

pub fn self_emission_oracle_detailed(scene: &TwoParticleScene, cfg: &QuadratureConfig) -> Result<OracleEmission> {
    let t2 = scene.particle2.temperature;
    let [vacuum, pp, mm, undecomposed, cross] = integrate_omega_try(
        |omega| {
            let t = self_emission_traces(scene, omega)?;
            let w = trace_weight(omega, t2);
            Ok([
                w * t.vacuum,
                w * t.plus_plus,
                w * t.minus_minus,
                w * t.undecomposed,
                w * (t.plus_minus + t.minus_plus),
            ])
        },
        t2,
        cfg,
        &scene.omega_hints(),
    )?;
    Ok(OracleEmission {
        breakdown: EmissionBreakdown::from_parts(vacuum, pp, mm),
        undecomposed,
        cross,
    })
}

/// Spectral self emission `h2(ω)` from the oracle, W·s/rad.
pub fn self_emission_spectrum(scene: &TwoParticleScene, omega_grid: Vec<f64>) -> Result<SpectralCurve> {
    let t2 = scene.particle2.temperature;
    SpectralCurve::tabulate(omega_grid, SpectralKind::Heat, |omega| {
        let t = self_emission_traces(scene, omega)?;
        Ok(trace_weight(omega, t2) * (t.vacuum + t.undecomposed))
    })
}

/// Polarizability entry entering the closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaEntry {
    /// Along the field.
    Axial,
    /// Transverse diagonal.
    Diagonal,
    /// Transverse gyrotropic.
    Gyrotropic,
}

/// Retardation factor for a separation along the field, at `x = ωd/c`.
pub fn g_parallel(entry: AlphaEntry, x: f64) -> Complex64 {
    let e = Complex64::from_polar(1.0, 2.0 * x);
    let x2 = x * x;
    match entry {
        AlphaEntry::Axial => e * Complex64::new(1.0 - x2, -2.0 * x) * 4.0,
        AlphaEntry::Diagonal | AlphaEntry::Gyrotropic => {
            e * Complex64::new(1.0 - 3.0 * x2 + x2 * x2, -2.0 * x + 2.0 * x2 * x) * 2.0
        }
    }
}

/// Retardation factor for a separation normal to the field, at `x = ωd/c`.
pub fn g_perpendicular(entry: AlphaEntry, x: f64) -> Complex64 {
    let e = Complex64::from_polar(1.0, 2.0 * x);
    let x2 = x * x;
    match entry {
        AlphaEntry::Axial => e * Complex64::new(1.0 - 3.0 * x2 + x2 * x2, -2.0 * x + 2.0 * x2 * x),
        AlphaEntry::Diagonal => e * Complex64::new(5.0 - 7.0 * x2 + x2 * x2, -10.0 * x + 2.0 * x2 * x),
        AlphaEntry::Gyrotropic => e * Complex64::new(-1.0 + 2.0 * x2, 2.0 * x - x2 * x) * 4.0,
    }
}

/// Retardation factor for reciprocal isotropic particles.
pub fn g_reciprocal(x: f64) -> Complex64 {
    let x2 = x * x;
    Complex64::from_polar(1.0, 2.0 * x) * Complex64::new(3.0 - 5.0 * x2 + x2 * x2, -6.0 * x + 2.0 * x2 * x)
}

fn g_for(orientation: Orientation, entry: AlphaEntry, x: f64) -> Complex64 {
    match orientation {
        Orientation::Parallel => g_parallel(entry, x),
        Orientation::Perpendicular => g_perpendicular(entry, x),
    }
}

/// `(4/3πc³)·ω³·Im(αp + 2αd)`, the isolated-particle emission per unit Θ.
pub fn vacuum_emission_density(a2: &PolarizabilityEntries, omega: f64) -> f64 {
    4.0 * omega.powi(3) / (3.0 * PI * SPEED_OF_LIGHT.powi(3)) * (a2.alpha_p.im + 2.0 * a2.alpha_d.im)
}

/// Scattered emission per unit Θ for the axial, diagonal and gyrotropic entries, W·s/(rad·J).
pub fn closed_scattered_density(
    a1: &PolarizabilityEntries,
    a2: &PolarizabilityEntries,
    omega: f64,
    d: f64,
    orientation: Orientation,
) -> [f64; 3] {
    let x = omega * d / SPEED_OF_LIGHT;
    let pref = 2.0 / (PI * d.powi(6));
    let term = |entry, a1m: Complex64, a2m: Complex64| pref * a2m.im * (a1m * g_for(orientation, entry, x)).im;
    [
        term(AlphaEntry::Axial, a1.alpha_p, a2.alpha_p),
        term(AlphaEntry::Diagonal, a1.alpha_d, a2.alpha_d),
        term(AlphaEntry::Gyrotropic, a1.alpha_f, a2.alpha_f),
    ]
}

/// Scattered emission per unit Θ for reciprocal isotropic particles.
pub fn reciprocal_scattered_density(alpha1: Complex64, alpha2: Complex64, omega: f64, d: f64) -> f64 {
    let x = omega * d / SPEED_OF_LIGHT;
    4.0 / (PI * d.powi(6)) * alpha2.im * (alpha1 * g_reciprocal(x)).im
}

pub(crate) fn check_orientation(scene: &TwoParticleScene, orientation: Orientation) -> Result<()> {
    let p = scene.position;
    let tol = 1e-9 * p.distance();
    let ok = match orientation {
        Orientation::Parallel => p.r.abs() <= tol,
        Orientation::Perpendicular => p.x.abs() <= tol,
    };
    if !ok {
        return Err(Error::OrientationMismatch {
            expected: orientation.name(),
            r: p.r,
            x: p.x,
        });
    }
    Ok(())
}

/// Frequency at which material structure (such as a nonzero `αs`) is probed.
const REFERENCE_FREQUENCY: f64 = 1e14;

fn check_isotropic_in_plane(a1: &PolarizabilityEntries, a2: &PolarizabilityEntries) -> Result<()> {
    if a1.alpha_s.norm() == 0.0 && a2.alpha_s.norm() == 0.0 {
        Ok(())
    } else {
        Err(Error::AnisotropicClosedForm)
    }
}

/// Self emission from the g-function closed forms.
pub fn self_emission_closed(
    scene: &TwoParticleScene,
    orientation: Orientation,
    cfg: &QuadratureConfig,
) -> Result<EmissionBreakdown> {
    check_orientation(scene, orientation)?;
    let (a1, a2) = scene.polarizabilities(REFERENCE_FREQUENCY)?;
    check_isotropic_in_plane(&a1, &a2)?;
    let d = scene.separation();
    let t2 = scene.particle2.temperature;
    let [vacuum, pp, mm] = integrate_omega_try(
        |omega| {
            let (a1, a2) = scene.polarizabilities(omega)?;
            let theta = planck_theta(omega, t2);
            let [p, dg, f] = closed_scattered_density(&a1, &a2, omega, d, orientation);
            Ok([theta * vacuum_emission_density(&a2, omega), theta * (p + dg), theta * f])
        },
        t2,
        cfg,
        &scene.omega_hints(),
    )?;
    Ok(EmissionBreakdown::from_parts(vacuum, pp, mm))
}

/// Short-distance form of the closed emission: static `d⁻⁶` and retarded `d⁻³` (or `d⁻¹`) pieces.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct NearFieldEmission {
    pub vacuum: f64,
    /// Transfer into particle 1, driven by `Im α1`.
    pub absorbed: f64,
    /// Change of emission to the environment, driven by `Re α1`.
    pub environment: f64,
    pub total: f64,
}

/// Near-field densities per unit Θ: `(Im α1 term, Re α1 term)`.
pub fn near_field_density(
    a1: &PolarizabilityEntries,
    a2: &PolarizabilityEntries,
    omega: f64,
    d: f64,
    orientation: Orientation,
) -> (f64, f64) {
    let k3 = (omega / SPEED_OF_LIGHT).powi(3);
    let pref = 4.0 / PI;
    let (ip, id, ifg) = (a2.alpha_p.im, a2.alpha_d.im, a2.alpha_f.im);
    let retarded = ip * a1.alpha_p.re - id * a1.alpha_d.re - ifg * a1.alpha_f.re;
    match orientation {
        Orientation::Parallel => {
            let absorbed = 2.0 * ip * a1.alpha_p.im + id * a1.alpha_d.im + ifg * a1.alpha_f.im;
            (
                pref * absorbed / d.powi(6),
                pref * 4.0 / (3.0 * d.powi(3)) * k3 * retarded,
            )
        }
        Orientation::Perpendicular => {
            let absorbed = ip * a1.alpha_p.im + 5.0 * id * a1.alpha_d.im - 4.0 * ifg * a1.alpha_f.im;
            (
                pref * absorbed / (2.0 * d.powi(6)),
                -pref * 2.0 / (3.0 * d.powi(3)) * k3 * retarded,
            )
        }
    }
}

/// Near-field densities per unit Θ for reciprocal isotropic particles.
pub fn reciprocal_near_field_density(alpha1: Complex64, alpha2: Complex64, omega: f64, d: f64) -> (f64, f64) {
    let k5 = (omega / SPEED_OF_LIGHT).powi(5);
    let pref = 4.0 / PI * alpha2.im;
    (
        pref * 3.0 * alpha1.im / d.powi(6),
        pref * 22.0 / (15.0 * d) * k5 * alpha1.re,
    )
}

pub fn self_emission_near_field(
    scene: &TwoParticleScene,
    orientation: Orientation,
    cfg: &QuadratureConfig,
) -> Result<NearFieldEmission> {
    check_orientation(scene, orientation)?;
    let d = scene.separation();
    let t2 = scene.particle2.temperature;
    let [vacuum, absorbed, environment] = integrate_omega_try(
        |omega| {
            let (a1, a2) = scene.polarizabilities(omega)?;
            let theta = planck_theta(omega, t2);
            let (s, r) = near_field_density(&a1, &a2, omega, d, orientation);
            Ok([theta * vacuum_emission_density(&a2, omega), theta * s, theta * r])
        },
        t2,
        cfg,
        &scene.omega_hints(),
    )?;
    Ok(NearFieldEmission {
        vacuum,
        absorbed,
        environment,
        total: vacuum + absorbed + environment,
    })
}

/// Corrected closed-form traces `(Tr{α2I⁺G1I⁺}, Tr{α2I⁻G1I⁻})` for any position and `αs`.
pub fn appendix_d_traces(scene: &TwoParticleScene, omega: f64) -> Result<(f64, f64)> {
    let (a1, a2) = scene.polarizabilities(omega)?;
    let p = scene.position;
    Ok(closed_traces(&a1, &a2, p.r, p.phi, p.x, omega))
}

pub(crate) fn closed_traces(
    a1: &PolarizabilityEntries,
    a2: &PolarizabilityEntries,
    r: f64,
    phi: f64,
    x_axial: f64,
    omega: f64,
) -> (f64, f64) {
    let k = omega / SPEED_OF_LIGHT;
    let d2 = r * r + x_axial * x_axial;
    let d = d2.sqrt();
    let PQPair { p, q } = PQPair::at(k * d);
    let phase = Complex64::from_polar(1.0, 2.0 * k * d);
    let (r2, x2) = (r * r, x_axial * x_axial);
    let s2 = (2.0 * phi).sin();
    let (ap, ad, as_, af) = (a1.alpha_p, a1.alpha_d, a1.alpha_s, a1.alpha_f);

    let mixed = q * q * x2 * r2;
    let transverse = p * p * (2.0 * d2 * d2) + p * q * (2.0 * d2 * r2) + q * q * (r2 * r2);
    let axial_sum = p * d2 + q * x2;
    let transverse_sum = p * d2 + q * r2;

    let axial_row = ap * axial_sum * axial_sum + (ad + as_ * s2) * mixed;
    let diagonal_row = ap * mixed + ad * transverse + as_ * (p * (2.0 * d2) + q * r2) * q * r2 * s2;
    let anisotropic_row = ap * mixed * s2
        + ad * (p * q * (2.0 * d2) + q * q * r2) * r2 * s2
        + as_ * (p * p * (2.0 * d2 * d2) + p * q * (2.0 * d2 * r2) + q * q * (r2 * r2) * s2 * s2);

    let scattered = a2.alpha_p.im * (phase * axial_row).im
        + a2.alpha_d.im * (phase * diagonal_row).im
        + a2.alpha_s.im * (phase * anisotropic_row).im;
    let norm = 4.0 * PI * k * k * d2.powi(5);
    let vacuum = k / (6.0 * PI) * (a2.alpha_p.im + 2.0 * a2.alpha_d.im);
    let trace_pp = vacuum + scattered / norm;
    let trace_mm = a2.alpha_f.im * (af * phase * p * transverse_sum).im / (2.0 * PI * k * k * d2.powi(4));
    (trace_pp, trace_mm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::{DrudeMagnetoModel, FixedAlphaModel, ParticleMaterial};
    use crate::two_particle::scene::{CylindricalPosition, ParticleSpec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_entries(rng: &mut ChaCha8Rng) -> PolarizabilityEntries {
        let mut z = || Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(0.0..1.0));
        PolarizabilityEntries {
            alpha_p: z(),
            alpha_d: z(),
            alpha_s: z(),
            alpha_f: z(),
            radius: 1.0,
        }
    }

    #[test]
    fn g_functions_at_zero_argument() {
        assert_eq!(g_parallel(AlphaEntry::Axial, 0.0), Complex64::new(4.0, 0.0));
        assert_eq!(g_parallel(AlphaEntry::Diagonal, 0.0), Complex64::new(2.0, 0.0));
        assert_eq!(g_perpendicular(AlphaEntry::Gyrotropic, 0.0), Complex64::new(-4.0, 0.0));
    }

    #[test]
    fn closed_traces_match_matrix_contraction() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let (a1, a2) = (random_entries(&mut rng), random_entries(&mut rng));
            let r = rng.random_range(0.0..2.0);
            let phi = rng.random_range(0.0..std::f64::consts::TAU);
            let x = rng.random_range(-2.0..2.0);
            let omega = rng.random_range(0.05..5.0) * SPEED_OF_LIGHT;
            let at = Vec3::new(x, r * phi.cos(), r * phi.sin());
            let t = traces_from_matrices(&a1, &a2, at, omega).unwrap();
            let (pp, mm) = closed_traces(&a1, &a2, r, phi, x, omega);
            let scale = t.vacuum.abs() + t.plus_plus.abs() + t.minus_minus.abs();
            assert!((pp - t.vacuum - t.plus_plus).abs() <= 1e-10 * scale, "{pp} {t:?}");
            assert!((mm - t.minus_minus).abs() <= 1e-10 * scale, "{mm} {t:?}");
            assert!((t.plus_minus + t.minus_plus).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn on_axis_traces_reduce_to_parallel_g_functions() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let (mut a1, mut a2) = (random_entries(&mut rng), random_entries(&mut rng));
            a1.alpha_s = Complex64::new(0.0, 0.0);
            a2.alpha_s = Complex64::new(0.0, 0.0);
            let d = rng.random_range(0.1..3.0);
            let omega = rng.random_range(0.05..5.0) * SPEED_OF_LIGHT;
            let weight = 8.0 * omega * omega / (SPEED_OF_LIGHT * SPEED_OF_LIGHT);
            let (pp, mm) = closed_traces(&a1, &a2, 0.0, 0.0, d, omega);
            let [p, dg, f] = closed_scattered_density(&a1, &a2, omega, d, Orientation::Parallel);
            let vac = vacuum_emission_density(&a2, omega);
            let scale = vac.abs() + p.abs() + dg.abs() + f.abs();
            assert!((weight * pp - vac - p - dg).abs() <= 1e-10 * scale);
            assert!((weight * mm - f).abs() <= 1e-10 * scale);
        }
    }

    #[test]
    fn perpendicular_g_functions_match_traces() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let (mut a1, mut a2) = (random_entries(&mut rng), random_entries(&mut rng));
            a1.alpha_s = Complex64::new(0.0, 0.0);
            a2.alpha_s = Complex64::new(0.0, 0.0);
            let d = rng.random_range(0.1..3.0);
            let phi = rng.random_range(0.0..std::f64::consts::TAU);
            let omega = rng.random_range(0.05..5.0) * SPEED_OF_LIGHT;
            let weight = 8.0 * omega * omega / (SPEED_OF_LIGHT * SPEED_OF_LIGHT);
            let (pp, mm) = closed_traces(&a1, &a2, d, phi, 0.0, omega);
            let [p, dg, f] = closed_scattered_density(&a1, &a2, omega, d, Orientation::Perpendicular);
            let vac = vacuum_emission_density(&a2, omega);
            let scale = vac.abs() + p.abs() + dg.abs() + f.abs();
            assert!((weight * pp - vac - p - dg).abs() <= 1e-10 * scale);
            assert!((weight * mm - f).abs() <= 1e-10 * scale);
        }
    }

    #[test]
    fn isotropic_closed_forms_reduce_to_reciprocal() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let alpha1 = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(0.0..1.0));
            let alpha2 = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(0.0..1.0));
            let x: f64 = rng.random_range(0.0..10.0);
            let d = 1.0;
            let omega = x * SPEED_OF_LIGHT / d;
            let a1 = PolarizabilityEntries::isotropic(alpha1, 1.0);
            let a2 = PolarizabilityEntries::isotropic(alpha2, 1.0);
            let want = reciprocal_scattered_density(alpha1, alpha2, omega, d);
            for o in [Orientation::Parallel, Orientation::Perpendicular] {
                let [p, dg, f] = closed_scattered_density(&a1, &a2, omega, d, o);
                assert_eq!(f, 0.0);
                assert!((p + dg - want).abs() <= 1e-12 * (p.abs() + dg.abs()));
            }
        }
    }

    #[test]
    fn special_cone_cancels_leading_gyrotropic_term() {
        let a = PolarizabilityEntries {
            alpha_f: Complex64::new(0.3, 0.7),
            ..PolarizabilityEntries::zero(1.0)
        };
        let omega = 1e-4 * SPEED_OF_LIGHT;
        let on_cone = |d: f64| {
            let r = d / 3f64.sqrt();
            closed_traces(&a, &a, r, 0.3, (d * d - r * r).sqrt(), omega).1
        };
        let perpendicular = |d: f64| closed_traces(&a, &a, d, 0.3, 0.0, omega).1;
        // At x = ωd/c = 1e-4 the trace is its d⁻⁶ coefficient up to O(x²).
        assert!(on_cone(1.0).abs() < 1e-3 * perpendicular(1.0).abs());
    }

    #[test]
    fn closed_form_rejects_off_axis_scene() {
        let m = ParticleMaterial::DrudeMagneto(DrudeMagnetoModel::insb(1.0));
        let p = ParticleSpec::new(m, 10e-9, 300.0);
        let s = TwoParticleScene::new(
            p,
            p,
            CylindricalPosition {
                r: 50e-9,
                phi: 0.0,
                x: 50e-9,
            },
        )
        .unwrap();
        let cfg = QuadratureConfig::default();
        assert!(matches!(
            self_emission_closed(&s, Orientation::Parallel, &cfg),
            Err(Error::OrientationMismatch { .. })
        ));
        let aniso = ParticleMaterial::FixedAlpha(FixedAlphaModel {
            alpha_s: Complex64::new(0.1, 0.1),
            ..Default::default()
        });
        let s = TwoParticleScene::new(
            ParticleSpec::new(aniso, 10e-9, 300.0),
            p,
            CylindricalPosition::parallel(100e-9),
        )
        .unwrap();
        assert!(matches!(
            self_emission_closed(&s, Orientation::Parallel, &cfg),
            Err(Error::AnisotropicClosedForm)
        ));
    }
}
