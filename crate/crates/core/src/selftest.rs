//! Pass/fail table of the oracle-equivalence, decomposition and tensorial suites.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constants::SPEED_OF_LIGHT;
use crate::error::{Error, Result};
use crate::materials::{
    DrudeMagnetoModel, LorentzModel, ParticleMaterial, PolarizabilityEntries, UniaxialLorentzModel,
};
use crate::spectral::QuadratureConfig;
use crate::tensor::{CMat3, Vec3};
use crate::two_particle::{
    closed_traces, persistent_current, self_emission_closed, self_emission_oracle_detailed, tensorial_small_b_checks,
    traces_from_matrices, CylindricalPosition, Orientation, ParticleSpec, TwoParticleScene,
};

pub const TRACE_TOLERANCE: f64 = 1e-10;
pub const EMISSION_TOLERANCE: f64 = 1e-6;
pub const DECOMPOSITION_TOLERANCE: f64 = 1e-10;
pub const SPLIT_ORTHOGONALITY_TOLERANCE: f64 = 1e-13;
pub const TENSORIAL_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SelftestRow {
    pub name: String,
    pub status: Status,
    pub max_error: f64,
    pub tolerance: f64,
    pub samples: usize,
}

impl SelftestRow {
    fn new(name: impl Into<String>, max_error: f64, tolerance: f64, samples: usize) -> Self {
        let status = if max_error <= tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            name: name.into(),
            status,
            max_error,
            tolerance,
            samples,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SelftestReport {
    pub rows: Vec<SelftestRow>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.status == Status::Pass)
    }
}

/// Sample counts for each suite.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SelftestOptions {
    pub seed: u64,
    pub trace_samples: usize,
    pub emission_scenes: usize,
    pub persistent_scenes: usize,
    pub matrix_samples: usize,
    pub tensorial_samples: usize,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        Self {
            seed: 2024,
            trace_samples: 100,
            emission_scenes: 12,
            persistent_scenes: 4,
            matrix_samples: 1000,
            tensorial_samples: 1000,
        }
    }
}

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

/// Closed per-frequency traces against 3×3 matrix contraction; also returns the largest cross trace.
fn trace_suite(samples: usize, rng: &mut ChaCha8Rng) -> Result<(f64, f64)> {
    let (mut worst, mut cross) = (0.0f64, 0.0f64);
    for _ in 0..samples {
        let (a1, a2) = (random_entries(rng), random_entries(rng));
        let r = rng.random_range(0.0..2.0);
        let phi = rng.random_range(0.0..std::f64::consts::TAU);
        let x = rng.random_range(-2.0..2.0);
        let omega = rng.random_range(0.05..5.0) * SPEED_OF_LIGHT;
        let t = traces_from_matrices(&a1, &a2, Vec3::new(x, r * phi.cos(), r * phi.sin()), omega)?;
        let (pp, mm) = closed_traces(&a1, &a2, r, phi, x, omega);
        let scale = t.vacuum.abs() + t.plus_plus.abs() + t.minus_minus.abs();
        worst = worst
            .max((pp - t.vacuum - t.plus_plus).abs() / scale)
            .max((mm - t.minus_minus).abs() / scale);
        let split = (t.plus_plus + t.minus_minus + t.plus_minus + t.minus_plus - t.undecomposed).abs();
        cross = cross
            .max((t.plus_minus + t.minus_plus).abs() / scale)
            .max(split / scale);
    }
    Ok((worst, cross))
}

/// `Tr{A⁺B⁻}` over random complex matrices, relative to `‖A‖·‖B‖`.
fn split_orthogonality(samples: usize, rng: &mut ChaCha8Rng) -> f64 {
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let mut entry = || Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let a = CMat3::from_fn(|_, _| entry());
        let b = CMat3::from_fn(|_, _| entry());
        let (a_sym, _) = a.sym_antisym_split();
        let (_, b_anti) = b.sym_antisym_split();
        let t = a_sym.trace_of_product(&b_anti).norm();
        worst = worst.max(t / (a.frobenius_norm() * b.frobenius_norm()));
    }
    worst
}

/// Random InSb pair with `d ∈ [0.05, 50] μm` log-uniform, `B ∈ [0, 10] T`, on or off the field axis.
pub fn random_insb_scene(rng: &mut ChaCha8Rng) -> (TwoParticleScene, Orientation) {
    let d = 5e-8 * 1e3f64.powf(rng.random_range(0.0..1.0));
    let field = rng.random_range(0.0..10.0);
    let orientation = if rng.random_bool(0.5) {
        Orientation::Parallel
    } else {
        Orientation::Perpendicular
    };
    let position = match orientation {
        Orientation::Parallel => CylindricalPosition::parallel(d),
        Orientation::Perpendicular => {
            CylindricalPosition::perpendicular(d, rng.random_range(0.0..std::f64::consts::TAU))
        }
    };
    let material = ParticleMaterial::DrudeMagneto(DrudeMagnetoModel::insb(field));
    let scene = TwoParticleScene::new(
        ParticleSpec::new(material, 1e-8, 300.0),
        ParticleSpec::new(material, 1e-8, 300.0),
        position,
    )
    .expect("separation exceeds both radii");
    (scene, orientation)
}

fn emission_gap(scene: &TwoParticleScene, orientation: Orientation, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    let oracle = self_emission_oracle_detailed(scene, cfg)?;
    let closed = self_emission_closed(scene, orientation, cfg)?;
    let o = oracle.breakdown;
    let gap = [
        o.total - closed.total,
        o.plus_plus - closed.plus_plus,
        o.minus_minus - closed.minus_minus,
        o.vacuum - closed.vacuum,
    ]
    .iter()
    .map(|g| g.abs())
    .fold(0.0, f64::max)
        / o.total.abs();
    let split = (o.scattered() + oracle.cross - oracle.undecomposed).abs() / o.total.abs();
    Ok((gap, split))
}

/// InSb particle against a uniaxial crystal whose axis is tilted in the y-z plane.
fn persistent_scene(rng: &mut ChaCha8Rng) -> TwoParticleScene {
    let crystal = UniaxialLorentzModel {
        ordinary: LorentzModel {
            strength: 2.0,
            omega_1: 1.0e14,
            gamma_1: 2e12,
        },
        extraordinary: LorentzModel {
            strength: 3.5,
            omega_1: 1.2e14,
            gamma_1: 2e12,
        },
    };
    let d = 1e-7 * 10f64.powf(rng.random_range(0.0..1.0));
    let angle: f64 = rng.random_range(0.1..1.4);
    let phi = rng.random_range(0.0..std::f64::consts::TAU);
    let position = CylindricalPosition {
        r: d * angle.sin(),
        phi,
        x: d * angle.cos(),
    };
    TwoParticleScene::new(
        ParticleSpec::new(
            ParticleMaterial::DrudeMagneto(DrudeMagnetoModel::insb(5.0)),
            1e-8,
            300.0,
        ),
        ParticleSpec::new(ParticleMaterial::UniaxialLorentz(crystal), 1e-8, 300.0),
        position,
    )
    .expect("separation exceeds both radii")
}

pub fn run_selftest(options: &SelftestOptions, cfg: &QuadratureConfig) -> Result<SelftestReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut rows = Vec::new();

    let (trace_error, cross_error) = trace_suite(options.trace_samples, &mut rng)?;
    rows.push(SelftestRow::new(
        "closed traces vs 3x3 contraction",
        trace_error,
        TRACE_TOLERANCE,
        options.trace_samples,
    ));
    rows.push(SelftestRow::new(
        "per-frequency ++/-- split, cross traces",
        cross_error,
        DECOMPOSITION_TOLERANCE,
        options.trace_samples,
    ));
    rows.push(SelftestRow::new(
        "Tr{sym * antisym} = 0",
        split_orthogonality(options.matrix_samples, &mut rng),
        SPLIT_ORTHOGONALITY_TOLERANCE,
        options.matrix_samples,
    ));

    let scenes: Vec<_> = (0..options.emission_scenes)
        .map(|_| random_insb_scene(&mut rng))
        .collect();
    let gaps = scenes
        .par_iter()
        .map(|(scene, orientation)| emission_gap(scene, *orientation, cfg))
        .collect::<Result<Vec<_>>>()?;
    let (emission, split) = gaps
        .iter()
        .fold((0.0f64, 0.0f64), |(a, b), (g, s)| (a.max(*g), b.max(*s)));
    rows.push(SelftestRow::new(
        "self emission closed form vs oracle",
        emission,
        EMISSION_TOLERANCE,
        options.emission_scenes,
    ));
    rows.push(SelftestRow::new(
        "integrated ++/-- split vs undecomposed",
        split,
        DECOMPOSITION_TOLERANCE,
        options.emission_scenes,
    ));

    let persistent: Vec<_> = (0..options.persistent_scenes)
        .map(|_| persistent_scene(&mut rng))
        .collect();
    let persistent_gap = persistent
        .par_iter()
        .map(|scene| match persistent_current(scene, 300.0, cfg) {
            Ok(p) => Ok(p.relative_gap),
            Err(Error::PersistentMismatch { gap, .. }) => Ok(gap),
            Err(e) => Err(e),
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    rows.push(SelftestRow::new(
        "persistent current general vs explicit",
        persistent_gap,
        crate::two_particle::PERSISTENT_AGREEMENT,
        options.persistent_scenes,
    ));

    let tensorial = tensorial_small_b_checks(options.tensorial_samples, options.seed);
    for check in tensorial.checks {
        rows.push(SelftestRow::new(
            check.name,
            check.max_relative_error,
            TENSORIAL_TOLERANCE,
            tensorial.samples,
        ));
    }
    Ok(SelftestReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_selftest_passes() {
        let options = SelftestOptions {
            trace_samples: 20,
            emission_scenes: 2,
            persistent_scenes: 1,
            matrix_samples: 50,
            tensorial_samples: 50,
            ..SelftestOptions::default()
        };
        let report = run_selftest(&options, &QuadratureConfig::default()).unwrap();
        for row in &report.rows {
            assert_eq!(row.status, Status::Pass, "{row:?}");
        }
        assert_eq!(report.rows.len(), 12);
    }
}
