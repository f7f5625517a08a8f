//! Thermal occupation and the ω / k⊥ integration drivers.

mod quadrature;
mod thermal;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_10, PI};

pub use quadrature::{compensated_sum, integrate_adaptive, merge_edges, AdaptiveOptions, Tolerance};
pub use thermal::{planck_theta, thermal_wavelength};

use crate::constants::{BOLTZMANN, HBAR, SPEED_OF_LIGHT};
use crate::error::{Error, Result};

/// Tolerances and truncation settings shared by every integral.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// `ω_max = Λ·k_B·T_max/ħ`.
    pub omega_cutoff_factor: f64,
    /// The evanescent k⊥ range ends where `e^{−2|k_z|d}` drops below `10^−decades`.
    pub k_evanescent_decades: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 0.0,
            omega_cutoff_factor: 45.0,
            k_evanescent_decades: 16.0,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [self.rel_tol, self.omega_cutoff_factor, self.k_evanescent_decades]
            .iter()
            .all(|v| v.is_finite() && *v > 0.0);
        if positive && self.abs_tol >= 0.0 && self.abs_tol.is_finite() && self.max_subdivisions > 0 {
            Ok(())
        } else {
            Err(Error::InvalidScene(format!("invalid quadrature settings: {self:?}")))
        }
    }

    pub fn with_rel_tol(self, rel_tol: f64) -> Self {
        Self { rel_tol, ..self }
    }

    /// Upper end of the ω window for the hottest temperature `t_max`.
    pub fn omega_max(&self, t_max: f64) -> f64 {
        self.omega_cutoff_factor * BOLTZMANN * t_max / HBAR
    }

    fn outer_options(&self) -> AdaptiveOptions {
        AdaptiveOptions {
            tolerance: Tolerance {
                rel: self.rel_tol,
                abs: self.abs_tol,
            },
            max_subdivisions: self.max_subdivisions,
            parallel: true,
        }
    }

    fn inner_options(&self) -> AdaptiveOptions {
        AdaptiveOptions {
            tolerance: Tolerance {
                rel: (self.rel_tol * 1e-2).max(1e-13),
                abs: 0.0,
            },
            max_subdivisions: self.max_subdivisions,
            parallel: false,
        }
    }
}

/// A spectral feature of width `width` (half width at half maximum) at `center`, rad/s.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Resonance {
    pub center: f64,
    pub width: f64,
}

impl Resonance {
    pub fn new(center: f64, width: f64) -> Self {
        Self { center, width }
    }

    fn breakpoints(&self) -> impl Iterator<Item = f64> + '_ {
        const OFFSETS: [f64; 6] = [0.0, 0.25, 1.0, 4.0, 16.0, 64.0];
        OFFSETS.iter().flat_map(move |s| {
            let dx = s * self.width;
            [self.center - dx, self.center + dx]
        })
    }
}

/// Extra structure of an ω integrand that sets the initial panels.
#[derive(Clone, Debug, Default)]
pub struct OmegaHints {
    pub resonances: Vec<Resonance>,
    /// Distance `d` in an `e^{2iωd/c}` factor; panels are kept below a quarter period.
    pub oscillation_distance: Option<f64>,
}

const UNIFORM_PANELS: usize = 24;
const GEOMETRIC_LEVELS: i32 = 20;
const MAX_OSCILLATION_PANELS: usize = 20_000;

/// Initial panel edges on `[0, omega_max]`.
pub fn omega_edges(omega_max: f64, hints: &OmegaHints) -> Vec<f64> {
    let mut interior: Vec<f64> = (1..UNIFORM_PANELS)
        .map(|i| omega_max * i as f64 / UNIFORM_PANELS as f64)
        .collect();
    interior.extend((1..=GEOMETRIC_LEVELS).map(|k| omega_max * 0.5f64.powi(k)));
    for r in &hints.resonances {
        interior.extend(r.breakpoints());
    }
    if let Some(d) = hints.oscillation_distance.filter(|d| *d > 0.0) {
        let quarter_period = PI * SPEED_OF_LIGHT / (4.0 * d);
        let count = ((omega_max / quarter_period).ceil() as usize).min(MAX_OSCILLATION_PANELS);
        if count > UNIFORM_PANELS {
            interior.extend((1..count).map(|i| omega_max * i as f64 / count as f64));
        }
    }
    merge_edges(0.0, omega_max, interior)
}

/// `∫₀^{ω_max} f(ω) dω` with `ω_max` set by `t_scale`; zero when `t_scale ≤ 0`.
pub fn integrate_omega<F>(integrand: F, t_scale: f64, cfg: &QuadratureConfig) -> Result<f64>
where
    F: Fn(f64) -> f64 + Sync,
{
    integrate_omega_hinted(integrand, t_scale, cfg, &OmegaHints::default())
}

pub fn integrate_omega_hinted<F>(integrand: F, t_scale: f64, cfg: &QuadratureConfig, hints: &OmegaHints) -> Result<f64>
where
    F: Fn(f64) -> f64 + Sync,
{
    let [v] = integrate_omega_vec(|w| [integrand(w)], t_scale, cfg, hints)?;
    Ok(v)
}

/// Several ω integrands evaluated on shared nodes.
pub fn integrate_omega_vec<const N: usize, F>(
    integrand: F,
    t_scale: f64,
    cfg: &QuadratureConfig,
    hints: &OmegaHints,
) -> Result<[f64; N]>
where
    F: Fn(f64) -> [f64; N] + Sync,
{
    if !(t_scale > 0.0) {
        return Ok([0.0; N]);
    }
    let edges = omega_edges(cfg.omega_max(t_scale), hints);
    Ok(integrate_adaptive(&integrand, &edges, cfg.outer_options())?)
}

/// Like [`integrate_omega_vec`] for an integrand that can fail; the first failure is returned.
pub fn integrate_omega_try<const N: usize, F>(
    integrand: F,
    t_scale: f64,
    cfg: &QuadratureConfig,
    hints: &OmegaHints,
) -> Result<[f64; N]>
where
    F: Fn(f64) -> Result<[f64; N]> + Sync,
{
    let failure = std::sync::OnceLock::new();
    let value = integrate_omega_vec(
        |omega| match integrand(omega) {
            Ok(v) => v,
            Err(e) => {
                let _ = failure.set(e);
                [0.0; N]
            }
        },
        t_scale,
        cfg,
        hints,
    );
    match failure.into_inner() {
        Some(e) => Err(e),
        None => value,
    }
}

/// Quadrature node on the propagating branch `k⊥ = k0·sinθ`.
#[derive(Clone, Copy, Debug)]
pub struct PropagatingNode {
    pub k_perp: f64,
    pub sin_theta: f64,
    pub cos_theta: f64,
}

/// Quadrature node on the evanescent branch `k⊥ = √(κ² + k0²)`.
#[derive(Clone, Copy, Debug)]
pub struct EvanescentNode {
    pub k_perp: f64,
    pub kappa: f64,
}

/// Propagating and evanescent contributions of a k⊥ integral.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KperpParts<const N: usize> {
    pub propagating: [f64; N],
    pub evanescent: [f64; N],
}

impl<const N: usize> KperpParts<N> {
    pub fn total(&self) -> [f64; N] {
        std::array::from_fn(|i| self.propagating[i] + self.evanescent[i])
    }
}

/// Upper limit of the decay rate κ for separation `d`.
pub fn kappa_max(d: f64, cfg: &QuadratureConfig) -> f64 {
    cfg.k_evanescent_decades * LN_10 / (2.0 * d)
}

/// `∫₀^{k0} prop dk⊥ + ∫_{k0}^{k_max} evan dk⊥` with `k0 = ω/c`.
pub fn integrate_kperp<P, E>(
    integrand_prop: P,
    integrand_evan: E,
    omega: f64,
    d: f64,
    cfg: &QuadratureConfig,
) -> Result<f64>
where
    P: Fn(f64) -> f64 + Sync,
    E: Fn(f64) -> f64 + Sync,
{
    let parts = integrate_kperp_split(
        |n: PropagatingNode| [integrand_prop(n.k_perp)],
        |n: EvanescentNode| [integrand_evan(n.k_perp)],
        omega,
        d,
        cfg,
        &[],
    )?;
    Ok(parts.total()[0])
}

/// k⊥ integral split at the light line, with integrands given at typed nodes.
///
/// `poles` are complex k⊥ positions of surface resonances; those beyond the light line
/// get dedicated breakpoints on the evanescent branch.
pub fn integrate_kperp_split<const N: usize, P, E>(
    prop: P,
    evan: E,
    omega: f64,
    d: f64,
    cfg: &QuadratureConfig,
    poles: &[Complex64],
) -> Result<KperpParts<N>>
where
    P: Fn(PropagatingNode) -> [f64; N] + Sync,
    E: Fn(EvanescentNode) -> [f64; N] + Sync,
{
    if !(d > 0.0) {
        return Err(Error::InvalidScene(format!("separation must be positive, got {d:e} m")));
    }
    let k0 = omega / SPEED_OF_LIGHT;
    let options = cfg.inner_options();

    let propagating = if k0 > 0.0 {
        let jacobian_prop = |theta: f64| {
            let (s, c) = theta.sin_cos();
            let v = prop(PropagatingNode {
                k_perp: k0 * s,
                sin_theta: s,
                cos_theta: c,
            });
            v.map(|x| x * k0 * c)
        };
        let edges = merge_edges(0.0, 0.5 * PI, (1..8).map(|i| 0.5 * PI * i as f64 / 8.0));
        integrate_adaptive(&jacobian_prop, &edges, options)?
    } else {
        [0.0; N]
    };

    let kmax = kappa_max(d, cfg);
    let jacobian_evan = |kappa: f64| {
        let k = kappa.hypot(k0);
        let v = evan(EvanescentNode { k_perp: k, kappa });
        v.map(|x| x * kappa / k)
    };
    let decay = 1.0 / (2.0 * d);
    let mut interior: Vec<f64> = [0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0]
        .iter()
        .map(|s| s * decay)
        .collect();
    for pole in poles {
        if pole.re > k0 {
            let kappa = (pole * pole - k0 * k0).sqrt();
            let (center, width) = (kappa.re.abs(), kappa.im.abs().max(1e-9 * kappa.re.abs()));
            interior.extend(Resonance::new(center, width).breakpoints());
        }
    }
    let edges = merge_edges(0.0, kmax, interior);
    let evanescent = integrate_adaptive(&jacobian_evan, &edges, options)?;
    Ok(KperpParts {
        propagating,
        evanescent,
    })
}

/// What a spectral density integrates to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralKind {
    /// W·s/rad.
    Heat,
    /// N·s/rad.
    Force,
}

/// Per-frequency density on a strictly increasing ω grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralCurve {
    pub omega_grid: Vec<f64>,
    pub density: Vec<f64>,
    pub kind: SpectralKind,
}

impl SpectralCurve {
    pub fn tabulate<F>(omega_grid: Vec<f64>, kind: SpectralKind, density: F) -> Result<Self>
    where
        F: Fn(f64) -> Result<f64> + Sync,
    {
        use rayon::prelude::*;
        let density = omega_grid
            .par_iter()
            .map(|&w| density(w))
            .collect::<Result<Vec<f64>>>()?;
        Ok(Self {
            omega_grid,
            density,
            kind,
        })
    }

    pub fn len(&self) -> usize {
        self.omega_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega_grid.is_empty()
    }
}

/// Log-spaced grid of `points` frequencies on `[lo, hi]` merged with resonance centers.
pub fn spectral_grid(lo: f64, hi: f64, points: usize, resonances: &[Resonance]) -> Vec<f64> {
    let ratio = (hi / lo).ln();
    let denom = (points.max(2) - 1) as f64;
    let mut grid: Vec<f64> = (0..points.max(2))
        .map(|i| lo * (ratio * i as f64 / denom).exp())
        .collect();
    for r in resonances {
        grid.extend([r.center - r.width, r.center, r.center + r.width]);
    }
    grid.retain(|w| *w >= lo && *w <= hi);
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}
