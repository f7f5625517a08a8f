use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::tensor::Vec3;

type Real3 = [[f64; 3]; 3];

fn levi_civita_symbol(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// `B̃_ij = ε_ijk·B_k`.
fn field_matrix(b: Vec3) -> Real3 {
    let b = b.to_array();
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| levi_civita_symbol(i, j, k) * b[k]).sum()))
}

fn dyad(u: Vec3, v: Vec3) -> Real3 {
    let (u, v) = (u.to_array(), v.to_array());
    std::array::from_fn(|i| std::array::from_fn(|j| u[i] * v[j]))
}

fn identity() -> Real3 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { 1.0 } else { 0.0 }))
}

/// `Tr[A·B·C·D]` by explicit index contraction.
fn trace4(a: &Real3, b: &Real3, c: &Real3, d: &Real3) -> f64 {
    let mut sum = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    sum += a[i][j] * b[j][k] * c[k][l] * d[l][i];
                }
            }
        }
    }
    sum
}

/// One trace identity: largest `|lhs − rhs|` over samples, relative to the natural scale of its terms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub max_relative_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TensorialReport {
    pub samples: usize,
    pub checks: Vec<IdentityCheck>,
}

impl TensorialReport {
    pub fn worst(&self) -> f64 {
        self.checks.iter().map(|c| c.max_relative_error).fold(0.0, f64::max)
    }

    pub fn passes(&self, tolerance: f64) -> bool {
        self.worst() <= tolerance
    }
}

fn random_vector(rng: &mut ChaCha8Rng) -> Vec3 {
    let mut coord = || rng.random_range(-1.0..1.0) * 10f64.powf(rng.random_range(-2.0..2.0));
    Vec3::new(coord(), coord(), coord())
}

/// Small-field trace identities for random `n`, `d`, `B`, with `ñ = n⊗n` and `d̃ = d⊗d`.
pub fn tensorial_small_b_checks(samples: usize, seed: u64) -> TensorialReport {
    const NAMES: [&str; 6] = [
        "Tr[BdBd] = 0",
        "Tr[BdBI] = -(dxB).(dxB)",
        "Tr[BIBI] = -2B^2",
        "Tr[ndBd] = 0",
        "Tr[ndBI] = (n.d)(nxB).d",
        "Tr[nIBI] = 0",
    ];
    let mut worst = [0.0f64; 6];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eye = identity();
    for _ in 0..samples {
        let (n, d, b) = (
            random_vector(&mut rng),
            random_vector(&mut rng),
            random_vector(&mut rng),
        );
        let (bt, dt, nt) = (field_matrix(b), dyad(d, d), dyad(n, n));
        let (n2, d2, b2) = (n.norm_squared(), d.norm_squared(), b.norm_squared());
        let d_cross_b = d.cross(b);
        let rows = [
            (trace4(&bt, &dt, &bt, &dt), 0.0, b2 * d2 * d2),
            (trace4(&bt, &dt, &bt, &eye), -d_cross_b.dot(d_cross_b), b2 * d2),
            (trace4(&bt, &eye, &bt, &eye), -2.0 * b2, b2),
            (trace4(&nt, &dt, &bt, &dt), 0.0, n2 * d2 * d2 * b2.sqrt()),
            (
                trace4(&nt, &dt, &bt, &eye),
                n.dot(d) * n.cross(b).dot(d),
                n2 * d2 * b2.sqrt(),
            ),
            (trace4(&nt, &eye, &bt, &eye), 0.0, n2 * b2.sqrt()),
        ];
        for (slot, (lhs, rhs, scale)) in worst.iter_mut().zip(rows) {
            *slot = slot.max((lhs - rhs).abs() / scale);
        }
    }
    TensorialReport {
        samples,
        checks: NAMES
            .iter()
            .zip(worst)
            .map(|(name, max_relative_error)| IdentityCheck {
                name,
                max_relative_error,
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_hold_for_random_triples() {
        let report = tensorial_small_b_checks(1000, 7);
        assert_eq!(report.checks.len(), 6);
        assert!(report.passes(1e-12), "{report:?}");
    }

    #[test]
    fn anisotropic_term_vanishes_for_field_along_separation() {
        let d = Vec3::new(0.3, -1.2, 0.7);
        let b = d * 2.5;
        let lhs = trace4(&field_matrix(b), &dyad(d, d), &field_matrix(b), &identity());
        assert!(lhs.abs() < 1e-14);
    }

    #[test]
    fn nonreciprocal_term_vanishes_for_normal_perpendicular_to_separation() {
        let d = Vec3::new(1.0, 2.0, 0.0);
        let n = Vec3::new(-2.0, 1.0, 0.5);
        let b = Vec3::new(0.4, -0.3, 0.9);
        let lhs = trace4(&dyad(n, n), &dyad(d, d), &field_matrix(b), &identity());
        assert!(lhs.abs() < 1e-14);
    }
}
