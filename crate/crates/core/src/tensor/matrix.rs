use num_complex::Complex64;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Real 3-vector: positions in meters or dimensionless directions.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Vec3) -> Vec3 {
        Vec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y).hypot(self.z)
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

/// Dense 3×3 complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMat3(pub [[Complex64; 3]; 3]);

impl Default for CMat3 {
    fn default() -> Self {
        Self::zero()
    }
}

impl CMat3 {
    pub const fn zero() -> Self {
        CMat3([[ZERO; 3]; 3])
    }

    pub const fn identity() -> Self {
        CMat3([[ONE, ZERO, ZERO], [ZERO, ONE, ZERO], [ZERO, ZERO, ONE]])
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = f(i, j);
            }
        }
        m
    }

    pub fn from_real(rows: [[f64; 3]; 3]) -> Self {
        Self::from_fn(|i, j| Complex64::new(rows[i][j], 0.0))
    }

    pub fn diagonal(a: Complex64, b: Complex64, c: Complex64) -> Self {
        CMat3([[a, ZERO, ZERO], [ZERO, b, ZERO], [ZERO, ZERO, c]])
    }

    /// Dyadic product `u ⊗ v`.
    pub fn outer(u: Vec3, v: Vec3) -> Self {
        let (a, b) = (u.to_array(), v.to_array());
        Self::from_fn(|i, j| Complex64::new(a[i] * b[j], 0.0))
    }

    /// Cross-product matrix with entries `ε_ijk v_k`.
    pub fn levi_civita(v: Vec3) -> Self {
        Self::from_real([[0.0, v.z, -v.y], [-v.z, 0.0, v.x], [v.y, -v.x, 0.0]])
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i])
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(|i, j| self.0[i][j].conj())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].conj())
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    /// `Tr{self · other}` without forming the product.
    pub fn trace_of_product(&self, other: &CMat3) -> Complex64 {
        let mut acc = ZERO;
        for i in 0..3 {
            for k in 0..3 {
                acc += self.0[i][k] * other.0[k][i];
            }
        }
        acc
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `(A − A†)/2i`, exactly Hermitian in floating point.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(|i, j| {
            let a = self.0[i][j];
            let b = self.0[j][i];
            // (a − b̄)/(2i) written out so that entries (i,j) and (j,i) are exact conjugates.
            Complex64::new(0.5 * (a.im + b.im), 0.5 * (b.re - a.re))
        })
    }

    /// `(A + Aᵀ)/2`.
    pub fn symmetric_part(&self) -> Self {
        Self::from_fn(|i, j| (self.0[i][j] + self.0[j][i]) * 0.5)
    }

    /// `(A − Aᵀ)/2`.
    pub fn antisymmetric_part(&self) -> Self {
        Self::from_fn(|i, j| (self.0[i][j] - self.0[j][i]) * 0.5)
    }

    pub fn sym_antisym_split(&self) -> (Self, Self) {
        (self.symmetric_part(), self.antisymmetric_part())
    }
}

/// `(A − A†)/2i`; generalizes `Im` to non-symmetric matrices.
pub fn hermitian_part(a: &CMat3) -> CMat3 {
    a.hermitian_part()
}

/// Returns `((A + Aᵀ)/2, (A − Aᵀ)/2)`.
pub fn sym_antisym_split(a: &CMat3) -> (CMat3, CMat3) {
    a.sym_antisym_split()
}

impl Index<(usize, usize)> for CMat3 {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for CMat3 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.0[i][j]
    }
}

impl Add for CMat3 {
    type Output = CMat3;
    fn add(self, o: CMat3) -> CMat3 {
        CMat3::from_fn(|i, j| self.0[i][j] + o.0[i][j])
    }
}

impl AddAssign for CMat3 {
    fn add_assign(&mut self, o: CMat3) {
        *self = *self + o;
    }
}

impl Sub for CMat3 {
    type Output = CMat3;
    fn sub(self, o: CMat3) -> CMat3 {
        CMat3::from_fn(|i, j| self.0[i][j] - o.0[i][j])
    }
}

impl Neg for CMat3 {
    type Output = CMat3;
    fn neg(self) -> CMat3 {
        CMat3::from_fn(|i, j| -self.0[i][j])
    }
}

impl Mul for CMat3 {
    type Output = CMat3;
    fn mul(self, o: CMat3) -> CMat3 {
        CMat3::from_fn(|i, j| self.0[i][0] * o.0[0][j] + self.0[i][1] * o.0[1][j] + self.0[i][2] * o.0[2][j])
    }
}

impl Mul<Complex64> for CMat3 {
    type Output = CMat3;
    fn mul(self, s: Complex64) -> CMat3 {
        self.scale(s)
    }
}

impl Mul<f64> for CMat3 {
    type Output = CMat3;
    fn mul(self, s: f64) -> CMat3 {
        self.scale_real(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn imaginary_identity_has_identity_hermitian_part() {
        let a = CMat3::identity().scale(c(0.0, 1.0));
        assert_eq!(a.hermitian_part(), CMat3::identity());
    }

    #[test]
    fn real_symmetric_has_zero_hermitian_part() {
        let a = CMat3::from_real([[1.0, 2.0, 3.0], [2.0, 5.0, -1.0], [3.0, -1.0, 4.0]]);
        assert_eq!(a.hermitian_part(), CMat3::zero());
    }

    #[test]
    fn symmetric_input_splits_into_itself_and_zero() {
        let a = CMat3::from_fn(|i, j| c((i + j) as f64, (i * j) as f64));
        let (plus, minus) = a.sym_antisym_split();
        assert_eq!(plus, a);
        assert_eq!(minus, CMat3::zero());
    }

    #[test]
    fn gyrotropic_block_lands_in_antisymmetric_part() {
        let af = c(0.3, 0.7);
        let i = c(0.0, 1.0);
        let mut a = CMat3::diagonal(c(1.0, 0.1), c(2.0, 0.2), c(2.0, 0.2));
        a[(1, 2)] = -i * af;
        a[(2, 1)] = i * af;
        let (plus, minus) = a.sym_antisym_split();
        assert_eq!(plus, CMat3::diagonal(c(1.0, 0.1), c(2.0, 0.2), c(2.0, 0.2)));
        assert_eq!(minus[(1, 2)], -i * af);
        assert_eq!(minus[(2, 1)], i * af);
    }

    #[test]
    fn levi_civita_matrix_applies_cross_product() {
        let b = Vec3::new(0.3, -1.2, 2.0);
        let v = Vec3::new(1.5, 0.4, -0.7);
        let m = CMat3::levi_civita(b);
        let mv: Vec<f64> = (0..3)
            .map(|i| (0..3).map(|j| m[(i, j)].re * v.to_array()[j]).sum())
            .collect();
        let expected = v.cross(b);
        assert!((mv[0] - expected.x).abs() < 1e-15);
        assert!((mv[1] - expected.y).abs() < 1e-15);
        assert!((mv[2] - expected.z).abs() < 1e-15);
    }

    #[test]
    fn trace_of_product_matches_explicit_product() {
        let a = CMat3::from_fn(|i, j| c(i as f64 - j as f64, 1.0 + (i * j) as f64));
        let b = CMat3::from_fn(|i, j| c(0.5 * j as f64, i as f64 - 2.0));
        let d = (a * b).trace() - a.trace_of_product(&b);
        assert!(d.norm() < 1e-13);
    }
}
