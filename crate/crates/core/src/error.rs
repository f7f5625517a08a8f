use thiserror::Error;

/// Failure of an adaptive quadrature to reach its tolerance.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("quadrature did not converge: achieved error {achieved:.3e} against target {requested:.3e} after {subdivisions} subdivisions")]
pub struct QuadratureError {
    pub achieved: f64,
    pub requested: f64,
    pub subdivisions: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("points coincide: separation {separation:e} m is below {epsilon:e} m")]
    CoincidentPoints { separation: f64, epsilon: f64 },

    #[error("frequency must be positive, got {omega:e} rad/s")]
    NonPositiveFrequency { omega: f64 },

    #[error("polarizability denominator vanishes{}", at_frequency(.omega))]
    ResonantDenominator { omega: Option<f64> },

    #[error("real part of the free Green's tensor is undefined at coincidence")]
    CoincidentRealPart,

    #[error("particle 2 at (r = {r:e} m, x = {x:e} m) is not on the {expected} axis")]
    OrientationMismatch { expected: &'static str, r: f64, x: f64 },

    #[error("closed form requires alpha_s = 0 for both particles")]
    AnisotropicClosedForm,

    #[error("invalid scene: {0}")]
    InvalidScene(String),

    #[error("operation not available for this material: {0}")]
    UnsupportedMaterial(String),

    #[error("persistent current forms disagree: general {general:e} W, closed {closed:e} W, relative gap {gap:e}")]
    PersistentMismatch { general: f64, closed: f64, gap: f64 },

    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

fn at_frequency(omega: &Option<f64>) -> String {
    match omega {
        Some(w) => format!(" at omega = {w:e} rad/s"),
        None => String::new(),
    }
}
