//! Fluctuational electrodynamics of magneto-optical nanoparticles: self emission,
//! pairwise heat transfer, persistent heat currents and lateral propulsion forces
//! near a plate, each with a brute-force matrix-trace cross-check.

// `!(x > 0.0)` guards deliberately reject NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod constants;
pub mod error;
pub mod materials;
pub mod plate;
pub mod selftest;
pub mod spectral;
pub mod tensor;
pub mod two_particle;

pub use error::{Error, QuadratureError, Result};
