//! Complex 3×3 algebra and free-space Green's tensors.

mod green;
mod matrix;

pub(crate) use green::check_frequency;
pub use green::{
    g0_coincident_imag, g0_coincident_real, g0_free, g0_free_with_eps, g1_dressed, g1_dressed_hermitian, g1_scattered,
    PQPair, DEFAULT_COINCIDENCE_EPS,
};
pub use matrix::{hermitian_part, sym_antisym_split, CMat3, Vec3};
