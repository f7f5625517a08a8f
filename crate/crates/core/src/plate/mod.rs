//! Lateral force on a magneto-optical sphere above an isotropic plate.

mod force;
mod kernels;
mod mirror;
mod scene;

pub use force::{
    force_densities, gravity_force, interaction_force, interaction_force_near_field, interaction_force_spectrum,
    mirror_self_force, mirror_self_force_far_field, mirror_self_force_near_field, plate_nf_emission,
    plate_nf_emission_density, self_force, self_force_near_field, self_force_near_field_density, self_force_spectrum,
    total_force, total_force_near_field, total_force_with_spectra, ForceBreakdown, ForceDensities, ForceSpectra,
    InteractionForce,
};
pub use kernels::{plate_kernels, static_reflection, PlateKernels};
pub use mirror::{mirror_bracket, toy_force, toy_force_peak, toy_force_shape, toy_force_slope_numerator};
pub use scene::{GyrotropicLoss, PlateParticle, PlateScene};
