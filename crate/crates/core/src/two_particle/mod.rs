//! Two particles in a static field: self emission, pairwise transfer and the persistent current.

mod emission;
mod scene;
mod tensorial;
mod transfer;

pub use emission::{
    appendix_d_traces, closed_scattered_density, g_parallel, g_perpendicular, g_reciprocal, near_field_density,
    reciprocal_near_field_density, reciprocal_scattered_density, self_emission_closed, self_emission_near_field,
    self_emission_oracle, self_emission_oracle_detailed, self_emission_spectrum, self_emission_traces,
    vacuum_emission_density, AlphaEntry, EmissionBreakdown, NearFieldEmission, OracleEmission, SelfEmissionTraces,
};
pub(crate) use emission::{closed_traces, traces_from_matrices};
pub use scene::{
    thermal_band_skin_depth, CylindricalPosition, Orientation, ParticleSpec, TwoParticleScene, ValidityWarning,
};
pub use tensorial::{tensorial_small_b_checks, IdentityCheck, TensorialReport};
pub use transfer::{
    heat_transfer_12, heat_transfer_12_detailed, heat_transfer_21, heat_transfer_density, heat_transfer_spectrum,
    persistent_current, persistent_current_density, transfer_traces, PersistentCurrent, PersistentDensity,
    TransferBreakdown, TransferTraces, PERSISTENT_AGREEMENT,
};
