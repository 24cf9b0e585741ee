//! Analysis layer: run configuration, distance and sensitivity sweeps,
//! envelope fitting, controller-cycle resampling and CSV output.

mod config;
mod envelope;
mod resample;
mod sweep;

pub use config::{PlantConfig, RunConfig};
pub use envelope::envelope_fit;
pub use resample::resample_to_cycle;
pub use sweep::{
    read_sweep_csv, sweep_distances, sweep_sensitivity, write_sweep_csv, SweepRow, SWEEP_COLUMNS,
};

use crate::model::PlantModal;

/// Starting jerk limit for commissioning a new axis when no prior tracking
/// experience exists: `a_max * omega_d / (2*pi)`.
pub fn initial_jerk_limit(a_max: f64, modal: &PlantModal) -> f64 {
    assert!(a_max > 0.0, "a_max must be > 0");
    a_max * modal.omega_d / std::f64::consts::TAU
}

/// Full-precision decimal formatting (17 significant digits) that
/// round-trips every finite f64.
pub(crate) fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}
