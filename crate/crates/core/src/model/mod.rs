//! Plant parameters, the jerk-step profile algebra, exact kinematic
//! evaluation and exact propagation of the internal oscillatory mode.

mod oscillator;
mod plant;
mod profile;

pub use oscillator::{equilibrium, propagate_osc, residual_amplitude, OscState};
pub use plant::{derive_modal, KinematicLimits, PlantModal, PlantPhysical};
pub use profile::{
    eval_kinematics, moment_conditions, InitialState, JerkProfile, JerkStep, KinematicSample,
};
