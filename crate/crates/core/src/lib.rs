//! Rest-to-rest trajectory planning for a kinematic axis whose frame has one
//! damped oscillatory mode.
//!
//! Trajectories are piecewise-constant-jerk profiles assembled from motion
//! primitives ("jerk segments") that move the slider acceleration between
//! levels of `{-a_max, 0, +a_max}` while leaving the internal mode at rest at
//! both ends. A small top-level optimizer picks the working acceleration and
//! restores feasibility when overlapping segments would violate the jerk
//! limit. Classic S-Curve and ZV-shaped S-Curve planners are included as
//! references, together with a sweep/sensitivity harness and CSV output.

pub mod assembler;
pub mod baselines;
pub mod error;
pub mod harness;
pub mod model;
pub mod optimizer;
pub mod presets;
pub mod segment;

pub use assembler::{LimitReport, PlanCase, PlanResult};
pub use error::{Error, Result};
pub use model::{
    JerkProfile, KinematicLimits, KinematicSample, OscState, PlantModal, PlantPhysical,
};
pub use optimizer::{OptimizerConfig, Planner};
pub use segment::{JerkSegment, SegmentFamily, SegmentMethod, SegmentSpec};
