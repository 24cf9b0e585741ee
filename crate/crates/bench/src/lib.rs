//! Shared fixtures for the criterion benchmarks.

pub use restmotion::presets;

use restmotion::model::{KinematicLimits, PlantModal};
use restmotion::optimizer::{OptimizerConfig, Planner};
use restmotion::segment::SegmentMethod;

pub fn demo_planner(method: SegmentMethod) -> Planner {
    let (_, modal, limits) = presets::pick_and_place();
    Planner::new(limits, modal, OptimizerConfig::default(), method).expect("valid preset")
}

pub fn demo_parameters() -> (PlantModal, KinematicLimits) {
    let (_, modal, limits) = presets::pick_and_place();
    (modal, limits)
}
