//! Example parameter sets used across tests, benches and the CLI docs.

use crate::model::{KinematicLimits, PlantModal, PlantPhysical};

/// Pick-and-place axis: 25 kg slider on a 500 kg frame, 15 MN/m stiffness,
/// 5000 kg/s damping; limits 1.5 m/s, 20 m/s^2, 800 m/s^3.
pub fn pick_and_place() -> (PlantPhysical, PlantModal, KinematicLimits) {
    let phys = PlantPhysical::new(25.0, 500.0, 15e6, 5e3).expect("valid preset");
    let modal = PlantModal::from_physical(&phys).expect("underdamped preset");
    let limits = KinematicLimits::new(1.5, 20.0, 800.0).expect("valid preset");
    (phys, modal, limits)
}

/// Interchangeable-spring test rig: 9.71 Hz damped mode; limits 0.45 m/s,
/// 6 m/s^2, 200 m/s^3. The coupling ratio is a nominal stand-in; residual
/// amplitudes scale linearly with it.
pub fn lab_rig() -> (PlantModal, KinematicLimits) {
    let modal = PlantModal::new(61.02, 0.799, 0.05).expect("valid preset");
    let limits = KinematicLimits::new(0.45, 6.0, 200.0).expect("valid preset");
    (modal, limits)
}

/// Soft undamped gantry: 40 rad/s mode; limits 1 m/s, 2 m/s^2, 10 m/s^3.
pub fn soft_gantry() -> (PlantModal, KinematicLimits) {
    let modal = PlantModal::new(40.0, 0.0, 0.05).expect("valid preset");
    let limits = KinematicLimits::new(1.0, 2.0, 10.0).expect("valid preset");
    (modal, limits)
}
