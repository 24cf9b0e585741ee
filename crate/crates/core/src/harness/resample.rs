//! Post-processing of a continuous plan onto the discrete controller cycle.

use crate::assembler::PlanResult;
use crate::model::KinematicSample;

/// Evaluates the closed-form kinematics on the uniform grid `k * cycle`,
/// `k = 0 ..= ceil(t_ft / cycle)`. The final time rounds up to a full cycle;
/// rows past the motion hold the terminal state `(z_f, 0, 0, 0)`.
pub fn resample_to_cycle(plan: &PlanResult, cycle: f64) -> Vec<KinematicSample> {
    assert!(cycle > 0.0, "cycle must be > 0");
    let n = (plan.t_ft / cycle).ceil() as usize;
    (0..=n)
        .map(|k| plan.profile.sample(k as f64 * cycle))
        .collect()
}
