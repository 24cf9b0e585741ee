//! Reference planners: the seven-segment S-Curve and its ZV-shaped variant.

use crate::assembler::{check_limits, LimitReport, PlanCase, PlanResult};
use crate::error::Result;
use crate::model::{JerkProfile, KinematicLimits, PlantModal};
use crate::segment::zv_impulses;

/// Time-optimal jerk-limited rest-to-rest profile for a stiff axis.
///
/// Handles every phase collapse: no cruise, no constant-acceleration arc,
/// triangular acceleration.
pub fn s_curve(z_f: f64, limits: &KinematicLimits) -> Result<PlanResult> {
    if z_f == 0.0 {
        return Ok(PlanResult::empty());
    }
    if z_f < 0.0 {
        return Ok(s_curve(-z_f, limits)?.negated());
    }
    let (v, a, j) = (limits.v_lim, limits.a_lim, limits.j_lim);

    // Acceleration-phase timing when the velocity bound is reached.
    let (mut t_j, mut t_a) = if v * j < a * a {
        // Velocity bound hit before the acceleration bound.
        let t_j = (v / j).sqrt();
        (t_j, 2.0 * t_j)
    } else {
        let t_j = a / j;
        (t_j, t_j + v / a)
    };

    let t_v = z_f / v - t_a;
    let (t_jerk, t_accel, t_cruise) = if t_v >= 0.0 {
        (t_j, t_a, t_v)
    } else {
        // No cruise. Try the constant-acceleration arc first.
        t_j = a / j;
        t_a = 0.5 * (t_j + (t_j * t_j + 4.0 * z_f / a).sqrt());
        if t_a >= 2.0 * t_j {
            (t_j, t_a, 0.0)
        } else {
            // Triangular acceleration: the bound is not reached either.
            let t_j = (z_f / (2.0 * j)).cbrt();
            (t_j, 2.0 * t_j, 0.0)
        }
    };

    // Jerk steps of the acceleration phase, mirrored for deceleration.
    let accel = [
        (0.0, j),
        (t_jerk, -j),
        (t_accel - t_jerk, -j),
        (t_accel, j),
    ];
    let decel_offset = t_accel + t_cruise;
    let steps = accel
        .iter()
        .copied()
        .chain(accel.iter().map(|&(t, amp)| (decel_offset + t, -amp)));
    let profile = JerkProfile::from_rest(steps);
    let t_ft = 2.0 * t_accel + t_cruise;

    let mut plan = PlanResult {
        profile,
        case: PlanCase::SCurve,
        a_max_used: limits.a_lim,
        t_ft,
        report: LimitReport::default(),
    };
    plan.report = check_limits(&plan, limits);
    Ok(plan)
}

/// Convolution of a finished plan with the damped two-impulse sequence.
///
/// Every step splits into a pair weighted by the impulse amplitudes, spaced
/// half a damped period apart; the transition time grows by exactly that
/// spacing and no kinematic peak increases.
pub fn zv_shape(plan: &PlanResult, modal: &PlantModal) -> PlanResult {
    let (a1, a2, spacing) = zv_impulses(modal);
    let steps = plan.profile.steps().iter().flat_map(|s| {
        [
            (s.time, a1 * s.amplitude),
            (s.time + spacing, a2 * s.amplitude),
        ]
    });
    let profile = JerkProfile::new(steps, plan.profile.init());
    // Shaping only shrinks kinematic peaks, so the input plan's violation
    // flags stay a valid upper bound; the peaks themselves are recomputed.
    let (v_peak, a_peak, j_peak) = crate::assembler::profile_peaks(&profile);
    PlanResult {
        profile,
        case: PlanCase::ZvShaped,
        a_max_used: plan.a_max_used,
        t_ft: plan.t_ft + spacing,
        report: LimitReport {
            v_peak,
            a_peak,
            j_peak,
            ..plan.report
        },
    }
}
