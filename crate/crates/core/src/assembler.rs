//! Assembly of full rest-to-rest trajectories from a segment family.
//!
//! Three topologies cover all distances (shortest to longest): a single
//! middle segment between two constant-acceleration holds (Case 1), an
//! acceleration phase, cruise and mirrored deceleration phase (Case 2), and
//! the same without cruise (Case 3). Hold durations come from closed forms;
//! negative holds shift the neighbouring segments into each other and the
//! step lists superpose.

use crate::error::{Error, Result};
use crate::model::{InitialState, JerkProfile, KinematicLimits};
use crate::segment::SegmentFamily;

/// Trajectory topology together with its hold durations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PlanCase {
    /// Segment, hold `t1` at `+a_max`, middle segment, hold `t2` at
    /// `-a_max`, closing segment.
    Case1 { t1: f64, t2: f64 },
    /// Acceleration phase with hold `t_a_max`, cruise `t_v_max` at `v_lim`,
    /// mirrored deceleration phase.
    Case2 { t_a_max: f64, t_v_max: f64 },
    /// Acceleration phase directly followed by the mirrored deceleration.
    Case3 { t_a_max: f64 },
    /// Seven-segment reference profile.
    SCurve,
    /// Reference profile convolved with the two-impulse sequence.
    ZvShaped,
    /// Empty plan for a zero-distance request.
    Rest,
}

impl PlanCase {
    pub fn tag(&self) -> &'static str {
        match self {
            PlanCase::Case1 { .. } => "case1",
            PlanCase::Case2 { .. } => "case2",
            PlanCase::Case3 { .. } => "case3",
            PlanCase::SCurve => "scurve",
            PlanCase::ZvShaped => "zv",
            PlanCase::Rest => "rest",
        }
    }
}

/// Exact kinematic peaks of a profile and the limit comparison outcome.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LimitReport {
    pub v_peak: f64,
    pub a_peak: f64,
    pub j_peak: f64,
    pub v_violated: bool,
    pub a_violated: bool,
    pub j_violated: bool,
}

impl LimitReport {
    pub fn is_clean(&self) -> bool {
        !(self.v_violated || self.a_violated || self.j_violated)
    }

    pub fn violation_summary(&self) -> String {
        let mut parts = Vec::new();
        if self.v_violated {
            parts.push(format!("v_peak = {}", self.v_peak));
        }
        if self.a_violated {
            parts.push(format!("a_peak = {}", self.a_peak));
        }
        if self.j_violated {
            parts.push(format!("j_peak = {}", self.j_peak));
        }
        if parts.is_empty() {
            "none".into()
        } else {
            parts.join(", ")
        }
    }
}

/// An assembled trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanResult {
    pub profile: JerkProfile,
    pub case: PlanCase,
    /// Working acceleration the segment family was designed for.
    pub a_max_used: f64,
    /// Total transition time in s.
    pub t_ft: f64,
    pub report: LimitReport,
}

impl PlanResult {
    pub fn empty() -> Self {
        Self {
            profile: JerkProfile::empty(),
            case: PlanCase::Rest,
            a_max_used: 0.0,
            t_ft: 0.0,
            report: LimitReport::default(),
        }
    }

    /// Plan for the mirrored distance `-z_f`.
    pub fn negated(&self) -> Self {
        Self {
            profile: self.profile.negated(),
            ..self.clone()
        }
    }
}

/// Comparison with a hair of relative slack so exact-equality designs
/// (peak acceleration at the bound) do not flag.
fn exceeds(peak: f64, limit: f64) -> bool {
    peak > limit * (1.0 + 1e-9)
}

/// Exact extrema of |v|, |a|, |j| over `[0, inf)` from the piecewise
/// polynomial structure: jerk is piecewise constant, acceleration piecewise
/// linear (extrema at breakpoints), velocity piecewise quadratic (extrema at
/// breakpoints plus interior acceleration zeros).
pub fn profile_peaks(profile: &JerkProfile) -> (f64, f64, f64) {
    let init = profile.init();
    let mut v_peak = init.velocity.abs();
    let mut a_peak = init.acceleration.abs();
    let mut j_peak = 0.0_f64;

    let steps = profile.steps();
    let mut jerk = 0.0;
    for (i, s) in steps.iter().enumerate() {
        // State just before this step.
        let prev_t = if i == 0 { 0.0_f64.min(s.time) } else { steps[i - 1].time };
        let before = profile.sample(s.time);
        // Interior stationary point of v where acceleration crosses zero.
        if jerk != 0.0 {
            let a_prev = profile.sample(prev_t).acceleration;
            let t_star = prev_t - a_prev / jerk;
            if t_star > prev_t && t_star < s.time {
                v_peak = v_peak.max(profile.sample(t_star).velocity.abs());
            }
        }
        v_peak = v_peak.max(before.velocity.abs());
        a_peak = a_peak.max(before.acceleration.abs());
        jerk += s.amplitude;
        j_peak = j_peak.max(jerk.abs());
    }
    // Tail: constant jerk after the last step. For finished trajectories the
    // tail jerk and acceleration vanish and the state is frozen.
    if let Some(last) = steps.last() {
        let end = profile.sample(last.time);
        v_peak = v_peak.max(end.velocity.abs());
        a_peak = a_peak.max(end.acceleration.abs());
        if jerk != 0.0 {
            let t_star = last.time - end.acceleration / jerk;
            if t_star > last.time {
                v_peak = v_peak.max(profile.sample(t_star).velocity.abs());
            }
        }
    }
    (v_peak, a_peak, j_peak)
}

/// Exact peak extraction and comparison against the hard actuator bounds.
///
/// Peaks are compared against `a_lim`, not the working `a_max`: overlapping
/// segments may push the transient acceleration above `a_max` while the
/// motion still honours the actuator.
pub fn check_limits(plan: &PlanResult, limits: &KinematicLimits) -> LimitReport {
    let (v_peak, a_peak, j_peak) = profile_peaks(&plan.profile);
    LimitReport {
        v_peak,
        a_peak,
        j_peak,
        v_violated: exceeds(v_peak, limits.v_lim),
        a_violated: exceeds(a_peak, limits.a_lim),
        j_violated: exceeds(j_peak, limits.j_lim),
    }
}

/// Concatenates shifted segment step lists into one profile from rest,
/// translating to t = 0 when overlaps push a start time negative.
fn assemble_steps(parts: &[(f64, &JerkProfile, bool)]) -> (JerkProfile, f64) {
    let mut steps: Vec<(f64, f64)> = Vec::new();
    for &(offset, profile, negate) in parts {
        let sign = if negate { -1.0 } else { 1.0 };
        for s in profile.steps() {
            steps.push((offset + s.time, sign * s.amplitude));
        }
    }
    let t_min = steps
        .iter()
        .map(|&(t, _)| t)
        .fold(f64::INFINITY, f64::min)
        .min(0.0);
    let shift = -t_min;
    let profile = JerkProfile::new(
        steps.into_iter().map(|(t, a)| (t + shift, a)),
        InitialState::default(),
    );
    (profile, shift)
}

/// Case 1: opening segment, hold `t1`, middle segment, hold `t2`, closing
/// segment. `t1` solves the distance quadratic (the negative branch is
/// discarded), `t2` then zeroes the terminal velocity.
pub fn assemble_case1(z_f: f64, fam: &SegmentFamily) -> Result<PlanResult> {
    let a = fam.a_max;
    let (t_f1, t_f2) = (fam.t_f1(), fam.t_f2());
    let (v_f1, v_f2, v_f3) = (fam.v_f1(), fam.v_f2(), fam.v_f3());
    let s_f = fam.s_f1() + fam.s_f2() + fam.s_f3();

    // Eliminating t2 through the terminal-velocity condition makes the
    // closing segment's entry velocity a constant v_f3, so its carry over
    // t_f3 = t_f1 lands in the constant term of the quadratic.
    let p = (a * t_f2 + 2.0 * v_f1 + v_f2) / a;
    let q = -(z_f - v_f3 * t_f1) / a
        + (s_f + v_f1 * t_f2) / a
        + (v_f1 + v_f2 + v_f3) * (v_f1 + v_f2 - v_f3) / (2.0 * a * a);
    let disc = p * p / 4.0 - q;
    if disc < 0.0 {
        return Err(Error::CaseInfeasible {
            case: "case 1",
            z_f,
            a_max: a,
            discriminant: disc,
        });
    }
    let t1 = -p / 2.0 + disc.sqrt();
    let t2 = (v_f1 + t1 * a + v_f2 - v_f3) / a;

    // The closed forms hold while every segment finishes by the trajectory
    // end: the middle segment must not spill past the closing one, and the
    // opening segment must not spill either.
    let spill = (t2 + fam.t_f3()).min(t1 + t_f2 + t2 + fam.t_f3());
    if spill < -1e-12 {
        return Err(Error::CaseOrderingBroken {
            case: "case 1",
            z_f,
            a_max: a,
            spill,
        });
    }

    let b2 = t_f1 + t1;
    let b3 = b2 + t_f2 + t2;
    let (profile, shift) = assemble_steps(&[
        (0.0, &fam.seg1.profile, false),
        (b2, &fam.seg2.profile, false),
        (b3, &fam.seg3.profile, false),
    ]);
    let t_ft = b3 + fam.t_f3() + shift;
    Ok(PlanResult {
        profile,
        case: PlanCase::Case1 { t1, t2 },
        a_max_used: a,
        t_ft,
        report: LimitReport::default(),
    })
}

/// A mirrored-phase plan needs the phase's closing segment to start no
/// earlier than the phase origin, otherwise the mirrored copy spills past
/// the trajectory end.
fn check_phase_ordering(
    case: &'static str,
    z_f: f64,
    fam: &SegmentFamily,
    t_a_max: f64,
) -> Result<()> {
    let spill = t_a_max + fam.t_f1();
    if spill < -1e-12 {
        return Err(Error::CaseOrderingBroken {
            case,
            z_f,
            a_max: fam.a_max,
            spill,
        });
    }
    Ok(())
}

/// Steps of the acceleration phase: opening segment, hold `t_a_max`, then
/// the sign-flipped closing segment bringing the acceleration back to zero.
fn accel_phase(fam: &SegmentFamily, t_a_max: f64) -> Vec<(f64, f64)> {
    let mut steps: Vec<(f64, f64)> = Vec::new();
    for s in fam.seg1.profile.steps() {
        steps.push((s.time, s.amplitude));
    }
    let offset = fam.t_f1() + t_a_max;
    for s in fam.seg3.profile.steps() {
        steps.push((offset + s.time, -s.amplitude));
    }
    steps
}

fn assemble_mirrored(
    fam: &SegmentFamily,
    t_a_max: f64,
    t_cruise: f64,
) -> (JerkProfile, f64) {
    let phase = accel_phase(fam, t_a_max);
    let t3 = 2.0 * fam.t_f1() + t_a_max;
    let t4 = t3 + t_cruise;
    let mut steps = phase.clone();
    for &(t, amp) in &phase {
        steps.push((t4 + t, -amp));
    }
    let t_min = steps
        .iter()
        .map(|&(t, _)| t)
        .fold(f64::INFINITY, f64::min)
        .min(0.0);
    let shift = -t_min;
    let profile = JerkProfile::new(
        steps.into_iter().map(|(t, a)| (t + shift, a)),
        InitialState::default(),
    );
    (profile, t4 + t3 + shift)
}

/// Case 2: acceleration phase reaching `v_lim`, cruise, mirrored
/// deceleration. A negative `t_a_max` (high working accelerations) makes the
/// phase segments intersect; a negative `t_v_max` signals the wrong case.
pub fn assemble_case2(z_f: f64, fam: &SegmentFamily, v_lim: f64) -> Result<PlanResult> {
    let a = fam.a_max;
    let t_a_max = (v_lim - (fam.v_f1() + fam.v_f3())) / a;
    check_phase_ordering("case 2", z_f, fam, t_a_max)?;
    let t_v_max = (z_f - v_lim * (2.0 * fam.t_f1() + t_a_max)) / v_lim;
    let (profile, t_ft) = assemble_mirrored(fam, t_a_max, t_v_max);
    Ok(PlanResult {
        profile,
        case: PlanCase::Case2 { t_a_max, t_v_max },
        a_max_used: a,
        t_ft,
        report: LimitReport::default(),
    })
}

/// Case 3: acceleration phase directly followed by the mirrored
/// deceleration; the hold length makes the distance come out.
pub fn assemble_case3(z_f: f64, fam: &SegmentFamily) -> Result<PlanResult> {
    let a = fam.a_max;
    let t_f1 = fam.t_f1();
    let v_f = fam.v_f1() + fam.v_f3();
    let p = (2.0 * a * t_f1 + v_f) / a;
    let q = (2.0 * t_f1 * v_f - z_f) / a;
    let disc = p * p / 4.0 - q;
    if disc < 0.0 {
        return Err(Error::CaseInfeasible {
            case: "case 3",
            z_f,
            a_max: a,
            discriminant: disc,
        });
    }
    let t_a_max = -p / 2.0 + disc.sqrt();
    check_phase_ordering("case 3", z_f, fam, t_a_max)?;
    let (profile, t_ft) = assemble_mirrored(fam, t_a_max, 0.0);
    Ok(PlanResult {
        profile,
        case: PlanCase::Case3 { t_a_max },
        a_max_used: a,
        t_ft,
        report: LimitReport::default(),
    })
}

/// Minimal distance handled by Case 2: the distance at which the cruise
/// duration reaches zero.
pub fn min_case2_distance(fam: &SegmentFamily, v_lim: f64) -> f64 {
    let t_a_max = (v_lim - (fam.v_f1() + fam.v_f3())) / fam.a_max;
    v_lim * (2.0 * fam.t_f1() + t_a_max)
}

/// Case selection for one working acceleration: Case 1 when its exact
/// velocity peak honours `v_lim`, otherwise Case 2 when the distance reaches
/// the cruise threshold, otherwise Case 3.
pub fn plan_for_amax(z_f: f64, fam: &SegmentFamily, limits: &KinematicLimits) -> Result<PlanResult> {
    let mut plan = assemble_case1(z_f, fam)?;
    let (v_peak, _, _) = profile_peaks(&plan.profile);
    if !exceeds(v_peak, limits.v_lim) {
        plan.report = check_limits(&plan, limits);
        return Ok(plan);
    }
    let mut plan = if z_f >= min_case2_distance(fam, limits.v_lim) {
        assemble_case2(z_f, fam, limits.v_lim)?
    } else {
        assemble_case3(z_f, fam)?
    };
    plan.report = check_limits(&plan, limits);
    Ok(plan)
}
