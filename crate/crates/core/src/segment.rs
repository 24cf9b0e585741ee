//! Jerk segments: motion primitives that move the slider acceleration
//! between levels of `{-a_max, 0, +a_max}` while the internal mode starts and
//! ends at forced-equilibrium rest.
//!
//! Two constructions are provided behind one interface:
//!
//! * [`design_zv_segment`] convolves the plain jerk ramp with the damped
//!   two-impulse zero-vibration sequence. Always feasible, provably at rest.
//! * [`design_timeopt_segment`] searches bang-off-bang pulse structures (one,
//!   two, then three pulses of magnitude `j_lim`) for the shortest profile
//!   whose step phasor vanishes at the plant pole. Falls back to the shaped
//!   construction when the search yields nothing faster.
//!
//! The rest condition used throughout: for a profile with steps `(t_i, a_i)`
//! and `sum a_i = 0`, the mode returns to forced equilibrium exactly when
//! `sum_i a_i * exp(-lambda*t_i) = 0` with `lambda = -delta + i*omega_d`.
//! The physical residual amplitude of a structure scales this phasor by
//! `m_star*j/(omega0^2*omega_d) * exp(-delta*t_f)`.

use crate::error::{Error, Result};
use crate::model::{
    equilibrium, propagate_osc, InitialState, JerkProfile, KinematicLimits, PlantModal,
};
use std::f64::consts::PI;

/// Boundary-value problem for one segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentSpec {
    /// Start acceleration, one of `{-a_max, 0, +a_max}`.
    pub a_start: f64,
    /// End acceleration, one of `{-a_max, 0, +a_max}`, distinct from start.
    pub a_end: f64,
    /// Jerk bound in m/s^3.
    pub j_lim: f64,
    /// Working acceleration level in m/s^2.
    pub a_max: f64,
    /// Plant mode the segment must leave at rest.
    pub modal: PlantModal,
}

impl SegmentSpec {
    pub fn new(a_start: f64, a_end: f64, j_lim: f64, a_max: f64, modal: PlantModal) -> Result<Self> {
        if !(j_lim > 0.0) || !(a_max > 0.0) {
            return Err(Error::InvalidSegment(format!(
                "j_lim and a_max must be > 0, got {j_lim}, {a_max}"
            )));
        }
        let is_level = |a: f64| {
            let tol = 1e-12 * a_max;
            (a.abs() <= tol) || ((a.abs() - a_max).abs() <= tol)
        };
        if !is_level(a_start) || !is_level(a_end) {
            return Err(Error::InvalidSegment(format!(
                "accelerations must lie in {{-a_max, 0, +a_max}}, got {a_start}, {a_end} for a_max = {a_max}"
            )));
        }
        if a_start == a_end {
            return Err(Error::InvalidSegment(
                "start and end acceleration must differ".into(),
            ));
        }
        Ok(Self {
            a_start,
            a_end,
            j_lim,
            a_max,
            modal,
        })
    }

    fn delta_a(&self) -> f64 {
        self.a_end - self.a_start
    }
}

/// A designed motion primitive.
#[derive(Debug, Clone, PartialEq)]
pub struct JerkSegment {
    /// Jerk steps, with the initial state `(0, 0, a_start)`.
    pub profile: JerkProfile,
    /// Segment duration in s.
    pub t_f: f64,
    /// Distance travelled over the segment in m.
    pub s_f: f64,
    /// Signed velocity change `z'(t_f)` in m/s.
    pub v_f: f64,
}

impl JerkSegment {
    fn from_steps(steps: Vec<(f64, f64)>, t_f: f64, a_start: f64) -> Self {
        let profile = JerkProfile::new(
            steps,
            InitialState {
                acceleration: a_start,
                ..Default::default()
            },
        );
        let end = profile.sample(t_f);
        Self {
            profile,
            t_f,
            s_f: end.position,
            v_f: end.velocity,
        }
    }
}

/// Segment design selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SegmentMethod {
    /// Ramp convolved with the damped two-impulse sequence.
    Zv,
    /// Bang-off-bang pulse search, shaped fallback.
    TimeOptimal,
}

impl SegmentMethod {
    pub fn name(self) -> &'static str {
        match self {
            SegmentMethod::Zv => "zv",
            SegmentMethod::TimeOptimal => "timeopt",
        }
    }
}

impl std::str::FromStr for SegmentMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zv" => Ok(SegmentMethod::Zv),
            "timeopt" => Ok(SegmentMethod::TimeOptimal),
            other => Err(Error::Config(format!(
                "unknown segment method '{other}', expected 'zv' or 'timeopt'"
            ))),
        }
    }
}

/// The three primitives needed to assemble any trajectory at one `a_max`:
/// `0 -> a_max`, `a_max -> -a_max` and `-a_max -> 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentFamily {
    pub seg1: JerkSegment,
    pub seg2: JerkSegment,
    pub seg3: JerkSegment,
    pub a_max: f64,
}

impl SegmentFamily {
    pub fn t_f1(&self) -> f64 {
        self.seg1.t_f
    }
    pub fn t_f2(&self) -> f64 {
        self.seg2.t_f
    }
    pub fn t_f3(&self) -> f64 {
        self.seg3.t_f
    }
    pub fn s_f1(&self) -> f64 {
        self.seg1.s_f
    }
    pub fn s_f2(&self) -> f64 {
        self.seg2.s_f
    }
    pub fn s_f3(&self) -> f64 {
        self.seg3.s_f
    }
    pub fn v_f1(&self) -> f64 {
        self.seg1.v_f
    }
    pub fn v_f2(&self) -> f64 {
        self.seg2.v_f
    }
    /// Velocity drop over the closing segment, stored positive:
    /// `v_f3 = -z'(t_f3)`.
    pub fn v_f3(&self) -> f64 {
        -self.seg3.v_f
    }
}

/// Damped two-impulse sequence placing a zero at the plant pole:
/// amplitudes `(1/(1+K), K/(1+K))` with `K = exp(-delta*pi/omega_d)`, spaced
/// half a damped period apart.
pub fn zv_impulses(modal: &PlantModal) -> (f64, f64, f64) {
    let spacing = PI / modal.omega_d;
    let k = (-modal.delta * spacing).exp();
    (1.0 / (1.0 + k), k / (1.0 + k), spacing)
}

/// Jerk ramp of magnitude `j_lim` convolved with the two-impulse sequence.
///
/// Duration is `|delta_a|/j_lim + pi/omega_d`; the residual is zero by the
/// pole-cancellation property for any damping.
pub fn design_zv_segment(spec: &SegmentSpec) -> Result<JerkSegment> {
    let da = spec.delta_a();
    let ramp = da.abs() / spec.j_lim;
    let j = spec.j_lim.copysign(da);
    let (a1, a2, spacing) = zv_impulses(&spec.modal);
    let steps = vec![
        (0.0, a1 * j),
        (ramp, -a1 * j),
        (spacing, a2 * j),
        (ramp + spacing, -a2 * j),
    ];
    Ok(JerkSegment::from_steps(steps, ramp + spacing, spec.a_start))
}

/// Shortest bang-off-bang profile found for the boundary values; see the
/// module docs.
pub fn design_timeopt_segment(spec: &SegmentSpec) -> Result<JerkSegment> {
    let search = pulse_search(spec);
    let zv = design_zv_segment(spec)?;
    match search {
        Some(seg) if seg.t_f <= zv.t_f => Ok(seg),
        // The shaped construction is itself a feasible point of the design
        // problem; never return anything slower than it.
        _ => Ok(zv),
    }
}

/// Segment design dispatch.
pub fn design_segment(spec: &SegmentSpec, method: SegmentMethod) -> Result<JerkSegment> {
    match method {
        SegmentMethod::Zv => design_zv_segment(spec),
        SegmentMethod::TimeOptimal => design_timeopt_segment(spec),
    }
}

/// Designs the per-`a_max` family used by the trajectory assembly.
pub fn precompute_family(
    a_max: f64,
    limits: &KinematicLimits,
    modal: &PlantModal,
    method: SegmentMethod,
) -> Result<SegmentFamily> {
    if !(a_max > 0.0) || a_max > limits.a_lim * (1.0 + 1e-12) {
        return Err(Error::InvalidSegment(format!(
            "a_max must lie in (0, a_lim], got {a_max} with a_lim = {}",
            limits.a_lim
        )));
    }
    let seg1 = design_segment(
        &SegmentSpec::new(0.0, a_max, limits.j_lim, a_max, *modal)?,
        method,
    )?;
    let seg2 = design_segment(
        &SegmentSpec::new(a_max, -a_max, limits.j_lim, a_max, *modal)?,
        method,
    )?;
    // The closing segment solves the same design problem as the opening one
    // (identical acceleration change, rest conditions independent of the
    // start level), so it shares the pulse solution and only the initial
    // acceleration differs. This also pins t_f3 = t_f1 exactly.
    let seg3 = JerkSegment::from_steps(
        seg1.profile
            .steps()
            .iter()
            .map(|s| (s.time, s.amplitude))
            .collect(),
        seg1.t_f,
        -a_max,
    );
    Ok(SegmentFamily {
        seg1,
        seg2,
        seg3,
        a_max,
    })
}

// ---------------------------------------------------------------------------
// Bang-off-bang pulse search.
//
// All pulses carry the sign of delta_a, so the acceleration moves
// monotonically between its end levels and can never leave [-a_max, a_max].
// For n pulses of durations d_k (sum fixed to D = |delta_a|/j_lim) starting
// at tau_k, the rest condition is
//     P = sum_k (E(tau_k) - E(tau_k + d_k)) = 0,   E(t) = exp((delta - i*omega_d)*t).
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq)]
struct C64 {
    re: f64,
    im: f64,
}

impl C64 {
    const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
    const ONE: C64 = C64 { re: 1.0, im: 0.0 };

    fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }
    fn add(self, o: C64) -> C64 {
        C64 {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
    fn sub(self, o: C64) -> C64 {
        C64 {
            re: self.re - o.re,
            im: self.im - o.im,
        }
    }
    fn mul(self, o: C64) -> C64 {
        C64 {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
    fn neg(self) -> C64 {
        C64 {
            re: -self.re,
            im: -self.im,
        }
    }
}

/// Pulse solver scratch: plant constants and the normalized on-time.
struct PulseProblem {
    delta: f64,
    omega_d: f64,
    /// Total on-time `|delta_a| / j_lim`.
    on_time: f64,
    /// Residual-amplitude prefactor `m_star*j_lim/(omega0^2*omega_d)`.
    amp_scale: f64,
    /// Acceptance threshold on the physical residual amplitude in m.
    rest_tol: f64,
}

impl PulseProblem {
    fn new(spec: &SegmentSpec) -> Self {
        let m = &spec.modal;
        let w02 = m.omega0 * m.omega0;
        let deflection_scale = m.m_star * spec.a_max / w02;
        Self {
            delta: m.delta,
            omega_d: m.omega_d,
            on_time: spec.delta_a().abs() / spec.j_lim,
            amp_scale: m.m_star * spec.j_lim / (w02 * m.omega_d),
            rest_tol: 1e-12 * (1.0 + deflection_scale),
        }
    }

    /// `E(t) = exp((delta - i*omega_d) * t)`.
    fn e(&self, t: f64) -> C64 {
        let r = (self.delta * t).exp();
        let (s, c) = (self.omega_d * t).sin_cos();
        C64 {
            re: r * c,
            im: -r * s,
        }
    }

    /// `d/dt E(t)`.
    fn de(&self, t: f64) -> C64 {
        let mu = C64 {
            re: self.delta,
            im: -self.omega_d,
        };
        mu.mul(self.e(t))
    }

    /// Physical residual amplitude of a structure with phasor `p` and
    /// duration `t_f`.
    fn residual_m(&self, p: C64, t_f: f64) -> f64 {
        self.amp_scale * (-self.delta * t_f).exp() * p.abs()
    }
}

/// Pulse layout in normalized (positive-jerk) form.
#[derive(Debug, Clone)]
struct PulseLayout {
    /// `(start, duration)` per pulse, ordered, non-overlapping.
    pulses: Vec<(f64, f64)>,
}

impl PulseLayout {
    fn t_f(&self) -> f64 {
        let (s, d) = *self.pulses.last().expect("layout has pulses");
        s + d
    }

    fn phasor(&self, pb: &PulseProblem) -> C64 {
        let mut p = C64::ZERO;
        for &(s, d) in &self.pulses {
            p = p.add(pb.e(s)).sub(pb.e(s + d));
        }
        p
    }

    /// True when pulses are ordered with non-negative gaps and durations.
    fn is_feasible(&self, on_time: f64) -> bool {
        let slack = 1e-12 * (1.0 + on_time);
        let mut end = -slack;
        let mut total = 0.0;
        for &(s, d) in &self.pulses {
            if s < end - slack || d < -slack {
                return false;
            }
            end = s + d;
            total += d;
        }
        (total - on_time).abs() <= 1e-9 * (1.0 + on_time)
    }

    /// Steps of the physical profile: `+j` at each pulse start, `-j` at each
    /// pulse end, clamped to exact non-negative gaps.
    fn to_steps(&self, j: f64) -> Vec<(f64, f64)> {
        let mut steps = Vec::with_capacity(2 * self.pulses.len());
        for &(s, d) in &self.pulses {
            steps.push((s.max(0.0), j));
            steps.push((s.max(0.0) + d.max(0.0), -j));
        }
        steps
    }
}

/// 2x2 Newton step for a complex residual `f(u) = 0`, `u` real.
fn newton2(
    mut u: [f64; 2],
    f: impl Fn(&[f64; 2]) -> (C64, C64, C64),
    scale: f64,
) -> Option<[f64; 2]> {
    for _ in 0..80 {
        let (r, d0, d1) = f(&u);
        let j = [[d0.re, d1.re], [d0.im, d1.im]];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det.abs() < 1e-300 {
            return None;
        }
        let dx = (r.re * j[1][1] - r.im * j[0][1]) / det;
        let dy = (r.im * j[0][0] - r.re * j[1][0]) / det;
        u[0] -= dx;
        u[1] -= dy;
        if !u[0].is_finite() || !u[1].is_finite() {
            return None;
        }
        if dx.abs() <= 1e-15 * scale && dy.abs() <= 1e-15 * scale {
            return Some(u);
        }
    }
    None
}

/// Single ramp: feasible only when its residual already vanishes (undamped
/// plants with the on-time hitting a full period, or effectively rigid
/// plants whose deflection response is negligible).
fn search_one_pulse(pb: &PulseProblem) -> Option<PulseLayout> {
    let layout = PulseLayout {
        pulses: vec![(0.0, pb.on_time)],
    };
    let p = layout.phasor(pb);
    (pb.residual_m(p, pb.on_time) <= pb.rest_tol).then_some(layout)
}

/// Two pulses and one gap. Roots are isolated in `(d1, tau2)`; Newton runs
/// from period-spaced seeds and the fastest feasible root wins.
fn search_two_pulses(pb: &PulseProblem) -> Option<PulseLayout> {
    let d_total = pb.on_time;
    let period = 2.0 * PI / pb.omega_d;
    let scale = d_total.max(period);
    let half = PI / pb.omega_d;
    let mut best: Option<PulseLayout> = None;

    for frac in [0.5, 0.3, 0.7, 0.15, 0.85] {
        let d1 = frac * d_total;
        // Roots sit near odd multiples of the half period; only branches
        // with tau2 >= d1 can order, so seed a window starting just below.
        let k0 = (((d1 / half) - 1.0) / 2.0).floor().max(0.0) as i64;
        for k in (k0 - 1).max(0)..=(k0 + 8) {
            let tau2_seed = (2 * k + 1) as f64 * half;
            let res = newton2(
                [d1, tau2_seed],
                |&[d1, tau2]| {
                    let r = C64::ONE
                        .sub(pb.e(d1))
                        .add(pb.e(tau2))
                        .sub(pb.e(tau2 + d_total - d1));
                    let dd1 = pb.de(d1).neg().add(pb.de(tau2 + d_total - d1));
                    let dt2 = pb.de(tau2).sub(pb.de(tau2 + d_total - d1));
                    (r, dd1, dt2)
                },
                scale,
            );
            let Some([d1, tau2]) = res else { continue };
            let layout = PulseLayout {
                pulses: vec![(0.0, d1), (tau2, d_total - d1)],
            };
            if !layout.is_feasible(d_total) {
                continue;
            }
            if pb.residual_m(layout.phasor(pb), layout.t_f()) > pb.rest_tol {
                continue;
            }
            if best.as_ref().is_none_or(|b| layout.t_f() < b.t_f()) {
                best = Some(layout);
            }
        }
    }
    best
}

/// Three pulses, two gaps. For a fixed total duration the rest condition
/// leaves one free parameter; the first pulse length is gridded and the
/// remaining two unknowns solved by Newton. An outer bisection then pushes
/// the duration down to the feasibility boundary.
fn search_three_pulses(pb: &PulseProblem, t_upper: f64) -> Option<PulseLayout> {
    let d_total = pb.on_time;
    let period = 2.0 * PI / pb.omega_d;
    let scale = d_total.max(period);

    let solve_at = |t_f: f64| -> Option<PulseLayout> {
        if t_f <= d_total {
            return None;
        }
        let slack = t_f - d_total;
        let mut best: Option<PulseLayout> = None;
        for i in 1..=7 {
            let d1 = d_total * i as f64 / 8.0;
            for g_frac in [0.5, 0.25, 0.75] {
                let g1_seed = slack * g_frac;
                let d2_seed = (d_total - d1) * 0.5;
                let res = newton2(
                    [d2_seed, g1_seed],
                    |&[d2, g1]| {
                        let tau2 = d1 + g1;
                        let d3 = d_total - d1 - d2;
                        let tau3 = t_f - d3;
                        let r = C64::ONE
                            .sub(pb.e(d1))
                            .add(pb.e(tau2))
                            .sub(pb.e(tau2 + d2))
                            .add(pb.e(tau3))
                            .sub(pb.e(t_f));
                        let dd2 = pb.de(tau2 + d2).neg().add(pb.de(tau3));
                        let dg1 = pb.de(tau2).sub(pb.de(tau2 + d2));
                        (r, dd2, dg1)
                    },
                    scale,
                );
                let Some([d2, g1]) = res else { continue };
                let d3 = d_total - d1 - d2;
                let tau2 = d1 + g1;
                let tau3 = t_f - d3;
                let layout = PulseLayout {
                    pulses: vec![(0.0, d1), (tau2, d2), (tau3, d3)],
                };
                if !layout.is_feasible(d_total)
                    || pb.residual_m(layout.phasor(pb), layout.t_f()) > pb.rest_tol
                {
                    continue;
                }
                if best.as_ref().is_none_or(|b| layout.t_f() < b.t_f()) {
                    best = Some(layout);
                }
            }
        }
        best
    };

    // Establish a feasible upper duration by scanning upward.
    let mut hi = None;
    let mut t_hi = 0.0;
    let scan_max = t_upper.max(d_total + 3.0 * period);
    let first_slack = if t_upper > d_total {
        period.min(t_upper - d_total)
    } else {
        period
    };
    let mut t = d_total + first_slack;
    while t <= scan_max + 1e-15 {
        if let Some(l) = solve_at(t) {
            hi = Some(l);
            t_hi = t;
            break;
        }
        t += period / 8.0;
    }
    let mut hi = hi?;

    let mut lo = d_total;
    while t_hi - lo > 1e-9 {
        let mid = 0.5 * (lo + t_hi);
        match solve_at(mid) {
            Some(l) => {
                t_hi = mid;
                hi = l;
            }
            None => lo = mid,
        }
    }
    Some(hi)
}

/// Runs the structure enumeration and returns the first feasible structure's
/// optimum as a segment, or `None` when nothing within three pulses works.
fn pulse_search(spec: &SegmentSpec) -> Option<JerkSegment> {
    let pb = PulseProblem::new(spec);
    let da = spec.delta_a();
    let j = spec.j_lim.copysign(da);

    let layout = search_one_pulse(&pb)
        .or_else(|| search_two_pulses(&pb))
        .or_else(|| {
            let upper = pb.on_time + PI / pb.omega_d;
            search_three_pulses(&pb, upper)
        })?;

    let t_f = layout.t_f();
    Some(JerkSegment::from_steps(
        layout.to_steps(j),
        t_f,
        spec.a_start,
    ))
}

/// Residual oscillation of a designed segment in m: distance of the final
/// mode state from the forced equilibrium of the end acceleration, expressed
/// as a decay-envelope amplitude.
pub fn segment_residual(seg: &JerkSegment, spec: &SegmentSpec) -> f64 {
    let modal = &spec.modal;
    let start = equilibrium(modal, spec.a_start);
    let end = propagate_osc(&seg.profile, modal, start, seg.t_f);
    let eq = equilibrium(modal, spec.a_end);
    let x = end.deflection - eq.deflection;
    let v = end.velocity;
    (x * x + ((v + modal.delta * x) / modal.omega_d).powi(2)).sqrt()
}
