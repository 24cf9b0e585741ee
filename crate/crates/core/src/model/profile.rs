//! Heaviside jerk-step profiles and their closed-form integrals.
//!
//! A trajectory is `z'''(t) = sum_i a_i * H(t - t_i)` plus an initial
//! kinematic state. Position, velocity and acceleration follow by
//! integrating each step, so evaluation at any time is exact.

/// One Heaviside step of the jerk signal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JerkStep {
    /// Switching time in s.
    pub time: f64,
    /// Jerk amplitude added at `time`, in m/s^3.
    pub amplitude: f64,
}

/// Kinematic state at the profile start (t = 0).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct InitialState {
    pub position: f64,
    pub velocity: f64,
    pub acceleration: f64,
}

/// Sampled kinematic state of a profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KinematicSample {
    pub t: f64,
    pub position: f64,
    pub velocity: f64,
    pub acceleration: f64,
    pub jerk: f64,
}

/// Ordered list of jerk steps plus the initial kinematic state.
///
/// Construction normalizes the step list: steps are sorted by time, steps
/// closer than 1 ps are merged by summing amplitudes, and vanished steps are
/// dropped. Superposition of overlapping segments is therefore a plain list
/// merge.
#[derive(Debug, Clone, PartialEq)]
pub struct JerkProfile {
    steps: Vec<JerkStep>,
    init: InitialState,
}

/// Steps closer than this are one switching instant that was computed along
/// two different floating-point paths.
const MERGE_EPS: f64 = 1e-12;

impl JerkProfile {
    pub fn new(steps: impl IntoIterator<Item = (f64, f64)>, init: InitialState) -> Self {
        let mut raw: Vec<JerkStep> = steps
            .into_iter()
            .map(|(time, amplitude)| JerkStep { time, amplitude })
            .collect();
        raw.sort_by(|a, b| a.time.total_cmp(&b.time));

        let mut steps: Vec<JerkStep> = Vec::with_capacity(raw.len());
        for s in raw {
            match steps.last_mut() {
                Some(last) if s.time - last.time <= MERGE_EPS => last.amplitude += s.amplitude,
                _ => steps.push(s),
            }
        }
        let max_amp = steps
            .iter()
            .map(|s| s.amplitude.abs())
            .fold(0.0_f64, f64::max);
        steps.retain(|s| s.amplitude.abs() > 1e-14 * max_amp);

        Self { steps, init }
    }

    /// Profile starting from full rest at the origin.
    pub fn from_rest(steps: impl IntoIterator<Item = (f64, f64)>) -> Self {
        Self::new(steps, InitialState::default())
    }

    pub fn empty() -> Self {
        Self::from_rest([])
    }

    pub fn steps(&self) -> &[JerkStep] {
        &self.steps
    }

    pub fn init(&self) -> InitialState {
        self.init
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Time of the last jerk switch; 0 for an empty profile.
    pub fn end_time(&self) -> f64 {
        self.steps.last().map_or(0.0, |s| s.time)
    }

    /// Earliest jerk switch; 0 for an empty profile.
    pub fn start_time(&self) -> f64 {
        self.steps.first().map_or(0.0, |s| s.time)
    }

    /// Same motion translated by `dt`.
    pub fn shifted(&self, dt: f64) -> Self {
        Self {
            steps: self
                .steps
                .iter()
                .map(|s| JerkStep {
                    time: s.time + dt,
                    amplitude: s.amplitude,
                })
                .collect(),
            init: self.init,
        }
    }

    /// Mirrored motion: every amplitude and the initial state change sign.
    pub fn negated(&self) -> Self {
        self.scaled(-1.0)
    }

    /// Amplitudes and initial state scaled by `k`.
    pub fn scaled(&self, k: f64) -> Self {
        Self {
            steps: self
                .steps
                .iter()
                .map(|s| JerkStep {
                    time: s.time,
                    amplitude: k * s.amplitude,
                })
                .collect(),
            init: InitialState {
                position: k * self.init.position,
                velocity: k * self.init.velocity,
                acceleration: k * self.init.acceleration,
            },
        }
    }

    /// Superposition of two profiles: merged step lists, summed initial states.
    pub fn superpose(&self, other: &Self) -> Self {
        let steps = self
            .steps
            .iter()
            .chain(other.steps.iter())
            .map(|s| (s.time, s.amplitude));
        Self::new(
            steps,
            InitialState {
                position: self.init.position + other.init.position,
                velocity: self.init.velocity + other.init.velocity,
                acceleration: self.init.acceleration + other.init.acceleration,
            },
        )
    }

    /// Exact closed-form evaluation at time `t`.
    ///
    /// Past the last step the profile extrapolates with constant jerk (the
    /// sum of all amplitudes, zero for a finished trajectory).
    pub fn sample(&self, t: f64) -> KinematicSample {
        let mut jerk = 0.0;
        let mut acc = self.init.acceleration;
        let mut vel = self.init.velocity + self.init.acceleration * t;
        let mut pos =
            self.init.position + self.init.velocity * t + 0.5 * self.init.acceleration * t * t;
        for s in &self.steps {
            let dt = t - s.time;
            if dt >= 0.0 {
                jerk += s.amplitude;
                acc += s.amplitude * dt;
                vel += 0.5 * s.amplitude * dt * dt;
                pos += s.amplitude * dt * dt * dt / 6.0;
            }
        }
        KinematicSample {
            t,
            position: pos,
            velocity: vel,
            acceleration: acc,
            jerk,
        }
    }

    /// Step-moment residuals `(sum a_i, sum a_i t_i, sum a_i t_i^2)`.
    ///
    /// All three vanish exactly when jerk, acceleration and velocity return
    /// to zero after the last step, which certifies a rest-to-rest slider
    /// transition for a profile that starts at rest.
    pub fn moments(&self) -> (f64, f64, f64) {
        let mut m = (0.0, 0.0, 0.0);
        for s in &self.steps {
            m.0 += s.amplitude;
            m.1 += s.amplitude * s.time;
            m.2 += s.amplitude * s.time * s.time;
        }
        m
    }
}

/// Free-function spelling of [`JerkProfile::sample`].
pub fn eval_kinematics(profile: &JerkProfile, t: f64) -> KinematicSample {
    profile.sample(t)
}

/// Free-function spelling of [`JerkProfile::moments`].
pub fn moment_conditions(profile: &JerkProfile) -> (f64, f64, f64) {
    profile.moments()
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_profile_is_ballistic() {
        let p = JerkProfile::new(
            [],
            InitialState {
                position: 1.0,
                velocity: 2.0,
                acceleration: 3.0,
            },
        );
        let s = p.sample(2.0);
        assert_eq!(s.position, 1.0 + 2.0 * 2.0 + 0.5 * 3.0 * 4.0);
        assert_eq!(s.velocity, 2.0 + 3.0 * 2.0);
        assert_eq!(s.acceleration, 3.0);
        assert_eq!(s.jerk, 0.0);
    }

    #[test]
    fn single_step_from_rest_is_an_integrator_chain() {
        let j = 800.0;
        let p = JerkProfile::from_rest([(0.0, j)]);
        let t: f64 = 0.05;
        let s = p.sample(t);
        assert!((s.position - j * t.powi(3) / 6.0).abs() < 1e-15);
        assert!((s.velocity - j * t * t / 2.0).abs() < 1e-15);
        assert!((s.acceleration - j * t).abs() < 1e-15);
        assert_eq!(s.jerk, j);
    }

    #[test]
    fn normalization_sorts_merges_and_drops() {
        let p = JerkProfile::from_rest([(0.02, -5.0), (0.01, 3.0), (0.02, 5.0), (0.0, 1.0)]);
        let times: Vec<f64> = p.steps().iter().map(|s| s.time).collect();
        assert_eq!(times, vec![0.0, 0.01]);
        assert_eq!(p.steps()[1].amplitude, 3.0);
    }

    #[test]
    fn moments_of_empty_and_one_sided_profiles() {
        assert_eq!(JerkProfile::empty().moments(), (0.0, 0.0, 0.0));
        let (s0, _, _) = JerkProfile::from_rest([(0.1, 4.0)]).moments();
        assert!(s0 != 0.0);
    }

    #[test]
    fn closed_form_matches_numerical_integration() {
        // Asymmetric profile with a rest-to-rest step set.
        let j = 600.0;
        let p = JerkProfile::from_rest([
            (0.0, j),
            (0.01, -j),
            (0.025, -j),
            (0.035, j),
            (0.05, -0.5 * j),
            (0.08, 0.5 * j),
        ]);
        for &t in &[0.004, 0.02, 0.0301, 0.07, 0.12] {
            let exact = p.sample(t);
            let num = test_oracles::integrate_numerically(&p, t, 1e-7);
            assert!(
                (exact.position - num.position).abs() <= 1e-9,
                "pos at {t}: {} vs {}",
                exact.position,
                num.position
            );
            assert!((exact.velocity - num.velocity).abs() <= 1e-9);
            assert!((exact.acceleration - num.acceleration).abs() <= 1e-9);
        }
    }

    #[test]
    fn moments_vanish_iff_profile_returns_to_rest() {
        // Acceleration pulse up and mirrored pulse down: a full stop.
        let j = 100.0;
        let d = 0.02;
        let ta = 0.06;
        let accel = [(0.0, j), (d, -j), (ta - d, -j), (ta, j)];
        let resting = JerkProfile::from_rest(
            accel
                .iter()
                .copied()
                .chain(accel.iter().map(|&(t, a)| (ta + t, -a))),
        );
        // This one is built to null the first two moments only.
        let drifting = JerkProfile::from_rest([(0.0, j), (0.01, -2.0 * j), (0.02, j)]);

        for (p, rest) in [(&resting, true), (&drifting, false)] {
            let (s0, s1, s2) = p.moments();
            let after = p.sample(p.end_time() + 0.123);
            let moments_zero = s0.abs() < 1e-9 && s1.abs() < 1e-9 && s2.abs() < 1e-9;
            let at_rest = after.jerk.abs() < 1e-9
                && after.acceleration.abs() < 1e-9
                && after.velocity.abs() < 1e-9;
            assert_eq!(moments_zero, rest);
            assert_eq!(at_rest, rest);
        }
    }

    #[test]
    fn superposition_adds_samples() {
        let a = JerkProfile::from_rest([(0.0, 10.0), (0.03, -10.0)]);
        let b = JerkProfile::from_rest([(0.01, -4.0), (0.05, 4.0)]);
        let sum = a.superpose(&b);
        for &t in &[0.0, 0.02, 0.04, 0.1] {
            let (sa, sb, ss) = (a.sample(t), b.sample(t), sum.sample(t));
            assert!((ss.position - sa.position - sb.position).abs() < 1e-12);
            assert!((ss.velocity - sa.velocity - sb.velocity).abs() < 1e-12);
            assert!((ss.acceleration - sa.acceleration - sb.acceleration).abs() < 1e-12);
        }
    }
}
