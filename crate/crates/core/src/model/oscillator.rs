//! Exact propagation of the internal mode under a jerk-step profile.
//!
//! The base deflection obeys `x'' + 2*delta*x' + omega0^2*x = -m_star*z''`.
//! In deviation coordinates `y1 = x - x_eq(z'')`, `y2 = x'` (with
//! `x_eq(a) = -m_star*a/omega0^2` the forced equilibrium) the forcing becomes
//! the jerk, which is constant between steps. Each inter-step interval is
//! therefore a constant offset plus a damped-cosine transition matrix, so
//! propagation over a whole profile is a short product of closed forms and
//! needs no ODE stepping.

use super::plant::PlantModal;
use super::profile::JerkProfile;

/// State of the internal mode: base deflection and its rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscState {
    /// Deflection x in m.
    pub deflection: f64,
    /// Deflection rate x' in m/s.
    pub velocity: f64,
}

impl OscState {
    pub const ZERO: Self = Self {
        deflection: 0.0,
        velocity: 0.0,
    };
}

/// Forced equilibrium for a constant slider acceleration.
pub fn equilibrium(modal: &PlantModal, acceleration: f64) -> OscState {
    OscState {
        deflection: -modal.m_star * acceleration / (modal.omega0 * modal.omega0),
        velocity: 0.0,
    }
}

/// Homogeneous transition matrix over `dt` (row major).
fn transition(modal: &PlantModal, dt: f64) -> [[f64; 2]; 2] {
    let (d, wd, w0) = (modal.delta, modal.omega_d, modal.omega0);
    let e = (-d * dt).exp();
    let (s, c) = (wd * dt).sin_cos();
    [
        [e * (c + d / wd * s), e * (s / wd)],
        [e * (-(w0 * w0) / wd * s), e * (c - d / wd * s)],
    ]
}

/// Offset of the constant-jerk particular solution in deviation coordinates.
fn forced_offset(modal: &PlantModal, jerk: f64) -> (f64, f64) {
    let w02 = modal.omega0 * modal.omega0;
    let y2 = -modal.m_star * jerk / w02;
    let y1 = -2.0 * modal.delta * y2 / w02;
    (y1, y2)
}

/// Exact state of the oscillator at time `t`, starting from `state0` at t = 0
/// and forced by the profile's slider acceleration.
pub fn propagate_osc(
    profile: &JerkProfile,
    modal: &PlantModal,
    state0: OscState,
    t: f64,
) -> OscState {
    let w02 = modal.omega0 * modal.omega0;
    let couple = modal.m_star / w02;

    // Deviation coordinates at t = 0.
    let mut acc = profile.init().acceleration;
    let mut y1 = state0.deflection + couple * acc;
    let mut y2 = state0.velocity;
    let mut jerk = 0.0;
    let mut now = 0.0;

    let advance = |y1: &mut f64, y2: &mut f64, jerk: f64, dt: f64| {
        if dt <= 0.0 {
            return;
        }
        let (p1, p2) = forced_offset(modal, jerk);
        let phi = transition(modal, dt);
        let (h1, h2) = (*y1 - p1, *y2 - p2);
        *y1 = p1 + phi[0][0] * h1 + phi[0][1] * h2;
        *y2 = p2 + phi[1][0] * h1 + phi[1][1] * h2;
    };

    for s in profile.steps() {
        if s.time >= t {
            break;
        }
        if s.time > now {
            advance(&mut y1, &mut y2, jerk, s.time - now);
            acc += jerk * (s.time - now);
            now = s.time;
        }
        jerk += s.amplitude;
    }
    advance(&mut y1, &mut y2, jerk, t - now);
    acc += jerk * (t - now);

    OscState {
        deflection: y1 - couple * acc,
        velocity: y2,
    }
}

/// Residual oscillation amplitude of the simulated plant at the end of a
/// finished profile.
///
/// The plant starts at the forced equilibrium of the initial acceleration and
/// is propagated to the last switching time `t_ft`. About the terminal
/// equilibrium the free decay is `a0 * exp(-delta*(t - t_ft)) * sin(...)`, and
/// its amplitude follows from the terminal state alone:
/// `a0 = sqrt(x~^2 + ((x' + delta*x~)/omega_d)^2)`.
pub fn residual_amplitude(profile: &JerkProfile, modal_sim: &PlantModal) -> f64 {
    let t_ft = profile.end_time();
    let start = equilibrium(modal_sim, profile.init().acceleration);
    let end = propagate_osc(profile, modal_sim, start, t_ft);
    let eq = equilibrium(modal_sim, profile.sample(t_ft).acceleration);
    let x = end.deflection - eq.deflection;
    let v = end.velocity;
    (x * x + ((v + modal_sim.delta * x) / modal_sim.omega_d).powi(2)).sqrt()
}

#[cfg(test)]
pub(crate) mod test_oracles {
    use super::*;

    /// Fixed-step RK4 integration of the second-order mode equation, with the
    /// grid aligned to the profile's switching times. Step size is chosen per
    /// call; the forcing is evaluated through the closed-form kinematics.
    pub fn integrate_mode_rk4(
        profile: &JerkProfile,
        modal: &PlantModal,
        state0: OscState,
        t_end: f64,
        h_max: f64,
    ) -> OscState {
        let mut nodes: Vec<f64> = vec![0.0];
        for s in profile.steps() {
            if s.time > 0.0 && s.time < t_end {
                nodes.push(s.time);
            }
        }
        nodes.push(t_end);
        nodes.sort_by(f64::total_cmp);
        nodes.dedup();

        let w02 = modal.omega0 * modal.omega0;
        let f = |t: f64, x: f64, v: f64| -> (f64, f64) {
            let acc = profile.sample(t).acceleration;
            (v, -w02 * x - 2.0 * modal.delta * v - modal.m_star * acc)
        };

        let (mut x, mut v) = (state0.deflection, state0.velocity);
        for w in nodes.windows(2) {
            let (a, b) = (w[0], w[1]);
            let n = ((b - a) / h_max).ceil().max(1.0) as usize;
            let h = (b - a) / n as f64;
            let mut t = a;
            for _ in 0..n {
                let (k1x, k1v) = f(t, x, v);
                let (k2x, k2v) = f(t + 0.5 * h, x + 0.5 * h * k1x, v + 0.5 * h * k1v);
                let (k3x, k3v) = f(t + 0.5 * h, x + 0.5 * h * k2x, v + 0.5 * h * k2v);
                let (k4x, k4v) = f(t + h, x + h * k3x, v + h * k3v);
                x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
                v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
                t += h;
            }
        }
        OscState {
            deflection: x,
            velocity: v,
        }
    }
}
