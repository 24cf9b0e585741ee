//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid plant parameters: {0}")]
    InvalidPlant(String),

    /// The modal reduction only covers underdamped plants.
    #[error("plant is not underdamped (delta = {delta} 1/s >= omega0 = {omega0} rad/s)")]
    NotUnderdamped { omega0: f64, delta: f64 },

    #[error("invalid kinematic limits: {0}")]
    InvalidLimits(String),

    #[error("invalid segment spec: {0}")]
    InvalidSegment(String),

    /// The bounded pulse-structure search found no rest-to-rest jerk pulse
    /// arrangement; callers fall back to the shaped construction.
    #[error("no feasible jerk pulse structure within {max_pulses} pulses (delta_a = {delta_a} m/s^2, j_lim = {j_lim} m/s^3)")]
    SegmentSearchFailed {
        delta_a: f64,
        j_lim: f64,
        max_pulses: usize,
    },

    /// A case closed form has no real solution at the requested acceleration.
    #[error("{case} assembly infeasible at a_max = {a_max} m/s^2 for z_f = {z_f} m (discriminant = {discriminant})")]
    CaseInfeasible {
        case: &'static str,
        z_f: f64,
        a_max: f64,
        discriminant: f64,
    },

    /// The hold durations overlap so deeply that a segment would spill past
    /// the trajectory end; the topology no longer represents the case.
    #[error("{case} segment ordering collapsed at a_max = {a_max} m/s^2 for z_f = {z_f} m (spill = {spill} s)")]
    CaseOrderingBroken {
        case: &'static str,
        z_f: f64,
        a_max: f64,
        spill: f64,
    },

    /// The acceleration search exhausted its iteration budget without a
    /// feasible plan. Carries the visited iterates for diagnosis.
    #[error("no feasible working acceleration for z_f = {z_f} m within {iterations} iterations; last violation: {last_violation}")]
    NoFeasibleAccel {
        z_f: f64,
        iterations: usize,
        last_violation: String,
        trace: Vec<(f64, bool)>,
    },

    #[error("envelope fit basis is rank deficient (omega_d * window = {omega_d_window} rad < 1)")]
    RankDeficientFit { omega_d_window: f64 },

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
