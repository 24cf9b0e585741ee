//! Decay-envelope fit for measured (or simulated) base oscillation.

use crate::error::{Error, Result};
use crate::model::PlantModal;

/// Least-squares fit of `a0 * exp(-delta*(t - t_ft)) * sin(omega_d*t - phi0)`
/// to samples taken after the arrival time `t_ft`.
///
/// The fit is linear in the basis
/// `{exp(-delta*(t-t_ft))*sin(omega_d*t), exp(-delta*(t-t_ft))*cos(omega_d*t)}`;
/// the amplitude is the hypotenuse of the two coefficients. Samples before
/// `t_ft` are ignored.
pub fn envelope_fit(
    samples: &[(f64, f64)],
    t_ft: f64,
    modal: &PlantModal,
) -> Result<(f64, f64)> {
    let tail: Vec<&(f64, f64)> = samples.iter().filter(|(t, _)| *t >= t_ft).collect();
    let window = tail
        .last()
        .map(|(t, _)| t - t_ft)
        .unwrap_or(0.0);
    if modal.omega_d * window < 1.0 {
        return Err(Error::RankDeficientFit {
            omega_d_window: modal.omega_d * window,
        });
    }

    // Normal equations of the 2-column least squares.
    let (mut ss, mut sc, mut cc, mut sy, mut cy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &&(t, x) in &tail {
        let env = (-modal.delta * (t - t_ft)).exp();
        let (s, c) = (modal.omega_d * t).sin_cos();
        let (bs, bc) = (env * s, env * c);
        ss += bs * bs;
        sc += bs * bc;
        cc += bc * bc;
        sy += bs * x;
        cy += bc * x;
    }
    let det = ss * cc - sc * sc;
    if det.abs() < 1e-30 * (ss * cc).max(1.0) {
        return Err(Error::RankDeficientFit {
            omega_d_window: modal.omega_d * window,
        });
    }
    let c_sin = (sy * cc - cy * sc) / det;
    let c_cos = (cy * ss - sy * sc) / det;

    // x = c_sin*sin + c_cos*cos = a0*sin(omega_d*t - phi0).
    let a0 = c_sin.hypot(c_cos);
    let phi0 = (-c_cos).atan2(c_sin);
    Ok((a0, phi0))
}
