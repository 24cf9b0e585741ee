use crate::error::{Error, Result};

/// Two-mass lumped model of one axis: slider (actuated) on a compliant base.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlantPhysical {
    /// Slider mass in kg.
    pub slider_mass: f64,
    /// Base frame mass in kg.
    pub base_mass: f64,
    /// Frame stiffness in N/m.
    pub stiffness: f64,
    /// Viscous frame damping in kg/s.
    pub damping: f64,
}

impl PlantPhysical {
    pub fn new(slider_mass: f64, base_mass: f64, stiffness: f64, damping: f64) -> Result<Self> {
        let p = Self {
            slider_mass,
            base_mass,
            stiffness,
            damping,
        };
        for (name, v) in [
            ("slider_mass", slider_mass),
            ("base_mass", base_mass),
            ("stiffness", stiffness),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidPlant(format!("{name} must be > 0, got {v}")));
            }
        }
        if !(damping >= 0.0) || !damping.is_finite() {
            return Err(Error::InvalidPlant(format!(
                "damping must be >= 0, got {damping}"
            )));
        }
        Ok(p)
    }

    pub fn total_mass(&self) -> f64 {
        self.slider_mass + self.base_mass
    }
}

/// Modal reduction of the base dynamics: a damped harmonic oscillator
/// excited by the slider acceleration,
/// `x'' + 2*delta*x' + omega0^2*x = -m_star * z''`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlantModal {
    /// Undamped angular eigenfrequency in rad/s.
    pub omega0: f64,
    /// Damping coefficient in 1/s.
    pub delta: f64,
    /// Damped angular eigenfrequency `sqrt(omega0^2 - delta^2)` in rad/s.
    pub omega_d: f64,
    /// Mass coupling ratio (slider mass over total mass), dimensionless.
    pub m_star: f64,
}

impl PlantModal {
    pub fn new(omega0: f64, delta: f64, m_star: f64) -> Result<Self> {
        if !(omega0 > 0.0) || !omega0.is_finite() {
            return Err(Error::InvalidPlant(format!(
                "omega0 must be > 0, got {omega0}"
            )));
        }
        if !(delta >= 0.0) || !delta.is_finite() {
            return Err(Error::InvalidPlant(format!(
                "delta must be >= 0, got {delta}"
            )));
        }
        if delta >= omega0 {
            return Err(Error::NotUnderdamped { omega0, delta });
        }
        if !(m_star > 0.0) || !m_star.is_finite() {
            return Err(Error::InvalidPlant(format!(
                "m_star must be > 0, got {m_star}"
            )));
        }
        Ok(Self {
            omega0,
            delta,
            omega_d: (omega0 * omega0 - delta * delta).sqrt(),
            m_star,
        })
    }

    /// Modal parameters of the two-mass model: `omega0 = sqrt(k/m_g)`,
    /// `delta = d/(2 m_g)`, `m_star = m_s/m_g` with `m_g` the total mass.
    pub fn from_physical(phys: &PlantPhysical) -> Result<Self> {
        let m_g = phys.total_mass();
        let omega0 = (phys.stiffness / m_g).sqrt();
        let delta = phys.damping / (2.0 * m_g);
        Self::new(omega0, delta, phys.slider_mass / m_g)
    }

    /// Damped eigenfrequency in Hz.
    pub fn damped_frequency_hz(&self) -> f64 {
        self.omega_d / std::f64::consts::TAU
    }

    /// Modal parameters with the damped frequency replaced by `f_d` Hz while
    /// the damping coefficient is kept. Used for sensitivity studies.
    pub fn with_damped_frequency_hz(&self, f_d: f64) -> Result<Self> {
        let omega_d = std::f64::consts::TAU * f_d;
        if !(omega_d > 0.0) {
            return Err(Error::InvalidPlant(format!(
                "damped frequency must be > 0, got {f_d} Hz"
            )));
        }
        let omega0 = (omega_d * omega_d + self.delta * self.delta).sqrt();
        Self::new(omega0, self.delta, self.m_star)
    }
}

/// Modal reduction of a physical parameter set; see [`PlantModal::from_physical`].
pub fn derive_modal(phys: &PlantPhysical) -> Result<PlantModal> {
    PlantModal::from_physical(phys)
}

/// Hard actuator bounds for the slider.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KinematicLimits {
    /// Velocity bound in m/s.
    pub v_lim: f64,
    /// Acceleration bound in m/s^2.
    pub a_lim: f64,
    /// Jerk bound in m/s^3.
    pub j_lim: f64,
}

impl KinematicLimits {
    pub fn new(v_lim: f64, a_lim: f64, j_lim: f64) -> Result<Self> {
        for (name, v) in [("v_lim", v_lim), ("a_lim", a_lim), ("j_lim", j_lim)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidLimits(format!("{name} must be > 0, got {v}")));
            }
        }
        Ok(Self {
            v_lim,
            a_lim,
            j_lim,
        })
    }
}
