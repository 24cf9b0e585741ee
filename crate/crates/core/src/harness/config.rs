//! Line-oriented run configuration.
//!
//! The file format is `key = value` pairs under `[plant]`, `[limits]`,
//! `[optimizer]` and `[bench]` sections, decimal floats only, `#` comments.
//! The plant is given either physically (`m_s, m_b, k, d`) or modally
//! (`omega0, delta, m_star`), never both.

use crate::error::{Error, Result};
use crate::model::{KinematicLimits, PlantModal, PlantPhysical};
use crate::optimizer::OptimizerConfig;
use crate::segment::SegmentMethod;
use std::collections::BTreeMap;

/// Plant description as it appeared in the config.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PlantConfig {
    Physical(PlantPhysical),
    Modal(PlantModal),
}

impl PlantConfig {
    pub fn modal(&self) -> Result<PlantModal> {
        match self {
            PlantConfig::Physical(p) => PlantModal::from_physical(p),
            PlantConfig::Modal(m) => Ok(*m),
        }
    }
}

/// Everything a benchmark run needs.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub plant: PlantConfig,
    pub limits: KinematicLimits,
    pub optimizer: OptimizerConfig,
    pub segment_method: SegmentMethod,
    /// Controller cycle used for resampling and reporting, in s.
    pub controller_cycle: f64,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut sections: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
        let mut current = String::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                current = name.trim().to_string();
                sections.entry(current.clone()).or_default();
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Config(format!(
                    "line {}: expected 'key = value', got '{raw}'",
                    lineno + 1
                )));
            };
            if current.is_empty() {
                return Err(Error::Config(format!(
                    "line {}: key before any [section]",
                    lineno + 1
                )));
            }
            sections
                .get_mut(&current)
                .expect("section exists")
                .insert(key.trim().to_string(), value.trim().to_string());
        }

        let get_f64 = |section: &str, key: &str| -> Result<Option<f64>> {
            match sections.get(section).and_then(|s| s.get(key)) {
                None => Ok(None),
                Some(v) => v.parse::<f64>().map(Some).map_err(|_| {
                    Error::Config(format!("[{section}] {key}: not a decimal float: '{v}'"))
                }),
            }
        };
        let require = |section: &str, key: &str| -> Result<f64> {
            get_f64(section, key)?
                .ok_or_else(|| Error::Config(format!("missing [{section}] {key}")))
        };

        let plant_keys = sections.get("plant").cloned().unwrap_or_default();
        let physical = ["m_s", "m_b", "k", "d"]
            .iter()
            .any(|k| plant_keys.contains_key(*k));
        let modal = ["omega0", "delta", "m_star"]
            .iter()
            .any(|k| plant_keys.contains_key(*k));
        let plant = match (physical, modal) {
            (true, false) => PlantConfig::Physical(PlantPhysical::new(
                require("plant", "m_s")?,
                require("plant", "m_b")?,
                require("plant", "k")?,
                require("plant", "d")?,
            )?),
            (false, true) => PlantConfig::Modal(PlantModal::new(
                require("plant", "omega0")?,
                require("plant", "delta")?,
                require("plant", "m_star")?,
            )?),
            (true, true) => {
                return Err(Error::Config(
                    "[plant] mixes physical (m_s, m_b, k, d) and modal (omega0, delta, m_star) keys"
                        .into(),
                ))
            }
            (false, false) => {
                return Err(Error::Config(
                    "[plant] must provide either m_s/m_b/k/d or omega0/delta/m_star".into(),
                ))
            }
        };

        let limits = KinematicLimits::new(
            require("limits", "v_lim")?,
            require("limits", "a_lim")?,
            require("limits", "j_lim")?,
        )?;

        let defaults = OptimizerConfig::default();
        let optimizer = OptimizerConfig {
            dt_boundary: get_f64("optimizer", "dt_boundary")?.unwrap_or(defaults.dt_boundary),
            n_max_iter: get_f64("optimizer", "n_max_iter")?
                .map(|v| v as usize)
                .unwrap_or(defaults.n_max_iter),
            a_scan_points: get_f64("optimizer", "a_scan_points")?
                .map(|v| v as usize)
                .unwrap_or(defaults.a_scan_points),
            fd_step_rel: get_f64("optimizer", "fd_step_rel")?.unwrap_or(defaults.fd_step_rel),
        };
        optimizer.validate()?;

        let segment_method = match sections.get("bench").and_then(|s| s.get("segment_method")) {
            None => SegmentMethod::TimeOptimal,
            Some(v) => v.parse()?,
        };
        let controller_cycle = get_f64("bench", "controller_cycle")?.unwrap_or(400e-6);
        if !(controller_cycle > 0.0) {
            return Err(Error::Config(format!(
                "controller_cycle must be > 0, got {controller_cycle}"
            )));
        }

        Ok(Self {
            plant,
            limits,
            optimizer,
            segment_method,
            controller_cycle,
        })
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Canonical text form; parsing it back yields an equal config.
    pub fn to_text(&self) -> String {
        use super::format_f64 as f;
        let mut out = String::from("[plant]\n");
        match &self.plant {
            PlantConfig::Physical(p) => {
                out += &format!(
                    "m_s = {}\nm_b = {}\nk = {}\nd = {}\n",
                    f(p.slider_mass),
                    f(p.base_mass),
                    f(p.stiffness),
                    f(p.damping)
                );
            }
            PlantConfig::Modal(m) => {
                out += &format!(
                    "omega0 = {}\ndelta = {}\nm_star = {}\n",
                    f(m.omega0),
                    f(m.delta),
                    f(m.m_star)
                );
            }
        }
        out += &format!(
            "\n[limits]\nv_lim = {}\na_lim = {}\nj_lim = {}\n",
            f(self.limits.v_lim),
            f(self.limits.a_lim),
            f(self.limits.j_lim)
        );
        out += &format!(
            "\n[optimizer]\ndt_boundary = {}\nn_max_iter = {}\na_scan_points = {}\nfd_step_rel = {}\n",
            f(self.optimizer.dt_boundary),
            self.optimizer.n_max_iter,
            self.optimizer.a_scan_points,
            f(self.optimizer.fd_step_rel)
        );
        out += &format!(
            "\n[bench]\nsegment_method = {}\ncontroller_cycle = {}\n",
            self.segment_method.name(),
            f(self.controller_cycle)
        );
        out
    }

    /// FNV-1a hash of the canonical text, recorded in output headers so a
    /// result file pins the exact configuration that produced it.
    pub fn content_hash(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in self.to_text().bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x1_0000_01b3);
        }
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DEMO: &str = "
# demo axis
[plant]
m_s = 25.0
m_b = 500.0
k = 15e6
d = 5e3

[limits]
v_lim = 1.5
a_lim = 20.0
j_lim = 800.0

[optimizer]
n_max_iter = 23

[bench]
segment_method = timeopt
controller_cycle = 400e-6
";

    #[test]
    fn parses_physical_plant_with_defaults() {
        let cfg = RunConfig::parse(DEMO).unwrap();
        let modal = cfg.plant.modal().unwrap();
        assert!((modal.damped_frequency_hz() - 26.8914).abs() < 1e-4);
        assert_eq!(cfg.optimizer.dt_boundary, 400e-6);
        assert_eq!(cfg.segment_method, SegmentMethod::TimeOptimal);
    }

    #[test]
    fn parses_modal_plant() {
        let text = "[plant]\nomega0 = 61.02\ndelta = 0.799\nm_star = 0.05\n\
                    [limits]\nv_lim = 0.45\na_lim = 6\nj_lim = 200\n";
        let cfg = RunConfig::parse(text).unwrap();
        assert!(matches!(cfg.plant, PlantConfig::Modal(_)));
    }

    #[test]
    fn rejects_mixed_and_missing_plants() {
        let mixed = "[plant]\nm_s = 1\nm_b = 1\nk = 1\nd = 0\nomega0 = 10\n\
                     [limits]\nv_lim = 1\na_lim = 1\nj_lim = 1\n";
        assert!(matches!(RunConfig::parse(mixed), Err(Error::Config(_))));
        let none = "[limits]\nv_lim = 1\na_lim = 1\nj_lim = 1\n";
        assert!(matches!(RunConfig::parse(none), Err(Error::Config(_))));
    }

    #[test]
    fn rejects_malformed_lines_and_bad_floats() {
        assert!(RunConfig::parse("[plant]\nbogus line\n").is_err());
        assert!(RunConfig::parse("[plant]\nomega0 = ten\n").is_err());
        assert!(RunConfig::parse("key = 1\n").is_err());
    }

    #[test]
    fn canonical_text_round_trips() {
        let cfg = RunConfig::parse(DEMO).unwrap();
        let text = cfg.to_text();
        let back = RunConfig::parse(&text).unwrap();
        assert_eq!(back, cfg);
        assert_eq!(back.content_hash(), cfg.content_hash());
    }
}
