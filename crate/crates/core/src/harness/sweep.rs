//! Distance and parameter-sensitivity sweeps over the implemented planners.

use super::config::RunConfig;
use super::format_f64;
use crate::baselines::{s_curve, zv_shape};
use crate::error::{Error, Result};
use crate::model::residual_amplitude;
use crate::optimizer::Planner;
use std::io::Write;

/// One swept operating point: transition times per planner, case and
/// working acceleration of the segmented planner, and residual amplitudes at
/// the simulated frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub z_f: f64,
    /// Damped frequency of the simulated plant in Hz (the nominal one for
    /// pure distance sweeps).
    pub f_sys_hz: f64,
    pub t_ft_scurve: f64,
    pub t_ft_zv: f64,
    /// Segmented planner; NaN when the row's plan failed.
    pub t_ft_jerkseg: f64,
    /// `t_ft_jerkseg - t_ft_zv`, negative when the segmented planner wins.
    pub dt_jerkseg_vs_zv: f64,
    pub case: String,
    pub a_max_used: f64,
    pub a0_scurve: f64,
    pub a0_zv: f64,
    pub a0_jerkseg: f64,
    /// "ok" or the planner error for this row.
    pub status: String,
}

/// Stable column order of the CSV contract.
pub const SWEEP_COLUMNS: [&str; 12] = [
    "z_f",
    "f_sys_hz",
    "t_ft_scurve",
    "t_ft_zv",
    "t_ft_jerkseg",
    "dt_jerkseg_vs_zv",
    "case",
    "a_max_used",
    "a0_scurve",
    "a0_zv",
    "a0_jerkseg",
    "status",
];

/// Plans every implemented planner at each distance. Rows are produced in
/// input order; a planner failure is recorded in its row and the sweep
/// continues.
pub fn sweep_distances(cfg: &RunConfig, z_list: &[f64]) -> Result<Vec<SweepRow>> {
    let modal = cfg.plant.modal()?;
    let planner = Planner::new(cfg.limits, modal, cfg.optimizer, cfg.segment_method)?;
    let mut rows = Vec::with_capacity(z_list.len());
    for &z_f in z_list {
        let base = s_curve(z_f, &cfg.limits)?;
        let shaped = zv_shape(&base, &modal);
        let row = match planner.plan(z_f) {
            Ok(plan) => SweepRow {
                z_f,
                f_sys_hz: modal.damped_frequency_hz(),
                t_ft_scurve: base.t_ft,
                t_ft_zv: shaped.t_ft,
                t_ft_jerkseg: plan.t_ft,
                dt_jerkseg_vs_zv: plan.t_ft - shaped.t_ft,
                case: plan.case.tag().to_string(),
                a_max_used: plan.a_max_used,
                a0_scurve: residual_amplitude(&base.profile, &modal),
                a0_zv: residual_amplitude(&shaped.profile, &modal),
                a0_jerkseg: residual_amplitude(&plan.profile, &modal),
                status: "ok".into(),
            },
            Err(e) => SweepRow {
                z_f,
                f_sys_hz: modal.damped_frequency_hz(),
                t_ft_scurve: base.t_ft,
                t_ft_zv: shaped.t_ft,
                t_ft_jerkseg: f64::NAN,
                dt_jerkseg_vs_zv: f64::NAN,
                case: "none".into(),
                a_max_used: f64::NAN,
                a0_scurve: residual_amplitude(&base.profile, &modal),
                a0_zv: residual_amplitude(&shaped.profile, &modal),
                a0_jerkseg: f64::NAN,
                status: e.to_string(),
            },
        };
        rows.push(row);
    }
    Ok(rows)
}

/// Plans once at the nominal parameters, then evaluates the residual
/// amplitude of each planned profile on plants whose damped frequency is
/// swept while the damping coefficient stays nominal.
pub fn sweep_sensitivity(cfg: &RunConfig, z_f: f64, f_sys_hz: &[f64]) -> Result<Vec<SweepRow>> {
    let modal = cfg.plant.modal()?;
    let planner = Planner::new(cfg.limits, modal, cfg.optimizer, cfg.segment_method)?;
    let base = s_curve(z_f, &cfg.limits)?;
    let shaped = zv_shape(&base, &modal);
    let plan = planner.plan(z_f)?;

    let mut rows = Vec::with_capacity(f_sys_hz.len());
    for &f_sys in f_sys_hz {
        let sim = modal.with_damped_frequency_hz(f_sys)?;
        rows.push(SweepRow {
            z_f,
            f_sys_hz: f_sys,
            t_ft_scurve: base.t_ft,
            t_ft_zv: shaped.t_ft,
            t_ft_jerkseg: plan.t_ft,
            dt_jerkseg_vs_zv: plan.t_ft - shaped.t_ft,
            case: plan.case.tag().to_string(),
            a_max_used: plan.a_max_used,
            a0_scurve: residual_amplitude(&base.profile, &sim),
            a0_zv: residual_amplitude(&shaped.profile, &sim),
            a0_jerkseg: residual_amplitude(&plan.profile, &sim),
            status: "ok".into(),
        });
    }
    Ok(rows)
}

/// Writes rows as CSV with a `#`-prefixed header block carrying the config
/// hash. Identical configs and rows produce byte-identical output.
pub fn write_sweep_csv(out: &mut dyn Write, cfg: &RunConfig, rows: &[SweepRow]) -> Result<()> {
    writeln!(out, "# restmotion sweep")?;
    writeln!(out, "# config_hash = {:#018x}", cfg.content_hash())?;
    writeln!(out, "# segment_method = {}", cfg.segment_method.name())?;
    writeln!(out, "{}", SWEEP_COLUMNS.join(","))?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            format_f64(r.z_f),
            format_f64(r.f_sys_hz),
            format_f64(r.t_ft_scurve),
            format_f64(r.t_ft_zv),
            format_f64(r.t_ft_jerkseg),
            format_f64(r.dt_jerkseg_vs_zv),
            r.case,
            format_f64(r.a_max_used),
            format_f64(r.a0_scurve),
            format_f64(r.a0_zv),
            format_f64(r.a0_jerkseg),
            r.status
        )?;
    }
    Ok(())
}

/// Parses CSV produced by [`write_sweep_csv`].
pub fn read_sweep_csv(text: &str) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    let mut saw_header = false;
    for line in text.lines() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        if !saw_header {
            if line != SWEEP_COLUMNS.join(",") {
                return Err(Error::Config(format!("unexpected CSV header: {line}")));
            }
            saw_header = true;
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != SWEEP_COLUMNS.len() {
            return Err(Error::Config(format!(
                "expected {} columns, got {}",
                SWEEP_COLUMNS.len(),
                parts.len()
            )));
        }
        let f = |i: usize| -> Result<f64> {
            parts[i]
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("bad float in column {}: {}", i, parts[i])))
        };
        rows.push(SweepRow {
            z_f: f(0)?,
            f_sys_hz: f(1)?,
            t_ft_scurve: f(2)?,
            t_ft_zv: f(3)?,
            t_ft_jerkseg: f(4)?,
            dt_jerkseg_vs_zv: f(5)?,
            case: parts[6].to_string(),
            a_max_used: f(7)?,
            a0_scurve: f(8)?,
            a0_zv: f(9)?,
            a0_jerkseg: f(10)?,
            status: parts[11].to_string(),
        });
    }
    Ok(rows)
}
