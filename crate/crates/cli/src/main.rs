//! Command line front end: plan single moves, sweep distances, sweep
//! simulated frequencies, compare planners and inspect the working
//! acceleration objective.
//!
//! Exit codes: 0 on success, 1 on configuration errors, 2 when the planner
//! reports infeasibility.

use clap::{Parser, Subcommand};
use restmotion::baselines::{s_curve, zv_shape};
use restmotion::harness::{
    initial_jerk_limit, resample_to_cycle, sweep_distances, sweep_sensitivity, write_sweep_csv,
    RunConfig,
};
use restmotion::model::residual_amplitude;
use restmotion::optimizer::Planner;
use restmotion::Error;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "restmotion", version, about)]
struct Cli {
    /// Run configuration file (key = value sections, see README).
    #[arg(long, global = true, default_value = "restmotion.cfg")]
    config: PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Plan one move and write the controller-cycle trajectory table.
    Plan {
        /// Transition distance in m.
        #[arg(long)]
        zf: f64,
        /// Output CSV path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Distance sweep over all planners.
    Sweep {
        /// Smallest distance in m.
        #[arg(long)]
        zmin: f64,
        /// Largest distance in m.
        #[arg(long)]
        zmax: f64,
        /// Number of swept distances; defaults to 1 mm spacing.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Residual-amplitude sensitivity over simulated frequencies.
    Sensitivity {
        /// Transition distance in m.
        #[arg(long)]
        zf: f64,
        /// Lowest simulated damped frequency in Hz.
        #[arg(long)]
        fmin: f64,
        /// Highest simulated damped frequency in Hz.
        #[arg(long)]
        fmax: f64,
        /// Number of swept frequencies.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One-row comparison of all planners at a single distance.
    Compare {
        /// Transition distance in m.
        #[arg(long)]
        zf: f64,
    },
    /// Print the working-acceleration optimum and the objective curve.
    Abest {
        /// Output CSV path for the curve; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match RunConfig::load(&cli.config) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match run(&cli.command, &cfg) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Config(_) | Error::Io(_) | Error::InvalidPlant(_)
                | Error::InvalidLimits(_) | Error::NotUnderdamped { .. } => 1,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}

fn writer(out: &Option<PathBuf>) -> std::io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(std::fs::File::create(path)?),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn run(command: &Command, cfg: &RunConfig) -> restmotion::Result<()> {
    let modal = cfg.plant.modal()?;
    match command {
        Command::Plan { zf, out } => {
            let planner = Planner::new(cfg.limits, modal, cfg.optimizer, cfg.segment_method)?;
            let plan = planner.plan(*zf)?;
            let rows = resample_to_cycle(&plan, cfg.controller_cycle);
            let mut w = writer(out)?;
            writeln!(w, "# restmotion trajectory")?;
            writeln!(w, "# config_hash = {:#018x}", cfg.content_hash())?;
            writeln!(
                w,
                "# case = {}, a_max_used = {}, t_ft = {}",
                plan.case.tag(),
                plan.a_max_used,
                plan.t_ft
            )?;
            writeln!(w, "t,position,velocity,acceleration,jerk")?;
            for r in rows {
                writeln!(
                    w,
                    "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                    r.t, r.position, r.velocity, r.acceleration, r.jerk
                )?;
            }
            Ok(())
        }
        Command::Sweep { zmin, zmax, n, out } => {
            let n = n.unwrap_or_else(|| ((zmax - zmin) / 1e-3).round() as usize + 1);
            if n < 1 || !(zmin > &0.0) || zmax < zmin {
                return Err(Error::Config(
                    "sweep needs 0 < zmin <= zmax and n >= 1".into(),
                ));
            }
            let z_list: Vec<f64> = (0..n)
                .map(|i| {
                    if n == 1 {
                        *zmin
                    } else {
                        zmin + (zmax - zmin) * i as f64 / (n as f64 - 1.0)
                    }
                })
                .collect();
            let rows = sweep_distances(cfg, &z_list)?;
            write_sweep_csv(&mut *writer(out)?, cfg, &rows)
        }
        Command::Sensitivity {
            zf,
            fmin,
            fmax,
            n,
            out,
        } => {
            if *n < 1 || !(fmin > &0.0) || fmax < fmin {
                return Err(Error::Config(
                    "sensitivity needs 0 < fmin <= fmax and n >= 1".into(),
                ));
            }
            let freqs: Vec<f64> = (0..*n)
                .map(|i| {
                    if *n == 1 {
                        *fmin
                    } else {
                        fmin + (fmax - fmin) * i as f64 / (*n as f64 - 1.0)
                    }
                })
                .collect();
            let rows = sweep_sensitivity(cfg, *zf, &freqs)?;
            write_sweep_csv(&mut *writer(out)?, cfg, &rows)
        }
        Command::Compare { zf } => {
            let planner = Planner::new(cfg.limits, modal, cfg.optimizer, cfg.segment_method)?;
            let base = s_curve(*zf, &cfg.limits)?;
            let shaped = zv_shape(&base, &modal);
            let plan = planner.plan(*zf)?;
            println!("planner      t_ft [s]     a0 nominal [m]");
            for (name, p) in [("s-curve", &base), ("zv-shaped", &shaped), ("jerk-seg", &plan)] {
                println!(
                    "{name:<12} {:<12.6} {:.3e}",
                    p.t_ft,
                    residual_amplitude(&p.profile, &modal)
                );
            }
            println!(
                "jerk-seg case = {}, a_max_used = {} m/s^2, vs zv: {:+.3} ms",
                plan.case.tag(),
                plan.a_max_used,
                (plan.t_ft - shaped.t_ft) * 1e3
            );
            Ok(())
        }
        Command::Abest { out } => {
            let planner = Planner::new(cfg.limits, modal, cfg.optimizer, cfg.segment_method)?;
            let a_best = planner.a_best();
            println!(
                "a_best = {a_best} m/s^2 (a_lim = {}, starting jerk suggestion j_lim_init = {:.1} m/s^3)",
                cfg.limits.a_lim,
                initial_jerk_limit(a_best, &modal)
            );
            let mut w = writer(out)?;
            writeln!(w, "# cruise-regime transition time per working acceleration")?;
            writeln!(w, "a_max,t_ft_for_0.3m")?;
            let n = 128;
            for i in 1..=n {
                let a = cfg.limits.a_lim * i as f64 / n as f64;
                if let Ok(plan) = planner.plan_for_amax(0.3, a) {
                    writeln!(w, "{:.16e},{:.16e}", a, plan.t_ft)?;
                }
            }
            Ok(())
        }
    }
}
