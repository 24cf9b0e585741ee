//! Working-acceleration choice and the top-level planning flow.
//!
//! The cruise-case transition time separates into a distance term and an
//! acceleration-dependent term, so one `a_best` serves every cruise
//! distance. It is found by a coarse scan (the objective has several local
//! minima) with golden-section refinement of each basin and a derivative
//! polish. When the plan at `a_best` violates a limit, a binary search backs
//! the working acceleration off until the violation disappears, keeping the
//! fastest feasible plan seen on the way.

use crate::assembler::{plan_for_amax, PlanResult};
use crate::error::{Error, Result};
use crate::model::{KinematicLimits, PlantModal};
use crate::segment::{design_segment, precompute_family, SegmentFamily, SegmentMethod, SegmentSpec};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

/// Tunables for the planning flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    /// Stop the acceleration search once consecutive feasible plans improve
    /// by less than this; one controller cycle is a natural choice.
    pub dt_boundary: f64,
    /// Iteration cap of the acceleration search.
    pub n_max_iter: usize,
    /// Scan resolution for the working-acceleration objective.
    pub a_scan_points: usize,
    /// Relative step (of `a_lim`) for numeric derivatives of the objective.
    pub fd_step_rel: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            dt_boundary: 400e-6,
            n_max_iter: 23,
            a_scan_points: 256,
            fd_step_rel: 1e-4,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt_boundary > 0.0) {
            return Err(Error::Config(format!(
                "dt_boundary must be > 0, got {}",
                self.dt_boundary
            )));
        }
        if self.n_max_iter < 1 {
            return Err(Error::Config("n_max_iter must be >= 1".into()));
        }
        if self.a_scan_points < 8 {
            return Err(Error::Config(format!(
                "a_scan_points must be >= 8, got {}",
                self.a_scan_points
            )));
        }
        Ok(())
    }
}

/// One iterate of the acceleration search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccelIterate {
    pub a_iter: f64,
    pub feasible: bool,
    pub t_ft: Option<f64>,
}

/// The cruise-case transition time is what `a_best` minimizes, so cruise
/// plans are final. Below the cruise regime the optimal acceleration
/// depends on the distance and the plan is worth refining.
fn below_cruise_regime(plan: &PlanResult) -> bool {
    matches!(
        plan.case,
        crate::assembler::PlanCase::Case1 { .. } | crate::assembler::PlanCase::Case3 { .. }
    )
}

/// How a plan was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PlanDiagnostics {
    /// The plan at the cruise-optimal acceleration was infeasible or
    /// violated a limit, so the feasibility search ran.
    pub feasibility_search: bool,
    /// The below-cruise refinement produced a faster working acceleration
    /// than the cruise optimum.
    pub refined: bool,
}

/// Planner for one plant and limit set. Designed segment families and the
/// working-acceleration optimum are memoized by value, so repeated plans and
/// sweeps stay cheap; the caches are safe for concurrent readers.
#[derive(Debug)]
pub struct Planner {
    limits: KinematicLimits,
    modal: PlantModal,
    cfg: OptimizerConfig,
    method: SegmentMethod,
    families: RwLock<HashMap<u64, Arc<SegmentFamily>>>,
    a_best: OnceLock<f64>,
}

impl Planner {
    pub fn new(
        limits: KinematicLimits,
        modal: PlantModal,
        cfg: OptimizerConfig,
        method: SegmentMethod,
    ) -> Result<Self> {
        cfg.validate()?;
        Ok(Self {
            limits,
            modal,
            cfg,
            method,
            families: RwLock::new(HashMap::new()),
            a_best: OnceLock::new(),
        })
    }

    pub fn limits(&self) -> &KinematicLimits {
        &self.limits
    }

    pub fn modal(&self) -> &PlantModal {
        &self.modal
    }

    pub fn method(&self) -> SegmentMethod {
        self.method
    }

    pub fn config(&self) -> &OptimizerConfig {
        &self.cfg
    }

    /// Segment family for `a_max`, designed once and shared.
    pub fn family(&self, a_max: f64) -> Result<Arc<SegmentFamily>> {
        let key = a_max.to_bits();
        if let Some(fam) = self.families.read().expect("family cache").get(&key) {
            return Ok(Arc::clone(fam));
        }
        let fam = Arc::new(precompute_family(
            a_max,
            &self.limits,
            &self.modal,
            self.method,
        )?);
        self.families
            .write()
            .expect("family cache")
            .entry(key)
            .or_insert_with(|| Arc::clone(&fam));
        Ok(fam)
    }

    /// Memoized cruise-case optimal working acceleration.
    pub fn a_best(&self) -> f64 {
        *self
            .a_best
            .get_or_init(|| best_accel_case2(&self.limits, &self.modal, &self.cfg, self.method))
    }

    /// Plan at a fixed working acceleration (case selection plus limit
    /// check), without the acceleration search.
    pub fn plan_for_amax(&self, z_f: f64, a_max: f64) -> Result<PlanResult> {
        let fam = self.family(a_max)?;
        plan_for_amax(z_f, &fam, &self.limits)
    }

    /// Full planning flow.
    ///
    /// Plans at `a_best` and returns directly when the plan is clean and in
    /// the cruise regime. A violating plan runs the feasibility search. A
    /// clean plan below the cruise regime means the optimal acceleration is
    /// distance dependent, so the working acceleration is additionally
    /// refined by a bounded scan; the fastest clean candidate wins.
    pub fn plan(&self, z_f: f64) -> Result<PlanResult> {
        self.plan_with_diagnostics(z_f).map(|(plan, _)| plan)
    }

    /// Like [`Planner::plan`], also reporting which search paths ran.
    pub fn plan_with_diagnostics(&self, z_f: f64) -> Result<(PlanResult, PlanDiagnostics)> {
        if !z_f.is_finite() {
            return Err(Error::Config(format!(
                "transition distance must be finite, got {z_f}"
            )));
        }
        if z_f == 0.0 {
            return Ok((PlanResult::empty(), PlanDiagnostics::default()));
        }
        if z_f < 0.0 {
            let (plan, diag) = self.plan_with_diagnostics(-z_f)?;
            return Ok((plan.negated(), diag));
        }
        let a_best = self.a_best().min(self.limits.a_lim);
        let first = self.plan_for_amax(z_f, a_best);
        if let Ok(plan) = &first {
            if plan.report.is_clean() && !below_cruise_regime(plan) {
                return Ok((first.expect("checked"), PlanDiagnostics::default()));
            }
        }

        let mut best: Option<PlanResult> = None;
        let mut keep = |candidate: PlanResult| {
            if candidate.report.is_clean()
                && best.as_ref().is_none_or(|b| candidate.t_ft < b.t_ft)
            {
                best = Some(candidate);
            }
        };
        let violating = !matches!(&first, Ok(p) if p.report.is_clean());
        let a_first = first.as_ref().ok().map(|p| p.a_max_used);
        if let Ok(plan) = first {
            keep(plan);
        }
        if violating {
            if let Ok((plan, _)) = self.optimize_amax(z_f, a_best) {
                keep(plan);
            }
        }
        if let Some(plan) = self.refine_working_accel(z_f, a_best) {
            keep(plan);
        }
        match best {
            Some(plan) => {
                let diag = PlanDiagnostics {
                    feasibility_search: violating,
                    refined: a_first != Some(plan.a_max_used),
                };
                Ok((plan, diag))
            }
            None => Err(Error::NoFeasibleAccel {
                z_f,
                iterations: 0,
                last_violation: "no clean plan at any scanned acceleration".into(),
                trace: Vec::new(),
            }),
        }
    }

    /// Scan of the full plan time over working accelerations in
    /// `(0, a_best]`, with a golden-section polish of the best basin.
    /// Scan-grid families hit the cache, so sweeps stay cheap.
    fn refine_working_accel(&self, z_f: f64, a_best: f64) -> Option<PlanResult> {
        let n = self.cfg.a_scan_points.max(8);
        let try_plan = |a: f64| -> Option<PlanResult> {
            match self.plan_for_amax(z_f, a) {
                Ok(p) if p.report.is_clean() => Some(p),
                _ => None,
            }
        };
        let mut grid: Vec<f64> = (1..=n).map(|i| a_best * i as f64 / n as f64).collect();
        // Very short moves may need accelerations below the linear grid.
        let mut a = grid[0];
        for _ in 0..40 {
            a *= 0.6;
            grid.insert(0, a);
        }
        let (mut best_i, mut best) = (None, None::<PlanResult>);
        for (i, &a) in grid.iter().enumerate() {
            if let Some(p) = try_plan(a) {
                if best.as_ref().is_none_or(|b| p.t_ft < b.t_ft) {
                    best_i = Some(i);
                    best = Some(p);
                }
            }
        }
        let i = best_i?;
        let lo = if i == 0 { grid[0] * 0.5 } else { grid[i - 1] };
        let hi = if i == grid.len() - 1 { grid[i] } else { grid[i + 1] };
        let (a_ref, _) = golden_section(
            |a| try_plan(a).map_or(f64::INFINITY, |p| p.t_ft),
            lo,
            hi,
            1e-3 * self.limits.a_lim,
        );
        if let Some(p) = try_plan(a_ref) {
            if p.t_ft < best.as_ref().expect("grid best").t_ft {
                return Some(p);
            }
        }
        best
    }

    /// Binary search on the working acceleration below `a_best`.
    ///
    /// Feasible iterates step the acceleration up, infeasible ones step it
    /// down, with step `(1/2)^n * a_best`. The best feasible plan seen is
    /// kept and returned; the search stops when consecutive feasible plans
    /// improve by less than `dt_boundary` or the iteration budget is spent.
    pub fn optimize_amax(&self, z_f: f64, a_best: f64) -> Result<(PlanResult, Vec<AccelIterate>)> {
        let delta_a = a_best;
        let mut a_iter = 0.5 * delta_a;
        let mut n_iter = 1usize;
        let mut trace: Vec<AccelIterate> = Vec::new();
        let mut best: Option<PlanResult> = None;
        let mut prev_tft: Option<f64> = None;
        let mut dt_f = f64::INFINITY;
        let mut last_violation = String::from("no iterate evaluated");

        loop {
            let attempt = self.plan_for_amax(z_f, a_iter);
            n_iter += 1;
            let feasible = matches!(&attempt, Ok(p) if p.report.is_clean());
            match attempt {
                Ok(plan) if feasible => {
                    let t_ft = plan.t_ft;
                    trace.push(AccelIterate {
                        a_iter,
                        feasible: true,
                        t_ft: Some(t_ft),
                    });
                    // Improvement over the previous feasible iterate; no
                    // previous one means no stopping evidence yet.
                    dt_f = prev_tft.map_or(f64::INFINITY, |prev| prev - t_ft);
                    prev_tft = Some(t_ft);
                    if best.as_ref().is_none_or(|b| t_ft < b.t_ft) {
                        best = Some(plan);
                    }
                    a_iter += 0.5f64.powi(n_iter as i32) * delta_a;
                }
                other => {
                    last_violation = match other {
                        Ok(plan) => plan.report.violation_summary(),
                        Err(e) => e.to_string(),
                    };
                    trace.push(AccelIterate {
                        a_iter,
                        feasible: false,
                        t_ft: None,
                    });
                    a_iter -= 0.5f64.powi(n_iter as i32) * delta_a;
                }
            }
            if dt_f <= self.cfg.dt_boundary || n_iter > self.cfg.n_max_iter {
                break;
            }
        }

        match best {
            Some(plan) => Ok((plan, trace)),
            None => Err(Error::NoFeasibleAccel {
                z_f,
                iterations: n_iter - 1,
                last_violation,
                trace: trace.iter().map(|it| (it.a_iter, it.feasible)).collect(),
            }),
        }
    }
}

/// Cruise-case transition time for a working acceleration `a`, dropping the
/// constant distance term: `v_lim/a + 2*t_f1(a) - (v_f1(a) + v_f3(a))/a`.
fn case2_objective(
    a: f64,
    limits: &KinematicLimits,
    modal: &PlantModal,
    method: SegmentMethod,
) -> f64 {
    let spec = match SegmentSpec::new(0.0, a, limits.j_lim, a, *modal) {
        Ok(s) => s,
        Err(_) => return f64::INFINITY,
    };
    let seg1 = match design_segment(&spec, method) {
        Ok(s) => s,
        Err(_) => return f64::INFINITY,
    };
    // The closing segment shares the opening segment's jerk profile, so
    // v_f3 = a*t_f1 - v_f1 without a second design.
    let v_f3 = a * seg1.t_f - seg1.v_f;
    limits.v_lim / a + 2.0 * seg1.t_f - (seg1.v_f + v_f3) / a
}

/// Golden-section minimization on `[lo, hi]`.
fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

/// Optimal working acceleration for the cruise case on `(0, a_lim]`.
///
/// The objective is independent of the transition distance. A coarse scan
/// seeds golden-section refinement of every local basin; a short secant
/// polish on the numeric derivative sharpens interior optima. The boundary
/// `a_lim` is a legal optimum.
pub fn best_accel_case2(
    limits: &KinematicLimits,
    modal: &PlantModal,
    cfg: &OptimizerConfig,
    method: SegmentMethod,
) -> f64 {
    let n = cfg.a_scan_points.max(8);
    let obj = |a: f64| case2_objective(a, limits, modal, method);
    let grid: Vec<f64> = (1..=n)
        .map(|i| limits.a_lim * i as f64 / n as f64)
        .collect();
    let values: Vec<f64> = grid.iter().map(|&a| obj(a)).collect();

    let mut best_a = limits.a_lim;
    let mut best_f = *values.last().expect("non-empty grid");
    for i in 0..n {
        let left_up = i == 0 || values[i] <= values[i - 1];
        let right_up = i == n - 1 || values[i] <= values[i + 1];
        if !(left_up && right_up) {
            continue;
        }
        let lo = if i == 0 { grid[0] * 0.5 } else { grid[i - 1] };
        let hi = if i == n - 1 { grid[i] } else { grid[i + 1] };
        let (mut a, mut f_a) = golden_section(|a| obj(a), lo, hi, 1e-9 * limits.a_lim);

        // Secant polish of the stationarity condition using the configured
        // finite-difference step.
        let h = cfg.fd_step_rel * limits.a_lim;
        let d = |a: f64| (obj(a + h) - obj(a - h)) / (2.0 * h);
        let (mut a0, mut a1) = (a - h, a + h);
        let (mut d0, mut d1) = (d(a0), d(a1));
        for _ in 0..8 {
            if (d1 - d0).abs() < 1e-300 {
                break;
            }
            let a2 = a1 - d1 * (a1 - a0) / (d1 - d0);
            if !a2.is_finite() || a2 <= lo || a2 >= hi {
                break;
            }
            a0 = a1;
            d0 = d1;
            a1 = a2;
            d1 = d(a1);
        }
        let f_pol = obj(a1);
        if f_pol < f_a {
            a = a1;
            f_a = f_pol;
        }

        if f_a < best_f {
            best_f = f_a;
            best_a = a;
        }
    }
    best_a.min(limits.a_lim)
}

/// One-shot planning helper; see [`Planner::plan`]. Sweeps should hold a
/// [`Planner`] instead to reuse its caches.
pub fn plan(
    z_f: f64,
    limits: &KinematicLimits,
    modal: &PlantModal,
    cfg: &OptimizerConfig,
    method: SegmentMethod,
) -> Result<PlanResult> {
    Planner::new(*limits, *modal, *cfg, method)?.plan(z_f)
}

/// One-shot acceleration search; see [`Planner::optimize_amax`].
pub fn optimize_amax(
    z_f: f64,
    limits: &KinematicLimits,
    modal: &PlantModal,
    a_best: f64,
    cfg: &OptimizerConfig,
    method: SegmentMethod,
) -> Result<(PlanResult, Vec<AccelIterate>)> {
    Planner::new(*limits, *modal, *cfg, method)?.optimize_amax(z_f, a_best)
}

/// Reference check used by benchmarks and tests: exhaustive grid over the
/// working acceleration.
pub fn grid_best_t_ft(planner: &Planner, z_f: f64, points: usize) -> Option<f64> {
    let a_lim = planner.limits().a_lim;
    (1..=points)
        .filter_map(|i| {
            let a = a_lim * i as f64 / points as f64;
            match planner.plan_for_amax(z_f, a) {
                Ok(p) if p.report.is_clean() => Some(p.t_ft),
                _ => None,
            }
        })
        .min_by(f64::total_cmp)
}
