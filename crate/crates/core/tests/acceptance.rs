//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with the measured margin. Tolerances are pinned here and the
//! suite is the gate for planner changes.
//!
//! Run with `cargo test -p restmotion --test acceptance -- --nocapture`.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use restmotion::assembler::{assemble_case1, assemble_case3, PlanCase};
use restmotion::baselines::{s_curve, zv_shape};
use restmotion::model::{residual_amplitude, KinematicLimits, PlantModal};
use restmotion::optimizer::{best_accel_case2, grid_best_t_ft, OptimizerConfig, Planner};
use restmotion::presets;
use restmotion::segment::{precompute_family, SegmentMethod};
use std::f64::consts::PI;
use std::time::{Duration, Instant};

fn demo_planner(method: SegmentMethod) -> Planner {
    let (_, modal, limits) = presets::pick_and_place();
    Planner::new(limits, modal, OptimizerConfig::default(), method).expect("valid preset")
}

fn finish(criterion: &str, t0: Instant, budget: Duration, detail: String) {
    let elapsed = t0.elapsed();
    println!("[{criterion}] PASS - {detail} (elapsed {elapsed:?})");
    assert!(
        elapsed < budget,
        "{criterion} exceeded its runtime budget: {elapsed:?} >= {budget:?}"
    );
}

#[test]
fn criterion_01_zv_timing_law() {
    let t0 = Instant::now();
    let (_, modal, limits) = presets::pick_and_place();
    let spacing = PI / modal.omega_d;
    assert!(
        (spacing - 18.594e-3).abs() < 1e-6,
        "half damped period should be 18.594 ms, got {spacing}"
    );
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let z_f = rng.gen_range(0.5e-3..0.35);
        let base = s_curve(z_f, &limits).unwrap();
        let shaped = zv_shape(&base, &modal);
        worst = worst.max((((shaped.t_ft - base.t_ft) - spacing).abs()).abs());
    }
    assert!(worst <= 1e-12, "worst deviation {worst}");
    finish(
        "criterion 1",
        t0,
        Duration::from_secs(1),
        format!("shaping adds pi/omega_d = {spacing:.6} s, worst deviation {worst:.2e} s"),
    );
}

#[test]
fn criterion_02_rest_to_rest_property_suite() {
    let t0 = Instant::now();
    let sets: Vec<(&str, PlantModal, KinematicLimits)> = vec![
        {
            let (_, modal, limits) = presets::pick_and_place();
            ("pick-and-place", modal, limits)
        },
        {
            let (modal, limits) = presets::soft_gantry();
            ("soft-gantry", modal, limits)
        },
        {
            let (modal, limits) = presets::lab_rig();
            ("lab-rig", modal, limits)
        },
    ];
    let planners: Vec<Planner> = sets
        .iter()
        .map(|(_, modal, limits)| {
            Planner::new(*limits, *modal, OptimizerConfig::default(), SegmentMethod::TimeOptimal)
                .unwrap()
        })
        .collect();

    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    let mut checked = 0;
    while checked < 200 {
        let k = rng.gen_range(0..sets.len());
        let (_, modal, _) = &sets[k];
        let z_f = rng.gen_range(0.5e-3..0.3);
        let plan = planners[k].plan(z_f).unwrap();
        let shaped = zv_shape(&s_curve(z_f, planners[k].limits()).unwrap(), modal);
        for p in [&plan, &shaped] {
            let (s0, s1, s2) = p.profile.moments();
            assert!(
                s0.abs() <= 1e-9 && s1.abs() <= 1e-9 && s2.abs() <= 1e-9,
                "moments ({s0}, {s1}, {s2}) at z_f = {z_f}"
            );
            let end = p.profile.sample(p.t_ft);
            assert!((end.position - z_f).abs() <= 1e-9, "z = {}", end.position);
            assert!(end.velocity.abs() <= 1e-9 && end.acceleration.abs() <= 1e-9);
            let a0 = residual_amplitude(&p.profile, modal);
            assert!(a0 <= 1e-9, "residual {a0} at z_f = {z_f} on set {k}");
        }
        checked += 1;
    }
    finish(
        "criterion 2",
        t0,
        Duration::from_secs(10),
        format!("{checked} random plans across 3 parameter sets at rest within 1e-9"),
    );
}

#[test]
fn criterion_03_feasibility_across_the_distance_sweep() {
    let t0 = Instant::now();
    let planner = demo_planner(SegmentMethod::TimeOptimal);
    let mut search_max = 0.0f64;
    let mut refine_max = 0.0f64;
    let mut n = 0;
    let mut z = 0.5e-3;
    while z <= 0.3 + 1e-12 {
        let (plan, diag) = planner.plan_with_diagnostics(z).unwrap();
        assert!(plan.report.is_clean(), "violation at z = {z}: {:?}", plan.report);
        if diag.feasibility_search {
            search_max = search_max.max(z);
        }
        if diag.refined {
            refine_max = refine_max.max(z);
        }
        n += 1;
        z += 0.5e-3;
    }
    assert!(
        search_max < 0.06,
        "feasibility search needed up to {search_max} m, expected below 0.06 m"
    );
    finish(
        "criterion 3",
        t0,
        Duration::from_secs(30),
        format!(
            "{n} plans clean; feasibility search only below {:.1} mm (refinement active below {:.1} mm)",
            search_max * 1e3,
            refine_max * 1e3
        ),
    );
}

#[test]
fn criterion_04_closed_forms_match_oracles() {
    let t0 = Instant::now();
    let (_, modal, limits) = presets::pick_and_place();
    let mut rng = StdRng::seed_from_u64(0x5eed_0004);

    // Case 1 hold via bisection on the terminal position with the second
    // hold eliminated through the terminal-velocity condition.
    let mut done = 0;
    let mut worst1 = 0.0f64;
    while done < 100 {
        let a_max = rng.gen_range(4.0..20.0);
        let z_f = rng.gen_range(1e-3..0.12);
        let fam = precompute_family(a_max, &limits, &modal, SegmentMethod::Zv).unwrap();
        let plan = match assemble_case1(z_f, &fam) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let PlanCase::Case1 { t1, .. } = plan.case else {
            panic!()
        };
        let terminal_pos = |t1: f64| -> f64 {
            let t2 = (fam.v_f1() + t1 * fam.a_max + fam.v_f2() - fam.v_f3()) / fam.a_max;
            let b2 = fam.t_f1() + t1;
            let b3 = b2 + fam.t_f2() + t2;
            let profile = fam
                .seg1
                .profile
                .superpose(&fam.seg2.profile.shifted(b2))
                .superpose(&fam.seg3.profile.shifted(b3));
            profile.sample(b3 + fam.t_f3() + 1.0).position
        };
        // Bracket around a scan, then bisect.
        let mut bracket = None;
        let mut prev = (t1 - 0.05, terminal_pos(t1 - 0.05) - z_f);
        let mut x = prev.0 + 1e-3;
        while x <= t1 + 0.05 {
            let h = terminal_pos(x) - z_f;
            if prev.1 < 0.0 && h >= 0.0 {
                bracket = Some((prev.0, x));
                break;
            }
            prev = (x, h);
            x += 1e-3;
        }
        let (mut lo, mut hi) = bracket.expect("bracket around closed-form root");
        while hi - lo > 1e-13 {
            let mid = 0.5 * (lo + hi);
            if terminal_pos(mid) < z_f {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        worst1 = worst1.max((t1 - 0.5 * (lo + hi)).abs());
        done += 1;
    }
    assert!(worst1 <= 1e-10, "worst case-1 deviation {worst1}");

    // Case 3 hold via an independent quadratic solve.
    let mut done = 0;
    let mut worst3 = 0.0f64;
    while done < 100 {
        let a_max = rng.gen_range(4.0..20.0);
        let z_f = rng.gen_range(5e-3..0.2);
        let fam = precompute_family(a_max, &limits, &modal, SegmentMethod::Zv).unwrap();
        let plan = match assemble_case3(z_f, &fam) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let PlanCase::Case3 { t_a_max } = plan.case else {
            panic!()
        };
        let v_f = fam.v_f1() + fam.v_f3();
        let (ca, cb, cc) = (
            fam.a_max,
            2.0 * fam.a_max * fam.t_f1() + v_f,
            2.0 * fam.t_f1() * v_f - z_f,
        );
        let root = (-cb + (cb * cb - 4.0 * ca * cc).sqrt()) / (2.0 * ca);
        worst3 = worst3.max((t_a_max - root).abs());
        done += 1;
    }
    assert!(worst3 <= 1e-12, "worst case-3 deviation {worst3}");

    finish(
        "criterion 4",
        t0,
        Duration::from_secs(5),
        format!("100+100 random instances; worst deviations {worst1:.2e} s / {worst3:.2e} s"),
    );
}

#[test]
fn criterion_05_best_acceleration_is_distance_independent() {
    let t0 = Instant::now();
    let planner = demo_planner(SegmentMethod::TimeOptimal);
    let mut used = Vec::new();
    for z_f in [0.2, 0.25, 0.3] {
        let plan = planner.plan(z_f).unwrap();
        assert!(matches!(plan.case, PlanCase::Case2 { .. }), "z = {z_f}");
        used.push(plan.a_max_used);
    }
    assert_eq!(used[0].to_bits(), used[1].to_bits());
    assert_eq!(used[1].to_bits(), used[2].to_bits());

    // Recomputed from scratch the optimum is bit-identical as well.
    let (_, modal, limits) = presets::pick_and_place();
    let cfg = OptimizerConfig::default();
    let a = best_accel_case2(&limits, &modal, &cfg, SegmentMethod::TimeOptimal);
    let b = best_accel_case2(&limits, &modal, &cfg, SegmentMethod::TimeOptimal);
    assert_eq!(a.to_bits(), b.to_bits());
    assert_eq!(a.to_bits(), used[0].to_bits());
    finish(
        "criterion 5",
        t0,
        Duration::from_secs(20),
        format!("three cruise plans share a_max = {} m/s^2 bit-exactly", used[0]),
    );
}

#[test]
fn criterion_06_speedup_versus_the_shaped_reference() {
    let t0 = Instant::now();
    let (_, modal, limits) = presets::pick_and_place();
    let planner = demo_planner(SegmentMethod::TimeOptimal);
    let spacing = PI / modal.omega_d;
    let mut in_band = 0usize;
    let mut total = 0usize;
    let (mut min_s, mut max_s) = (f64::MAX, f64::MIN);
    for i in 30..=300 {
        let z = i as f64 * 1e-3;
        let ours = planner.plan(z).unwrap().t_ft;
        let shaped = s_curve(z, &limits).unwrap().t_ft + spacing;
        let saving = (shaped - ours) / shaped;
        min_s = min_s.min(saving);
        max_s = max_s.max(saving);
        if (0.02..=0.15).contains(&saving) {
            in_band += 1;
        }
        total += 1;
    }
    let frac = in_band as f64 / total as f64;
    assert!(
        frac >= 0.8,
        "savings in [2%, 15%] on only {in_band}/{total} distances (range {min_s:.3}..{max_s:.3})"
    );
    finish(
        "criterion 6",
        t0,
        Duration::from_secs(60),
        format!(
            "savings {:.1}%..{:.1}% vs shaped reference, in band on {in_band}/{total} distances",
            min_s * 100.0,
            max_s * 100.0
        ),
    );
}

#[test]
fn criterion_07_near_optimality_gap() {
    let t0 = Instant::now();
    let planner = demo_planner(SegmentMethod::TimeOptimal);
    let mut worst = (0.0f64, f64::MIN);
    for i in 1..=300 {
        let z = i as f64 * 1e-3;
        let ours = planner.plan(z).unwrap().t_ft;
        let grid = grid_best_t_ft(&planner, z, 512).expect("grid finds a feasible plan");
        let gap = ours - grid;
        if gap > worst.1 {
            worst = (z, gap);
        }
        assert!(
            gap <= 400e-6,
            "grid search beats the planner by {:.1} us at z = {z}",
            gap * 1e6
        );
    }
    finish(
        "criterion 7",
        t0,
        Duration::from_secs(120),
        format!(
            "512-point grid never wins more than {:.1} us (at z = {:.0} mm)",
            worst.1.max(0.0) * 1e6,
            worst.0 * 1e3
        ),
    );
}

#[test]
fn criterion_08_sensitivity_dip_at_the_nominal_frequency() {
    let t0 = Instant::now();
    let (modal, limits) = presets::lab_rig();
    let z_f = 14.5e-3;
    let freqs = [8.71, 9.20, 9.71, 10.27, 10.60];
    let nominal_idx = 2;

    let planner = Planner::new(
        limits,
        modal,
        OptimizerConfig::default(),
        SegmentMethod::TimeOptimal,
    )
    .unwrap();
    let ours = planner.plan(z_f).unwrap();
    let shaped = zv_shape(&s_curve(z_f, &limits).unwrap(), &modal);

    for (name, plan) in [("zv", &shaped), ("jerk-seg", &ours)] {
        let a0: Vec<f64> = freqs
            .iter()
            .map(|&f| {
                let sim = modal.with_damped_frequency_hz(f).unwrap();
                residual_amplitude(&plan.profile, &sim)
            })
            .collect();
        let min = a0.iter().cloned().fold(f64::MAX, f64::min);
        assert_eq!(a0[nominal_idx], min, "{name}: nominal not minimal: {a0:?}");
        assert!(
            a0[0] >= 10.0 * a0[nominal_idx],
            "{name}: mistuned/nominal ratio {} too small",
            a0[0] / a0[nominal_idx]
        );
    }
    finish(
        "criterion 8",
        t0,
        Duration::from_secs(30),
        format!("both planners dip at {} Hz and grow 10x+ at {} Hz", freqs[nominal_idx], freqs[0]),
    );
}

#[test]
fn criterion_09_planner_ordering_on_the_lab_set() {
    let t0 = Instant::now();
    let (modal, limits) = presets::lab_rig();
    let planner = Planner::new(
        limits,
        modal,
        OptimizerConfig::default(),
        SegmentMethod::TimeOptimal,
    )
    .unwrap();
    let mut lines = Vec::new();
    for &z_f in &[14.5e-3, 61e-3, 116e-3, 139e-3, 181e-3] {
        let base = s_curve(z_f, &limits).unwrap();
        let ours = planner.plan(z_f).unwrap();
        let shaped = zv_shape(&base, &modal);
        assert!(
            base.t_ft < ours.t_ft && ours.t_ft < shaped.t_ft,
            "ordering broken at z = {z_f}: {} / {} / {}",
            base.t_ft,
            ours.t_ft,
            shaped.t_ft
        );
        lines.push(format!(
            "{:.1}mm: {:.4}/{:.4}/{:.4}",
            z_f * 1e3,
            base.t_ft,
            ours.t_ft,
            shaped.t_ft
        ));
    }
    finish(
        "criterion 9",
        t0,
        Duration::from_secs(30),
        format!("reference < segmented < shaped at every distance ({})", lines.join(", ")),
    );
}
