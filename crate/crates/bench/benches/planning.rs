//! Throughput of segment design and full planning. The planner is meant to
//! run on-line between moves, so per-plan latency matters.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use restmotion::segment::{design_segment, SegmentMethod, SegmentSpec};
use restmotion_bench::{demo_parameters, demo_planner};
use std::hint::black_box;

fn segment_design(c: &mut Criterion) {
    let (modal, limits) = demo_parameters();
    let mut group = c.benchmark_group("segment_design");
    for method in [SegmentMethod::Zv, SegmentMethod::TimeOptimal] {
        group.bench_with_input(
            BenchmarkId::from_parameter(method.name()),
            &method,
            |b, &method| {
                let spec = SegmentSpec::new(0.0, 20.0, limits.j_lim, 20.0, modal).unwrap();
                b.iter(|| design_segment(black_box(&spec), method).unwrap());
            },
        );
    }
    group.finish();
}

fn plan_distances(c: &mut Criterion) {
    let mut group = c.benchmark_group("plan");
    for method in [SegmentMethod::Zv, SegmentMethod::TimeOptimal] {
        // Warm planner: families and the acceleration optimum are memoized,
        // matching the repeated-move duty cycle.
        let planner = demo_planner(method);
        planner.plan(0.3).unwrap();
        for zf in [0.0015, 0.046, 0.3] {
            group.bench_with_input(
                BenchmarkId::new(method.name(), format!("{}mm", zf * 1e3)),
                &zf,
                |b, &zf| b.iter(|| planner.plan(black_box(zf)).unwrap()),
            );
        }
    }
    group.finish();
}

fn cold_plan(c: &mut Criterion) {
    c.bench_function("plan_cold_cache_300mm", |b| {
        b.iter(|| {
            let planner = demo_planner(SegmentMethod::TimeOptimal);
            planner.plan(black_box(0.3)).unwrap()
        });
    });
}

criterion_group!(benches, segment_design, plan_distances, cold_plan);
criterion_main!(benches);
