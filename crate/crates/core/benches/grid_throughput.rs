//! Grid evaluation throughput: parallel rows versus sequential rows.
//!
//! Run with `cargo bench -p minktube`. The parallel path is only compiled
//! with the default `parallel` feature; without it both benchmarks
//! measure the sequential implementation.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use minktube::curve::{CurvePreset, TimelikeCurve};
use minktube::tube::TubeSurface;

fn helix_tube() -> TubeSurface {
    let axis = TimelikeCurve::preset(CurvePreset::Helix {
        a: std::f64::consts::SQRT_2,
        b: 1.0,
        omega: 1.0,
    })
    .expect("helix preset is timelike and unit-speed");
    TubeSurface::make(axis, 0.25).expect("radius 0.25 is below the focal bound")
}

fn bench_grids(c: &mut Criterion) {
    let tube = helix_tube();
    let mut group = c.benchmark_group("tube_grid");
    for &(nt, ntheta) in &[(32usize, 64usize), (64, 128), (128, 256)] {
        let points = (nt * ntheta) as u64;
        group.throughput(Throughput::Elements(points));
        group.bench_with_input(
            BenchmarkId::new("parallel", format!("{nt}x{ntheta}")),
            &(nt, ntheta),
            |b, &(nt, ntheta)| b.iter(|| tube.evaluate_grid(nt, ntheta).unwrap()),
        );
        group.bench_with_input(
            BenchmarkId::new("sequential", format!("{nt}x{ntheta}")),
            &(nt, ntheta),
            |b, &(nt, ntheta)| b.iter(|| tube.evaluate_grid_seq(nt, ntheta).unwrap()),
        );
    }
    group.finish();
}

criterion_group!(benches, bench_grids);
criterion_main!(benches);
