use adhesion_core::integrator::{step_adaptive, Workspace};
use adhesion_core::*;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn field(n: usize) -> Vec<f64> {
    (0..n).map(|i| 1.0 + 0.5 * (i as f64 * 0.37).sin() + 0.2 * (i as f64 * 0.011).cos()).collect()
}

fn weights(npu: usize, kind: BoundaryKind) -> (Grid, NonlocalWeights) {
    let kernel = InteractionKernel::uniform(1.0).unwrap();
    let dom = SamplingDomain::new(kind, 5.0, 1.0, 0.0, 0.0).unwrap();
    let grid = build_grid(5.0, npu, 1.0).unwrap();
    let w = NonlocalWeights::new(&grid, &dom, &kernel).unwrap();
    (grid, w)
}

fn apply(c: &mut Criterion) {
    let mut group = c.benchmark_group("apply_nonlocal");
    for npu in [64, 128, 512] {
        let (grid, fft) = weights(npu, BoundaryKind::NoFlux);
        let dense = weights(npu, BoundaryKind::NoFlux).1.with_path(EvalPath::Dense);
        let u = field(grid.n_cells());
        let mut out = vec![0.0; grid.n_interfaces()];
        group.bench_with_input(BenchmarkId::new("fft", grid.n_cells()), &u, |b, u| {
            b.iter(|| fft.apply_into(black_box(u), &mut out).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("dense", grid.n_cells()), &u, |b, u| {
            b.iter(|| dense.apply_into(black_box(u), &mut out).unwrap())
        });
    }
    group.finish();
}

fn precompute(c: &mut Criterion) {
    let kernel = InteractionKernel::new(OmegaKind::Tent, 1.0, AdhesionFn::Identity).unwrap();
    let grid = build_grid(5.0, 128, 1.0).unwrap();
    let mut group = c.benchmark_group("precompute_weights");
    for kind in [BoundaryKind::Periodic, BoundaryKind::NoFlux] {
        let dom = SamplingDomain::new(kind, 5.0, 1.0, 0.0, 0.0).unwrap();
        group.bench_function(kind.name(), |b| b.iter(|| NonlocalWeights::new(&grid, &dom, &kernel).unwrap()));
    }
    group.finish();
}

fn rhs_and_step(c: &mut Criterion) {
    let kernel = InteractionKernel::uniform(1.0).unwrap();
    let dom = SamplingDomain::new(BoundaryKind::Periodic, 5.0, 1.0, 0.0, 0.0).unwrap();
    let model = assemble(5.0, 128, &dom, &kernel, 1.0, 3.25).unwrap();
    let u = field(640);
    let mut du = vec![0.0; 640];
    c.bench_function("rhs/640", |b| b.iter(|| model.rhs_into(black_box(&u), &mut du).unwrap()));

    let state = State::new(0.0, u, model.grid().h());
    let config = IntegratorConfig::new(1.0, 1);
    let mut ws = Workspace::new(640);
    c.bench_function("ros2_step/640", |b| {
        b.iter(|| {
            let mut stats = RunStats::default();
            step_adaptive(&model, black_box(&state), 1e-3, &config, &mut ws, &mut stats).unwrap()
        })
    });
}

criterion_group!(benches, apply, precompute, rhs_and_step);
criterion_main!(benches);
