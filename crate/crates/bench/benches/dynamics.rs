use std::f64::consts::FRAC_PI_3;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use dipcoh_core::analysis::{uniform_times, Axis, SweepSpec};
use dipcoh_core::{
    build_hamiltonian, evolve_spectral, evolve_stepped_oracle, fd_partial_c2,
    hermitian_eigensystem, initial_state, run_sweep, steady_coherence, time_series, EvolutionSpec,
    ModelParams, Parameter,
};

fn eigen(c: &mut Criterion) {
    let h = build_hamiltonian(&ModelParams::default()).unwrap();
    c.bench_function("jacobi_4x4", |b| {
        b.iter(|| hermitian_eigensystem(black_box(&h)).unwrap())
    });
}

fn propagation(c: &mut Criterion) {
    let p = ModelParams::default();
    let rho0 = initial_state(FRAC_PI_3).unwrap();
    c.bench_function("evolve_spectral", |b| {
        b.iter(|| evolve_spectral(&p, 0.1, &rho0, black_box(7.5)).unwrap())
    });
    c.bench_function("evolve_stepped_oracle_t5", |b| {
        b.iter(|| evolve_stepped_oracle(&p, 0.1, &rho0, black_box(5.0), 1e-9).unwrap())
    });
    let spec = EvolutionSpec {
        params: p,
        gamma: 0.1,
        alpha: FRAC_PI_3,
        times: uniform_times(20.0, 201),
    };
    c.bench_function("time_series_201", |b| {
        b.iter(|| time_series(black_box(&spec)).unwrap())
    });
}

fn steady(c: &mut Criterion) {
    let p = ModelParams::default();
    c.bench_function("steady_coherence", |b| {
        b.iter(|| steady_coherence(black_box(&p), FRAC_PI_3).unwrap())
    });
    c.bench_function("fd_partial_c2_d", |b| {
        b.iter(|| fd_partial_c2(black_box(&p), FRAC_PI_3, Parameter::D, None).unwrap())
    });
    let spec = SweepSpec {
        base: p,
        alpha: FRAC_PI_3,
        gamma: 0.1,
        axis1: Axis::new(Parameter::D, 0.05, 2.0, 25),
        axis2: Some(Axis::new(Parameter::R, 0.3, 2.0, 25)),
        derivative_target: Some(Parameter::D),
        fd_step: 1e-5,
    };
    let mut group = c.benchmark_group("sweep");
    group.sample_size(20);
    group.bench_function("grid_25x25_with_derivative", |b| {
        b.iter(|| run_sweep(black_box(&spec)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, eigen, propagation, steady);
criterion_main!(benches);
