use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qcorr::bounds::{self, full_rank};
use qcorr::correlations::{eof_convex_roof_numeric, ConvexRoofSettings};
use qcorr::starsim::{default_a_grid, run_sweep, sweep_point};
use qcorr::{
    classical_correlations, eof_two_qubit, random_density_matrix, random_pure_state, Dims, OptimizerSettings, Side,
    StarConfig,
};

fn measurement(c: &mut Criterion) {
    let settings = OptimizerSettings::default();
    let two = random_density_matrix(&Dims::qubits(2), 4, 1).unwrap();
    let three = random_density_matrix(&Dims::qubits(3), 8, 2).unwrap();
    c.bench_function("classical_correlations/2q", |b| {
        b.iter(|| classical_correlations(black_box(&two), 1, &settings).unwrap())
    });
    c.bench_function("classical_correlations/3q", |b| {
        b.iter(|| classical_correlations(black_box(&three), 2, &settings).unwrap())
    });
}

fn entanglement(c: &mut Criterion) {
    let rho = random_density_matrix(&Dims::qubits(2), 3, 3).unwrap();
    c.bench_function("eof_two_qubit", |b| b.iter(|| eof_two_qubit(black_box(&rho)).unwrap()));
    let roof = ConvexRoofSettings { restarts: 2, ..ConvexRoofSettings::default() };
    let mut group = c.benchmark_group("convex_roof");
    group.sample_size(10);
    group.bench_function("rank3_2restarts", |b| b.iter(|| eof_convex_roof_numeric(black_box(&rho), 6, &roof).unwrap()));
    group.finish();
}

fn audits(c: &mut Criterion) {
    let settings = OptimizerSettings::default();
    let psi = random_pure_state(&Dims::qubits(4), 4);
    let rho = full_rank(&random_density_matrix(&Dims::qubits(2), 4, 5).unwrap());
    c.bench_function("consensus_delta/1+3", |b| {
        b.iter(|| bounds::consensus_delta(black_box(&psi), 0, &settings).unwrap())
    });
    c.bench_function("continuity_chain", |b| {
        b.iter(|| bounds::continuity_chain_audit(black_box(&rho), Side::B, &settings).unwrap())
    });
}

fn sweep(c: &mut Criterion) {
    let settings = OptimizerSettings::default();
    c.bench_function("sweep_point/n50_a0.5", |b| {
        b.iter(|| sweep_point(black_box(&StarConfig::new(50, 0.5).unwrap()), &settings).unwrap())
    });
    let grid = default_a_grid();
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    group.bench_function("default_grid", |b| b.iter(|| run_sweep(&[2, 10, 50], black_box(&grid), &settings).unwrap()));
    group.finish();
}

criterion_group!(benches, measurement, entanglement, audits, sweep);
criterion_main!(benches);
