use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use mxr::analysis::{identity_suite, qbar_table, scan_omega_hat, IdentityConfig};
use mxr::collatz::MapParams;
use mxr::conjugacy::HatConfig;
use mxr::exactnum::Q2;
use mxr::exec::Execution;

const MODES: [(&str, Execution); 2] = [("serial", Execution::Serial), ("parallel", Execution::Parallel)];

fn qbar(c: &mut Criterion) {
    let p = MapParams::new(5, 1).unwrap();
    let mut group = c.benchmark_group("qbar_k16");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| qbar_table(p, black_box(16), exec).unwrap())
        });
    }
    group.finish();
}

fn identities(c: &mut Criterion) {
    let p = MapParams::new(3, 1).unwrap();
    let cfg = IdentityConfig {
        samples: 200,
        ..Default::default()
    };
    let mut group = c.benchmark_group("identities_200");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| identity_suite(p, black_box(&cfg), exec))
        });
    }
    group.finish();
}

fn hat(c: &mut Criterion) {
    let p = MapParams::new(5, 1).unwrap();
    let xs: Vec<Q2> = (-16..=16).map(Q2::integer).collect();
    let cfg = HatConfig::default();
    let mut group = c.benchmark_group("omega_hat_33");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| scan_omega_hat(p, black_box(&xs), &cfg, exec))
        });
    }
    group.finish();
}

criterion_group!(benches, qbar, identities, hat);
criterion_main!(benches);
