use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use topoq_bench::scrambled_function;
use topoq_core::{arbitrary_unitary, surjection_unitary};

fn bench_kernels(c: &mut Criterion) {
    let f64x64 = scrambled_function(64, 64);
    c.bench_function("arbitrary_unitary 64x64", |b| {
        b.iter(|| arbitrary_unitary(black_box(&f64x64)))
    });

    let f96 = {
        // force surjectivity: send the first m elements onto each output
        let m = 32;
        let n = 96;
        let domain: Vec<String> = (0..n).map(|j| format!("x{j}")).collect();
        let codomain: Vec<String> = (0..m).map(|i| format!("y{i}")).collect();
        let map = (0..n).map(|j| if j < m { j } else { j % m }).collect();
        topoq_core::FiniteFunction::from_labels(domain, codomain, map).unwrap()
    };
    c.bench_function("surjection_unitary 96->32", |b| {
        b.iter(|| surjection_unitary(black_box(&f96)).unwrap())
    });

    let kernel = arbitrary_unitary(&f64x64);
    c.bench_function("unitarity_residual 65x65 blocks", |b| {
        b.iter(|| kernel.operator.unitarity_residual().unwrap())
    });

    let members: std::collections::BTreeSet<usize> = (0..64).step_by(3).collect();
    c.bench_function("apply_set 64x64", |b| {
        b.iter(|| kernel.apply_set(black_box(&members)).unwrap())
    });
}

criterion_group!(benches, bench_kernels);
criterion_main!(benches);
