use criterion::{criterion_group, criterion_main, Criterion};

use gammaring::{
    character_quotient, smith_normal_form, twisted_filtration, weyl_dimension, ClosureMode,
    IndexAssignment, IntMat, IsogenySpec, K0Ring, RootSystemSpec, Series,
};

fn bench_smith(c: &mut Criterion) {
    let m = IntMat::from_i64(&[
        &[2, 4, 4, 0, 6],
        &[-6, 6, 12, 2, -4],
        &[10, 4, 16, -8, 2],
        &[0, 2, -2, 12, 8],
        &[4, -4, 6, 6, 10],
    ]);
    c.bench_function("smith 5x5", |b| {
        b.iter(|| smith_normal_form(std::hint::black_box(&m)))
    });
}

fn bench_build_ring(c: &mut Criterion) {
    let spec = RootSystemSpec::new(Series::E, 7).unwrap();
    c.bench_function("build rank 7 adjoint ring", |b| {
        b.iter(|| {
            let cq = character_quotient(spec, IsogenySpec::Adjoint).unwrap();
            K0Ring::build(cq).unwrap()
        })
    });
}

fn bench_filtration(c: &mut Criterion) {
    let spec = RootSystemSpec::new(Series::D, 4).unwrap();
    let cq = character_quotient(spec, IsogenySpec::Adjoint).unwrap();
    let k0 = K0Ring::build(cq).unwrap();
    let asg = IndexAssignment::new(
        k0.group(),
        &[(vec![1, 0], 4), (vec![0, 1], 4), (vec![1, 1], 2)],
    )
    .unwrap();
    c.bench_function("filtration rank 4 order 4 group", |b| {
        b.iter(|| twisted_filtration(&k0, &asg, 5, ClosureMode::Subgroup).unwrap())
    });
}

fn bench_dimensions(c: &mut Criterion) {
    let spec = RootSystemSpec::new(Series::E, 8).unwrap();
    c.bench_function("rank 8 fundamental dimensions", |b| {
        b.iter(|| {
            for i in 0..8 {
                let mut w = vec![0i64; 8];
                w[i] = 1;
                weyl_dimension(spec, &w).unwrap();
            }
        })
    });
}

criterion_group!(
    benches,
    bench_smith,
    bench_build_ring,
    bench_filtration,
    bench_dimensions
);
criterion_main!(benches);
