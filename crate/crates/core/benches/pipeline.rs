use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use orbitquad::apps::{chordal_ideal_with, ChordalSpec};
use orbitquad::lie::make_sl;
use orbitquad::linalg::ints;
use orbitquad::orbit::{certify_with, Caps, OrbitContext};
use orbitquad::rep::{derived_rep, isotypic_decomposition_with, parse_rep_expr, Derived, Rep};
use orbitquad::Exec;

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn rep(n: usize, expr: &str) -> Rep {
    let g = Arc::new(make_sl(n).unwrap());
    parse_rep_expr(expr).unwrap().build(&g).unwrap()
}

fn certify(c: &mut Criterion) {
    let r = rep(2, "sym(3,std)");
    let y = ints(&[1, 0, 0, 0]);
    let mut group = c.benchmark_group("certify_sym3");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                let ctx = OrbitContext::with_options(&r, &y, Caps::default(), exec).unwrap();
                black_box(certify_with(ctx, 25, 0).unwrap())
            })
        });
    }
    group.finish();
}

fn isotypic(c: &mut Criterion) {
    let s2 = derived_rep(&rep(5, "wedge(2,std)"), Derived::Sym2).unwrap();
    let mut group = c.benchmark_group("isotypic_wedge2_sl5");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(isotypic_decomposition_with(&s2, exec).unwrap()))
        });
    }
    group.finish();
}

fn chordal(c: &mut Criterion) {
    let spec = ChordalSpec::new(5, 2, 1).unwrap();
    let mut group = c.benchmark_group("chordal_n5_k2_p1");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(chordal_ideal_with(&spec, 3, 0, exec).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, certify, isotypic, chordal);
criterion_main!(benches);
