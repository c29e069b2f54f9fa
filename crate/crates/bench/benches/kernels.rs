use criterion::{black_box, criterion_group, criterion_main, Criterion};
use kuga_core::cones::lifted::lifted_fan;
use kuga_core::cones::toric_is_canonical;
use kuga_core::exact::quad_min;
use kuga_core::reid_tai::rt_scan;

fn bench_quad_min(c: &mut Criterion) {
    let forms = kuga_bench::forms();
    c.bench_function("quad_min/root_lattices", |b| {
        b.iter(|| {
            forms
                .iter()
                .map(|q| quad_min(black_box(q)).unwrap().0)
                .max()
        })
    });
}

fn bench_toric(c: &mut Criterion) {
    let cones = kuga_bench::cones();
    c.bench_function("toric_is_canonical/rank3", |b| {
        b.iter(|| {
            cones
                .iter()
                .filter(|k| toric_is_canonical(black_box(k)).verdict.is_canonical())
                .count()
        })
    });
}

fn bench_lifted_fan(c: &mut Criterion) {
    c.bench_function("lifted_fan/g1_n2_w3", |b| {
        b.iter(|| lifted_fan(1, 2, black_box(3)).unwrap().len())
    });
}

fn bench_scan(c: &mut Criterion) {
    let mut g = c.benchmark_group("rt_scan");
    g.sample_size(10);
    g.bench_function("g3_n3", |b| {
        b.iter(|| rt_scan(3, black_box(3), 12).unwrap().pass)
    });
    g.finish();
}

criterion_group!(
    benches,
    bench_quad_min,
    bench_toric,
    bench_lifted_fan,
    bench_scan
);
criterion_main!(benches);
