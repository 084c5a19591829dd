use std::hint::black_box;

use chromest_core::exact::exact_deletion_contraction;
use chromest_core::ff::{falling_to_power_log, FfSampler};
use chromest_core::graph::{gen_er, gen_named, Family};
use chromest_core::nbc::BcSampler;
use chromest_core::rng::substream;
use chromest_core::{resolve_ordering, Graph, LogNumber, OrderingKind, Variant};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn graphs() -> Vec<(&'static str, Graph)> {
    vec![
        ("W20", gen_named(&Family::Wheel(20)).unwrap()),
        ("W50", gen_named(&Family::Wheel(50)).unwrap()),
        ("ER(30,0.3)", gen_er(30, 0.3, 1).unwrap()),
        ("grid3d(4,4,4)", gen_named(&Family::Grid3d(4, 4, 4)).unwrap()),
    ]
}

fn bc_sampler(c: &mut Criterion) {
    let mut group = c.benchmark_group("bc_sample");
    for (name, g) in graphs() {
        let eo = resolve_ordering(&g, OrderingKind::Peo, 0);
        for variant in [Variant::Plain, Variant::Improved] {
            let mut sampler = BcSampler::new(&g, &eo, variant).unwrap();
            let mut rng = substream(0, 0);
            group.bench_function(BenchmarkId::new(variant.name(), name), |b| {
                b.iter(|| black_box(sampler.sample(&mut rng)))
            });
        }
    }
    group.finish();
}

fn ff_sampler(c: &mut Criterion) {
    let mut group = c.benchmark_group("ff_sample");
    for (name, g) in graphs() {
        let mut sampler = FfSampler::new(&g).unwrap();
        let mut rng = substream(0, 0);
        group.bench_function(name, |b| b.iter(|| black_box(sampler.sample(&mut rng))));
    }
    group.finish();
}

fn oracles(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact");
    group.sample_size(10);
    for n in [8, 10, 12] {
        let g = gen_named(&Family::Wheel(n)).unwrap();
        group.bench_with_input(BenchmarkId::new("deletion_contraction", format!("W{n}")), &g, |b, g| {
            b.iter(|| exact_deletion_contraction(g, n).unwrap())
        });
    }
    let p: Vec<LogNumber> = (1..=60).map(|t| LogNumber::from_ln(t as f64)).collect();
    group.bench_function("falling_to_power_log/60", |b| b.iter(|| falling_to_power_log(black_box(&p))));
    group.finish();
}

criterion_group!(benches, bc_sampler, ff_sampler, oracles);
criterion_main!(benches);
