use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use pgroup_bench::fixture;
use pgroup_core::catalog::{self, BuildRequest};
use pgroup_core::degrees::{character_degrees_with, DegreeOptions, StrategyChoice};
use pgroup_core::extension::{sweep, ExtensionRecord, SweepOptions};
use pgroup_core::ConcreteGroup;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn collection(c: &mut Criterion) {
    let (_, _, ext) = fixture("ex52");
    let pres = ext.presentation.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let pairs: Vec<_> = (0..256).map(|_| (pres.random_element(&mut rng), pres.random_element(&mut rng))).collect();
    c.bench_function("collect/ex52-extension/256-products", |b| {
        b.iter(|| {
            for (x, y) in &pairs {
                black_box(pres.mul(x, y));
            }
        })
    });
    c.bench_function("enumerate/ex52-extension", |b| {
        b.iter(|| ConcreteGroup::from_arc(black_box(pres.clone())).unwrap())
    });
}

fn classes_and_degrees(c: &mut Criterion) {
    let (_, _, ext) = fixture("huppert22");
    let g = &ext.group;
    c.bench_function("classes/huppert22-extension", |b| b.iter(|| black_box(g.conjugacy_classes())));
    let classes = g.conjugacy_classes();
    let mut group = c.benchmark_group("degrees/huppert22-extension");
    for s in [StrategyChoice::Diophantine, StrategyChoice::Layered, StrategyChoice::Eigenvector] {
        let opts = DegreeOptions::with_strategy(s);
        group.bench_function(format!("{s:?}").to_lowercase(), |b| {
            b.iter(|| character_degrees_with(g, &classes, &opts).unwrap())
        });
    }
    group.finish();
}

fn sweep_window(c: &mut Criterion) {
    let built = catalog::build(&BuildRequest::new("ex52")).unwrap();
    let template = built.template.clone().unwrap();
    let g = ConcreteGroup::from_arc(built.base.clone()).unwrap();
    // contains the four fully valid tuples of this family
    let opts = SweepOptions {
        start: 18_000,
        end: Some(19_000),
        ..Default::default()
    };
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    group.bench_function("ex52/1000-tuples", |b| {
        b.iter(|| {
            let mut valid = 0u64;
            let mut sink = |_: u64, r: &ExtensionRecord| -> pgroup_core::Result<()> {
                valid += r.fully_valid() as u64;
                Ok(())
            };
            sweep(&template, &g, &opts, &mut sink).unwrap();
            black_box(valid)
        })
    });
    group.finish();
}

criterion_group!(benches, collection, classes_and_degrees, sweep_window);
criterion_main!(benches);
