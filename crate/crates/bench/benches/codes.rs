use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rtheta::code::{build, min_dna_distance, min_dna_distance_exhaustive, DEFAULT_MAX_SIZE};
use rtheta::dnamap::{fit_table, Conventions, Evidence};
use rtheta::verify::{default_table, fixture};

fn pairwise_distance(c: &mut Criterion) {
    let f = fixture("table2-5").unwrap();
    let code = build(f.theta, &f.construction, DEFAULT_MAX_SIZE).unwrap();
    let table = default_table(f.theta).unwrap();
    let mut group = c.benchmark_group("d_dna M=4096 2n=16");
    group.sample_size(10);
    group.bench_function("early exit", |b| b.iter(|| min_dna_distance(&code, table)));
    for workers in [1, 2, 4] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().unwrap();
        group.bench_with_input(BenchmarkId::new("exhaustive", workers), &workers, |b, _| {
            b.iter(|| pool.install(|| min_dna_distance_exhaustive(&code, table)))
        });
    }
    group.finish();
}

fn span_closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("span closure");
    for id in ["table1-3", "table2-4", "table3-4"] {
        let f = fixture(id).unwrap();
        group.bench_function(id, |b| b.iter(|| build(f.theta, &f.construction, DEFAULT_MAX_SIZE).unwrap()));
    }
    group.finish();
}

fn table_fitting(c: &mut Criterion) {
    let f = fixture("example-r22w").unwrap();
    let code = build(f.theta, &f.construction, DEFAULT_MAX_SIZE).unwrap();
    let evidence = [Evidence::exact(code.len(), code.packed_words().to_vec(), f.dna.clone().unwrap())];
    let mut group = c.benchmark_group("fit_table");
    group.sample_size(10);
    group.bench_function("conventions only", |b| b.iter(|| fit_table(f.theta, &[], &Conventions::for_theta(f.theta)).unwrap()));
    group.bench_function("256-string evidence", |b| b.iter(|| fit_table(f.theta, &evidence, &Conventions::none())));
    group.finish();
}

criterion_group!(benches, pairwise_distance, span_closure, table_fitting);
criterion_main!(benches);
