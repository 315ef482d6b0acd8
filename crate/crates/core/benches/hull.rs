use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use polystack::constructions::generate_many;
use polystack::hull::{brute_force_facets, facets_from_points};
use polystack::{catalog, generate_elementary_2s2s, Execution};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn hull(c: &mut Criterion) {
    let mut g = c.benchmark_group("facets_from_points");
    g.sample_size(10);
    for k in [13, 25] {
        let p = generate_elementary_2s2s(k).unwrap();
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, k), &p, |b, p| {
                b.iter(|| facets_from_points(p.dim(), p.vertices(), exec).unwrap())
            });
        }
    }
    g.finish();

    let mut g = c.benchmark_group("brute_force_facets");
    g.sample_size(10);
    let p = catalog::polytope("P11");
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| brute_force_facets(p.dim(), p.vertices(), exec).unwrap()));
    }
    g.finish();
}

fn generator(c: &mut Criterion) {
    let ks: Vec<usize> = (13..=24).collect();
    let mut g = c.benchmark_group("generate_many");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| generate_many(&ks, exec).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, hull, generator);
criterion_main!(benches);
