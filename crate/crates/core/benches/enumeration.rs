use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use quadwiener::enumerate::{enumerate_up_to, EnumerateOptions};
use quadwiener::metrics::wiener_index;
use quadwiener::par::{self, Execution};
use quadwiener::report::{audit_levels, AuditOptions};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    for n in [10, 11] {
        for (name, execution) in MODES {
            let opts = EnumerateOptions { execution, ..EnumerateOptions::default() };
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| b.iter(|| enumerate_up_to(n, &opts).unwrap()));
        }
    }
    group.finish();
}

fn batch(c: &mut Criterion) {
    let runs = enumerate_up_to(11, &EnumerateOptions::default()).unwrap();
    let instances: Vec<_> = runs.iter().flat_map(|r| r.instances.iter().cloned()).collect();

    let mut group = c.benchmark_group("batch");
    group.sample_size(10);
    for (name, execution) in MODES {
        group.bench_function(BenchmarkId::new("wiener", name), |b| {
            b.iter(|| par::map(&instances, execution, |q| wiener_index(q)))
        });
        let opts = AuditOptions { lemmas: true, surgery: true, require_extremal: true, execution, ..AuditOptions::default() };
        group.bench_function(BenchmarkId::new("audit", name), |b| b.iter(|| audit_levels(&runs, &opts)));
    }
    group.finish();
}

criterion_group!(benches, enumeration, batch);
criterion_main!(benches);
