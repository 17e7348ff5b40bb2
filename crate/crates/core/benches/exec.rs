use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use bideterminant::bidet::{verify_basis, Context, Degree, VerifyOptions};
use bideterminant::duality::duality_report;
use bideterminant::Exec;

fn opts(exec: Exec) -> VerifyOptions {
    VerifyOptions { exec, ..VerifyOptions::default() }
}

fn strategies() -> [(&'static str, Exec); 2] {
    [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)]
}

fn basis(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_basis");
    g.sample_size(10);
    let cases = [
        ("mat3_deg3", Context::mat(3), Degree::Total(3)),
        ("spm4_deg2", Context::spm(4).unwrap(), Degree::Total(2)),
        ("monoid2_21", Context::monoid(2), Degree::Bi(2, 1)),
    ];
    for (name, ctx, degree) in &cases {
        for (label, exec) in strategies() {
            g.bench_with_input(BenchmarkId::new(*name, label), &exec, |b, &exec| {
                b.iter(|| verify_basis(ctx, *degree, &opts(exec)).unwrap())
            });
        }
    }
    g.finish();
}

fn duality(c: &mut Criterion) {
    let mut g = c.benchmark_group("duality_report");
    g.sample_size(10);
    for (label, exec) in strategies() {
        g.bench_with_input(BenchmarkId::new("m2_r2_s1", label), &exec, |b, &exec| {
            b.iter(|| duality_report(2, 2, 1, 7, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, basis, duality);
criterion_main!(benches);
