use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use adjoint_local::oracle::{integrate, mu2_choices, Execution, OracleJob};

fn oracle_execution(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for (p, cond, m, n) in [(3, 1, 2, 2), (5, 2, 2, 1)] {
        let mu2 = mu2_choices(p, cond).remove(0);
        for execution in [Execution::Parallel, Execution::Sequential] {
            let job = OracleJob::new(mu2.clone(), m, n).with_execution(execution);
            let id = BenchmarkId::new(format!("{execution:?}"), format!("p{p}.c{cond}.m{m}.n{n}"));
            group.bench_with_input(id, &job, |b, job| b.iter(|| integrate(job).expect("job runs")));
        }
    }
    group.finish();
}

criterion_group!(benches, oracle_execution);
criterion_main!(benches);
