use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use modiag::oracle::Lattice;
use modiag::{corpus, tuned_diagram, AModule, Config, Exec};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn oracle(c: &mut Criterion) {
    let v4 = corpus::algebra("f2_v4").unwrap();
    let m = AModule::regular(&v4);
    let big = AModule::direct_sum(&[&m, &AModule::simple(&v4, 0)]).unwrap();
    let mut g = c.benchmark_group("lattice");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, big.dim()), &big, |b, m| {
            b.iter(|| Lattice::of(m, 12, exec).unwrap())
        });
    }
    g.finish();
}

fn diagrams(c: &mut Criterion) {
    let modules: Vec<AModule> = corpus::corpus(8).unwrap().into_iter().map(|c| c.module).collect();
    let cfg = Config::default();
    let mut g = c.benchmark_group("diagram_batch");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, modules.len()), |b| {
            b.iter(|| exec.map(&modules, |m| tuned_diagram(m, &cfg).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, oracle, diagrams);
criterion_main!(benches);
