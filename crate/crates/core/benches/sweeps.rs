use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use pdlab::algebra::Preset;
use pdlab::order::corpus;
use pdlab::powerdomain::{fk_audit, representation_audit};
use pdlab::verify::{self, Suite, VerifyConfig};
use pdlab::Exec;

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn representation_sweep(c: &mut Criterion) {
    let posets = corpus(4);
    let mut g = c.benchmark_group("representation-sweep-n4");
    for (name, exec) in STRATEGIES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| {
                exec.map(&posets, |p| {
                    let r = representation_audit(p, None).unwrap();
                    r.passed() && fk_audit(p, false).unwrap().iter().all(|c| !c.failed())
                })
            })
        });
    }
    g.finish();
}

fn verify_suites(c: &mut Criterion) {
    let posets = verify::named_corpus(4);
    let mut g = c.benchmark_group("verify-free-indu-n4");
    g.sample_size(10);
    for (name, exec) in STRATEGIES {
        let cfg = VerifyConfig {
            suites: vec![Suite::Free, Suite::Indu],
            max_n: 4,
            presets: Preset::ALL.to_vec(),
            exec,
            ..VerifyConfig::default()
        };
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(verify::run(&cfg, &posets, &[])).ok())
        });
    }
    g.finish();
}

criterion_group!(benches, representation_sweep, verify_suites);
criterion_main!(benches);
