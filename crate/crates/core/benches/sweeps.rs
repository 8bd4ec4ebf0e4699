//! Sweeps run inside a one-thread pool and inside rayon's default pool.
//! Build with `--no-default-features` to measure the purely sequential path.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rayon::ThreadPoolBuilder;
use torsionlab::checks::{self, CheckConfig};
use torsionlab::perm::{self, Composition, Perm};
use torsionlab::sl2::{self, CheckMode};
use torsionlab::Prime;

fn pools() -> Vec<(String, rayon::ThreadPool)> {
    let wide = rayon::current_num_threads().max(2);
    [1, wide]
        .into_iter()
        .map(|n| {
            (
                n.to_string(),
                ThreadPoolBuilder::new().num_threads(n).build().unwrap(),
            )
        })
        .collect()
}

fn stabilizer_certificate(c: &mut Criterion) {
    let mut g = c.benchmark_group("stabilizer_certificate_n8");
    let w = Composition::new(vec![3, 3, 2]);
    let s = Perm::identity(8);
    for (threads, pool) in pools() {
        g.bench_with_input(BenchmarkId::from_parameter(&threads), &pool, |b, pool| {
            b.iter(|| pool.install(|| perm::stabilizer_intersection(&s, &w, 3, Some(8)).unwrap()))
        });
    }
    g.finish();
}

fn exhaustive_cosets(c: &mut Criterion) {
    let mut g = c.benchmark_group("exhaustive_double_cosets_n7");
    g.sample_size(10);
    let w = Composition::new(vec![3, 2, 2]);
    for (threads, pool) in pools() {
        g.bench_with_input(BenchmarkId::from_parameter(&threads), &pool, |b, pool| {
            b.iter(|| pool.install(|| perm::exhaustive_double_cosets(&w, 3, 8).unwrap()))
        });
    }
    g.finish();
}

fn invariants(c: &mut Criterion) {
    let mut g = c.benchmark_group("sl2_full_group");
    g.sample_size(10);
    let p = Prime::new(7).unwrap();
    let q = sl2::q_class(p).unwrap();
    for (threads, pool) in pools() {
        g.bench_with_input(BenchmarkId::new("check_q", &threads), &pool, |b, pool| {
            b.iter(|| pool.install(|| sl2::check_invariant(&q, CheckMode::FullGroup).unwrap()))
        });
        g.bench_with_input(
            BenchmarkId::new("invariant_dim_p5_d8", &threads),
            &pool,
            |b, pool| {
                b.iter(|| {
                    pool.install(|| sl2::invariant_dim(Prime::new(5).unwrap(), 8, 8).unwrap())
                })
            },
        );
    }
    g.finish();
}

fn engine_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("steenrod_self_consistency");
    g.sample_size(10);
    let check = checks::find("C03").unwrap();
    let cfg = CheckConfig {
        word_samples: 200,
        ..CheckConfig::default()
    };
    for (threads, pool) in pools() {
        g.bench_with_input(BenchmarkId::from_parameter(&threads), &pool, |b, pool| {
            b.iter(|| pool.install(|| assert!(check.run(&cfg).passed)))
        });
    }
    g.finish();
}

criterion_group!(
    benches,
    stabilizer_certificate,
    exhaustive_cosets,
    invariants,
    engine_sweep
);
criterion_main!(benches);
