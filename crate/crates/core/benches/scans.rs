//! Window scans on a single worker against the default pool.
//!
//! With `--no-default-features` every scan takes the sequential code path
//! and both groups measure it.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use valmax_core::duality::dual;
use valmax_core::maximals::{classify_maximals, symmetry_check};
use valmax_core::random::random_good_ideal;
use valmax_core::GoodIdeal;

fn instances() -> Vec<(String, GoodIdeal)> {
    [(3, 2, 8), (7, 3, 6), (3, 4, 5)]
        .into_iter()
        .map(|(seed, p, bound)| {
            let e = random_good_ideal(seed, p, bound).expect("bench instance");
            (format!("p{p}-b{bound}-n{}", e.small().len()), e)
        })
        .collect()
}

#[cfg(feature = "parallel")]
fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let default = rayon::ThreadPoolBuilder::new().build().unwrap();
    vec![("1-thread", single), ("default", default)]
}

#[cfg(feature = "parallel")]
fn on_pool<R: Send>(pool: &rayon::ThreadPool, f: impl FnOnce() -> R + Send) -> R {
    pool.install(f)
}

#[cfg(not(feature = "parallel"))]
fn pools() -> Vec<(&'static str, ())> {
    vec![("sequential", ())]
}

#[cfg(not(feature = "parallel"))]
fn on_pool<R: Send>(_: &(), f: impl FnOnce() -> R + Send) -> R {
    f()
}

fn bench_scans(c: &mut Criterion) {
    let instances = instances();
    let pools = pools();
    for (op, run) in [
        ("dual", (|e: &GoodIdeal| dual(e).map(|d| d.dual.small().len()).unwrap_or(0)) as fn(&GoodIdeal) -> usize),
        ("classify", |e: &GoodIdeal| classify_maximals(e).maximals.len()),
        ("symmetry", |e: &GoodIdeal| symmetry_check(e).map(|r| r.verdicts.len()).unwrap_or(0)),
    ] {
        let mut group = c.benchmark_group(op);
        group.sample_size(20);
        for (name, e) in &instances {
            for (label, pool) in &pools {
                group.bench_with_input(BenchmarkId::new(*label, name), e, |b, e| {
                    b.iter(|| on_pool(pool, || black_box(run(e))))
                });
            }
        }
        group.finish();
    }
}

criterion_group!(benches, bench_scans);
criterion_main!(benches);
