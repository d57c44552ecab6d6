//! Sequential against rayon-parallel mapping on the sweep workloads.

use arith_lfun::characters::{enumerate_characters, fourier_identity_check, DirichletCharacter};
use arith_lfun::charclasses::{borel_serre_residual, kappa_residual, woods_hole_sides, FormalBundle, Var};
use arith_lfun::exactnum::{CyclotomicNumber, Rational};
use arith_lfun::hp::Real;
use arith_lfun::lderiv::{hurwitz_zeta_hp, EMParams};
use arith_lfun::par::{map_parallel, map_sequential};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 7;

fn compare<T: Sync, R: Send>(c: &mut Criterion, name: &str, cases: &[T], f: impl Fn(&T) -> R + Sync + Send) {
    let mut g = c.benchmark_group(name);
    g.sample_size(10);
    g.bench_with_input(BenchmarkId::new("sequential", cases.len()), cases, |b, cs| b.iter(|| map_sequential(cs, &f)));
    g.bench_with_input(BenchmarkId::new("parallel", cases.len()), cases, |b, cs| b.iter(|| map_parallel(cs, &f)));
    g.finish();
}

fn fourier_identity(c: &mut Criterion) {
    let cases: Vec<(DirichletCharacter, i64)> = (1..=30)
        .flat_map(enumerate_characters)
        .filter(|chi| chi.is_primitive())
        .flat_map(|chi| (0..chi.modulus() as i64).map(move |u| (chi.clone(), u)))
        .collect();
    compare(c, "fourier_identity", &cases, |(chi, u)| fourier_identity_check(chi, *u));
}

fn random_bundles(n: u64, rank: usize, count: usize) -> Vec<FormalBundle> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let base: Vec<Var> = (0..3).map(|i| Var::new(i, 1)).collect();
    (0..count)
        .map(|_| {
            let w: Vec<u64> = (0..rank).map(|_| rng.gen_range(0..n)).collect();
            FormalBundle::random(&mut rng, n, &base, &w)
        })
        .collect()
}

fn borel_serre(c: &mut Criterion) {
    let cases = random_bundles(1, 4, 32);
    compare(c, "borel_serre", &cases, |e| borel_serre_residual(e, 6).is_zero());
}

fn kappa(c: &mut Criterion) {
    let cases = random_bundles(5, 3, 32);
    compare(c, "kappa", &cases, |e| kappa_residual(e, 2, 1).map(|r| r.is_zero()));
}

fn woods_hole(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let cases: Vec<Vec<Vec<CyclotomicNumber>>> = (0..32)
        .map(|_| {
            (0..4)
                .map(|_| {
                    (0..4)
                        .map(|_| CyclotomicNumber::zeta_pow(8, rng.gen_range(0..8)).scale(&Rational::from_int(rng.gen_range(-2..=2))))
                        .collect()
                })
                .collect()
        })
        .collect();
    compare(c, "woods_hole", &cases, |g| {
        let (a, b) = woods_hole_sides(g);
        a == b
    });
}

fn hurwitz_row(c: &mut Criterion) {
    let cases: Vec<u64> = (1..=24).collect();
    let s = Real::from_i64(-2);
    compare(c, "hurwitz_row", &cases, |&b| {
        let x = Real::from_i64(b as i64) / Real::from_i64(24);
        hurwitz_zeta_hp(&s, &x, EMParams::default(), true).map(|h| h.value.to_f64())
    });
}

criterion_group!(benches, fourier_identity, borel_serre, kappa, woods_hole, hurwitz_row);
criterion_main!(benches);
