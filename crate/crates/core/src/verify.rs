//! Batch sweeps over parameter grids, one exact or numeric check per case.
//!
//! Random inputs are drawn up front from a single seeded ChaCha8 stream and
//! cases then run through [`crate::par::map`], so a report depends only on
//! its arguments.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::characters::{enumerate_characters, gauss_sum, fourier_identity_check, DirichletCharacter, Parity};
use crate::charclasses::{
    borel_serre_residual, equivariant_gauss_bonnet_residual, grr_curve, kappa_residual, woods_hole_sides,
    FormalBundle, Matrix, Var,
};
use crate::exactnum::{gcd_u64, CyclotomicNumber};
use crate::lderiv::{dirichlet_l_numeric, rg_fourier_check, EMParams};
use crate::lvalues::{l_value_nonpositive, maincomb_check};
use crate::par;

/// Outcome of one sweep. `max_residual` is set for numeric sweeps.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub name: String,
    pub cases: usize,
    pub passed: usize,
    pub residual_zero: bool,
    pub max_residual: Option<f64>,
    pub failures: Vec<String>,
}

const MAX_LISTED_FAILURES: usize = 20;

impl SweepReport {
    fn exact(name: &str, outcomes: Vec<(String, bool)>) -> Self {
        let cases = outcomes.len();
        let failures: Vec<String> = outcomes.into_iter().filter(|(_, ok)| !ok).map(|(c, _)| c).collect();
        SweepReport {
            name: name.into(),
            cases,
            passed: cases - failures.len(),
            residual_zero: failures.is_empty(),
            max_residual: None,
            failures: failures.into_iter().take(MAX_LISTED_FAILURES).collect(),
        }
    }

    /// Cases whose residual is not below `tol` (or is an error, reported as
    /// infinity) fail.
    fn numeric(name: &str, outcomes: Vec<(String, f64)>, tol: f64) -> Self {
        let cases = outcomes.len();
        let max = outcomes.iter().map(|o| o.1).fold(0.0, |a: f64, b| if b.is_nan() || b > a { b } else { a });
        let failures: Vec<String> =
            outcomes.into_iter().filter(|(_, r)| !(*r < tol)).map(|(c, r)| format!("{c}: {r:e}")).collect();
        SweepReport {
            name: name.into(),
            cases,
            passed: cases - failures.len(),
            residual_zero: failures.is_empty(),
            max_residual: Some(max),
            failures: failures.into_iter().take(MAX_LISTED_FAILURES).collect(),
        }
    }

    pub fn ok(&self) -> bool {
        self.residual_zero
    }
}

fn primitive_characters(n: u64) -> Vec<DirichletCharacter> {
    enumerate_characters(n).into_iter().filter(DirichletCharacter::is_primitive).collect()
}

fn units(n: u64) -> Vec<i64> {
    (1..=n as i64).filter(|&k| gcd_u64(k as u64 % n, n) == 1 || n == 1).collect()
}

/// `sum_s zeta^(u s) chi(s) = conj(chi(u)) tau(chi)` for primitive `chi` mod
/// `n <= max_n` and all `u`.
pub fn fourier_identity(max_n: u64) -> SweepReport {
    let cases: Vec<(DirichletCharacter, i64)> = (1..=max_n)
        .flat_map(|n| primitive_characters(n).into_iter().flat_map(move |c| (0..n as i64).map(move |u| (c.clone(), u))))
        .collect();
    let out = par::map(&cases, |(c, u)| (format!("n={} chi={} u={u}", c.modulus(), c.index()), fourier_identity_check(c, *u)));
    SweepReport::exact("fourier-identity", out)
}

/// `tau(chi) conj(tau(chi)) = f` for primitive `chi` of conductor `<= max_f`.
pub fn gauss_magnitude(max_f: u64) -> SweepReport {
    let cases: Vec<DirichletCharacter> = (1..=max_f).flat_map(primitive_characters).collect();
    let out = par::map(&cases, |c| {
        let t = gauss_sum(c, 1).value;
        let ok = (&t * &t.conj()).to_minimal_order() == CyclotomicNumber::from_int(1, c.modulus() as i64);
        (format!("f={} chi={}", c.modulus(), c.index()), ok)
    });
    SweepReport::exact("gauss-magnitude", out)
}

/// `L(chi, 1 - l) = 0` exactly when the parities of `chi` and `l` differ,
/// for nontrivial primitive `chi`.
pub fn parity_vanishing(max_f: u64, max_l: u32) -> SweepReport {
    let cases: Vec<(DirichletCharacter, u32)> = (2..=max_f)
        .flat_map(primitive_characters)
        .filter(|c| !c.is_trivial())
        .flat_map(|c| (1..=max_l).map(move |l| (c.clone(), l)))
        .collect();
    let out = par::map(&cases, |(c, l)| {
        let zero = l_value_nonpositive(c, *l).value.is_zero();
        let odd_l = l % 2 == 1;
        let mismatch = (c.parity() == Parity::Odd) != odd_l;
        (format!("f={} chi={} l={l}", c.modulus(), c.index()), zero == mismatch)
    });
    SweepReport::exact("parity", out)
}

/// Zero residual series for `lambda = zeta_n^u`, `u != 0`.
pub fn maincomb(max_n: u64, order: usize) -> SweepReport {
    let cases: Vec<(u64, i64)> = (2..=max_n).flat_map(|n| (1..n as i64).map(move |u| (n, u))).collect();
    let out = par::map(&cases, |&(n, u)| (format!("n={n} u={u}"), maincomb_check(n, u, order).is_zero()));
    SweepReport::exact("maincomb", out)
}

/// `|L_numeric(1 - l, chi) - embed(L_exact(chi, 1 - l))|` for primitive `chi`.
pub fn exact_numeric(max_f: u64, max_l: u32, tol: f64) -> SweepReport {
    let cases: Vec<(DirichletCharacter, u32)> = (1..=max_f)
        .flat_map(primitive_characters)
        .flat_map(|c| (1..=max_l).map(move |l| (c.clone(), l)))
        .collect();
    let out = par::map(&cases, |(c, l)| {
        let r = (|| {
            let num = dirichlet_l_numeric(1.0 - *l as f64, c, EMParams::default(), false).ok()?;
            let ex = l_value_nonpositive(c, *l).value.embed(1).ok()?;
            Some(num.value.distance(ex))
        })();
        (format!("f={} chi={} l={l}", c.modulus(), c.index()), r.unwrap_or(f64::INFINITY))
    });
    SweepReport::numeric("exact-numeric", out, tol)
}

/// R-genus Fourier identity on primitive `chi` mod `n <= max_n`, all `u`,
/// `k <= max_k`.
pub fn rg_fourier(max_n: u64, max_k: u32, tol: f64) -> SweepReport {
    let cases: Vec<(DirichletCharacter, i64, u32)> = (1..=max_n)
        .flat_map(primitive_characters)
        .flat_map(|c| {
            let n = c.modulus() as i64;
            (0..n).flat_map(move |u| {
                let c = c.clone();
                (0..=max_k).map(move |k| (c.clone(), u, k))
            })
        })
        .collect();
    let out = par::map(&cases, |(c, u, k)| {
        let r = rg_fourier_check(c, *u, *k).map_or(f64::INFINITY, |r| r.residual);
        (format!("n={} chi={} u={u} k={k}", c.modulus(), c.index()), r)
    });
    SweepReport::numeric("rg-fourier", out, tol)
}

fn symbols(count: usize, offset: u32) -> Vec<Var> {
    (0..count as u32).map(|i| Var::root(offset + i)).collect()
}

/// Borel–Serre residuals on `samples` random rational root sets, ranks
/// cycling through `ranks`.
pub fn borel_serre(ranks: &[usize], degree: usize, samples: usize, seed: u64) -> SweepReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<FormalBundle> = (0..samples)
        .map(|i| {
            let r = ranks[i % ranks.len()];
            FormalBundle::random(&mut rng, 1, &symbols(r.max(1), 0), &vec![0; r])
        })
        .collect();
    let out = par::map(&cases, |e| (format!("rank={} roots={:?}", e.rank(), e.roots), borel_serre_residual(e, degree).is_zero()));
    SweepReport::exact("borel-serre", out)
}

/// Nondecreasing weight tuples of length `len` drawn from `range`.
fn multisets(range: &[u64], len: usize) -> Vec<Vec<u64>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &w) in range.iter().enumerate() {
        for mut rest in multisets(&range[i..], len - 1) {
            rest.insert(0, w);
            out.push(rest);
        }
    }
    out
}

/// Equivariant Gauss–Bonnet residuals over all weight patterns of `N`
/// (nonzero weights) and ranks of `Z`, for every `k` prime to `n`.
pub fn gauss_bonnet(ns: &[u64], max_rank_n: usize, max_rank_z: usize, degree: usize) -> SweepReport {
    let mut cases = Vec::new();
    for &n in ns {
        let nonzero: Vec<u64> = (1..n).collect();
        for rn in 0..=max_rank_n {
            for w in multisets(&nonzero, rn) {
                for rz in 0..=max_rank_z {
                    for k in units(n) {
                        cases.push((n, w.clone(), rz, k));
                    }
                }
            }
        }
    }
    let out = par::map(&cases, |(n, w, rz, k)| {
        let roots: Vec<(Var, u64)> = symbols(w.len(), 0).into_iter().zip(w.iter().copied()).collect();
        let normal = FormalBundle::from_symbols(*n, &roots);
        let z: Vec<(Var, u64)> = symbols(*rz, 10).into_iter().map(|v| (v, 0)).collect();
        let fixed = FormalBundle::from_symbols(*n, &z);
        let ok = equivariant_gauss_bonnet_residual(&normal, &fixed, *k, degree).is_ok_and(|r| r.is_zero());
        (format!("n={n} N={w:?} rkZ={rz} k={k}"), ok)
    });
    SweepReport::exact("gauss-bonnet", out)
}

/// κ-identity residuals over all weight patterns of rank `1..=max_rank`,
/// `k` prime to `n`, `l <= max_l`.
pub fn kappa(ranks: &[usize], ns: &[u64], max_l: usize) -> SweepReport {
    let mut cases = Vec::new();
    for &n in ns {
        let all: Vec<u64> = (0..n).collect();
        for &r in ranks {
            for w in multisets(&all, r) {
                for k in units(n) {
                    for l in 0..=max_l {
                        cases.push((n, w.clone(), k, l));
                    }
                }
            }
        }
    }
    let out = par::map(&cases, |(n, w, k, l)| {
        let roots: Vec<(Var, u64)> = symbols(w.len(), 0).into_iter().zip(w.iter().copied()).collect();
        let e = FormalBundle::from_symbols(*n, &roots);
        let ok = kappa_residual(&e, *l, *k).is_ok_and(|r| r.is_zero());
        (format!("n={n} weights={w:?} k={k} l={l}"), ok)
    });
    SweepReport::exact("kappa", out)
}

fn random_entry(rng: &mut ChaCha8Rng, order: u64) -> CyclotomicNumber {
    let mut x = CyclotomicNumber::zero(order);
    if rng.gen_bool(0.25) {
        return x;
    }
    for _ in 0..rng.gen_range(1..=2) {
        let j = rng.gen_range(0..order as i64);
        let c = rng.gen_range(-3i64..=3);
        x = &x + &CyclotomicNumber::zeta_pow(order, j).mul_int(c);
    }
    x
}

/// Random square matrices of size `1..=max_size` over `Q(mu_order)`.
pub fn random_matrices(samples: usize, max_size: usize, order: u64, seed: u64) -> Vec<Matrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|i| {
            let s = 1 + i % max_size;
            (0..s).map(|_| (0..s).map(|_| random_entry(&mut rng, order)).collect()).collect()
        })
        .collect()
}

/// Woods Hole identity on [`random_matrices`].
pub fn woods_hole(samples: usize, max_size: usize, order: u64, seed: u64) -> SweepReport {
    let cases = random_matrices(samples, max_size, order, seed);
    let out = par::map(&cases, |g| {
        let (a, b) = woods_hole_sides(g);
        (format!("size={} lhs={} rhs={}", g.len(), a, b), a == b)
    });
    SweepReport::exact("woods-hole", out)
}

/// `grr_curve(g, d) = d + 1 - g`.
pub fn grr(max_g: i64, max_d: i64) -> SweepReport {
    let cases: Vec<(i64, i64)> = (0..=max_g).flat_map(|g| (-max_d..=max_d).map(move |d| (g, d))).collect();
    let out = par::map(&cases, |&(g, d)| (format!("g={g} d={d}"), grr_curve(g, d) == d + 1 - g));
    SweepReport::exact("grr-curve", out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps_pass() {
        assert!(fourier_identity(8).ok());
        assert!(gauss_magnitude(12).ok());
        assert!(parity_vanishing(12, 4).ok());
        assert!(maincomb(5, 8).ok());
        assert!(borel_serre(&[1, 2], 4, 6, 3).ok());
        assert!(gauss_bonnet(&[2, 3], 1, 1, 3).ok());
        assert!(kappa(&[1, 2], &[1, 2], 1).ok());
        assert!(woods_hole(12, 3, 4, 5).ok());
        assert!(grr(2, 3).ok());
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(&[1, 2, 3], 2).len(), 6);
        assert_eq!(multisets(&[1], 0), vec![Vec::<u64>::new()]);
    }

    #[test]
    fn failures_are_counted() {
        let r = SweepReport::numeric("t", vec![("a".into(), 0.5), ("b".into(), f64::INFINITY)], 1.0);
        assert_eq!((r.cases, r.passed, r.residual_zero), (2, 1, false));
    }
}
