use arith_lfun::characters::{character, enumerate_characters, DirichletCharacter};
use arith_lfun::exactnum::{factorize, lcm_u64, CyclotomicNumber, Rational};
use arith_lfun::lvalues::{
    bernoulli, bernoulli_poly, distribution_sides, generalized_bernoulli, l_value_in, l_value_nonpositive,
    lerch_fourier_sides, lerch_nonpositive, riemann_zeta_nonpositive, RootOfUnity,
};

/// `zeta_L(zeta_n^u, -k) = -n^k sum_{a=1}^n zeta_n^(u a) B_{k+1}(a/n) / (k+1)`.
fn lerch_oracle(n: u64, u: i64, k: usize) -> CyclotomicNumber {
    let b = bernoulli_poly(k + 1);
    let scale = Rational::new(-1, k as i64 + 1) * Rational::from_int(n as i64).pow(k as i32);
    (1..=n as i64).fold(CyclotomicNumber::zero(n), |acc, a| {
        let c = &b.eval(&Rational::new(a, n as i64)) * &scale;
        &acc + &CyclotomicNumber::zeta_pow(n, u * a).scale(&c)
    })
}

fn q(n: i64, d: i64) -> CyclotomicNumber {
    CyclotomicNumber::from_rational(1, &Rational::new(n, d))
}

#[test]
fn riemann_zeta_values() {
    let expect = [(0, -1, 2), (1, -1, 12), (2, 0, 1), (3, 1, 120), (5, -1, 252), (7, 1, 240), (11, 691, 32760)];
    for (k, a, b) in expect {
        assert_eq!(riemann_zeta_nonpositive(k), Rational::new(a, b), "k = {k}");
    }
    for k in (2..30).step_by(2) {
        assert!(riemann_zeta_nonpositive(k).is_zero());
    }
}

#[test]
fn bernoulli_polynomial_symmetry() {
    for k in 0..16usize {
        let p = bernoulli_poly(k);
        assert_eq!(p.eval(&Rational::zero()), bernoulli(k));
        let sign = if k % 2 == 0 { 1 } else { -1 };
        for (a, d) in [(1, 3), (1, 4), (2, 5), (5, 6)] {
            let x = Rational::new(a, d);
            let y = Rational::one() - x.clone();
            assert_eq!(p.eval(&y), p.eval(&x).mul_int(sign));
        }
    }
}

#[test]
fn small_dirichlet_values() {
    let chi4 = character(4, 1).unwrap();
    assert_eq!(l_value_nonpositive(&chi4, 1).value, q(1, 2));
    assert_eq!(l_value_nonpositive(&chi4, 3).value, q(-1, 2));
    let chi3 = character(3, 1).unwrap();
    assert_eq!(l_value_nonpositive(&chi3, 1).value, q(1, 3));
    assert_eq!(l_value_nonpositive(&chi3, 3).value, q(-2, 9));
    let trivial = character(1, 0).unwrap();
    assert_eq!(l_value_nonpositive(&trivial, 2).value, q(-1, 12));
}

#[test]
fn values_are_stored_for_the_primitive_character() {
    for n in 1..=30 {
        for chi in enumerate_characters(n) {
            let v = l_value_nonpositive(&chi, 2);
            let prim = chi.primitive_part();
            assert_eq!(v.character.modulus, prim.modulus());
            assert_eq!(v.character.index, prim.index());
            assert_eq!(v.value, l_value_nonpositive(&prim, 2).value);
        }
    }
}

#[test]
fn parity_vanishing() {
    for n in 1..=30 {
        for chi in enumerate_characters(n) {
            let prim = chi.primitive_part();
            for l in 1..=8 {
                let v = l_value_nonpositive(&chi, l).value;
                let trivial_exception = prim.is_trivial() && l == 1;
                if !chi.same_parity(l) && !trivial_exception {
                    assert!(v.is_zero(), "n = {n}, index {}, l = {l}", chi.index());
                } else {
                    assert!(!v.is_zero(), "n = {n}, index {}, l = {l}", chi.index());
                }
            }
        }
    }
}

/// The imprimitive value `L(chi, 1-l)` from the Bernoulli number of `chi` itself
/// matches the Euler factor at the primes dividing `n` but not `f`.
#[test]
fn euler_factor_relation() {
    for n in 1..=30 {
        for chi in enumerate_characters(n) {
            let prim = chi.primitive_part();
            for l in 1..=5u32 {
                let big = lcm_u64(chi.value_order(), prim.value_order());
                let own = generalized_bernoulli(l, &chi).scale(&Rational::new(-1, l as i64)).lift(big).unwrap();
                let mut rhs = l_value_in(&chi, l, big);
                for (p, _) in factorize(n) {
                    let pl = Rational::from_int(p as i64).pow(l as i32 - 1);
                    let factor = &CyclotomicNumber::one(big) - &prim.value_in(p as i64, big).scale(&pl);
                    rhs = &rhs * &factor;
                }
                assert_eq!(own, rhs, "n = {n}, index {}, l = {l}", chi.index());
            }
        }
    }
}

#[test]
fn lerch_values_match_periodic_bernoulli() {
    for n in 1..=12u64 {
        for u in 0..n as i64 {
            for k in 0..=8 {
                assert_eq!(lerch_nonpositive(RootOfUnity::new(n, u), k), lerch_oracle(n, u, k), "n = {n}, u = {u}, k = {k}");
            }
        }
    }
}

#[test]
fn lerch_inversion() {
    for n in 2..=12u64 {
        for u in 1..n as i64 {
            let z = RootOfUnity::new(n, u);
            for k in 0..=6usize {
                let sign = if k % 2 == 0 { -1 } else { 1 };
                let lhs = lerch_nonpositive(z.conj(), k);
                assert_eq!(lhs, lerch_nonpositive(z, k).conj());
                let rhs = lerch_nonpositive(z, k).mul_int(sign);
                let shift = if k == 0 { CyclotomicNumber::from_int(n, -1) } else { CyclotomicNumber::zero(n) };
                assert_eq!(lhs, &rhs + &shift, "n = {n}, u = {u}, k = {k}");
            }
        }
    }
}

#[test]
fn distribution_relation() {
    for n in 1..=12 {
        for k in 0..=6 {
            let (lhs, rhs) = distribution_sides(n, k);
            assert_eq!(lhs, rhs, "n = {n}, k = {k}");
        }
    }
}

fn primitive_characters(max_n: u64) -> Vec<DirichletCharacter> {
    (1..=max_n).flat_map(enumerate_characters).filter(|c| c.is_primitive()).collect()
}

#[test]
fn lerch_fourier_identity() {
    for chi in primitive_characters(12) {
        let n = chi.modulus();
        for u in 0..n as i64 {
            for l in 1..=5 {
                let (lhs, rhs) = lerch_fourier_sides(&chi, u, l);
                assert_eq!(lhs.to_minimal_order(), rhs.to_minimal_order(), "n = {n}, index {}, u = {u}, l = {l}", chi.index());
            }
        }
    }
}
