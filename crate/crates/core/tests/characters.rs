use arith_lfun::characters::{
    character, enumerate_characters, fourier_identity_check, gauss_sum, unit_group, ClassFunction,
    DirichletCharacter, Parity,
};
use arith_lfun::exactnum::{divisors, euler_phi, lcm_u64, CyclotomicNumber, Rational};
use proptest::prelude::*;

fn pairing(chi: &DirichletCharacter, psi: &DirichletCharacter) -> CyclotomicNumber {
    let big = lcm_u64(chi.value_order(), psi.value_order());
    let mut acc = CyclotomicNumber::zero(big);
    for &a in chi.group().units() {
        acc = &acc + &(&chi.value_in(a as i64, big) * &psi.value_in(a as i64, big).conj());
    }
    acc.to_minimal_order()
}

/// Smallest `d | n` such that `chi` is trivial on units `= 1 mod d`.
fn conductor_brute_force(chi: &DirichletCharacter) -> u64 {
    let n = chi.modulus();
    let units = chi.group().units().to_vec();
    divisors(n)
        .into_iter()
        .find(|&d| units.iter().filter(|&&a| a % d == 1 % d).all(|&a| chi.value(a as i64).is_one()))
        .unwrap()
}

#[test]
fn character_counts_and_indexing() {
    for n in 1..=40 {
        let chars = enumerate_characters(n);
        assert_eq!(chars.len() as u64, euler_phi(n), "n = {n}");
        assert!(chars[0].is_trivial());
        for (i, c) in chars.iter().enumerate() {
            assert_eq!(c.index(), i);
            assert_eq!(character(n, i).as_ref(), Some(c));
        }
        assert!(character(n, chars.len()).is_none());
    }
}

#[test]
fn orthogonality_of_characters() {
    for n in 1..=24 {
        let chars = enumerate_characters(n);
        let phi = euler_phi(n) as i64;
        for (i, chi) in chars.iter().enumerate() {
            for (j, psi) in chars.iter().enumerate() {
                let expect = if i == j { phi } else { 0 };
                assert_eq!(pairing(chi, psi), CyclotomicNumber::from_int(1, expect), "n = {n}, {i}, {j}");
            }
        }
    }
}

#[test]
fn orthogonality_over_characters() {
    for n in 1..=24 {
        let chars = enumerate_characters(n);
        let big = chars.iter().fold(1, |m, c| lcm_u64(m, c.value_order()));
        for &a in unit_group(n).units() {
            let s = chars.iter().fold(CyclotomicNumber::zero(big), |acc, c| &acc + &c.value_in(a as i64, big));
            let expect = if a == 1 % n.max(1) { euler_phi(n) as i64 } else { 0 };
            assert_eq!(s.to_minimal_order(), CyclotomicNumber::from_int(1, expect), "n = {n}, a = {a}");
        }
    }
}

#[test]
fn characters_are_multiplicative() {
    for n in 1..=24 {
        let g = unit_group(n);
        for chi in enumerate_characters(n) {
            for &a in g.units() {
                for &b in g.units() {
                    let lhs = chi.value(g.mul(a, b) as i64);
                    assert_eq!(lhs, &chi.value(a as i64) * &chi.value(b as i64));
                }
            }
            assert!(chi.mul(&chi.conj()).is_trivial());
        }
    }
}

#[test]
fn conductors_and_primitive_parts() {
    for n in 1..=40 {
        for chi in enumerate_characters(n) {
            let f = chi.conductor();
            assert_eq!(f, conductor_brute_force(&chi), "n = {n}, index {}", chi.index());
            let prim = chi.primitive_part();
            assert_eq!(prim.modulus(), f);
            assert_eq!(prim.conductor(), f);
            assert!(prim.is_primitive());
            assert_eq!(prim.parity(), chi.parity());
            for &a in chi.group().units() {
                assert_eq!(
                    prim.value(a as i64).to_minimal_order(),
                    chi.value(a as i64).to_minimal_order(),
                    "n = {n}, a = {a}"
                );
            }
        }
    }
}

#[test]
fn parity_matches_value_at_minus_one() {
    for n in 1..=40 {
        for chi in enumerate_characters(n) {
            let v = chi.value(-1).to_minimal_order();
            let expect = match chi.parity() {
                Parity::Even => 1,
                Parity::Odd => -1,
            };
            assert_eq!(v, CyclotomicNumber::from_int(1, expect));
        }
    }
}

#[test]
fn fourier_identity_for_primitive_characters() {
    for n in 1..=30 {
        for chi in enumerate_characters(n).into_iter().filter(|c| c.is_primitive()) {
            for u in 0..n as i64 {
                assert!(fourier_identity_check(&chi, u), "n = {n}, index {}, u = {u}", chi.index());
            }
        }
    }
}

#[test]
fn gauss_sum_magnitude() {
    for n in 1..=30 {
        for chi in enumerate_characters(n).into_iter().filter(|c| c.is_primitive()) {
            let t = gauss_sum(&chi, 1).value;
            let norm = (&t * &t.conj()).to_minimal_order();
            assert_eq!(norm, CyclotomicNumber::from_int(1, n as i64), "n = {n}");
        }
    }
}

fn class_function(n: u64) -> impl Strategy<Value = ClassFunction> {
    let len = euler_phi(n) as usize;
    (prop::sample::select(vec![1u64, 3, 4]), proptest::collection::vec((-6i64..=6, 0i64..12), len)).prop_map(
        move |(m, vals)| {
            let units = unit_group(n).units().to_vec();
            ClassFunction::from_fn(n, |a| {
                let i = units.iter().position(|&u| u == a).unwrap();
                let (c, k) = vals[i];
                CyclotomicNumber::zeta_pow(m, k).scale(&Rational::from_int(c))
            })
        },
    )
}

fn mul_any(a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
    let m = lcm_u64(a.order(), b.order());
    (&a.lift(m).unwrap() * &b.lift(m).unwrap()).to_minimal_order()
}

fn modulus_and_pair() -> impl Strategy<Value = (u64, ClassFunction, ClassFunction)> {
    (1u64..=12).prop_flat_map(|n| (Just(n), class_function(n), class_function(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn convolution_theorem((n, f, g) in modulus_and_pair()) {
        let conv = f.convolution(&g).unwrap();
        for chi in enumerate_characters(n) {
            let c = ClassFunction::from_character(&chi);
            let lhs = conv.inner_product(&c).unwrap().to_minimal_order();
            let rhs = mul_any(&f.inner_product(&c).unwrap(), &g.inner_product(&c).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn character_expansion_recovers_function((n, f, _g) in modulus_and_pair()) {
        let mut rec = ClassFunction::constant(n, &Rational::zero());
        for chi in enumerate_characters(n) {
            let c = ClassFunction::from_character(&chi);
            rec = rec.add(&c.scale(&f.inner_product(&c).unwrap()).unwrap()).unwrap();
        }
        let diff = rec.add(&f.scale(&CyclotomicNumber::from_int(1, -1)).unwrap()).unwrap();
        prop_assert!(diff.is_zero());
    }
}
