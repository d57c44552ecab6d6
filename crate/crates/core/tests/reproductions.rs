use arith_lfun::characters::{enumerate_characters, unit_group, ClassFunction, DirichletCharacter, Parity};
use arith_lfun::charclasses::{GradedElement, Monomial, Var};
use arith_lfun::exactnum::{CyclotomicNumber, Rational};
use arith_lfun::reproductions::{
    agbf_rhs, agbf_rhs_nonvanishing, bbk_derivation, bost_kuhn_shape, colmez_brute_force, colmez_rhs,
    fourier_inversion_check, kry_derivation, CMTypeData, ColmezReport, HodgeData, OMEGA,
};
use arith_lfun::Error;
use num_complex::Complex64;
use proptest::prelude::*;

fn gap(a: &GradedElement<Complex64>, b: &GradedElement<Complex64>) -> f64 {
    a.sub(b).terms().values().map(|c| c.norm()).fold(0.0, f64::max)
}

fn symbol(id: u32) -> GradedElement<Complex64> {
    GradedElement::var(Var::new(id, 1), &(), 1)
}

#[test]
fn agbf_is_linear_in_the_classes() {
    let (x, y) = (symbol(7), symbol(8));
    let (a, b) = (Complex64::new(2.0, -1.0), Complex64::new(-0.5, 3.0));
    for n in [1u64, 3, 5] {
        for chi in enumerate_characters(n).into_iter().filter(|c| c.same_parity(2)) {
            let with = |c: GradedElement<Complex64>| HodgeData::new(n).with_class(1, 1, 1, c.clone()).with_class(2, 0, 1, c);
            let lhs = agbf_rhs(&with(x.scale(&a).add(&y.scale(&b))), &chi, 2).unwrap();
            let rhs = agbf_rhs(&with(x.clone()), &chi, 2).unwrap().scale(&a).add(&agbf_rhs(&with(y.clone()), &chi, 2).unwrap().scale(&b));
            assert!(gap(&lhs, &rhs) < 1e-12, "n = {n}");
        }
    }
}

#[test]
fn agbf_vanishes_on_parity_mismatch() {
    for n in [3u64, 4, 5, 7] {
        let hd = HodgeData::new(n).with_rank(1, 0, 1, 2).with_rank(0, 1, n as i64 - 1, 2).with_rank(1, 1, 1, 1);
        for chi in enumerate_characters(n) {
            for l in 1..=4u32 {
                if chi.same_parity(l) || (chi.primitive_part().is_trivial() && l == 1) {
                    continue;
                }
                assert!(agbf_rhs(&hd, &chi, l).unwrap().is_zero(), "n = {n}, l = {l}");
                assert!(matches!(agbf_rhs_nonvanishing(&hd, &chi, l), Err(Error::ParityMismatch { .. })));
            }
        }
    }
}

#[test]
fn agbf_rejects_bad_input() {
    let hd = HodgeData::new(4).with_rank(1, 0, 1, 1);
    let chi3 = enumerate_characters(3).pop().unwrap();
    assert!(matches!(agbf_rhs(&hd, &chi3, 1), Err(Error::ModulusMismatch(3, 4))));
    assert!(matches!(agbf_rhs(&hd, &DirichletCharacter::trivial(4), 0), Err(Error::DomainError(_))));
}

#[test]
fn agbf_ignores_p_zero_pieces() {
    let chi = enumerate_characters(4).pop().unwrap();
    let hd = HodgeData::new(4).with_rank(0, 1, 1, 5).with_rank(0, 0, 3, 2);
    assert!(agbf_rhs(&hd, &chi, 1).unwrap().is_zero());
}

#[test]
fn self_duality() {
    assert!(HodgeData::new(5).with_rank(1, 0, 2, 1).with_rank(0, 1, 3, 1).is_self_dual());
    assert!(!HodgeData::new(5).with_rank(1, 0, 2, 1).with_rank(0, 1, 2, 1).is_self_dual());
}

#[test]
fn bost_kuhn_degenerates_with_omega() {
    let r = bost_kuhn_shape(false).unwrap();
    let c = r.shape.coeff(&Monomial::var(OMEGA));
    assert!((c.re + r.bracket.real).abs() < 1e-12, "{c} vs {:?}", r.bracket);
    assert!(gap(&r.shape, &r.alternating_sum.neg()) == 0.0);
    assert!(bost_kuhn_shape(true).unwrap().shape.is_zero());
}

fn all_bit_patterns(f: u64) -> Vec<String> {
    let k = unit_group(f).units().len();
    (0..1u32 << k).map(|m| (0..k).map(|i| if m >> i & 1 == 1 { '1' } else { '0' }).collect()).collect()
}

#[test]
fn colmez_routes_agree_for_all_binary_phi() {
    for f in [3u64, 4, 5, 8] {
        for bits in all_bit_patterns(f) {
            let cm = CMTypeData::from_bits(f, &bits).unwrap();
            let r = ColmezReport::compute(&cm).unwrap();
            assert!(r.route_gap < 1e-12, "f = {f}, {bits}: {r:?}");
            assert!(r.value.imag.abs() < 1e-12, "f = {f}, {bits}: {r:?}");
        }
    }
}

#[test]
fn colmez_cm_type_predicate() {
    // units mod 5 ascending: 1 2 3 4, and -1 pairs 1 with 4, 2 with 3
    for (bits, cm) in [("1100", true), ("1010", true), ("1001", false), ("1111", false), ("0011", true)] {
        assert_eq!(CMTypeData::from_bits(5, bits).unwrap().is_cm_type(), cm, "{bits}");
    }
    assert!(CMTypeData::from_bits(5, "110").is_err());
    assert!(CMTypeData::from_bits(5, "11x0").is_err());
}

#[test]
fn colmez_is_invariant_under_complex_conjugation_of_phi() {
    for f in [5u64, 8] {
        for bits in all_bit_patterns(f) {
            let cm = CMTypeData::from_bits(f, &bits).unwrap();
            let flipped = CMTypeData::new(f, cm.phi.dual()).unwrap();
            let (a, b) = (colmez_rhs(&cm).unwrap(), colmez_brute_force(&flipped).unwrap());
            assert!(a.distance(b) < 1e-12, "f = {f}, {bits}");
        }
    }
}

fn class_function(f: u64) -> impl Strategy<Value = ClassFunction> {
    let len = unit_group(f).units().len();
    proptest::collection::vec((-8i64..=8, 1i64..=4), len).prop_map(move |v| {
        let units = unit_group(f).units().to_vec();
        ClassFunction::from_fn(f, |a| {
            let (p, q) = v[units.iter().position(|&u| u == a).unwrap()];
            CyclotomicNumber::from_rational(1, &Rational::new(p, q))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fourier_inversion_recovers_the_odd_part(f_and_fn in (1u64..=12).prop_flat_map(|f| (Just(f), class_function(f)))) {
        let (f, func) = f_and_fn;
        let r = fourier_inversion_check(&func).unwrap();
        prop_assert!(r.residual_zero);
        let odd = enumerate_characters(f).into_iter().filter(|c| c.parity() == Parity::Odd).count();
        prop_assert_eq!(r.coefficients.len(), odd);
    }
}

#[test]
fn derivations_close_symbolically() {
    let kry = kry_derivation().unwrap();
    assert!(kry.symbolic_ok, "{:?}", kry.steps);
    assert!(kry.steps.iter().all(|s| s.ok));
    let bbk = bbk_derivation().unwrap();
    assert!(bbk.symbolic_ok, "{:?}", bbk.steps);
    assert!(bbk.factorization_residual.unwrap() < 1e-9);
}
