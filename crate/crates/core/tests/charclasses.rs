use arith_lfun::charclasses::{
    arakelov_mul, borel_serre_residual, c_top, c_total, ch, ch_equivariant, equivariant_gauss_bonnet_residual,
    forget, grr_curve, kappa_residual, lambda_minus1, lambda_op, td, woods_hole_check, ArakelovElement,
    FormalBundle, GradedElement, Monomial, Root, Var,
};
use arith_lfun::exactnum::{binomial, CyclotomicNumber, Rational};
use arith_lfun::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const D: usize = 6;
const BASE: [Var; 3] = [Var::new(0, 1), Var::new(1, 1), Var::new(2, 1)];

fn bundle(seed: u64, n: u64, rank: usize) -> FormalBundle {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<u64> = (0..rank as u64).map(|i| (seed >> (3 * i)) % n).collect();
    FormalBundle::random(&mut rng, n, &BASE, &weights)
}

fn graded(terms: &[(u32, u32, i64, i64)], trunc: usize) -> GradedElement<Rational> {
    terms.iter().fold(GradedElement::zero(&(), trunc), |acc, &(a, b, p, q)| {
        let m = Monomial::from_powers(vec![(BASE[0], a), (BASE[1], b)]);
        acc.add(&GradedElement::monomial(m, Rational::new(p, q), trunc))
    })
}

fn terms() -> impl Strategy<Value = Vec<(u32, u32, i64, i64)>> {
    proptest::collection::vec((0u32..4, 0u32..4, -9i64..=9, 1i64..=5), 0..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn chern_character_is_a_ring_map(seed in any::<u64>(), r1 in 0usize..=3, r2 in 0usize..=3) {
        let e = bundle(seed, 1, r1);
        let f = bundle(seed.rotate_left(17), 1, r2);
        prop_assert_eq!(ch(&e.direct_sum(&f), D), ch(&e, D).add(&ch(&f, D)));
        prop_assert_eq!(ch(&e.tensor(&f), D), ch(&e, D).mul(&ch(&f, D)));
    }

    #[test]
    fn multiplicative_classes(seed in any::<u64>(), r1 in 0usize..=3, r2 in 0usize..=3) {
        let e = bundle(seed, 1, r1);
        let f = bundle(seed ^ 0x9e37_79b9, 1, r2);
        let s = e.direct_sum(&f);
        prop_assert_eq!(td(&s, D), td(&e, D).mul(&td(&f, D)));
        prop_assert_eq!(c_total(&s, D), c_total(&e, D).mul(&c_total(&f, D)));
        prop_assert_eq!(c_top(&s, D), c_top(&e, D).mul(&c_top(&f, D)));
    }

    #[test]
    fn lambda_minus_one_is_multiplicative(seed in any::<u64>(), r1 in 0usize..=2, r2 in 0usize..=2) {
        let e = bundle(seed, 1, r1);
        let f = bundle(seed.wrapping_mul(31), 1, r2);
        let lhs = lambda_minus1(&e.direct_sum(&f)).ch(D);
        prop_assert_eq!(lhs, lambda_minus1(&e).ch(D).mul(&lambda_minus1(&f).ch(D)));
    }

    #[test]
    fn lambda_ranks(seed in any::<u64>(), r in 0usize..=4) {
        let e = bundle(seed, 1, r);
        for k in 0..=r + 1 {
            let rank = ch(&lambda_op(&e, k), D).degree0();
            prop_assert_eq!(rank, Rational::from_int(binomial(r as u64, k as u64)));
        }
    }

    #[test]
    fn dual_flips_odd_degrees(seed in any::<u64>(), r in 0usize..=3) {
        let e = bundle(seed, 1, r);
        let (a, b) = (ch(&e, D), ch(&e.dual(), D));
        for d in 0..=D {
            let sign = if d % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(b.homogeneous(d), a.homogeneous(d).scale_q(&Rational::from_int(sign)));
        }
    }

    #[test]
    fn equivariant_character_is_a_ring_map(seed in any::<u64>(), n in 2u64..=6, r1 in 1usize..=2, r2 in 1usize..=2) {
        let e = bundle(seed, n, r1);
        let f = bundle(seed.rotate_right(11), n, r2);
        let k = 1;
        let (ce, cf) = (ch_equivariant(&e, k, D).unwrap(), ch_equivariant(&f, k, D).unwrap());
        prop_assert_eq!(ch_equivariant(&e.direct_sum(&f), k, D).unwrap(), ce.add(&cf));
        prop_assert_eq!(ch_equivariant(&e.tensor(&f), k, D).unwrap(), ce.mul(&cf));
    }

    #[test]
    fn borel_serre_on_random_bundles(seed in any::<u64>(), r in 0usize..=4) {
        prop_assert!(borel_serre_residual(&bundle(seed, 1, r), D).is_zero());
    }

    #[test]
    fn arakelov_square_zero_and_forget(x in terms(), eta in terms(), y in terms(), mu in terms()) {
        let a = ArakelovElement { geometric: graded(&x, D), analytic: graded(&eta, D - 1) };
        let b = ArakelovElement { geometric: graded(&y, D), analytic: graded(&mu, D - 1) };
        let pure = ArakelovElement::from_analytic(graded(&eta, D - 1));
        prop_assert!(arakelov_mul(&pure, &pure).is_zero());
        prop_assert!(arakelov_mul(&pure, &ArakelovElement::from_analytic(graded(&mu, D - 1))).is_zero());
        prop_assert_eq!(forget(&arakelov_mul(&a, &b)), forget(&a).mul(&forget(&b)));
        prop_assert_eq!(arakelov_mul(&a, &b), arakelov_mul(&b, &a));
        let c = ArakelovElement::from_geometric(graded(&y, D));
        let lhs = arakelov_mul(&arakelov_mul(&a, &b), &c);
        prop_assert_eq!(lhs, arakelov_mul(&a, &arakelov_mul(&b, &c)));
    }

    #[test]
    fn woods_hole_on_random_matrices(seed in any::<u64>()) {
        prop_assert!(woods_hole_check(&random_matrix(seed)));
    }
}

fn random_matrix(seed: u64) -> Vec<Vec<CyclotomicNumber>> {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = rng.gen_range(1..=3);
    (0..size)
        .map(|_| {
            (0..size)
                .map(|_| CyclotomicNumber::zeta_pow(4, rng.gen_range(0..4)).scale(&Rational::from_int(rng.gen_range(-3i64..=3))))
                .collect()
        })
        .collect()
}

#[test]
fn line_bundle_classes() {
    let t = Var::new(0, 1);
    let l = FormalBundle::from_symbols(1, &[(t, 0)]);
    let x = GradedElement::<Rational>::var(t, &(), 3);
    let ch_expect = GradedElement::one(&(), 3)
        .add(&x)
        .add(&x.pow(2).scale_q(&Rational::new(1, 2)))
        .add(&x.pow(3).scale_q(&Rational::new(1, 6)));
    assert_eq!(ch(&l, 3), ch_expect);
    let x2 = x.with_truncation(2);
    let td_expect = GradedElement::one(&(), 2)
        .add(&x2.scale_q(&Rational::new(1, 2)))
        .add(&x2.pow(2).scale_q(&Rational::new(1, 12)));
    assert_eq!(td(&l, 2), td_expect);
    assert_eq!(c_top(&l, 3), x);
}

#[test]
fn empty_bundle_classes() {
    let e = FormalBundle::zero(1);
    assert_eq!(c_top(&e, 4), GradedElement::one(&(), 4));
    assert_eq!(td(&e, 4), GradedElement::one(&(), 4));
    assert!(ch(&e, 4).is_zero());
    assert!(lambda_op(&FormalBundle::from_symbols(1, &[(Var::new(0, 1), 0)]), 2).roots.is_empty());
}

#[test]
fn equivariant_degree_zero_sums_roots_of_unity() {
    let e = FormalBundle::new(4, vec![Root::trivial(1), Root::trivial(3)]);
    assert!(ch_equivariant(&e, 1, 3).unwrap().is_zero());
    let f = FormalBundle::new(4, vec![Root::trivial(1), Root::trivial(1), Root::trivial(2)]);
    let d0 = ch_equivariant(&f, 1, 0).unwrap().degree0();
    let expect = &CyclotomicNumber::zeta_pow(4, 1).mul_int(2) + &CyclotomicNumber::from_int(4, -1);
    assert_eq!(d0, expect);
    assert!(matches!(ch_equivariant(&f, 2, 0), Err(Error::NotCoprime(2, 4))));
}

#[test]
fn gauss_bonnet_examples() {
    let z = FormalBundle::from_symbols(3, &[(Var::new(0, 1), 0), (Var::new(1, 1), 0)]);
    let normal = FormalBundle::from_symbols(3, &[(Var::new(2, 1), 1), (Var::new(3, 1), 2)]);
    for k in [1, 2] {
        assert!(equivariant_gauss_bonnet_residual(&normal, &z, k, 5).unwrap().is_zero());
    }
    assert!(equivariant_gauss_bonnet_residual(&FormalBundle::zero(3), &z, 1, 5).unwrap().is_zero());
    let bad = FormalBundle::from_symbols(3, &[(Var::new(2, 1), 0)]);
    assert!(matches!(equivariant_gauss_bonnet_residual(&bad, &z, 1, 5), Err(Error::NonInvertible(_))));
    assert!(matches!(equivariant_gauss_bonnet_residual(&z, &normal, 1, 5), Err(Error::NonInvertible(_)) | Err(Error::DomainError(_))));
    assert!(matches!(equivariant_gauss_bonnet_residual(&normal, &z, 3, 5), Err(Error::NotCoprime(3, 3))));
}

#[test]
fn kappa_examples() {
    let e = FormalBundle::from_symbols(5, &[(Var::new(0, 1), 0), (Var::new(1, 1), 2), (Var::new(2, 1), 3)]);
    for l in 0..=3 {
        for k in 1..=4 {
            assert!(kappa_residual(&e, l, k).unwrap().is_zero(), "l = {l}, k = {k}");
        }
    }
}

#[test]
fn riemann_roch_on_curves() {
    for g in 0..=5 {
        for d in -4..=8 {
            assert_eq!(grr_curve(g, d), d + 1 - g, "g = {g}, d = {d}");
        }
    }
}
