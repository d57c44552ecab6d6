//! Exact special values at non-positive integers.
//!
//! Bernoulli numbers use `B_1 = -1/2`. Riemann zeta values are taken as
//! `zeta(-k) = -B_{k+1}(1)/(k+1)`, which gives `zeta(0) = -1/2`.

use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::characters::{gauss_sum, sum_field, DirichletCharacter};
use crate::exactnum::{binomial, lcm_u64, CyclotomicNumber, QPoly, Rational};
use crate::series::FormalPowerSeries;

fn bernoulli_table() -> &'static RwLock<Vec<Rational>> {
    static TABLE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![Rational::one()]))
}

/// `B_k`, from `sum_{j<=k} C(k+1, j) B_j = 0`.
pub fn bernoulli(k: usize) -> Rational {
    if let Some(b) = bernoulli_table().read().expect("bernoulli table").get(k) {
        return b.clone();
    }
    let mut t = bernoulli_table().write().expect("bernoulli table");
    while t.len() <= k {
        let m = t.len() as u64;
        let s: Rational = (0..m as usize)
            .map(|j| &t[j] * &Rational::from_int(binomial(m + 1, j as u64)))
            .sum();
        let b = -(s / Rational::from_int(m as i64 + 1));
        t.push(b);
    }
    t[k].clone()
}

/// `B_k(x) = sum_j C(k, j) B_j x^(k-j)`.
pub fn bernoulli_poly(k: usize) -> QPoly {
    let mut c = vec![Rational::zero(); k + 1];
    for (j, slot) in (0..=k).zip(c.iter_mut().rev()) {
        *slot = &bernoulli(j) * &Rational::from_int(binomial(k as u64, j as u64));
    }
    QPoly::new(c)
}

/// `zeta(-k)` exactly.
pub fn riemann_zeta_nonpositive(k: usize) -> Rational {
    -(bernoulli_poly(k + 1).eval(&Rational::one()) / Rational::from_int(k as i64 + 1))
}

/// `B_{l,chi} = f^(l-1) sum_{a=1}^{f} chi(a) B_l(a/f)` with `f` the modulus of `chi`.
pub fn generalized_bernoulli(l: u32, chi: &DirichletCharacter) -> CyclotomicNumber {
    let f = chi.modulus();
    let m = chi.value_order();
    let bl = bernoulli_poly(l as usize);
    let scale = Rational::from_int(f as i64).pow(l as i32 - 1);
    let terms: Vec<(i64, Rational)> = (1..=f as i64)
        .filter_map(|a| {
            let k = chi.value_exp(a)?;
            Some((k as i64, &bl.eval(&Rational::new(a, f as i64)) * &scale))
        })
        .collect();
    CyclotomicNumber::from_power_coeffs(m, terms.iter().map(|(k, c)| (*k, c)))
}

/// Exact `L(chi, 1 - l)` for the primitive character `character`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactLValue {
    pub character: DirichletCharacterRef,
    pub l: u32,
    pub value: CyclotomicNumber,
}

/// Serializable handle on a character: modulus and position in enumeration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirichletCharacterRef {
    pub modulus: u64,
    pub index: usize,
}

impl From<&DirichletCharacter> for DirichletCharacterRef {
    fn from(c: &DirichletCharacter) -> Self {
        DirichletCharacterRef { modulus: c.modulus(), index: c.index() }
    }
}

/// `L(chi_prim, 1 - l) = -B_{l, chi_prim} / l`, in the smallest cyclotomic field.
pub fn l_value_nonpositive(chi: &DirichletCharacter, l: u32) -> ExactLValue {
    assert!(l >= 1, "l must be positive");
    let prim = chi.primitive_part();
    let b = generalized_bernoulli(l, &prim);
    let value = b.scale(&Rational::new(-1, l as i64)).to_minimal_order();
    ExactLValue { character: (&prim).into(), l, value }
}

/// `L(chi_prim, 1 - l)` in `Q(mu_big)`.
pub fn l_value_in(chi: &DirichletCharacter, l: u32, big: u64) -> CyclotomicNumber {
    let prim = chi.primitive_part();
    let b = generalized_bernoulli(l, &prim);
    b.scale(&Rational::new(-1, l as i64)).lift(big).expect("value order divides target field")
}

/// The point `zeta_n^u` on the unit circle; `u = 0 mod n` is `z = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootOfUnity {
    pub n: u64,
    pub u: i64,
}

impl RootOfUnity {
    pub fn new(n: u64, u: i64) -> Self {
        assert!(n >= 1, "root of unity order must be positive");
        RootOfUnity { n, u: u.rem_euclid(n as i64) }
    }

    pub fn is_one(self) -> bool {
        self.u == 0
    }

    pub fn conj(self) -> Self {
        RootOfUnity::new(self.n, -self.u)
    }

    pub fn value(self) -> CyclotomicNumber {
        CyclotomicNumber::zeta_pow(self.n, self.u)
    }
}

fn lerch_numerators() -> &'static RwLock<Vec<QPoly>> {
    static TABLE: OnceLock<RwLock<Vec<QPoly>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![QPoly::from_ints(&[0, 1])]))
}

/// `P_k` with `(z d/dz)^k (z/(1-z)) = P_k(z) / (1-z)^(k+1)`.
pub fn lerch_numerator(k: usize) -> QPoly {
    if let Some(p) = lerch_numerators().read().expect("lerch table").get(k) {
        return p.clone();
    }
    let mut t = lerch_numerators().write().expect("lerch table");
    let one_minus_z = QPoly::from_ints(&[1, -1]);
    let z = QPoly::from_ints(&[0, 1]);
    while t.len() <= k {
        let j = t.len() - 1;
        let p = &t[j];
        let next = z.mul(
            &p.derivative()
                .mul(&one_minus_z)
                .add(&p.scale(&Rational::from_int(j as i64 + 1))),
        );
        t.push(next);
    }
    t[k].clone()
}

/// `zeta_L(z, -k)` in `Q(mu_n)`; at `z = 1` this is `zeta(-k)`.
pub fn lerch_nonpositive(z: RootOfUnity, k: usize) -> CyclotomicNumber {
    let n = z.n;
    if z.is_one() {
        return CyclotomicNumber::from_rational(n, &riemann_zeta_nonpositive(k));
    }
    let p = lerch_numerator(k);
    let num = CyclotomicNumber::from_power_coeffs(
        n,
        p.coeffs().iter().enumerate().map(|(j, c)| (j as i64 * z.u, c)),
    );
    let one_minus = &CyclotomicNumber::one(n) - &z.value();
    let den = one_minus.pow(k as i64 + 1).expect("positive power");
    &num / &den
}

/// `log((1 - l e^x)/(1 - l)) + sum_{j>=1} zeta_L(l, 1-j) x^j/j!` to order `order`.
pub fn maincomb_check(n: u64, u: i64, order: usize) -> FormalPowerSeries<CyclotomicNumber> {
    let z = RootOfUnity::new(n, u);
    assert!(!z.is_one(), "maincomb needs lambda != 1");
    let lambda = z.value();
    let one = CyclotomicNumber::one(n);
    let inv = (&one - &lambda).inv().expect("lambda != 1");
    let series = FormalPowerSeries::<CyclotomicNumber>::one(&n, order)
        .sub(&FormalPowerSeries::exp_x(&n, order).scale(&lambda))
        .scale(&inv);
    let lhs = series.log().expect("constant term is 1");
    let mut rhs = vec![CyclotomicNumber::zero(n)];
    let mut fact = Rational::one();
    for j in 1..=order {
        fact = fact.mul_int(j as i64);
        let c = lerch_nonpositive(z, j - 1).scale(&fact.inv().expect("j! > 0"));
        rhs.push(-c);
    }
    lhs.sub(&FormalPowerSeries::from_coeffs(&n, rhs, order))
}

/// Both sides of `sum_u zeta_L(zeta_n^u, -k) = n^(1+k) zeta(-k)`.
pub fn distribution_sides(n: u64, k: usize) -> (CyclotomicNumber, CyclotomicNumber) {
    let mut lhs = CyclotomicNumber::zero(n);
    for u in 0..n as i64 {
        lhs = &lhs + &lerch_nonpositive(RootOfUnity::new(n, u), k);
    }
    let scale = Rational::from_int(n as i64).pow(k as i32 + 1);
    let rhs = CyclotomicNumber::from_rational(n, &(&riemann_zeta_nonpositive(k) * &scale));
    (lhs, rhs)
}

/// Both sides of `sum_s zeta_L(zeta^(u s), 1-l) chi(s) = tau(chi) conj(chi(u)) L(conj chi, 1-l)`
/// for primitive `chi`, in `Q(mu_lcm(n, m))`.
pub fn lerch_fourier_sides(
    chi: &DirichletCharacter,
    u: i64,
    l: u32,
) -> (CyclotomicNumber, CyclotomicNumber) {
    let n = chi.modulus();
    let big = sum_field(chi);
    let mut lhs = CyclotomicNumber::zero(big);
    for &s in chi.group().units() {
        let z = RootOfUnity::new(n, u * s as i64);
        let v = lerch_nonpositive(z, (l - 1) as usize).lift(big).expect("n | big");
        lhs = &lhs + &(&v * &chi.value_in(s as i64, big));
    }
    let conj = chi.conj();
    let tau = gauss_sum(chi, 1).value;
    let lval = l_value_in(&conj, l, lcm_u64(big, conj.value_order()));
    let rhs = &(&tau * &conj.value_in(u, big)) * &lval;
    (lhs, rhs)
}
