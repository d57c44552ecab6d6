use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{cyclotomic_polynomial, divisors, euler_phi};
use super::rational::{gcd_u64, Rational};
use super::ComplexApprox;
use crate::error::{Error, Result};
use crate::hp;

/// Shared per-order data: `Phi_n` and the basis coordinates of every `zeta^j`.
pub struct CycloContext {
    n: u64,
    phi: usize,
    rows: Vec<Vec<i64>>,
    roots: Mutex<Option<(usize, Arc<Vec<hp::Complex>>)>>,
}

impl CycloContext {
    fn build(n: u64) -> Self {
        let poly = cyclotomic_polynomial(n);
        let phi = poly.len() - 1;
        let mut rows = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..n {
            rows.push(cur.clone());
            // multiply by x and reduce with the monic Phi_n
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..phi {
                    cur[i] -= top * poly[i];
                }
            }
        }
        CycloContext { n, phi, rows, roots: Mutex::new(None) }
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    /// Basis coordinates of `zeta_n^j`.
    pub fn power_row(&self, j: i64) -> &[i64] {
        &self.rows[j.rem_euclid(self.n as i64) as usize]
    }

    /// `exp(2 pi i j / n)` for `j` in `0..n` at the current working precision.
    fn unit_roots(&self) -> Arc<Vec<hp::Complex>> {
        let prec = hp::precision_bits();
        let mut guard = self.roots.lock().expect("root cache");
        if let Some((p, r)) = guard.as_ref() {
            if *p == prec {
                return r.clone();
            }
        }
        let r: Arc<Vec<hp::Complex>> =
            Arc::new((0..self.n).map(|j| hp::Complex::unit_root(j as i64, self.n)).collect());
        *guard = Some((prec, r.clone()));
        r
    }
}

impl fmt::Debug for CycloContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloContext(n={})", self.n)
    }
}

/// Shared context for `Q(mu_n)`; built once per order.
pub fn context(n: u64) -> Arc<CycloContext> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycloContext>>>> = OnceLock::new();
    assert!(n >= 1, "cyclotomic order must be positive");
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().expect("context cache").get(&n) {
        return c.clone();
    }
    let ctx = Arc::new(CycloContext::build(n));
    cache.lock().expect("context cache").entry(n).or_insert(ctx).clone()
}

/// Exact element of `Q(mu_n)` in the power basis `1, zeta, ..., zeta^(phi(n)-1)`.
///
/// Stored as integer numerators over one positive common denominator, in
/// lowest terms, so equality is structural.
#[derive(Clone)]
pub struct CyclotomicNumber {
    ctx: Arc<CycloContext>,
    num: Vec<BigInt>,
    den: BigInt,
}

/// Field operation selector for [`cyc_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked field arithmetic on two elements of the same cyclotomic field.
pub fn cyc_arith(a: &CyclotomicNumber, b: &CyclotomicNumber, op: CycOp) -> Result<CyclotomicNumber> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch(a.order(), b.order()));
    }
    Ok(match op {
        CycOp::Add => a.add_same(b),
        CycOp::Sub => a.add_same(&b.neg_ref()),
        CycOp::Mul => a.mul_same(b),
        CycOp::Div => a.mul_same(&b.inv()?),
    })
}

impl CyclotomicNumber {
    fn from_parts(ctx: Arc<CycloContext>, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut x = CyclotomicNumber { ctx, num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    /// Build from basis coordinates; `coeffs.len()` must equal `phi(n)`.
    pub fn new(n: u64, coeffs: Vec<Rational>) -> Result<Self> {
        let ctx = context(n);
        if coeffs.len() != ctx.phi {
            return Err(Error::DomainError(format!(
                "Q(mu_{n}) needs {} coefficients, got {}",
                ctx.phi,
                coeffs.len()
            )));
        }
        Ok(Self::from_rational_coords(ctx, &coeffs))
    }

    fn from_rational_coords(ctx: Arc<CycloContext>, coeffs: &[Rational]) -> Self {
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Self::from_parts(ctx, num, den)
    }

    pub fn zero(n: u64) -> Self {
        let ctx = context(n);
        let phi = ctx.phi;
        CyclotomicNumber { ctx, num: vec![BigInt::zero(); phi], den: BigInt::one() }
    }

    pub fn one(n: u64) -> Self {
        Self::from_rational(n, &Rational::one())
    }

    pub fn from_rational(n: u64, q: &Rational) -> Self {
        let ctx = context(n);
        let mut num = vec![BigInt::zero(); ctx.phi];
        num[0] = q.numer().clone();
        CyclotomicNumber { ctx, num, den: q.denom().clone() }
    }

    pub fn from_int(n: u64, v: i64) -> Self {
        Self::from_rational(n, &Rational::from_int(v))
    }

    /// `zeta_n^k` for any integer `k`.
    pub fn zeta_pow(n: u64, k: i64) -> Self {
        let ctx = context(n);
        let num = ctx.power_row(k).iter().map(|&v| BigInt::from(v)).collect();
        CyclotomicNumber { ctx, num, den: BigInt::one() }
    }

    /// `sum_k c_k zeta_n^k` for arbitrary integer exponents.
    pub fn from_power_coeffs<'a>(n: u64, terms: impl IntoIterator<Item = (i64, &'a Rational)>) -> Self {
        let ctx = context(n);
        let mut acc = vec![Rational::zero(); ctx.phi];
        for (k, c) in terms {
            if c.is_zero() {
                continue;
            }
            for (slot, &r) in acc.iter_mut().zip(ctx.power_row(k)) {
                if r != 0 {
                    *slot += &c.mul_int(r);
                }
            }
        }
        Self::from_rational_coords(ctx, &acc)
    }

    pub fn order(&self) -> u64 {
        self.ctx.n
    }

    pub fn context(&self) -> &Arc<CycloContext> {
        &self.ctx
    }

    /// Basis coordinates as rationals.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num.iter().map(|c| Rational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        Rational::new(self.num[i].clone(), self.den.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(self.coeff(0))
        } else {
            None
        }
    }

    fn add_same(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        if self.den == o.den {
            let num = self.num.iter().zip(&o.num).map(|(a, b)| a + b).collect();
            return Self::from_parts(self.ctx.clone(), num, self.den.clone());
        }
        let num = self
            .num
            .iter()
            .zip(&o.num)
            .map(|(a, b)| a * &o.den + b * &self.den)
            .collect();
        Self::from_parts(self.ctx.clone(), num, &self.den * &o.den)
    }

    fn mul_same(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.order());
        }
        let phi = self.ctx.phi;
        let mut conv = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.num.iter().enumerate() {
                if !b.is_zero() {
                    conv[i + j] += a * b;
                }
            }
        }
        let mut num: Vec<BigInt> = conv.drain(..phi).collect();
        for (k, c) in conv.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, &r) in num.iter_mut().zip(self.ctx.power_row((k + phi) as i64)) {
                if r != 0 {
                    *slot += &c * r;
                }
            }
        }
        Self::from_parts(self.ctx.clone(), num, &self.den * &o.den)
    }

    fn neg_ref(&self) -> Self {
        CyclotomicNumber {
            ctx: self.ctx.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        Self::from_parts(self.ctx.clone(), num, &self.den * q.denom())
    }

    pub fn mul_int(&self, k: i64) -> Self {
        self.scale(&Rational::from_int(k))
    }

    /// Multiplicative inverse: solves `self * x = 1` by fraction-free
    /// elimination on the integer multiplication matrix.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(self.order(), &q.inv()?));
        }
        let phi = self.ctx.phi;
        // column j holds num * zeta^j, the last column is the target 1
        let mut m = vec![vec![BigInt::zero(); phi + 1]; phi];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..phi {
                for (i, &r) in self.ctx.power_row((j + k) as i64).iter().enumerate() {
                    if r != 0 {
                        m[i][j] += c * r;
                    }
                }
            }
        }
        m[0][phi] = BigInt::one();
        let mut prev = BigInt::one();
        for col in 0..phi {
            let p = (col..phi)
                .find(|&r| !m[r][col].is_zero())
                .ok_or_else(|| Error::NonInvertible("singular multiplication matrix".into()))?;
            m.swap(col, p);
            let (top, rest) = m.split_at_mut(col + 1);
            let pivot = &top[col];
            for row in rest.iter_mut() {
                for c in col + 1..=phi {
                    row[c] = (&row[c] * &pivot[col] - &row[col] * &pivot[c]) / &prev;
                }
                row[col] = BigInt::zero();
            }
            prev = m[col][col].clone();
        }
        let mut x = vec![Rational::zero(); phi];
        for i in (0..phi).rev() {
            let mut acc = Rational::from_int(m[i][phi].clone());
            for j in i + 1..phi {
                acc -= &(&x[j] * &Rational::from_int(m[i][j].clone()));
            }
            x[i] = acc / Rational::from_int(m[i][i].clone());
        }
        let den = Rational::from_int(self.den.clone());
        let coords: Vec<Rational> = x.iter().map(|c| c * &den).collect();
        Ok(Self::from_rational_coords(self.ctx.clone(), &coords))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(self.order());
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_same(&b);
            }
            b = b.mul_same(&b);
            k >>= 1;
        }
        Ok(acc)
    }

    fn map_powers(&self, target: &Arc<CycloContext>, f: impl Fn(usize) -> i64) -> Self {
        let mut num = vec![BigInt::zero(); target.phi];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, &r) in num.iter_mut().zip(target.power_row(f(j))) {
                if r != 0 {
                    *slot += c * r;
                }
            }
        }
        Self::from_parts(target.clone(), num, self.den.clone())
    }

    /// The automorphism `zeta_n -> zeta_n^s`.
    pub fn galois(&self, s: i64) -> Result<Self> {
        let n = self.order();
        if gcd_u64(s.unsigned_abs() % n, n) != 1 && n > 1 {
            return Err(Error::NotCoprime(s, n));
        }
        let ctx = self.ctx.clone();
        Ok(self.map_powers(&ctx, |j| s * j as i64))
    }

    /// Complex conjugation, i.e. `galois(-1)`.
    pub fn conj(&self) -> Self {
        let ctx = self.ctx.clone();
        self.map_powers(&ctx, |j| -(j as i64))
    }

    /// The same element viewed in `Q(mu_m)`; requires `n | m`.
    pub fn lift(&self, m: u64) -> Result<Self> {
        let n = self.order();
        if m == n {
            return Ok(self.clone());
        }
        if m == 0 || m % n != 0 {
            return Err(Error::OrderMismatch(n, m));
        }
        let step = (m / n) as i64;
        Ok(self.map_powers(&context(m), |j| j as i64 * step))
    }

    /// Re-express in the smallest `Q(mu_d)`, `d | n`, containing the element.
    pub fn to_minimal_order(&self) -> Self {
        let n = self.order();
        for d in divisors(n) {
            if d == n {
                break;
            }
            if let Some(x) = self.restrict(d) {
                return x;
            }
        }
        self.clone()
    }

    /// Solve `lift(x) = self` for `x` in `Q(mu_d)`.
    fn restrict(&self, d: u64) -> Option<Self> {
        let n = self.order();
        let sub = context(d);
        let step = (n / d) as i64;
        let rows = self.ctx.phi;
        let cols = sub.phi;
        // augmented system M x = a, column j is lift(zeta_d^j)
        let mut m: Vec<Vec<Rational>> = (0..rows)
            .map(|i| {
                let mut r: Vec<Rational> = (0..cols)
                    .map(|j| Rational::from_int(self.ctx.power_row(j as i64 * step)[i]))
                    .collect();
                r.push(self.coeff(i));
                r
            })
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            let inv = m[row][col].inv().ok()?;
            for v in m[row].iter_mut() {
                *v = &*v * &inv;
            }
            for r in 0..rows {
                if r != row && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in col..=cols {
                        let t = &f * &m[row][c];
                        m[r][c] -= &t;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        if m[row..].iter().any(|r| !r[cols].is_zero()) {
            return None;
        }
        let mut x = vec![Rational::zero(); cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = m[r][cols].clone();
        }
        Some(Self::from_rational_coords(sub, &x))
    }

    /// High-precision value of the image under `zeta_n -> exp(2 pi i k / n)`.
    pub fn embed_hp(&self, k: i64) -> Result<hp::Complex> {
        let n = self.order();
        if n > 1 && gcd_u64(k.unsigned_abs() % n, n) != 1 {
            return Err(Error::NotCoprime(k, n));
        }
        let roots = self.ctx.unit_roots();
        let mut acc = hp::Complex::zero();
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let idx = (k * j as i64).rem_euclid(n as i64) as usize;
            acc = &acc + &roots[idx].scale(&hp::Real::from_bigint(c));
        }
        let d = hp::Real::from_bigint(&self.den);
        Ok(hp::Complex::new(acc.re / &d, acc.im / &d))
    }

    /// Numeric image under `zeta_n -> exp(2 pi i k / n)`.
    pub fn embed(&self, k: i64) -> Result<ComplexApprox> {
        Ok(self.embed_hp(k)?.to_approx(1e-15))
    }

    /// Image under the default embedding as a double-precision complex.
    pub fn to_c64(&self) -> num_complex::Complex64 {
        self.embed_hp(1).expect("k = 1 is always coprime").to_c64()
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.den == other.den && self.num == other.num
    }
}

impl Eq for CyclotomicNumber {}

impl Hash for CyclotomicNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order().hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let n = self.order();
        let mut first = true;
        for (j, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z{n}")?,
                _ => write!(f, "({c})z{n}^{j}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycloJson {
    order: u64,
    coeffs: Vec<Rational>,
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloJson { order: self.order(), coeffs: self.coeffs() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclotomicNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = CycloJson::deserialize(d)?;
        if j.order == 0 {
            return Err(serde::de::Error::custom("order must be positive"));
        }
        CyclotomicNumber::new(j.order, j.coeffs).map_err(serde::de::Error::custom)
    }
}

fn same_order(a: &CyclotomicNumber, b: &CyclotomicNumber) {
    assert_eq!(
        a.order(),
        b.order(),
        "cyclotomic order mismatch; lift both operands first"
    );
}

impl Add<&CyclotomicNumber> for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        same_order(self, rhs);
        self.add_same(rhs)
    }
}

impl Sub<&CyclotomicNumber> for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        same_order(self, rhs);
        self.add_same(&rhs.neg_ref())
    }
}

impl Mul<&CyclotomicNumber> for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        same_order(self, rhs);
        self.mul_same(rhs)
    }
}

impl Div<&CyclotomicNumber> for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn div(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        same_order(self, rhs);
        self.mul_same(&rhs.inv().expect("division by zero cyclotomic"))
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        self.neg_ref()
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        self.neg_ref()
    }
}

/// `sum_u zeta_n^u` over any exponent list, exactly.
pub fn power_sum(n: u64, exps: impl IntoIterator<Item = i64>) -> CyclotomicNumber {
    let one = Rational::one();
    let v: Vec<i64> = exps.into_iter().collect();
    CyclotomicNumber::from_power_coeffs(n, v.iter().map(|&k| (k, &one)))
}

/// `phi(n)`, the degree of `Q(mu_n)`.
pub fn field_degree(n: u64) -> usize {
    euler_phi(n) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let i = CyclotomicNumber::zeta_pow(4, 1);
        assert_eq!(&i * &i, CyclotomicNumber::from_int(4, -1));
        assert_eq!((&i * &i).coeffs(), vec![q(-1, 1), q(0, 1)]);
    }

    #[test]
    fn conjugate_pair_in_q_mu3() {
        let one = CyclotomicNumber::one(3);
        let a = &one + &CyclotomicNumber::zeta_pow(3, 1);
        let b = &one + &CyclotomicNumber::zeta_pow(3, 2);
        assert!((&a * &b).is_one());
    }

    #[test]
    fn division_by_one_minus_i() {
        let one = CyclotomicNumber::one(4);
        let i = CyclotomicNumber::zeta_pow(4, 1);
        let got = cyc_arith(&one, &(&one - &i), CycOp::Div).unwrap();
        assert_eq!(got, (&one + &i).scale(&q(1, 2)));
        assert_eq!(
            cyc_arith(&one, &CyclotomicNumber::zero(4), CycOp::Div),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            cyc_arith(&one, &CyclotomicNumber::one(3), CycOp::Add),
            Err(Error::OrderMismatch(4, 3))
        );
    }

    #[test]
    fn galois_on_zeta4() {
        let i = CyclotomicNumber::zeta_pow(4, 1);
        assert_eq!(i.galois(1).unwrap(), i);
        assert_eq!(i.galois(3).unwrap(), -&i);
        assert_eq!(i.galois(2), Err(Error::NotCoprime(2, 4)));
    }

    #[test]
    fn embeddings() {
        let i = CyclotomicNumber::zeta_pow(4, 1).embed(1).unwrap();
        assert!(i.real.abs() < 1e-15 && (i.imag - 1.0).abs() < 1e-15);
        let x = power_sum(8, [0, 1, 7]).embed(1).unwrap();
        assert!((x.real - (1.0 + 2f64.sqrt())).abs() < 1e-14 && x.imag.abs() < 1e-15);
        let z = CyclotomicNumber::zero(9).embed(2).unwrap();
        assert_eq!((z.real, z.imag), (0.0, 0.0));
        assert!(CyclotomicNumber::one(6).embed(3).is_err());
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for n in 2..=24 {
            assert!(power_sum(n, 0..n as i64).is_zero(), "n={n}");
        }
        assert!(power_sum(1, [0]).is_one());
    }

    #[test]
    fn lift_and_restrict() {
        let i = CyclotomicNumber::zeta_pow(4, 1);
        let l = i.lift(12).unwrap();
        assert_eq!(l, CyclotomicNumber::zeta_pow(12, 3));
        assert_eq!(l.to_minimal_order(), i);
        let half = CyclotomicNumber::from_rational(2, &q(1, 2));
        assert_eq!(half.to_minimal_order().order(), 1);
        assert!(i.lift(6).is_err());
        // sqrt(-3) = zeta_3 - zeta_3^2 lives in Q(mu_3) inside Q(mu_12)
        let s = &CyclotomicNumber::zeta_pow(12, 4) - &CyclotomicNumber::zeta_pow(12, 8);
        assert_eq!(s.to_minimal_order().order(), 3);
    }

    #[test]
    fn json_shape() {
        let x = &CyclotomicNumber::from_rational(4, &q(1, 2)) + &CyclotomicNumber::zeta_pow(4, 1);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"order":4,"coeffs":["1/2","1"]}"#);
        let back: CyclotomicNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<CyclotomicNumber>(r#"{"order":4,"coeffs":["1"]}"#).is_err());
    }

    #[test]
    fn negative_powers() {
        let z = CyclotomicNumber::zeta_pow(7, 1);
        assert_eq!(z.pow(-1).unwrap(), CyclotomicNumber::zeta_pow(7, 6));
        assert_eq!(z.pow(7).unwrap(), CyclotomicNumber::one(7));
    }
}
