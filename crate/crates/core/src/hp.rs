//! Extended-precision real and complex numbers.
//!
//! Thin operator-friendly wrapper around [`astro_float::BigFloat`]. The working
//! precision is process-wide (default 128 bits) and is read at every
//! operation, so values computed at different precisions can be mixed.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::exactnum::ComplexApprox;

pub const DEFAULT_PRECISION_BITS: usize = 128;
const MIN_PRECISION_BITS: usize = 64;
const RM: RoundingMode = RoundingMode::ToEven;

static PRECISION: AtomicUsize = AtomicUsize::new(DEFAULT_PRECISION_BITS);

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

/// Current working precision in bits.
pub fn precision_bits() -> usize {
    PRECISION.load(AtomicOrdering::Relaxed)
}

/// Set the working precision; values below 64 bits are raised to 64.
pub fn set_precision_bits(bits: usize) {
    PRECISION.store(bits.max(MIN_PRECISION_BITS), AtomicOrdering::Relaxed);
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Extended-precision real number.
#[derive(Clone)]
pub struct Real(BigFloat);

impl Real {
    pub fn zero() -> Self {
        Real(BigFloat::from_word(0, precision_bits()))
    }

    pub fn one() -> Self {
        Real(BigFloat::from_word(1, precision_bits()))
    }

    pub fn from_f64(x: f64) -> Self {
        Real(BigFloat::from_f64(x, precision_bits()))
    }

    pub fn from_i64(x: i64) -> Self {
        Real(BigFloat::from_i64(x, precision_bits()))
    }

    pub fn from_bigint(x: &BigInt) -> Self {
        let digits = x.magnitude().to_u64_digits();
        if digits.is_empty() {
            return Real::zero();
        }
        let sign = if x.is_negative() { Sign::Neg } else { Sign::Pos };
        let words: Vec<astro_float::Word> = digits.iter().map(|&d| d as astro_float::Word).collect();
        let e = (words.len() * 64) as astro_float::Exponent;
        let mut v = BigFloat::from_words(&words, sign, e);
        // from_words keeps every input bit; round to the working precision
        let _ = v.set_precision(precision_bits().max(64), RM);
        Real(v)
    }

    pub fn from_ratio(x: &BigRational) -> Self {
        let n = Real::from_bigint(x.numer());
        if x.denom() == &BigInt::from(1) {
            return n;
        }
        n / Real::from_bigint(x.denom())
    }

    pub fn pi() -> Self {
        with_consts(|cc| Real(cc.pi(precision_bits(), RM)))
    }

    pub fn ln(&self) -> Self {
        with_consts(|cc| Real(self.0.ln(precision_bits(), RM, cc)))
    }

    pub fn exp(&self) -> Self {
        with_consts(|cc| Real(self.0.exp(precision_bits(), RM, cc)))
    }

    pub fn sin(&self) -> Self {
        with_consts(|cc| Real(self.0.sin(precision_bits(), RM, cc)))
    }

    pub fn cos(&self) -> Self {
        with_consts(|cc| Real(self.0.cos(precision_bits(), RM, cc)))
    }

    pub fn sqrt(&self) -> Self {
        Real(self.0.sqrt(precision_bits(), RM))
    }

    /// Integer power; negative exponents go through the reciprocal.
    pub fn powi(&self, n: i64) -> Self {
        let p = self.0.powi(n.unsigned_abs() as usize, precision_bits(), RM);
        if n < 0 {
            Real(p.reciprocal(precision_bits(), RM))
        } else {
            Real(p)
        }
    }

    /// `self^e` for positive `self`, via `exp(e ln self)`.
    pub fn powf(&self, e: &Real) -> Self {
        (e * &self.ln()).exp()
    }

    pub fn abs(&self) -> Self {
        Real(self.0.abs())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.0.is_nan() && !self.0.is_inf()
    }

    /// Nearest double (within one ulp).
    pub fn to_f64(&self) -> f64 {
        if self.0.is_nan() {
            return f64::NAN;
        }
        if self.0.is_inf() {
            return if self.0.is_positive() { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        if self.0.is_zero() {
            return 0.0;
        }
        let Some((m, _, s, e, _)) = self.0.as_raw_parts() else {
            return f64::NAN;
        };
        let top = m[m.len() - 1] as f64;
        let next = if m.len() > 1 { m[m.len() - 2] as f64 } else { 0.0 };
        let v = (top + next / 18_446_744_073_709_551_616.0) * 2f64.powi(e as i32 - 64);
        if s.is_negative() {
            -v
        } else {
            v
        }
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.0.cmp(&other.0) == Some(0)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.cmp(&other.0).map(|c| c.cmp(&0))
    }
}

macro_rules! real_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                Real(self.0.$m(&rhs.0, precision_bits(), RM))
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                (&self).$m(rhs)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                self.$m(&rhs)
            }
        }
    };
}

real_binop!(Add, add);
real_binop!(Sub, sub);
real_binop!(Mul, mul);
real_binop!(Div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(self.0.neg())
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(self.0.clone().neg())
    }
}

/// Extended-precision complex number.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn zero() -> Self {
        Complex::new(Real::zero(), Real::zero())
    }

    pub fn from_real(re: Real) -> Self {
        Complex::new(re, Real::zero())
    }

    /// `exp(2 pi i k / m)`, with `k` reduced mod `m` first.
    pub fn unit_root(k: i64, m: u64) -> Self {
        let m = m.max(1);
        let k = k.rem_euclid(m as i64);
        if k == 0 {
            return Complex::from_real(Real::one());
        }
        if 2 * k as u64 == m {
            return Complex::from_real(Real::from_i64(-1));
        }
        let theta = Real::pi() * Real::from_i64(2 * k) / Real::from_i64(m as i64);
        Complex::new(theta.cos(), theta.sin())
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -&self.im)
    }

    pub fn scale(&self, r: &Real) -> Self {
        Complex::new(&self.re * r, &self.im * r)
    }

    pub fn abs(&self) -> Real {
        (&self.re * &self.re + &self.im * &self.im).sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_approx(&self, precision_hint: f64) -> ComplexApprox {
        ComplexApprox::new(self.re.to_f64(), self.im.to_f64(), precision_hint)
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl Add<&Complex> for &Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        Complex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&Complex> for &Complex {
    type Output = Complex;
    fn sub(self, rhs: &Complex) -> Complex {
        Complex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&Complex> for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        Complex::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div<&Complex> for &Complex {
    type Output = Complex;
    fn div(self, rhs: &Complex) -> Complex {
        let d = &rhs.re * &rhs.re + &rhs.im * &rhs.im;
        let num = self * &rhs.conj();
        Complex::new(num.re / &d, num.im / &d)
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-&self.re, -&self.im)
    }
}
