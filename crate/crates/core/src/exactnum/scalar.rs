use std::fmt::Debug;

use num_complex::Complex64;

use super::cyclotomic::CyclotomicNumber;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Coefficient ring for series and graded elements.
///
/// `Ctx` carries whatever is needed to build constants (the cyclotomic order,
/// or nothing).
pub trait Scalar: Clone + PartialEq + Debug + Send + Sync {
    type Ctx: Clone + PartialEq + Debug + Send + Sync;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_rational(q: &Rational, ctx: &Self::Ctx) -> Self;
    fn ctx(&self) -> Self::Ctx;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn is_zero(&self) -> bool;

    fn scale(&self, q: &Rational) -> Self {
        self.mul(&Self::from_rational(q, &self.ctx()))
    }
}

impl Scalar for Rational {
    type Ctx = ();

    fn zero(_: &()) -> Self {
        Rational::zero()
    }
    fn one(_: &()) -> Self {
        Rational::one()
    }
    fn from_rational(q: &Rational, _: &()) -> Self {
        q.clone()
    }
    fn ctx(&self) {}
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        Rational::inv(self)
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn scale(&self, q: &Rational) -> Self {
        self * q
    }
}

impl Scalar for CyclotomicNumber {
    type Ctx = u64;

    fn zero(n: &u64) -> Self {
        CyclotomicNumber::zero(*n)
    }
    fn one(n: &u64) -> Self {
        CyclotomicNumber::one(*n)
    }
    fn from_rational(q: &Rational, n: &u64) -> Self {
        CyclotomicNumber::from_rational(*n, q)
    }
    fn ctx(&self) -> u64 {
        self.order()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        CyclotomicNumber::inv(self)
    }
    fn is_zero(&self) -> bool {
        CyclotomicNumber::is_zero(self)
    }
    fn scale(&self, q: &Rational) -> Self {
        CyclotomicNumber::scale(self, q)
    }
}

impl Scalar for Complex64 {
    type Ctx = ();

    fn zero(_: &()) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one(_: &()) -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_rational(q: &Rational, _: &()) -> Self {
        Complex64::new(q.to_f64(), 0.0)
    }
    fn ctx(&self) {}
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        if *self == Complex64::new(0.0, 0.0) {
            return Err(Error::DivisionByZero);
        }
        Ok(Complex64::new(1.0, 0.0) / self)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}
