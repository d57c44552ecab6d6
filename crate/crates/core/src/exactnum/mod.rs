//! Exact rational and cyclotomic arithmetic.
//!
//! [`CyclotomicNumber`] lives in `Q(mu_n)` in the reduced power basis modulo
//! `Phi_n`. Elements of different orders never mix implicitly; use
//! [`CyclotomicNumber::lift`] to move into a common field.

mod cyclotomic;
mod poly;
mod rational;
mod scalar;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use cyclotomic::{context, cyc_arith, field_degree, power_sum, CycOp, CycloContext, CyclotomicNumber};
pub use poly::{cyclotomic_polynomial, divisors, euler_phi, factorize, QPoly};
pub use rational::{binomial, factorial, gcd_u64, lcm_u64, Rational};
pub use scalar::Scalar;

/// A floating complex value together with its intended absolute accuracy.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexApprox {
    pub real: f64,
    pub imag: f64,
    pub precision_hint: f64,
}

impl ComplexApprox {
    pub fn new(real: f64, imag: f64, precision_hint: f64) -> Self {
        ComplexApprox { real, imag, precision_hint }
    }

    pub fn from_c64(z: Complex64, precision_hint: f64) -> Self {
        ComplexApprox::new(z.re, z.im, precision_hint)
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.real, self.imag)
    }

    pub fn abs(self) -> f64 {
        self.to_c64().norm()
    }

    pub fn is_finite(self) -> bool {
        self.real.is_finite() && self.imag.is_finite()
    }

    /// `|self - other|`.
    pub fn distance(self, other: ComplexApprox) -> f64 {
        (self.to_c64() - other.to_c64()).norm()
    }
}
