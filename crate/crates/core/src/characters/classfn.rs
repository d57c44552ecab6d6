use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{unit_group, DirichletCharacter};
use crate::error::{Error, Result};
use crate::exactnum::{lcm_u64, CyclotomicNumber, Rational};

/// Exact function on `(Z/n)^*` with values in a common `Q(mu_m)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassFunction {
    modulus: u64,
    values: BTreeMap<u64, CyclotomicNumber>,
}

impl ClassFunction {
    /// Tabulate `f` on the units mod `n`; all values must share one order.
    pub fn from_fn(n: u64, f: impl Fn(u64) -> CyclotomicNumber) -> Self {
        let values: BTreeMap<u64, CyclotomicNumber> =
            unit_group(n).units().iter().map(|&a| (a, f(a))).collect();
        let mut orders = values.values().map(CyclotomicNumber::order);
        let first = orders.next().unwrap_or(1);
        assert!(orders.all(|o| o == first), "class function values must share an order");
        ClassFunction { modulus: n, values }
    }

    /// Indicator function of `support` (residues reduced mod `n`).
    pub fn indicator(n: u64, support: &[u64]) -> Self {
        Self::from_fn(n, |a| {
            let hit = support.iter().any(|&s| s % n == a);
            CyclotomicNumber::from_int(1, hit as i64)
        })
    }

    pub fn constant(n: u64, c: &Rational) -> Self {
        Self::from_fn(n, |_| CyclotomicNumber::from_rational(1, c))
    }

    pub fn from_character(chi: &DirichletCharacter) -> Self {
        Self::from_fn(chi.modulus(), |a| chi.value(a as i64))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Cyclotomic order shared by the values.
    pub fn order(&self) -> u64 {
        self.values.values().next().map_or(1, CyclotomicNumber::order)
    }

    pub fn value(&self, a: i64) -> Option<&CyclotomicNumber> {
        self.values.get(&(a.rem_euclid(self.modulus as i64) as u64))
    }

    pub fn values(&self) -> &BTreeMap<u64, CyclotomicNumber> {
        &self.values
    }

    pub fn lift(&self, m: u64) -> Result<Self> {
        let values = self
            .values
            .iter()
            .map(|(&a, v)| Ok((a, v.lift(m)?)))
            .collect::<Result<_>>()?;
        Ok(ClassFunction { modulus: self.modulus, values })
    }

    pub fn map(&self, f: impl Fn(u64, &CyclotomicNumber) -> CyclotomicNumber) -> Self {
        Self::from_fn(self.modulus, |a| f(a, &self.values[&a]))
    }

    /// `tau -> f(tau^-1)`.
    pub fn dual(&self) -> Self {
        let g = unit_group(self.modulus);
        Self::from_fn(self.modulus, |a| self.values[&g.inverse(a)].clone())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let (a, b) = self.common(o)?;
        Ok(a.map(|t, v| v + &b.values[&t]))
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> Result<Self> {
        let m = lcm_u64(self.order(), c.order());
        let a = self.lift(m)?;
        let c = c.lift(m)?;
        Ok(a.map(|_, v| v * &c))
    }

    fn common(&self, o: &Self) -> Result<(Self, Self)> {
        if self.modulus != o.modulus {
            return Err(Error::ModulusMismatch(self.modulus, o.modulus));
        }
        let m = lcm_u64(self.order(), o.order());
        Ok((self.lift(m)?, o.lift(m)?))
    }

    /// `<f, g> = (1/phi(n)) sum_t f(t) conj(g(t))`.
    pub fn inner_product(&self, o: &Self) -> Result<CyclotomicNumber> {
        let (a, b) = self.common(o)?;
        let m = a.order();
        let mut acc = CyclotomicNumber::zero(m);
        for (t, v) in &a.values {
            acc = &acc + &(v * &b.values[t].conj());
        }
        Ok(acc.scale(&Rational::new(1, a.values.len() as i64)))
    }

    /// `(f * g)(s) = (1/phi(n)) sum_t g(t) f(t^-1 s)`.
    pub fn convolution(&self, o: &Self) -> Result<Self> {
        let (a, b) = self.common(o)?;
        let g = unit_group(self.modulus);
        let m = a.order();
        let w = Rational::new(1, a.values.len() as i64);
        Ok(Self::from_fn(self.modulus, |s| {
            let mut acc = CyclotomicNumber::zero(m);
            for (&t, bv) in &b.values {
                let idx = g.mul(g.inverse(t), s);
                acc = &acc + &(bv * &a.values[&idx]);
            }
            acc.scale(&w)
        }))
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(CyclotomicNumber::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::enumerate_characters;

    #[test]
    fn normalization() {
        let one = ClassFunction::constant(4, &Rational::one());
        assert!(one.inner_product(&one).unwrap().is_one());
    }

    #[test]
    fn indicator_against_characters() {
        let phi = ClassFunction::indicator(4, &[1]);
        for chi in enumerate_characters(4) {
            let ip = phi.inner_product(&ClassFunction::from_character(&chi)).unwrap();
            assert_eq!(ip.as_rational(), Some(Rational::new(1, 2)));
        }
    }

    #[test]
    fn convolution_with_delta() {
        let delta = ClassFunction::indicator(5, &[1]);
        let g = ClassFunction::from_fn(5, |a| CyclotomicNumber::from_int(1, a as i64 * a as i64));
        let conv = delta.convolution(&g).unwrap();
        for chi in enumerate_characters(5) {
            let h = ClassFunction::from_character(&chi);
            let lhs = conv.inner_product(&h).unwrap();
            let rhs = &delta.inner_product(&h).unwrap() * &g.inner_product(&h).unwrap();
            assert_eq!(lhs, rhs);
        }
        assert_eq!(
            delta.inner_product(&ClassFunction::indicator(4, &[1])),
            Err(Error::ModulusMismatch(5, 4))
        );
    }
}
