//! Dirichlet characters, Gauss sums and finite Fourier analysis on `(Z/n)^*`.

mod classfn;
mod group;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::exactnum::{divisors, gcd_u64, lcm_u64, power_sum, CyclotomicNumber};

pub use classfn::ClassFunction;
pub use group::{unit_group, UnitGroup};

/// A character of `(Z/n)^*`, given by `chi(g_i) = exp(2 pi i e_i / ord_i)`.
#[derive(Clone)]
pub struct DirichletCharacter {
    group: Arc<UnitGroup>,
    exponents: Vec<u64>,
    value_order: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.exponents == other.exponents
    }
}

impl Eq for DirichletCharacter {}

impl PartialOrd for DirichletCharacter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DirichletCharacter {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.modulus(), &self.exponents).cmp(&(other.modulus(), &other.exponents))
    }
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi(mod {}; {:?})", self.modulus(), self.exponents)
    }
}

/// All `phi(n)` characters mod `n`, lexicographic in the exponents, trivial first.
pub fn enumerate_characters(n: u64) -> Vec<DirichletCharacter> {
    let g = unit_group(n);
    let mut out = Vec::with_capacity(g.order() as usize);
    let mut exps = vec![0u64; g.orders().len()];
    loop {
        out.push(DirichletCharacter::from_exponents(g.clone(), exps.clone()));
        // last generator varies fastest
        let mut i = exps.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            exps[i] += 1;
            if exps[i] < g.orders()[i] {
                break;
            }
            exps[i] = 0;
        }
    }
}

/// The character at `index` in [`enumerate_characters`] order.
pub fn character(n: u64, index: usize) -> Option<DirichletCharacter> {
    enumerate_characters(n).into_iter().nth(index)
}

impl DirichletCharacter {
    /// Panics if an exponent is out of range.
    pub fn from_exponents(group: Arc<UnitGroup>, exponents: Vec<u64>) -> Self {
        assert_eq!(exponents.len(), group.orders().len(), "one exponent per generator");
        let mut m = 1;
        for (&e, &o) in exponents.iter().zip(group.orders()) {
            assert!(e < o, "exponent {e} out of range for a generator of order {o}");
            m = lcm_u64(m, o / gcd_u64(e, o));
        }
        DirichletCharacter { group, exponents, value_order: m }
    }

    pub fn trivial(n: u64) -> Self {
        let g = unit_group(n);
        let k = g.orders().len();
        Self::from_exponents(g, vec![0; k])
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus()
    }

    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Smallest `m` with every value in `mu_m` or zero.
    pub fn value_order(&self) -> u64 {
        self.value_order
    }

    /// Position in [`enumerate_characters`] order.
    pub fn index(&self) -> usize {
        let mut idx = 0u64;
        for (&e, &o) in self.exponents.iter().zip(self.group.orders()) {
            idx = idx * o + e;
        }
        idx as usize
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// `chi(a) = zeta_m^k` with `m = value_order`; `None` off the units.
    pub fn value_exp(&self, a: i64) -> Option<u64> {
        let d = self.group.dlog(a)?;
        let m = self.value_order;
        let mut k = 0u64;
        for ((&e, &o), &x) in self.exponents.iter().zip(self.group.orders()).zip(d) {
            let g = gcd_u64(e, o);
            let (num, den) = (e / g, o / g);
            k = (k + num * x % den * (m / den)) % m;
        }
        Some(k)
    }

    /// `chi(a)` in `Q(mu_m)`, zero when `gcd(a, n) > 1`.
    pub fn value(&self, a: i64) -> CyclotomicNumber {
        self.value_in(a, self.value_order)
    }

    /// `chi(a)` in `Q(mu_big)`; `value_order` must divide `big`.
    pub fn value_in(&self, a: i64, big: u64) -> CyclotomicNumber {
        assert_eq!(big % self.value_order, 0, "target field too small for chi");
        match self.value_exp(a) {
            None => CyclotomicNumber::zero(big),
            Some(k) => CyclotomicNumber::zeta_pow(big, (k * (big / self.value_order)) as i64),
        }
    }

    /// Exponent of `chi(a)` as a power of `zeta_big`.
    pub fn value_exp_in(&self, a: i64, big: u64) -> Option<u64> {
        self.value_exp(a).map(|k| k * (big / self.value_order))
    }

    pub fn conj(&self) -> Self {
        let exps = self
            .exponents
            .iter()
            .zip(self.group.orders())
            .map(|(&e, &o)| (o - e) % o)
            .collect();
        Self::from_exponents(self.group.clone(), exps)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.modulus(), other.modulus(), "characters of different moduli");
        let exps = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .zip(self.group.orders())
            .map(|((&a, &b), &o)| (a + b) % o)
            .collect();
        Self::from_exponents(self.group.clone(), exps)
    }

    pub fn parity(&self) -> Parity {
        match self.value_exp(-1) {
            Some(0) | None => Parity::Even,
            Some(_) => Parity::Odd,
        }
    }

    /// Whether `chi(-1) = (-1)^l`.
    pub fn same_parity(&self, l: u32) -> bool {
        let l_odd = l % 2 == 1;
        (self.parity() == Parity::Odd) == l_odd
    }

    /// Smallest `d | n` such that `chi` is trivial on units `= 1 mod d`.
    pub fn conductor(&self) -> u64 {
        let n = self.modulus();
        divisors(n)
            .into_iter()
            .find(|&d| {
                self.group
                    .units()
                    .iter()
                    .filter(|&&a| a % d == 1 % d)
                    .all(|&a| self.value_exp(a as i64) == Some(0))
            })
            .unwrap_or(n)
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus()
    }

    /// The primitive character mod the conductor inducing `chi`.
    pub fn primitive_part(&self) -> Self {
        let f = self.conductor();
        if f == self.modulus() {
            return self.clone();
        }
        let n = self.modulus();
        let small = unit_group(f);
        let m = self.value_order;
        let exps = small
            .generators()
            .iter()
            .zip(small.orders())
            .map(|(&g, &o)| {
                let lift = (0..n / f)
                    .map(|t| g + t * f)
                    .find(|&a| gcd_u64(a, n) == 1)
                    .expect("every unit mod f lifts to a unit mod n");
                let k = self.value_exp(lift as i64).expect("lift is a unit");
                // chi'(g) = zeta_m^k must be an o-th root of unity
                debug_assert_eq!(k * o % m, 0);
                k * o / m
            })
            .collect();
        Self::from_exponents(small, exps)
    }
}

/// Result of [`gauss_sum`]; `primitive` is false when the input was imprimitive.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussSum {
    pub value: CyclotomicNumber,
    pub primitive: bool,
}

/// Common field `Q(mu_lcm(n, m))` for sums of `chi`-values against `zeta_n` powers.
pub fn sum_field(chi: &DirichletCharacter) -> u64 {
    lcm_u64(chi.modulus(), chi.value_order())
}

/// `tau(chi) = sum_a chi(a) zeta_n^(k a)` in `Q(mu_lcm(n, m))`.
pub fn gauss_sum(chi: &DirichletCharacter, k: i64) -> GaussSum {
    let n = chi.modulus();
    let big = sum_field(chi);
    let step = (big / n) as i64;
    let exps = chi.group().units().iter().map(|&a| {
        let c = chi.value_exp_in(a as i64, big).expect("unit") as i64;
        c + k * a as i64 * step
    });
    GaussSum { value: power_sum(big, exps), primitive: chi.is_primitive() }
}

/// Both sides of `sum_s zeta^(u s) chi(s) = conj(chi(u)) tau(chi)`.
pub fn fourier_identity_sides(chi: &DirichletCharacter, u: i64) -> (CyclotomicNumber, CyclotomicNumber) {
    let n = chi.modulus();
    let big = sum_field(chi);
    let step = (big / n) as i64;
    let lhs = power_sum(
        big,
        chi.group().units().iter().map(|&s| {
            chi.value_exp_in(s as i64, big).expect("unit") as i64 + u * s as i64 * step
        }),
    );
    let rhs = &chi.conj().value_in(u, big) * &gauss_sum(chi, 1).value;
    (lhs, rhs)
}

/// Whether the finite Fourier identity holds exactly for `chi` and `u`.
pub fn fourier_identity_check(chi: &DirichletCharacter, u: i64) -> bool {
    let (l, r) = fourier_identity_sides(chi, u);
    l == r
}
