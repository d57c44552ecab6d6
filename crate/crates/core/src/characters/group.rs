use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::exactnum::{euler_phi, factorize, gcd_u64};

/// `(Z/n)^*` as a product of cyclic groups.
///
/// Odd prime powers contribute one primitive root; `2^e` contributes `-1`
/// (for `e >= 2`) and `5` (for `e >= 3`). Generators are CRT lifts, so they
/// are independent.
#[derive(Debug)]
pub struct UnitGroup {
    modulus: u64,
    generators: Vec<u64>,
    orders: Vec<u64>,
    units: Vec<u64>,
    dlog: Vec<Option<Vec<u64>>>,
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

fn multiplicative_order(a: u64, m: u64) -> u64 {
    let mut x = a % m;
    let mut k = 1;
    while x != 1 % m {
        x = ((x as u128 * a as u128) % m as u128) as u64;
        k += 1;
    }
    k
}

/// The residue congruent to `a` mod `q` and to 1 mod `n/q`.
fn crt_lift(a: u64, q: u64, n: u64) -> u64 {
    let r = n / q;
    (0..q)
        .map(|t| 1 + t * r)
        .find(|x| x % q == a % q)
        .expect("CRT lift exists for coprime moduli")
        % n
}

impl UnitGroup {
    fn build(n: u64) -> Self {
        let mut generators = Vec::new();
        let mut orders = Vec::new();
        for (p, e) in factorize(n) {
            let q = p.pow(e);
            if p == 2 {
                if e >= 2 {
                    generators.push(crt_lift(q - 1, q, n));
                    orders.push(2);
                }
                if e >= 3 {
                    generators.push(crt_lift(5, q, n));
                    orders.push(q / 4);
                }
            } else {
                let phi_q = q / p * (p - 1);
                let g = (2..q)
                    .find(|&g| g % p != 0 && multiplicative_order(g, q) == phi_q)
                    .expect("odd prime powers have primitive roots");
                generators.push(crt_lift(g, q, n));
                orders.push(phi_q);
            }
        }
        let mut dlog = vec![None; n as usize];
        let mut exps = vec![0u64; orders.len()];
        loop {
            let r = generators
                .iter()
                .zip(&exps)
                .fold(1 % n, |acc, (&g, &e)| acc * pow_mod(g, e, n) % n);
            debug_assert!(dlog[r as usize].is_none());
            dlog[r as usize] = Some(exps.clone());
            // odometer over the exponent box
            let mut i = 0;
            while i < exps.len() {
                exps[i] += 1;
                if exps[i] < orders[i] {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
            if i == exps.len() {
                break;
            }
        }
        let units = (0..n).filter(|&a| dlog[a as usize].is_some()).collect();
        UnitGroup { modulus: n, generators, orders, units, dlog }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Residues coprime to the modulus, ascending (`[0]` for modulus 1).
    pub fn units(&self) -> &[u64] {
        &self.units
    }

    pub fn order(&self) -> u64 {
        euler_phi(self.modulus)
    }

    pub fn reduce(&self, a: i64) -> u64 {
        a.rem_euclid(self.modulus as i64) as u64
    }

    pub fn is_unit(&self, a: i64) -> bool {
        gcd_u64(self.reduce(a), self.modulus) == 1
    }

    /// Exponents of `a` on the generators, or `None` off the units.
    pub fn dlog(&self, a: i64) -> Option<&[u64]> {
        self.dlog[self.reduce(a) as usize].as_deref()
    }

    pub fn from_exponents(&self, exps: &[u64]) -> u64 {
        let n = self.modulus;
        self.generators
            .iter()
            .zip(exps)
            .fold(1 % n, |acc, (&g, &e)| acc * pow_mod(g, e, n) % n)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    pub fn inverse(&self, a: u64) -> u64 {
        let d = self.dlog(a as i64).expect("inverse of a unit");
        let neg: Vec<u64> = d.iter().zip(&self.orders).map(|(&e, &o)| (o - e) % o).collect();
        self.from_exponents(&neg)
    }
}

/// Shared, lazily built unit group of `Z/n`.
pub fn unit_group(n: u64) -> Arc<UnitGroup> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<UnitGroup>>>> = OnceLock::new();
    assert!(n >= 1, "modulus must be positive");
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(g) = cache.lock().expect("unit group cache").get(&n) {
        return g.clone();
    }
    let g = Arc::new(UnitGroup::build(n));
    cache.lock().expect("unit group cache").entry(n).or_insert(g).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_matches_totient() {
        for n in 1..=60u64 {
            let g = unit_group(n);
            assert_eq!(g.orders().iter().product::<u64>(), euler_phi(n), "n={n}");
            assert_eq!(g.units().len() as u64, euler_phi(n));
            for &a in g.units() {
                let e = g.dlog(a as i64).unwrap().to_vec();
                assert_eq!(g.from_exponents(&e), a);
                assert_eq!(g.mul(a, g.inverse(a)), 1 % n);
            }
        }
    }

    #[test]
    fn two_power_split() {
        let g = unit_group(16);
        assert_eq!(g.generators(), &[15, 5]);
        assert_eq!(g.orders(), &[2, 4]);
        assert_eq!(unit_group(4).generators(), &[3]);
        assert!(unit_group(2).generators().is_empty());
    }
}
