//! End-to-end evaluations of the arithmetic Riemann–Roch right-hand side and
//! the worked examples built on it.

mod colmez;
mod derivation;

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use colmez::{colmez_brute_force, colmez_rhs, fourier_inversion_check, CMTypeData, ColmezReport, FourierInversion};
pub use derivation::{
    bbk_derivation, kry_derivation, Derivation, DerivationReport, Fact, StepReport,
};

use crate::characters::DirichletCharacter;
use crate::charclasses::{GradedElement, Var};
use crate::error::{Error, Result};
use crate::exactnum::ComplexApprox;
use crate::lderiv::{harmonic, log_derivative_ratio};

/// Key `(p, q, u)` of a Hodge piece `H^{p,q}_u`.
pub type HodgeKey = (u32, u32, u64);

/// Ranks of the weight pieces of relative Hodge cohomology, with optional
/// classes standing for `ch^{[l-1]}(H^{p,q}_u)`.
#[derive(Clone, Debug, Default)]
pub struct HodgeData {
    pub n: u64,
    pub ranks: BTreeMap<HodgeKey, u32>,
    pub classes: BTreeMap<HodgeKey, GradedElement<Complex64>>,
}

impl HodgeData {
    pub fn new(n: u64) -> Self {
        HodgeData { n, ..Default::default() }
    }

    pub fn with_rank(mut self, p: u32, q: u32, u: i64, rank: u32) -> Self {
        let u = u.rem_euclid(self.n as i64) as u64;
        self.ranks.insert((p, q, u), rank);
        self
    }

    pub fn with_class(mut self, p: u32, q: u32, u: i64, class: GradedElement<Complex64>) -> Self {
        let u = u.rem_euclid(self.n as i64) as u64;
        self.classes.insert((p, q, u), class);
        self
    }

    /// `rk H^{p,q}_u = rk H^{q,p}_{-u}` for every piece.
    pub fn is_self_dual(&self) -> bool {
        let n = self.n;
        let rank = |k: &HodgeKey| self.ranks.get(k).copied().unwrap_or(0);
        self.ranks.keys().all(|&(p, q, u)| rank(&(p, q, u)) == rank(&(q, p, (n - u % n) % n)))
    }

    /// Supplied class, else `rank` in degree 0 for `l = 1`, else an opaque
    /// degree-`(l - 1)` symbol per piece.
    pub fn class(&self, key: HodgeKey, l: u32) -> GradedElement<Complex64> {
        let d = l.saturating_sub(1) as usize;
        if let Some(c) = self.classes.get(&key) {
            return c.with_truncation(d);
        }
        let rank = self.ranks.get(&key).copied().unwrap_or(0);
        if rank == 0 {
            return GradedElement::zero(&(), d);
        }
        if l <= 1 {
            return GradedElement::constant(Complex64::new(rank as f64, 0.0), 0);
        }
        let (p, q, u) = key;
        let id = 1000 + 100 * (p * 10 + q) + u as u32;
        GradedElement::var(Var::new(id, d as u8), &(), d)
    }

    fn keys(&self) -> Vec<HodgeKey> {
        let mut k: Vec<HodgeKey> = self.ranks.keys().chain(self.classes.keys()).copied().collect();
        k.sort();
        k.dedup();
        k
    }
}

/// `2 L'/L(chi_prim, 1 - l) + H_{l-1}`.
pub fn bracket(chi: &DirichletCharacter, l: u32) -> Result<ComplexApprox> {
    let r = log_derivative_ratio(chi, l)?;
    let h = harmonic(l.saturating_sub(1) as u64).to_f64();
    Ok(ComplexApprox::new(2.0 * r.real + h, 2.0 * r.imag, 2.0 * r.precision_hint))
}

/// `-sum_k (-1)^k [2 L'/L(chi_prim, 1-l) + H_{l-1}] sum_u sum_{p+q=k} p ch^{[l-1]}(H^{p,q}_u) chi_prim(u)`.
///
/// Zero when `L(chi_prim, 1 - l)` vanishes.
pub fn agbf_rhs(hd: &HodgeData, chi: &DirichletCharacter, l: u32) -> Result<GradedElement<Complex64>> {
    match agbf_rhs_nonvanishing(hd, chi, l) {
        Err(Error::ParityMismatch { .. }) => Ok(GradedElement::zero(&(), l.saturating_sub(1) as usize)),
        r => r,
    }
}

/// As [`agbf_rhs`], but a vanishing `L(chi_prim, 1 - l)` is an error.
pub fn agbf_rhs_nonvanishing(hd: &HodgeData, chi: &DirichletCharacter, l: u32) -> Result<GradedElement<Complex64>> {
    if l == 0 {
        return Err(Error::DomainError("l must be positive".into()));
    }
    if chi.modulus() != hd.n {
        return Err(Error::ModulusMismatch(chi.modulus(), hd.n));
    }
    let b = bracket(chi, l)?.to_c64();
    let prim = chi.primitive_part();
    let mut sum = GradedElement::zero(&(), l as usize - 1);
    for (p, q, u) in hd.keys() {
        if p == 0 {
            continue;
        }
        let c = prim.value(u as i64).to_c64();
        if c == Complex64::new(0.0, 0.0) {
            continue;
        }
        let sign = if (p + q) % 2 == 0 { 1.0 } else { -1.0 };
        let w = c * (sign * p as f64);
        sum = sum.add(&hd.class((p, q, u), l).scale(&w));
    }
    Ok(sum.scale(&(-b)))
}

/// `ch^{[2]}(H^1)` for an elliptic scheme, as a multiple of `c_1(omega)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BostKuhn {
    pub bracket: ComplexApprox,
    pub alternating_sum: GradedElement<Complex64>,
    pub shape: GradedElement<Complex64>,
}

/// Symbol for `c_1(omega)`.
pub const OMEGA: Var = Var::new(1, 1);

/// Elliptic-scheme specialization of [`agbf_rhs`] with `chi` trivial and
/// `l = 2`; `omega_vanishes` sets `c_1(omega) = 0`.
pub fn bost_kuhn_shape(omega_vanishes: bool) -> Result<BostKuhn> {
    let chi = DirichletCharacter::trivial(1);
    let omega = if omega_vanishes {
        GradedElement::zero(&(), 1)
    } else {
        GradedElement::var(OMEGA, &(), 1)
    };
    let hd = HodgeData::new(1)
        .with_rank(0, 0, 0, 1)
        .with_rank(1, 0, 0, 1)
        .with_rank(0, 1, 0, 1)
        .with_rank(1, 1, 0, 1)
        .with_class(1, 0, 0, omega)
        .with_class(1, 1, 0, GradedElement::zero(&(), 1));
    let alt = agbf_rhs(&hd, &chi, 2)?;
    // only H^1 carries a nonzero class, and it enters with sign (-1)^1
    Ok(BostKuhn { bracket: bracket(&chi, 2)?, shape: alt.neg(), alternating_sum: alt })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::enumerate_characters;
    use crate::charclasses::Monomial;

    const BETA_Q: f64 = 4.970_107_448_810_822;

    #[test]
    fn trivial_character_single_class() {
        let c = GradedElement::var(Var::new(7, 1), &(), 1);
        let hd = HodgeData::new(1).with_rank(1, 1, 0, 1).with_class(1, 1, 0, c);
        let r = agbf_rhs(&hd, &DirichletCharacter::trivial(1), 2).unwrap();
        let v = r.coeff(&Monomial::var(Var::new(7, 1)));
        assert!((v.re + BETA_Q).abs() < 1e-9, "{v}");
    }

    #[test]
    fn parity_mismatch_is_zero() {
        let chi = enumerate_characters(4).into_iter().find(|c| !c.is_trivial()).unwrap();
        let hd = HodgeData::new(4).with_rank(1, 0, 1, 1).with_rank(0, 1, 3, 1);
        assert!(agbf_rhs(&hd, &chi, 2).unwrap().is_zero());
        assert!(matches!(agbf_rhs_nonvanishing(&hd, &chi, 2), Err(Error::ParityMismatch { .. })));
        assert!(!agbf_rhs(&hd, &chi, 1).unwrap().is_zero());
        assert!(hd.is_self_dual());
    }

    #[test]
    fn bost_kuhn() {
        let bk = bost_kuhn_shape(false).unwrap();
        assert!((bk.bracket.real - BETA_Q).abs() < 1e-9);
        let v = bk.shape.coeff(&Monomial::var(OMEGA));
        assert!((v.re + BETA_Q).abs() < 1e-9);
        assert!(bost_kuhn_shape(true).unwrap().shape.is_zero());
    }
}
