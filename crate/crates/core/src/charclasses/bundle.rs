use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::graded::{GradedElement, Var};
use crate::error::{Error, Result};
use crate::exactnum::{gcd_u64, CyclotomicNumber, Rational, Scalar};
use crate::lvalues::bernoulli;

/// A formal Chern root: a rational linear form in degree-1 symbols, with a
/// weight in `Z/n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Root {
    pub form: BTreeMap<Var, Rational>,
    pub weight: u64,
}

impl Root {
    pub fn symbol(v: Var, weight: u64) -> Self {
        Root { form: BTreeMap::from([(v, Rational::one())]), weight }
    }

    /// The zero root (a trivial line bundle) of weight `weight`.
    pub fn trivial(weight: u64) -> Self {
        Root { form: BTreeMap::new(), weight }
    }

    fn neg(&self, n: u64) -> Self {
        Root {
            form: self.form.iter().map(|(&v, c)| (v, -c)).collect(),
            weight: (n - self.weight % n) % n,
        }
    }

    fn plus(&self, o: &Root, n: u64) -> Self {
        let mut form = self.form.clone();
        for (&v, c) in &o.form {
            let e = form.entry(v).or_default();
            *e += c;
            if e.is_zero() {
                form.remove(&v);
            }
        }
        Root { form, weight: (self.weight + o.weight) % n }
    }

    pub fn to_graded<S: Scalar>(&self, ctx: &S::Ctx, trunc: usize) -> GradedElement<S> {
        GradedElement::linear(&self.form, ctx, trunc)
    }
}

/// A bundle given by its Chern roots (splitting principle), with a
/// `Z/n`-grading on the roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalBundle {
    pub n: u64,
    pub roots: Vec<Root>,
}

impl FormalBundle {
    pub fn new(n: u64, mut roots: Vec<Root>) -> Self {
        assert!(n >= 1, "equivariance order must be positive");
        for r in &mut roots {
            r.weight %= n;
        }
        FormalBundle { n, roots }
    }

    pub fn zero(n: u64) -> Self {
        FormalBundle::new(n, Vec::new())
    }

    /// Bundle whose roots are the given symbols with matching weights.
    pub fn from_symbols(n: u64, roots: &[(Var, u64)]) -> Self {
        FormalBundle::new(n, roots.iter().map(|&(v, w)| Root::symbol(v, w)).collect())
    }

    /// Random roots: linear forms over `base` symbols with small rational
    /// coefficients. `weights` chooses the weight of each root.
    pub fn random(rng: &mut impl Rng, n: u64, base: &[Var], weights: &[u64]) -> Self {
        let roots = weights
            .iter()
            .map(|&w| {
                let mut form = BTreeMap::new();
                for &v in base {
                    let c = Rational::new(rng.gen_range(-5i64..=5), rng.gen_range(1i64..=4));
                    if !c.is_zero() {
                        form.insert(v, c);
                    }
                }
                Root { form, weight: w }
            })
            .collect();
        FormalBundle::new(n, roots)
    }

    pub fn rank(&self) -> usize {
        self.roots.len()
    }

    /// `E_u`, the roots of weight `u`.
    pub fn weight_part(&self, u: u64) -> Self {
        let u = u % self.n;
        FormalBundle::new(self.n, self.roots.iter().filter(|r| r.weight == u).cloned().collect())
    }

    /// `E_{!=0}`.
    pub fn nonzero_part(&self) -> Self {
        FormalBundle::new(self.n, self.roots.iter().filter(|r| r.weight != 0).cloned().collect())
    }

    /// Weights present, ascending and without repetition.
    pub fn weights(&self) -> Vec<u64> {
        let mut w: Vec<u64> = self.roots.iter().map(|r| r.weight).collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    /// `E^dual`: roots and weights negated.
    pub fn dual(&self) -> Self {
        FormalBundle::new(self.n, self.roots.iter().map(|r| r.neg(self.n)).collect())
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "bundles with different equivariance orders");
        FormalBundle::new(self.n, self.roots.iter().chain(&o.roots).cloned().collect())
    }

    pub fn tensor(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "bundles with different equivariance orders");
        let roots = self
            .roots
            .iter()
            .flat_map(|a| o.roots.iter().map(move |b| a.plus(b, self.n)))
            .collect();
        FormalBundle::new(self.n, roots)
    }
}

/// `sum_i m_i [E_i]` in `K_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VirtualBundle {
    pub n: u64,
    pub terms: Vec<(i64, FormalBundle)>,
}

impl VirtualBundle {
    pub fn ch(&self, trunc: usize) -> GradedElement<Rational> {
        self.terms.iter().fold(GradedElement::zero(&(), trunc), |acc, (m, e)| {
            acc.add(&ch(e, trunc).scale_q(&Rational::from_int(*m)))
        })
    }

    pub fn ch_equivariant(&self, k: i64, trunc: usize) -> Result<GradedElement<CyclotomicNumber>> {
        let mut acc = GradedElement::zero(&self.n, trunc);
        for (m, e) in &self.terms {
            acc = acc.add(&ch_equivariant(e, k, trunc)?.scale_q(&Rational::from_int(*m)));
        }
        Ok(acc)
    }
}

/// `Lambda^k(E)`: one root per `k`-subset, the sum of its roots.
pub fn lambda_op(e: &FormalBundle, k: usize) -> FormalBundle {
    let r = e.rank();
    if k > r {
        return FormalBundle::zero(e.n);
    }
    let mut roots = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let root = idx.iter().fold(Root::trivial(0), |acc, &i| acc.plus(&e.roots[i], e.n));
        roots.push(root);
        // next k-subset in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return FormalBundle::new(e.n, roots);
            }
            i -= 1;
            if idx[i] < r - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// `Lambda_{-1}(E) = sum_k (-1)^k Lambda^k(E)`.
pub fn lambda_minus1(e: &FormalBundle) -> VirtualBundle {
    VirtualBundle {
        n: e.n,
        terms: (0..=e.rank())
            .map(|k| (if k % 2 == 0 { 1 } else { -1 }, lambda_op(e, k)))
            .collect(),
    }
}

/// `ch(E) = sum_i exp(t_i)`.
pub fn ch(e: &FormalBundle, trunc: usize) -> GradedElement<Rational> {
    e.roots
        .iter()
        .fold(GradedElement::zero(&(), trunc), |acc, r| acc.add(&r.to_graded(&(), trunc).exp()))
}

/// `Td(E) = prod_i t_i / (1 - exp(-t_i))`.
pub fn td(e: &FormalBundle, trunc: usize) -> GradedElement<Rational> {
    // t/(1 - e^{-t}) = sum_j (-1)^j B_j t^j / j!
    let coeffs: Vec<Rational> = (0..=trunc)
        .map(|j| {
            let s = if j % 2 == 1 { -bernoulli(j) } else { bernoulli(j) };
            s / Rational::factorial(j as u64)
        })
        .collect();
    e.roots.iter().fold(GradedElement::one(&(), trunc), |acc, r| {
        acc.mul(&r.to_graded::<Rational>(&(), trunc).apply_series(&coeffs))
    })
}

/// `c(E) = prod_i (1 + t_i)`.
pub fn c_total(e: &FormalBundle, trunc: usize) -> GradedElement<Rational> {
    let one = GradedElement::<Rational>::one(&(), trunc);
    e.roots
        .iter()
        .fold(one.clone(), |acc, r| acc.mul(&one.add(&r.to_graded(&(), trunc))))
}

/// `c_top(E) = prod_i t_i`, computed with truncation `trunc`.
pub fn c_top(e: &FormalBundle, trunc: usize) -> GradedElement<Rational> {
    e.roots
        .iter()
        .fold(GradedElement::one(&(), trunc), |acc, r| acc.mul(&r.to_graded(&(), trunc)))
}

/// `ch_mu_n(E) = sum_u zeta_n^(u k) ch(E_u)` with exact cyclotomic coefficients.
pub fn ch_equivariant(e: &FormalBundle, k: i64, trunc: usize) -> Result<GradedElement<CyclotomicNumber>> {
    let n = e.n;
    if n > 1 && gcd_u64(k.unsigned_abs() % n, n) != 1 {
        return Err(Error::NotCoprime(k, n));
    }
    let mut acc = GradedElement::zero(&n, trunc);
    for u in e.weights() {
        let z = CyclotomicNumber::zeta_pow(n, u as i64 * k);
        let part = ch(&e.weight_part(u), trunc).map(&n, |q| CyclotomicNumber::from_rational(n, q));
        acc = acc.add(&part.scale(&z));
    }
    Ok(acc)
}

/// Rational graded element viewed with coefficients in `Q(mu_n)`.
pub fn to_cyclotomic(g: &GradedElement<Rational>, n: u64) -> GradedElement<CyclotomicNumber> {
    g.map(&n, |q| CyclotomicNumber::from_rational(n, q))
}
