use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{Rational, Scalar};

/// A commuting symbol of fixed (even, so commuting) degree, counted in units
/// of the grading of `CH^*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Var {
    pub id: u32,
    pub degree: u8,
}

impl Var {
    pub const fn new(id: u32, degree: u8) -> Self {
        Var { id, degree }
    }

    /// A degree-1 symbol, e.g. a Chern root.
    pub const fn root(id: u32) -> Self {
        Var { id, degree: 1 }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.id)
    }
}

/// Product of symbols with positive exponents, sorted by symbol.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_powers(mut p: Vec<(Var, u32)>) -> Self {
        p.retain(|&(_, e)| e > 0);
        p.sort();
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(p.len());
        for (v, e) in p {
            match out.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    pub fn powers(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&(v, e)| v.degree as usize * e as usize).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |&(_, e)| e)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &o.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Truncated polynomial in commuting graded symbols.
#[derive(Clone, PartialEq)]
pub struct GradedElement<S: Scalar> {
    ctx: S::Ctx,
    trunc: usize,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> fmt::Debug for GradedElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedElement[D={}](", self.trunc)?;
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c:?})*{m}")?;
        }
        write!(f, ")")
    }
}

impl<S: Scalar> GradedElement<S> {
    pub fn zero(ctx: &S::Ctx, trunc: usize) -> Self {
        GradedElement { ctx: ctx.clone(), trunc, terms: BTreeMap::new() }
    }

    pub fn constant(c: S, trunc: usize) -> Self {
        let mut g = Self::zero(&c.ctx(), trunc);
        if !c.is_zero() {
            g.terms.insert(Monomial::one(), c);
        }
        g
    }

    pub fn one(ctx: &S::Ctx, trunc: usize) -> Self {
        Self::constant(S::one(ctx), trunc)
    }

    pub fn monomial(m: Monomial, c: S, trunc: usize) -> Self {
        let mut g = Self::zero(&c.ctx(), trunc);
        if m.degree() <= trunc && !c.is_zero() {
            g.terms.insert(m, c);
        }
        g
    }

    pub fn var(v: Var, ctx: &S::Ctx, trunc: usize) -> Self {
        Self::monomial(Monomial::var(v), S::one(ctx), trunc)
    }

    /// `sum_v c_v v` for rational coefficients.
    pub fn linear(form: &BTreeMap<Var, Rational>, ctx: &S::Ctx, trunc: usize) -> Self {
        let mut g = Self::zero(ctx, trunc);
        for (&v, c) in form {
            g.add_term(Monomial::var(v), S::from_rational(c, ctx));
        }
        g
    }

    pub fn ctx(&self) -> &S::Ctx {
        &self.ctx
    }

    pub fn truncation(&self) -> usize {
        self.trunc
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, S> {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(|| S::zero(&self.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest degree with a nonzero term.
    pub fn top_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn add_term(&mut self, m: Monomial, c: S) {
        if m.degree() > self.trunc || c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.trunc, o.trunc, "graded elements with different truncation");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(S::neg)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx, self.trunc);
        }
        self.map_coeffs(|a| a.mul(c))
    }

    pub fn scale_q(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero(&self.ctx, self.trunc);
        }
        self.map_coeffs(|a| a.scale(q))
    }

    fn map_coeffs(&self, f: impl Fn(&S) -> S) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let v = f(c);
                (!v.is_zero()).then(|| (m.clone(), v))
            })
            .collect();
        GradedElement { ctx: self.ctx.clone(), trunc: self.trunc, terms }
    }

    /// Change of coefficient ring.
    pub fn map<T: Scalar>(&self, ctx: &T::Ctx, f: impl Fn(&S) -> T) -> GradedElement<T> {
        let mut out = GradedElement::<T>::zero(ctx, self.trunc);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Same element with a different truncation degree.
    pub fn with_truncation(&self, trunc: usize) -> Self {
        let mut out = Self::zero(&self.ctx, trunc);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let mut a: Vec<(usize, &Monomial, &S)> = self.terms.iter().map(|(m, c)| (m.degree(), m, c)).collect();
        let mut b: Vec<(usize, &Monomial, &S)> = o.terms.iter().map(|(m, c)| (m.degree(), m, c)).collect();
        a.sort_by_key(|t| t.0);
        b.sort_by_key(|t| t.0);
        let mut acc: BTreeMap<Monomial, S> = BTreeMap::new();
        for &(da, ma, ca) in &a {
            for &(db, mb, cb) in &b {
                if da + db > self.trunc {
                    break;
                }
                let m = ma.mul(mb);
                let p = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = v.add(&p),
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        GradedElement { ctx: self.ctx.clone(), trunc: self.trunc, terms: acc }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ctx, self.trunc);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `sum_j a_j self^j`, stopping once powers exceed the truncation.
    pub fn apply_series(&self, a: &[Rational]) -> Self {
        let positive = self.degree0().is_zero();
        let mut acc = Self::zero(&self.ctx, self.trunc);
        let mut p = Self::one(&self.ctx, self.trunc);
        for (j, c) in a.iter().enumerate() {
            if j > 0 {
                p = p.mul(self);
            }
            if p.is_zero() {
                break;
            }
            if positive && j > self.trunc {
                break;
            }
            acc = acc.add(&p.scale_q(c));
        }
        acc
    }

    /// `exp(self)` for an element without constant term.
    pub fn exp(&self) -> Self {
        assert!(self.degree0().is_zero(), "exp needs a nilpotent argument");
        let coeffs: Vec<Rational> = (0..=self.trunc)
            .map(|j| Rational::factorial(j as u64).inv().expect("j! > 0"))
            .collect();
        self.apply_series(&coeffs)
    }

    /// The component of degree `d`.
    pub fn homogeneous(&self, d: usize) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect();
        GradedElement { ctx: self.ctx.clone(), trunc: self.trunc, terms }
    }

    pub fn degree0(&self) -> S {
        self.coeff(&Monomial::one())
    }

    /// Inverse, provided the degree-0 coefficient is a unit and all other
    /// terms have positive degree.
    pub fn inv(&self) -> Result<Self> {
        let c0 = self.degree0();
        let c0_inv = c0
            .inv()
            .map_err(|_| Error::NonInvertible("degree-0 part vanishes".into()))?;
        if self.terms.keys().any(|m| m.degree() == 0 && !m.is_one()) {
            return Err(Error::NonInvertible("degree-0 symbols present".into()));
        }
        // self = c0 (1 + y) with y nilpotent
        let y = self.scale(&c0_inv).sub(&Self::one(&self.ctx, self.trunc));
        let alt: Vec<Rational> = (0..=self.trunc).map(|j| Rational::from_int(if j % 2 == 0 { 1 } else { -1 })).collect();
        Ok(y.apply_series(&alt).scale(&c0_inv))
    }

    /// Substitute each symbol by the image `f(v)`.
    pub fn substitute(&self, f: impl Fn(Var) -> GradedElement<S>) -> Self {
        let mut acc = Self::zero(&self.ctx, self.trunc);
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone(), self.trunc);
            for &(v, e) in m.powers() {
                t = t.mul(&f(v).pow(e));
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Apply a linear functional given on monomials.
    pub fn integrate(&self, f: impl Fn(&Monomial) -> S) -> S {
        self.terms
            .iter()
            .fold(S::zero(&self.ctx), |acc, (m, c)| acc.add(&c.mul(&f(m))))
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for GradedElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct GradedJson<C, S> {
    ctx: C,
    truncation: usize,
    terms: Vec<(Monomial, S)>,
}

impl<S: Scalar + Serialize> Serialize for GradedElement<S>
where
    S::Ctx: Serialize,
{
    fn serialize<Z: serde::Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        GradedJson {
            ctx: self.ctx.clone(),
            truncation: self.trunc,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
        .serialize(s)
    }
}

impl<'de, S: Scalar + Deserialize<'de>> Deserialize<'de> for GradedElement<S>
where
    S::Ctx: Deserialize<'de>,
{
    fn deserialize<Z: serde::Deserializer<'de>>(d: Z) -> std::result::Result<Self, Z::Error> {
        let j = GradedJson::<S::Ctx, S>::deserialize(d)?;
        let mut terms = BTreeMap::new();
        for (m, c) in j.terms {
            if m.degree() > j.truncation {
                return Err(serde::de::Error::custom(format!("term {m} exceeds truncation {}", j.truncation)));
            }
            if !c.is_zero() {
                terms.insert(m, c);
            }
        }
        Ok(GradedElement { ctx: j.ctx, trunc: j.truncation, terms })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type G = GradedElement<Rational>;

    fn t() -> G {
        G::var(Var::root(0), &(), 3)
    }

    #[test]
    fn json_round_trip() {
        let g = t().exp().scale_q(&Rational::new(-2, 3));
        let s = serde_json::to_string(&g).unwrap();
        let back: G = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    #[test]
    fn exp_of_a_root() {
        let e = t().exp();
        let want = [1, 1, 2, 6];
        for (k, d) in want.iter().enumerate() {
            assert_eq!(e.coeff(&Monomial::from_powers(vec![(Var::root(0), k as u32)])), Rational::new(1, *d));
        }
        assert_eq!(e.terms().len(), 4);
    }

    #[test]
    fn truncation_drops_high_degrees() {
        let x = t().pow(2).mul(&t().pow(2));
        assert!(x.is_zero());
        let big = G::var(Var::new(1, 2), &(), 3);
        assert!(big.mul(&big).is_zero());
        assert!(!big.mul(&t()).is_zero());
    }

    #[test]
    fn inverse_of_one_plus_root() {
        let one = G::one(&(), 3);
        let x = one.add(&t());
        assert_eq!(x.mul(&x.inv().unwrap()), one);
        assert!(t().inv().is_err());
    }

    #[test]
    fn monomial_products_merge() {
        let a = Monomial::from_powers(vec![(Var::root(2), 1), (Var::root(0), 2)]);
        let b = Monomial::from_powers(vec![(Var::root(1), 1), (Var::root(2), 3)]);
        assert_eq!(a.mul(&b).to_string(), "v0^2*v1*v2^4");
        assert_eq!(a.mul(&b).degree(), 7);
    }
}
