//! Truncated formal power series over any [`Scalar`] ring.

use crate::error::{Error, Result};
use crate::exactnum::{Rational, Scalar};

/// `c_0 + c_1 x + ... + c_N x^N`, arithmetic truncated at `x^N`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalPowerSeries<S: Scalar> {
    ctx: S::Ctx,
    coeffs: Vec<S>,
}

impl<S: Scalar> FormalPowerSeries<S> {
    pub fn zero(ctx: &S::Ctx, order: usize) -> Self {
        FormalPowerSeries { ctx: ctx.clone(), coeffs: vec![S::zero(ctx); order + 1] }
    }

    pub fn one(ctx: &S::Ctx, order: usize) -> Self {
        let mut s = Self::zero(ctx, order);
        s.coeffs[0] = S::one(ctx);
        s
    }

    /// The series `x`.
    pub fn x(ctx: &S::Ctx, order: usize) -> Self {
        let mut s = Self::zero(ctx, order);
        if order >= 1 {
            s.coeffs[1] = S::one(ctx);
        }
        s
    }

    /// From coefficients, padded with zeros or cut to length `order + 1`.
    pub fn from_coeffs(ctx: &S::Ctx, mut coeffs: Vec<S>, order: usize) -> Self {
        coeffs.resize(order + 1, S::zero(ctx));
        FormalPowerSeries { ctx: ctx.clone(), coeffs }
    }

    /// `exp(x) = sum x^k / k!`.
    pub fn exp_x(ctx: &S::Ctx, order: usize) -> Self {
        let mut c = Vec::with_capacity(order + 1);
        let mut fact = Rational::one();
        for k in 0..=order {
            if k > 0 {
                fact = fact.mul_int(k as i64);
            }
            c.push(S::from_rational(&fact.inv().expect("k! > 0"), ctx));
        }
        FormalPowerSeries { ctx: ctx.clone(), coeffs: c }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn ctx(&self) -> &S::Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &S {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(S::is_zero)
    }

    fn zip(&self, o: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        assert_eq!(self.order(), o.order(), "series truncation orders differ");
        FormalPowerSeries {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, S::add)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, S::sub)
    }

    pub fn neg(&self) -> Self {
        FormalPowerSeries { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(S::neg).collect() }
    }

    pub fn scale(&self, c: &S) -> Self {
        FormalPowerSeries { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order();
        assert_eq!(n, o.order(), "series truncation orders differ");
        let mut out = vec![S::zero(&self.ctx); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        FormalPowerSeries { ctx: self.ctx.clone(), coeffs: out }
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn inv(&self) -> Result<Self> {
        let c0 = self.coeffs[0]
            .inv()
            .map_err(|_| Error::NonInvertible("series with zero constant term".into()))?;
        let n = self.order();
        let mut out: Vec<S> = Vec::with_capacity(n + 1);
        out.push(c0.clone());
        for k in 1..=n {
            let mut acc = S::zero(&self.ctx);
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = acc.add(&self.coeffs[j].mul(&out[k - j]));
                }
            }
            out.push(acc.mul(&c0).neg());
        }
        Ok(FormalPowerSeries { ctx: self.ctx.clone(), coeffs: out })
    }

    /// Formal derivative, keeping the truncation order (top coefficient 0).
    pub fn derivative(&self) -> Self {
        let n = self.order();
        let mut out: Vec<S> = (1..=n)
            .map(|k| self.coeffs[k].scale(&Rational::from_int(k as i64)))
            .collect();
        out.push(S::zero(&self.ctx));
        FormalPowerSeries { ctx: self.ctx.clone(), coeffs: out }
    }

    /// Antiderivative with zero constant term; drops the `x^(N+1)` term.
    pub fn integral(&self) -> Self {
        let n = self.order();
        let mut out = vec![S::zero(&self.ctx)];
        for k in 1..=n {
            out.push(self.coeffs[k - 1].scale(&Rational::new(1, k as i64)));
        }
        FormalPowerSeries { ctx: self.ctx.clone(), coeffs: out }
    }

    /// `log(f)` for `f(0) = 1`, as the integral of `f'/f`.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != S::one(&self.ctx) {
            return Err(Error::DomainError("log needs constant term 1".into()));
        }
        Ok(self.derivative().mul(&self.inv()?).integral())
    }

    /// `exp(f)` for `f(0) = 0`, via `g' = f' g`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::DomainError("exp needs constant term 0".into()));
        }
        let n = self.order();
        let df: Vec<S> = (1..=n).map(|k| self.coeffs[k].scale(&Rational::from_int(k as i64))).collect();
        let mut g: Vec<S> = vec![S::one(&self.ctx)];
        for k in 1..=n {
            // k g_k = sum_{j=1}^{k} j f_j g_{k-j}
            let mut acc = S::zero(&self.ctx);
            for j in 1..=k {
                if !df[j - 1].is_zero() {
                    acc = acc.add(&df[j - 1].mul(&g[k - j]));
                }
            }
            g.push(acc.scale(&Rational::new(1, k as i64)));
        }
        Ok(FormalPowerSeries { ctx: self.ctx.clone(), coeffs: g })
    }
}
