//! Numeric continuation: Hurwitz zeta by Euler–Maclaurin, Dirichlet `L` and
//! `L'`, Lerch zeta derivatives at roots of unity, and R-genus coefficients.
//!
//! Everything is evaluated in [`hp`] extended precision and rounded to `f64`
//! at the boundary.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::characters::{gauss_sum, DirichletCharacter};
use crate::error::{Error, Result};
use crate::exactnum::{factorial, ComplexApprox, Rational};
use crate::hp::{self, Complex, Real};
use crate::lvalues::{self, RootOfUnity};
use crate::par;

/// Euler–Maclaurin parameters: `m` direct terms, `k` Bernoulli corrections.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EMParams {
    pub m: usize,
    pub k: usize,
    pub target_error: f64,
}

impl Default for EMParams {
    fn default() -> Self {
        EMParams { m: 40, k: 12, target_error: 1e-12 }
    }
}

impl EMParams {
    /// The refinement used by convergence checks.
    pub fn refined(self) -> Self {
        EMParams { m: 2 * self.m, k: self.k + 4, target_error: self.target_error }
    }
}

/// `H_k`, with `H_0 = 0`.
pub fn harmonic(k: u64) -> Rational {
    Rational::harmonic(k)
}

/// High-precision Hurwitz zeta value, optional `d/ds`, and a heuristic error.
#[derive(Clone, Debug)]
pub struct HurwitzHp {
    pub value: Real,
    pub derivative: Option<Real>,
    pub est_error: f64,
}

fn bernoulli_weights(k: usize) -> Arc<Vec<Real>> {
    // B_{2j}/(2j)! for j = 1..=k+1, at the working precision
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<Vec<Real>>>>> = OnceLock::new();
    let key = (k, hp::precision_bits());
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("weights").get(&key) {
        return v.clone();
    }
    let v: Arc<Vec<Real>> = Arc::new(
        (1..=k + 1)
            .map(|j| {
                let w = &lvalues::bernoulli(2 * j) / &Rational::from_int(factorial(2 * j as u64));
                Real::from_ratio(w.as_big())
            })
            .collect(),
    );
    cache.lock().expect("weights").insert(key, v.clone());
    v
}

fn integer_exponent(s: &Real) -> Option<i64> {
    let f = s.to_f64();
    if f.fract() == 0.0 && f.abs() < 1e6 && Real::from_f64(f) == *s {
        Some(f as i64)
    } else {
        None
    }
}

/// `t^(-s)`, using integer powers when `s` is integral.
fn pow_neg(t: &Real, s: &Real, ln_t: Option<&Real>) -> Real {
    match integer_exponent(s) {
        Some(k) => t.powi(-k),
        None => match ln_t {
            Some(l) => (-(s * l)).exp(),
            None => (-(s * &t.ln())).exp(),
        },
    }
}

/// Euler–Maclaurin evaluation of `zeta_H(s, x)` in extended precision.
pub fn hurwitz_zeta_hp(s: &Real, x: &Real, p: EMParams, with_derivative: bool) -> Result<HurwitzHp> {
    if *s == Real::one() {
        return Err(Error::PoleAtOne);
    }
    if !(x > &Real::zero() && x <= &Real::one()) {
        return Err(Error::DomainError(format!("Hurwitz parameter x = {x} outside (0, 1]")));
    }
    if p.m == 0 || p.k == 0 {
        return Err(Error::DomainError("EMParams needs m >= 1 and k >= 1".into()));
    }
    let mut value = Real::zero();
    let mut deriv = Real::zero();
    for m in 0..p.m {
        let t = x + &Real::from_i64(m as i64);
        if with_derivative {
            let lt = t.ln();
            let term = pow_neg(&t, s, Some(&lt));
            deriv = deriv - &lt * &term;
            value = value + term;
        } else {
            value = value + pow_neg(&t, s, None);
        }
    }
    let big_n = x + &Real::from_i64(p.m as i64);
    let ln_n = big_n.ln();
    let n_pow = pow_neg(&big_n, s, Some(&ln_n)); // N^{-s}
    let n_1ms = &n_pow * &big_n; // N^{1-s}
    let sm1 = s - &Real::one();
    let tail = &n_1ms / &sm1;
    value = value + &tail + &n_pow / Real::from_i64(2);
    if with_derivative {
        deriv = deriv - &ln_n * &tail - &tail / &sm1 - &ln_n * &n_pow / Real::from_i64(2);
    }
    let weights = bernoulli_weights(p.k);
    let inv_n2 = (&big_n * &big_n).powi(-1);
    // rising product r = s (s+1) ... (s+2j-2) and its s-derivative
    let mut r = s.clone();
    let mut dr = Real::one();
    let mut pw = n_pow.clone() / &big_n; // N^{-s-1}
    let mut est = 0.0;
    for j in 1..=p.k + 1 {
        if j > 1 {
            for i in [2 * j - 3, 2 * j - 2] {
                let f = s + &Real::from_i64(i as i64);
                dr = &dr * &f + &r;
                r = &r * &f;
            }
            pw = &pw * &inv_n2;
        }
        let w = &weights[j - 1];
        let term = w * &r * &pw;
        let dterm = if with_derivative {
            Some(w * &(&dr - &(&ln_n * &r)) * &pw)
        } else {
            None
        };
        if j == p.k + 1 {
            est = term.abs().to_f64() + dterm.map_or(0.0, |d| d.abs().to_f64());
            break;
        }
        value = value + term;
        if let Some(d) = dterm {
            deriv = deriv + d;
        }
    }
    Ok(HurwitzHp { value, derivative: with_derivative.then_some(deriv), est_error: est })
}

/// Double-precision Hurwitz zeta result.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HurwitzValue {
    pub value: f64,
    pub derivative: Option<f64>,
    pub est_error: f64,
}

/// `zeta_H(s, x)` and optionally `d/ds zeta_H(s, x)` for `x` in `(0, 1]`.
pub fn hurwitz_zeta(s: f64, x: f64, p: EMParams, with_derivative: bool) -> Result<HurwitzValue> {
    let h = hurwitz_zeta_hp(&Real::from_f64(s), &Real::from_f64(x), p, with_derivative)?;
    Ok(HurwitzValue {
        value: h.value.to_f64(),
        derivative: h.derivative.map(|d| d.to_f64()),
        est_error: h.est_error,
    })
}

/// `(zeta_H(s, b/n), zeta_H'(s, b/n))` for `b = 1..=n`.
struct HurwitzRow {
    entries: Vec<(Real, Real)>,
    est_error: f64,
}

type TableKey = (u64, u64, usize, usize, usize);

fn hurwitz_row(n: u64, s: f64, p: EMParams) -> Result<Arc<HurwitzRow>> {
    static CACHE: OnceLock<Mutex<HashMap<TableKey, Arc<HurwitzRow>>>> = OnceLock::new();
    let key = (n, s.to_bits(), p.m, p.k, hp::precision_bits());
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().expect("hurwitz cache").get(&key) {
        return Ok(r.clone());
    }
    let sr = Real::from_f64(s);
    let rows = par::map_range(n as usize, |i| {
        let x = Real::from_i64(i as i64 + 1) / Real::from_i64(n as i64);
        hurwitz_zeta_hp(&sr, &x, p, true)
    });
    let mut entries = Vec::with_capacity(n as usize);
    let mut est = 0.0;
    for r in rows {
        let r = r?;
        est += r.est_error;
        entries.push((r.value, r.derivative.expect("derivative requested")));
    }
    let row = Arc::new(HurwitzRow { entries, est_error: est });
    cache.lock().expect("hurwitz cache").insert(key, row.clone());
    Ok(row)
}

/// High-precision `(L(s, chi), L'(s, chi))` using the modulus of `chi`.
#[derive(Clone, Debug)]
pub struct LHp {
    pub value: Complex,
    pub derivative: Complex,
    pub est_error: f64,
}

pub fn dirichlet_l_hp(s: f64, chi: &DirichletCharacter, p: EMParams) -> Result<LHp> {
    if s == 1.0 {
        return Err(Error::PoleAtOne);
    }
    let f = chi.modulus();
    let row = hurwitz_row(f, s, p)?;
    let m = chi.value_order();
    let mut v = Complex::zero();
    let mut d = Complex::zero();
    for a in 1..=f {
        let Some(k) = chi.value_exp(a as i64) else { continue };
        let c = Complex::unit_root(k as i64, m);
        let (h, dh) = &row.entries[(a - 1) as usize];
        v = &v + &c.scale(h);
        d = &d + &c.scale(dh);
    }
    let sr = Real::from_f64(s);
    let fr = Real::from_i64(f as i64);
    let ln_f = fr.ln();
    let f_pow = pow_neg(&fr, &sr, Some(&ln_f));
    let value = v.scale(&f_pow);
    let derivative = &d.scale(&f_pow) - &value.scale(&ln_f);
    let est = row.est_error * f_pow.to_f64().abs();
    Ok(LHp { value, derivative, est_error: est })
}

/// Double-precision `L(s, chi)` and optionally `L'(s, chi)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LNumeric {
    pub value: ComplexApprox,
    pub derivative: Option<ComplexApprox>,
    pub est_error: f64,
}

/// `L(s, chi) = f^(-s) sum_a chi(a) zeta_H(s, a/f)` for real `s != 1`.
pub fn dirichlet_l_numeric(s: f64, chi: &DirichletCharacter, p: EMParams, with_derivative: bool) -> Result<LNumeric> {
    let r = dirichlet_l_hp(s, chi, p)?;
    let hint = r.est_error.max(p.target_error);
    Ok(LNumeric {
        value: r.value.to_approx(hint),
        derivative: with_derivative.then(|| r.derivative.to_approx(hint)),
        est_error: r.est_error,
    })
}

/// High-precision `L'/L(chi_prim, 1 - l)`, cross-checked against the exact value.
pub fn log_derivative_ratio_hp(chi: &DirichletCharacter, l: u32, p: EMParams) -> Result<Complex> {
    let prim = chi.primitive_part();
    let exact = lvalues::l_value_nonpositive(&prim, l).value;
    if exact.is_zero() {
        return Err(Error::ParityMismatch { l });
    }
    let num = dirichlet_l_hp(1.0 - l as f64, &prim, p)?;
    let ex = exact.embed_hp(1)?;
    let rel = ((&num.value - &ex).abs() / ex.abs()).to_f64();
    if !(rel < 1e-9) {
        return Err(Error::PrecisionFailure(format!(
            "L(chi, {}) numeric vs exact relative gap {rel:e}",
            1 - l as i64
        )));
    }
    Ok(&num.derivative / &num.value)
}

/// `L'(chi_prim, 1 - l) / L(chi_prim, 1 - l)`; rejects a vanishing denominator.
pub fn log_derivative_ratio(chi: &DirichletCharacter, l: u32) -> Result<ComplexApprox> {
    log_derivative_ratio_with(chi, l, EMParams::default())
}

pub fn log_derivative_ratio_with(chi: &DirichletCharacter, l: u32, p: EMParams) -> Result<ComplexApprox> {
    Ok(log_derivative_ratio_hp(chi, l, p)?.to_approx(1e-12))
}

/// High-precision `(zeta_L(z, s), d/ds zeta_L(z, s))` for `z = zeta_n^u`.
pub fn lerch_numeric_hp(z: RootOfUnity, s: f64, p: EMParams) -> Result<(Complex, Complex, f64)> {
    let n = z.n;
    let row = hurwitz_row(n, s, p)?;
    let mut v = Complex::zero();
    let mut d = Complex::zero();
    for b in 1..=n {
        let c = Complex::unit_root(z.u * b as i64, n);
        let (h, dh) = &row.entries[(b - 1) as usize];
        v = &v + &c.scale(h);
        d = &d + &c.scale(dh);
    }
    let sr = Real::from_f64(s);
    let nr = Real::from_i64(n as i64);
    let ln_n = nr.ln();
    let n_pow = pow_neg(&nr, &sr, Some(&ln_n));
    let value = v.scale(&n_pow);
    let derivative = &d.scale(&n_pow) - &value.scale(&ln_n);
    Ok((value, derivative, row.est_error * n_pow.to_f64().abs()))
}

/// Coefficient of `x^k/k!` in `R~(zeta_n^u, x)` and in `R(zeta_n^u, x)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RGenusCoeff {
    pub n: u64,
    pub u: i64,
    pub k: u32,
    pub tilde_value: ComplexApprox,
    pub antisym_value: ComplexApprox,
    pub est_error: f64,
}

/// `2 zeta_L'(z, -k) + H_k zeta_L(z, -k)` in extended precision.
pub fn rtilde_hp(z: RootOfUnity, k: u32, p: EMParams) -> Result<(Complex, f64)> {
    let (v, d, est) = lerch_numeric_hp(z, -(k as f64), p)?;
    let h = Real::from_ratio(harmonic(k as u64).as_big());
    Ok((&d.scale(&Real::from_i64(2)) + &v.scale(&h), 3.0 * est))
}

pub fn rgenus_coeff(n: u64, u: i64, k: u32) -> Result<RGenusCoeff> {
    rgenus_coeff_with(n, u, k, EMParams::default())
}

pub fn rgenus_coeff_with(n: u64, u: i64, k: u32, p: EMParams) -> Result<RGenusCoeff> {
    let z = RootOfUnity::new(n, u);
    let (t, e1) = rtilde_hp(z, k, p)?;
    let (tc, e2) = rtilde_hp(z.conj(), k, p)?;
    let sign = if k % 2 == 0 { Real::one() } else { Real::from_i64(-1) };
    let half = Real::one() / Real::from_i64(2);
    let anti = (&t - &tc.scale(&sign)).scale(&half);
    let hint = (e1 + e2).max(p.target_error);
    Ok(RGenusCoeff {
        n,
        u: z.u,
        k,
        tilde_value: t.to_approx(hint),
        antisym_value: anti.to_approx(hint),
        est_error: e1 + e2,
    })
}

/// Both sides of the R-genus Fourier identity, and `|lhs - rhs|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RgFourier {
    pub lhs: ComplexApprox,
    pub rhs: ComplexApprox,
    pub residual: f64,
}

/// `sum_s R~_k(zeta^(u s)) chi(s)` against `tau(chi) conj(chi(u)) (2 L'(conj chi, -k) + H_k L(conj chi, -k))`.
pub fn rg_fourier_check(chi: &DirichletCharacter, u: i64, k: u32) -> Result<RgFourier> {
    rg_fourier_check_with(chi, u, k, EMParams::default())
}

pub fn rg_fourier_check_with(chi: &DirichletCharacter, u: i64, k: u32, p: EMParams) -> Result<RgFourier> {
    let n = chi.modulus();
    let m = chi.value_order();
    let mut lhs = Complex::zero();
    for &s in chi.group().units() {
        let (t, _) = rtilde_hp(RootOfUnity::new(n, u * s as i64), k, p)?;
        let c = Complex::unit_root(chi.value_exp(s as i64).expect("unit") as i64, m);
        lhs = &lhs + &(&t * &c);
    }
    let conj = chi.conj();
    let rhs = match conj.value_exp(u) {
        None => Complex::zero(),
        Some(e) => {
            let tau = gauss_sum(chi, 1).value.embed_hp(1)?;
            let l = dirichlet_l_hp(-(k as f64), &conj, p)?;
            let h = Real::from_ratio(harmonic(k as u64).as_big());
            let bracket = &l.derivative.scale(&Real::from_i64(2)) + &l.value.scale(&h);
            &(&tau * &Complex::unit_root(e as i64, m)) * &bracket
        }
    };
    let residual = (&lhs - &rhs).abs().to_f64();
    Ok(RgFourier { lhs: lhs.to_approx(1e-12), rhs: rhs.to_approx(1e-12), residual })
}
