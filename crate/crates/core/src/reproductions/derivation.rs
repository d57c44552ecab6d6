//! Checked rewrite chains in the formal arithmetic ring.
//!
//! A fact is an equation `P = a(eta)` where `P` is a polynomial in arithmetic
//! symbols and `a(eta)` is analytic. New facts come only from multiplying by
//! an arithmetic polynomial, squaring (analytic classes square to zero) and
//! rational linear combination; analytic values are compared modulo the
//! geometric relations implied by the facts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::characters::{enumerate_characters, DirichletCharacter};
use crate::charclasses::{arakelov_mul, ArakelovElement, GradedElement, Monomial, Var};
use crate::error::{Error, Result};
use crate::exactnum::{ComplexApprox, Rational};
use crate::hp::Real;
use crate::lderiv::{dirichlet_l_hp, log_derivative_ratio, EMParams};

type Poly = GradedElement<Rational>;

#[derive(Clone, Debug)]
pub struct Fact {
    pub name: String,
    pub lhs: Poly,
    pub value: ArakelovElement<Rational>,
    assumed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepReport {
    pub name: String,
    pub statement: String,
    pub ok: bool,
}

pub struct Derivation {
    trunc: usize,
    forget: BTreeMap<Var, Var>,
    names: BTreeMap<Var, &'static str>,
    facts: Vec<Fact>,
    steps: Vec<StepReport>,
}

fn solve(vectors: &[&Poly], target: &Poly) -> Option<Vec<Rational>> {
    let mut keys: Vec<&Monomial> = vectors.iter().flat_map(|v| v.terms().keys()).chain(target.terms().keys()).collect();
    keys.sort();
    keys.dedup();
    let cols = vectors.len();
    let mut m: Vec<Vec<Rational>> = keys
        .iter()
        .map(|k| {
            let mut row: Vec<Rational> = vectors.iter().map(|v| v.coeff(k)).collect();
            row.push(target.coeff(k));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=cols {
                    let t = &f * &m[r][j];
                    m[i][j] = &m[i][j] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

fn split_symbols(m: &Monomial) -> (Monomial, Monomial) {
    let (geo, sym): (Vec<_>, Vec<_>) = m.powers().iter().partition(|(v, _)| v.degree > 0);
    (Monomial::from_powers(geo), Monomial::from_powers(sym))
}

fn monomials_up_to(vars: &[Var], d: usize) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    let mut frontier = vec![Monomial::one()];
    for _ in 0..d {
        let mut next = Vec::new();
        for m in &frontier {
            for &v in vars {
                let n = m.mul(&Monomial::var(v));
                if n.degree() <= d && !out.contains(&n) && !next.contains(&n) {
                    next.push(n);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

impl Derivation {
    /// `forget` maps each arithmetic symbol to its geometric image.
    pub fn new(trunc: usize, forget: &[(Var, Var)], names: &[(Var, &'static str)]) -> Self {
        Derivation {
            trunc,
            forget: forget.iter().copied().collect(),
            names: names.iter().copied().collect(),
            facts: Vec::new(),
            steps: Vec::new(),
        }
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn symbol(&self, v: Var) -> Poly {
        Poly::var(v, &(), self.trunc)
    }

    pub fn constant(&self, q: Rational) -> Poly {
        Poly::constant(q, self.trunc)
    }

    pub fn facts(&self) -> &[Fact] {
        &self.facts
    }

    pub fn steps(&self) -> &[StepReport] {
        &self.steps
    }

    pub fn all_ok(&self) -> bool {
        self.steps.iter().all(|s| s.ok)
    }

    pub fn forget_poly(&self, p: &Poly) -> Poly {
        p.substitute(|v| Poly::var(*self.forget.get(&v).unwrap_or(&v), &(), self.trunc))
    }

    fn analytic(&self, eta: &Poly) -> ArakelovElement<Rational> {
        ArakelovElement::from_analytic(eta.with_truncation(self.trunc - 1))
    }

    pub fn render(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in p.terms().iter().enumerate() {
            let name = m
                .powers()
                .iter()
                .map(|(v, e)| {
                    let n = self.names.get(v).map_or_else(|| v.to_string(), |n| n.to_string());
                    if *e == 1 { n } else { format!("{n}^{e}") }
                })
                .collect::<Vec<_>>()
                .join("*");
            let (neg, mag) = if c.is_negative() { (true, c.abs()) } else { (false, c.clone()) };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            match (m.is_one(), mag.is_one()) {
                (true, _) => s.push_str(&mag.to_string()),
                (false, true) => s.push_str(&name),
                (false, false) => s.push_str(&format!("{mag}*{name}")),
            }
        }
        s
    }

    fn statement(&self, lhs: &Poly, eta: &Poly) -> String {
        format!("{} = a({})", self.render(lhs), self.render(eta))
    }

    fn push(&mut self, name: &str, lhs: Poly, value: ArakelovElement<Rational>, assumed: bool) -> usize {
        self.facts.push(Fact { name: name.into(), lhs, value, assumed });
        self.facts.len() - 1
    }

    fn record(&mut self, name: &str, statement: String, ok: bool) {
        self.steps.push(StepReport { name: name.into(), statement, ok });
    }

    /// An input relation `lhs = a(eta)`.
    pub fn assume(&mut self, name: &str, lhs: Poly, eta: Poly) -> usize {
        let st = self.statement(&lhs, &eta);
        self.record(name, st, true);
        let v = self.analytic(&eta);
        self.push(name, lhs, v, true)
    }

    /// `q * lhs = q * a(eta) = a(forget(q) eta)`.
    pub fn mul(&mut self, name: &str, id: usize, q: &Poly) -> usize {
        let f = &self.facts[id];
        let lhs = f.lhs.mul(q);
        let value = arakelov_mul(&ArakelovElement::from_geometric(self.forget_poly(q)), &f.value);
        let st = self.statement(&lhs, &value.analytic);
        self.record(name, st, value.is_analytic());
        self.push(name, lhs, value, false)
    }

    /// `lhs^2 = a(eta)^2 = 0`.
    pub fn square(&mut self, name: &str, id: usize) -> usize {
        let f = &self.facts[id];
        let lhs = f.lhs.mul(&f.lhs);
        let value = arakelov_mul(&f.value, &f.value);
        let st = self.statement(&lhs, &value.analytic);
        self.record(name, st, value.is_zero());
        self.push(name, lhs, value, false)
    }

    /// Geometric relations: the images of the assumed left-hand sides.
    pub fn relations(&self) -> Vec<Poly> {
        self.facts.iter().filter(|f| f.assumed).map(|f| self.forget_poly(&f.lhs)).filter(|g| !g.is_zero()).collect()
    }

    /// Whether `g` lies in the ideal generated by [`Self::relations`], up to
    /// the truncation of `g`.
    pub fn in_ideal(&self, g: &Poly) -> bool {
        if g.is_zero() {
            return true;
        }
        let d = g.truncation();
        let geo_vars: Vec<Var> = {
            let mut v: Vec<Var> = self.forget.values().copied().collect();
            v.sort();
            v.dedup();
            v
        };
        let mut sym_parts: Vec<Monomial> = g.terms().keys().map(|m| split_symbols(m).1).collect();
        sym_parts.sort();
        sym_parts.dedup();
        let mut span = Vec::new();
        for r in self.relations() {
            let r = r.with_truncation(d);
            let low = r.terms().keys().map(Monomial::degree).min().unwrap_or(0);
            for m in monomials_up_to(&geo_vars, d.saturating_sub(low)) {
                for s in &sym_parts {
                    let t = r.mul(&Poly::monomial(m.mul(s), Rational::one(), d));
                    if !t.is_zero() {
                        span.push(t);
                    }
                }
            }
        }
        let refs: Vec<&Poly> = span.iter().collect();
        solve(&refs, g).is_some()
    }

    /// A geometric consequence `g = 0`.
    pub fn check_relation(&mut self, name: &str, g: &Poly) -> bool {
        let ok = self.in_ideal(g);
        let st = format!("{} = 0", self.render(g));
        self.record(name, st, ok);
        ok
    }

    /// A printed equation `lhs = a(eta)`, valid if it is a rational
    /// combination of the facts so far.
    pub fn derive(&mut self, name: &str, lhs: Poly, eta: Poly) -> Option<usize> {
        let st = self.statement(&lhs, &eta);
        let refs: Vec<&Poly> = self.facts.iter().map(|f| &f.lhs).collect();
        let ok = solve(&refs, &lhs).and_then(|c| {
            let mut v = ArakelovElement::zero(&(), self.trunc);
            for (f, c) in self.facts.iter().zip(&c) {
                if !c.is_zero() {
                    v = v.add(&f.value.scale_q(c));
                }
            }
            let delta = v.analytic.sub(&eta.with_truncation(self.trunc - 1));
            (v.is_analytic() && self.in_ideal(&delta)).then_some(v)
        });
        let done = ok.is_some();
        self.record(name, st, done);
        ok.map(|v| self.push(name, lhs, v, false))
    }

    /// A side condition that is not an equation in the ring.
    pub fn check(&mut self, name: &str, statement: String, ok: bool) {
        self.record(name, statement, ok);
    }
}

/// Substitute numeric values for the degree-0 symbols and read off the
/// coefficient of the geometric monomial `m`.
fn numeric_coefficient(p: &Poly, m: &Monomial, values: &BTreeMap<Var, f64>) -> f64 {
    p.terms()
        .iter()
        .filter_map(|(k, c)| {
            let (geo, sym) = split_symbols(k);
            (geo == *m).then(|| {
                let s: f64 = sym.powers().iter().map(|(v, e)| values[v].powi(*e as i32)).product();
                c.to_f64() * s
            })
        })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivationReport {
    pub name: String,
    pub steps: Vec<StepReport>,
    pub symbolic_ok: bool,
    pub result: String,
    pub coefficient: ComplexApprox,
    pub brackets: BTreeMap<String, f64>,
    pub factorization_residual: Option<f64>,
}

fn real_ratio(chi: &DirichletCharacter, l: u32) -> Result<(f64, f64)> {
    let r = log_derivative_ratio(chi, l)?;
    if r.imag.abs() > 1e-12 {
        return Err(Error::PrecisionFailure(format!("log-derivative of a real character has imaginary part {}", r.imag)));
    }
    Ok((r.real, r.precision_hint))
}

const A: Var = Var::new(0, 1);
const B: Var = Var::new(1, 1);
const GA: Var = Var::new(10, 1);
const GB: Var = Var::new(11, 1);
const LAMBDA_Q: Var = Var::new(20, 0);
const LAMBDA_CHI: Var = Var::new(21, 0);
const LAMBDA_K: Var = Var::new(22, 0);
const FINITE: Var = Var::new(23, 0);

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// `2 lambda + 1` for a bracket symbol `lambda`.
fn beta(d: &Derivation, lambda: Var) -> Poly {
    d.symbol(lambda).scale_q(&q(2, 1)).add(&d.constant(q(1, 1)))
}

/// The imaginary quadratic chain ending in
/// `c1(f_* Omega)^2 = -2 [2 zeta'(-1)/zeta(-1) + 1] c1(f_* Omega)`.
pub fn kry_derivation() -> Result<DerivationReport> {
    let mut d = Derivation::new(
        2,
        &[(A, GA), (B, GB)],
        &[(A, "a"), (B, "b"), (GA, "A"), (GB, "B"), (LAMBDA_Q, "lq"), (LAMBDA_CHI, "lchi"), (FINITE, "r")],
    );
    let (a, b, ga, gb) = (d.symbol(A), d.symbol(B), d.symbol(GA), d.symbol(GB));
    // ranks of the tau and conj(tau) pieces of f_* Omega, against chi = (1, -1)
    let rho = Rational::from_int(1 - 1);
    let chi_eq = d.assume(
        "chi-equation",
        a.sub(&b).scale_q(&q(2, 1)),
        d.symbol(LAMBDA_CHI).scale_q(&(-Rational::from_int(2) * rho)).add(&d.symbol(FINITE)),
    );
    d.square("square", chi_eq);
    d.derive("expand square", a.mul(&a).add(&b.mul(&b)).sub(&a.mul(&b).scale_q(&q(2, 1))), d.constant(q(0, 1)));
    let bq = beta(&d, LAMBDA_Q);
    let ab_sum = ga.add(&gb);
    d.assume("mu2-equation", a.mul(&a).add(&b.mul(&b)), bq.mul(&ab_sum).neg());
    let s = a.add(&b);
    let s2 = s.mul(&s);
    d.derive("sum square", s2.sub(&a.mul(&a).add(&b.mul(&b)).scale_q(&q(2, 1))), d.constant(q(0, 1)));
    let target = bq.mul(&ab_sum).scale_q(&q(-2, 1));
    let fin = d.derive("final", s2.clone(), target.clone());
    let free = !target.terms().keys().any(|m| m.exponent(FINITE) > 0);
    d.check("finite terms unused", "result does not involve r".into(), free);

    let (lq, hint) = real_ratio(&DirichletCharacter::trivial(1), 2)?;
    let vals = BTreeMap::from([(LAMBDA_Q, lq)]);
    let coef = numeric_coefficient(&target, &Monomial::var(GA), &vals);
    let coef_b = numeric_coefficient(&target, &Monomial::var(GB), &vals);
    d.check("symmetric coefficient", format!("coefficient of A = coefficient of B = {coef}"), coef == coef_b);
    Ok(DerivationReport {
        name: "kry".into(),
        symbolic_ok: fin.is_some() && d.all_ok(),
        result: d.statement(&s2, &target),
        steps: d.steps().to_vec(),
        coefficient: ComplexApprox::new(coef, 0.0, 4.0 * hint),
        brackets: BTreeMap::from([("zeta'(-1)/zeta(-1)".to_string(), lq)]),
        factorization_residual: None,
    })
}

/// The quadratic character of conductor 5.
pub fn quadratic_character_mod5() -> DirichletCharacter {
    enumerate_characters(5).into_iter().find(|c| c.value_order() == 2).expect("mod 5 has a quadratic character")
}

fn factorization_residual(chi: &DirichletCharacter, lq: f64, lchi: f64) -> Result<f64> {
    // 4-point stencil on zeta(s) L(chi, s) around s = -1
    let h = 1.0 / 1024.0;
    let p = EMParams::default();
    let f = |s: f64| -> Result<Real> {
        let z = dirichlet_l_hp(s, &DirichletCharacter::trivial(1), p)?.value.re;
        let l = dirichlet_l_hp(s, chi, p)?.value.re;
        Ok(&z * &l)
    };
    let (m2, m1, p1, p2) = (f(-1.0 - 2.0 * h)?, f(-1.0 - h)?, f(-1.0 + h)?, f(-1.0 + 2.0 * h)?);
    let eight = Real::from_i64(8);
    let num = &(&(&m2 - &p2) + &(&eight * &p1)) - &(&eight * &m1);
    let deriv = num / Real::from_f64(12.0 * h);
    let ratio = (deriv / f(-1.0)?).to_f64();
    Ok((ratio - lq - lchi).abs())
}

/// The real quadratic chain ending in
/// `c1(f_* Omega)^3 = -(2 zeta'/zeta(-1) + 2 zeta_K'/zeta_K(-1) + 3) c1(Omega)^2`.
pub fn bbk_derivation() -> Result<DerivationReport> {
    let mut d = Derivation::new(
        3,
        &[(A, GA), (B, GB)],
        &[(A, "x"), (B, "y"), (GA, "X"), (GB, "Y"), (LAMBDA_Q, "lq"), (LAMBDA_CHI, "lchi"), (LAMBDA_K, "lK")],
    );
    let (x, y, gx, gy) = (d.symbol(A), d.symbol(B), d.symbol(GA), d.symbol(GB));
    let (bq, bc) = (beta(&d, LAMBDA_Q), beta(&d, LAMBDA_CHI));
    let (sum, diff) = (gx.add(&gy), gx.sub(&gy));
    let (x2, y2) = (x.mul(&x), y.mul(&y));
    d.assume("trivial character", x2.add(&y2), bq.mul(&sum).neg());
    d.assume("quadratic character", x2.sub(&y2), bc.mul(&diff).neg());
    d.check_relation("nilpotence X", &gx.mul(&gx));
    d.check_relation("nilpotence Y", &gy.mul(&gy));
    let half = q(-1, 2);
    let plus = bq.mul(&sum).add(&bc.mul(&diff));
    let minus = bq.mul(&sum).sub(&bc.mul(&diff));
    let g1 = d.derive("Id part squared", x2.clone(), plus.scale_q(&half));
    let g2 = d.derive("tau0 part squared", y2.clone(), minus.scale_q(&half));
    let (Some(g1), Some(g2)) = (g1, g2) else {
        return Err(Error::SymbolicMismatch("could not isolate the squares".into()));
    };
    let three = q(3, 1);
    let m1 = x.add(&y.scale_q(&three));
    let m2 = y.add(&x.scale_q(&three));
    d.mul("times x + 3y", g1, &m1);
    d.mul("times y + 3x", g2, &m2);
    let s = x.add(&y);
    let cube = s.mul(&s).mul(&s);
    let printed = d
        .forget_poly(&m1)
        .mul(&plus)
        .add(&d.forget_poly(&m2).mul(&minus))
        .scale_q(&half);
    d.derive("cube expansion", cube.clone(), printed);
    let coeff = bq.scale_q(&q(2, 1)).add(&bc);
    let target = coeff.mul(&sum).mul(&sum).neg();
    let fin = d.derive("collected", cube.clone(), target.clone());
    let via_k = d.symbol(LAMBDA_Q).add(&d.symbol(LAMBDA_K)).scale_q(&q(2, 1)).add(&d.constant(three.clone()));
    let substituted = via_k.substitute(|v| {
        if v == LAMBDA_K {
            d.symbol(LAMBDA_Q).add(&d.symbol(LAMBDA_CHI))
        } else {
            d.symbol(v)
        }
    });
    d.check(
        "zeta_K factorization",
        format!("{} = {} with lK = lq + lchi", d.render(&coeff), d.render(&via_k)),
        substituted == coeff,
    );

    let chi = quadratic_character_mod5();
    let (lq, h1) = real_ratio(&DirichletCharacter::trivial(1), 2)?;
    let (lc, h2) = real_ratio(&chi, 2)?;
    let vals = BTreeMap::from([(LAMBDA_Q, lq), (LAMBDA_CHI, lc)]);
    let x_sq = Monomial::from_powers(vec![(GA, 2)]);
    let coef = numeric_coefficient(&target, &x_sq, &vals);
    let residual = factorization_residual(&chi, lq, lc)?;
    Ok(DerivationReport {
        name: "bbk".into(),
        symbolic_ok: fin.is_some() && d.all_ok(),
        result: d.statement(&cube, &via_k.mul(&sum).mul(&sum).neg()),
        steps: d.steps().to_vec(),
        coefficient: ComplexApprox::new(coef, 0.0, 4.0 * (h1 + h2)),
        brackets: BTreeMap::from([
            ("zeta'(-1)/zeta(-1)".to_string(), lq),
            ("L'(chi0,-1)/L(chi0,-1)".to_string(), lc),
            ("zeta_K'(-1)/zeta_K(-1)".to_string(), lq + lc),
        ]),
        factorization_residual: Some(residual),
    })
}
