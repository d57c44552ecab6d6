use arith_lfun::characters::{character, enumerate_characters};
use arith_lfun::lderiv::{
    dirichlet_l_numeric, hurwitz_zeta, log_derivative_ratio, log_derivative_ratio_with, rg_fourier_check,
    EMParams,
};
use arith_lfun::lvalues::bernoulli_poly;
use arith_lfun::exactnum::Rational;
use arith_lfun::Error;
use std::f64::consts::PI;

/// `sum_{m<N} (m+x)^-s` plus the first Euler-Maclaurin tail terms.
fn hurwitz_oracle(s: f64, x: f64) -> f64 {
    let n = 2000;
    let head: f64 = (0..n).map(|m| (m as f64 + x).powf(-s)).sum();
    let t = n as f64 + x;
    head + t.powf(1.0 - s) / (s - 1.0) + 0.5 * t.powf(-s) + s / 12.0 * t.powf(-s - 1.0)
}

#[test]
fn hurwitz_at_nonpositive_integers() {
    for k in 0..=6usize {
        let b = bernoulli_poly(k + 1);
        for j in 1..=6i64 {
            let x = Rational::new(j, 6);
            let expect = -(b.eval(&x) / Rational::from_int(k as i64 + 1)).to_f64();
            let v = hurwitz_zeta(-(k as f64), x.to_f64(), EMParams::default(), false).unwrap();
            assert!((v.value - expect).abs() < 1e-11, "k = {k}, x = {j}/6: {} vs {expect}", v.value);
        }
    }
}

#[test]
fn hurwitz_at_positive_arguments() {
    let z2 = hurwitz_zeta(2.0, 1.0, EMParams::default(), false).unwrap().value;
    assert!((z2 - PI * PI / 6.0).abs() < 1e-13);
    let h = hurwitz_zeta(2.0, 0.5, EMParams::default(), false).unwrap().value;
    assert!((h - PI * PI / 2.0).abs() < 1e-12);
    for (s, x) in [(2.5, 0.25), (3.0, 0.7), (1.5, 1.0), (4.25, 0.1)] {
        let v = hurwitz_zeta(s, x, EMParams::default(), false).unwrap().value;
        let o = hurwitz_oracle(s, x);
        assert!((v - o).abs() < 1e-10 * o.abs(), "s = {s}, x = {x}: {v} vs {o}");
    }
}

#[test]
fn hurwitz_derivative_at_zero() {
    // d/ds zeta_H(0, x) = log Gamma(x) - log(2 pi) / 2
    let d1 = hurwitz_zeta(0.0, 1.0, EMParams::default(), true).unwrap().derivative.unwrap();
    assert!((d1 + 0.5 * (2.0 * PI).ln()).abs() < 1e-12);
    let dh = hurwitz_zeta(0.0, 0.5, EMParams::default(), true).unwrap().derivative.unwrap();
    assert!((dh + 0.5 * 2f64.ln()).abs() < 1e-12);
}

#[test]
fn hurwitz_rejects_bad_input() {
    assert!(matches!(hurwitz_zeta(1.0, 0.5, EMParams::default(), false), Err(Error::PoleAtOne)));
    assert!(matches!(hurwitz_zeta(0.5, 0.0, EMParams::default(), false), Err(Error::DomainError(_))));
    assert!(matches!(hurwitz_zeta(0.5, 1.5, EMParams::default(), false), Err(Error::DomainError(_))));
}

#[test]
fn gaussian_log_derivative() {
    // L(chi_4, 0) = 1/2 and L'(chi_4, 0) = log(Gamma(1/4)^2 / (2 pi sqrt 2))
    let gamma_quarter: f64 = 3.625_609_908_221_908;
    let expect = 2.0 * (gamma_quarter * gamma_quarter / (2.0 * PI * 2f64.sqrt())).ln();
    let r = log_derivative_ratio(&character(4, 1).unwrap(), 1).unwrap();
    assert!((r.real - expect).abs() < 1e-12, "{r:?}");
    assert!(r.imag.abs() < 1e-14);
}

#[test]
fn log_derivative_parity_mismatch() {
    let chi4 = character(4, 1).unwrap();
    assert!(matches!(log_derivative_ratio(&chi4, 2), Err(Error::ParityMismatch { l: 2 })));
    let trivial = character(1, 0).unwrap();
    assert!(matches!(log_derivative_ratio(&trivial, 3), Err(Error::ParityMismatch { .. })));
}

#[test]
fn log_derivative_stable_under_refinement() {
    let p = EMParams::default();
    for n in 1..=12 {
        for chi in enumerate_characters(n) {
            for l in 1..=3 {
                let Ok(a) = log_derivative_ratio_with(&chi, l, p) else { continue };
                let b = log_derivative_ratio_with(&chi, l, p.refined()).unwrap();
                assert!(a.distance(b) < 1e-9, "n = {n}, index {}, l = {l}", chi.index());
            }
        }
    }
}

#[test]
fn dirichlet_l_at_positive_integers() {
    let chi4 = character(4, 1).unwrap();
    let catalan = 0.915_965_594_177_219;
    let v = dirichlet_l_numeric(2.0, &chi4, EMParams::default(), false).unwrap();
    assert!((v.value.real - catalan).abs() < 1e-12, "{v:?}");
    let v = dirichlet_l_numeric(3.0, &chi4, EMParams::default(), false).unwrap();
    assert!((v.value.real - PI.powi(3) / 32.0).abs() < 1e-12, "{v:?}");
}

#[test]
fn rgenus_fourier_identity() {
    for n in 3..=8 {
        for chi in enumerate_characters(n).into_iter().filter(|c| c.is_primitive()) {
            for u in 0..n as i64 {
                for k in 0..=2 {
                    let r = rg_fourier_check(&chi, u, k).unwrap();
                    assert!(r.residual < 1e-20, "n = {n}, u = {u}, k = {k}: {}", r.residual);
                }
            }
        }
    }
}
