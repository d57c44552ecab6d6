use serde::{Deserialize, Serialize};

use crate::characters::{enumerate_characters, unit_group, ClassFunction, DirichletCharacter, Parity};
use crate::error::{Error, Result};
use crate::exactnum::{euler_phi, ComplexApprox, CyclotomicNumber, Rational};
use crate::lderiv::log_derivative_ratio;

/// A `{0, 1}`-valued function on `(Z/f)^*`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CMTypeData {
    pub conductor: u64,
    pub phi: ClassFunction,
}

impl CMTypeData {
    pub fn new(conductor: u64, phi: ClassFunction) -> Result<Self> {
        if phi.modulus() != conductor {
            return Err(Error::ModulusMismatch(phi.modulus(), conductor));
        }
        let binary = phi.values().values().all(|v| v.is_zero() || v.is_one());
        if !binary {
            return Err(Error::DomainError("phi must be 0/1 valued".into()));
        }
        Ok(CMTypeData { conductor, phi })
    }

    /// One bit per unit mod `f`, units in ascending order.
    pub fn from_bits(conductor: u64, bits: &str) -> Result<Self> {
        let units = unit_group(conductor).units().to_vec();
        if bits.len() != units.len() || !bits.chars().all(|c| c == '0' || c == '1') {
            return Err(Error::Parse(format!(
                "phi needs {} binary digits for conductor {conductor}, got {bits:?}",
                units.len()
            )));
        }
        let support: Vec<u64> = units.iter().zip(bits.chars()).filter(|(_, b)| *b == '1').map(|(&u, _)| u).collect();
        Self::new(conductor, ClassFunction::indicator(conductor, &support))
    }

    /// `phi(t) + phi(-t) = 1` for all `t`.
    pub fn is_cm_type(&self) -> bool {
        let one = CyclotomicNumber::one(1);
        self.phi.values().iter().all(|(&t, v)| {
            let w = self.phi.value(-(t as i64)).expect("unit");
            (v + w).to_minimal_order() == one
        })
    }
}

fn odd_characters(f: u64) -> Vec<DirichletCharacter> {
    enumerate_characters(f).into_iter().filter(|c| c.parity() == Parity::Odd).collect()
}

fn weighted_sum(cm: &CMTypeData, weight: impl Fn(&DirichletCharacter) -> Result<CyclotomicNumber>) -> Result<ComplexApprox> {
    let mut acc = num_complex::Complex64::new(0.0, 0.0);
    let mut hint: f64 = 0.0;
    for chi in odd_characters(cm.conductor) {
        let w = weight(&chi)?;
        if w.is_zero() {
            continue;
        }
        let r = log_derivative_ratio(&chi, 1)?;
        hint = hint.max(r.precision_hint);
        acc += r.to_c64() * w.to_c64() * 2.0;
    }
    let scale = -(euler_phi(cm.conductor) as f64);
    Ok(ComplexApprox::from_c64(acc * scale, hint))
}

/// `-phi(f) sum_{chi odd} 2 L'/L(chi_prim, 0) <Phi, chi> <Phi^dual, chi>`.
pub fn colmez_rhs(cm: &CMTypeData) -> Result<ComplexApprox> {
    let dual = cm.phi.dual();
    weighted_sum(cm, |chi| {
        let c = ClassFunction::from_character(chi);
        Ok(&cm.phi.inner_product(&c)? * &dual.inner_product(&c)?)
    })
}

/// Same sum with `<Phi * Phi^dual, chi>` from the explicit convolution.
pub fn colmez_brute_force(cm: &CMTypeData) -> Result<ComplexApprox> {
    let conv = cm.phi.convolution(&cm.phi.dual())?;
    weighted_sum(cm, |chi| conv.inner_product(&ClassFunction::from_character(chi)))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColmezReport {
    pub conductor: u64,
    pub is_cm_type: bool,
    pub value: ComplexApprox,
    pub brute_force: ComplexApprox,
    pub route_gap: f64,
}

impl ColmezReport {
    pub fn compute(cm: &CMTypeData) -> Result<Self> {
        let value = colmez_rhs(cm)?;
        let brute_force = colmez_brute_force(cm)?;
        Ok(ColmezReport {
            conductor: cm.conductor,
            is_cm_type: cm.is_cm_type(),
            route_gap: value.distance(brute_force),
            value,
            brute_force,
        })
    }
}

/// Odd-character expansion of a class function and its reconstruction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FourierInversion {
    pub coefficients: Vec<(usize, CyclotomicNumber)>,
    pub reconstruction: ClassFunction,
    pub residual: ClassFunction,
    pub residual_zero: bool,
}

/// Expands `F` as `sum_{chi odd} <F, chi> chi` and compares with the odd
/// part `(F(t) - F(-t)) / 2`, which is `F` itself for odd input.
pub fn fourier_inversion_check(f: &ClassFunction) -> Result<FourierInversion> {
    let n = f.modulus();
    let mut rec = ClassFunction::constant(n, &Rational::zero());
    let mut coefficients = Vec::new();
    for chi in odd_characters(n) {
        let c = ClassFunction::from_character(&chi);
        let coef = f.inner_product(&c)?;
        rec = rec.add(&c.scale(&coef)?)?;
        coefficients.push((chi.index(), coef.to_minimal_order()));
    }
    let half = Rational::new(1, 2);
    let odd_part = f.map(|t, v| (v - f.value(-(t as i64)).expect("unit")).scale(&half));
    let residual = rec.add(&odd_part.scale(&CyclotomicNumber::from_int(1, -1))?)?;
    let rec = rec.map(|_, v| v.to_minimal_order());
    let residual = residual.map(|_, v| v.to_minimal_order());
    Ok(FourierInversion { coefficients, residual_zero: residual.is_zero(), reconstruction: rec, residual })
}
