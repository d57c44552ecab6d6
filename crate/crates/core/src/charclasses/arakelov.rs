use serde::Serialize;

use super::graded::GradedElement;
use crate::exactnum::{Rational, Scalar};

/// Formal arithmetic class `(x, eta)`: a geometric part `x` of degree `<= D`
/// and an analytic form `eta`, which sits one degree higher (`a(eta)` has
/// degree `deg eta + 1`), so `eta` is truncated at `D - 1`.
///
/// Products follow `x * a(eta) = a(x eta)` and `a(eta) a(eta') = 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "S: Serialize, S::Ctx: Serialize"))]
pub struct ArakelovElement<S: Scalar> {
    pub geometric: GradedElement<S>,
    pub analytic: GradedElement<S>,
}

impl<S: Scalar> ArakelovElement<S> {
    pub fn zero(ctx: &S::Ctx, trunc: usize) -> Self {
        ArakelovElement {
            geometric: GradedElement::zero(ctx, trunc),
            analytic: GradedElement::zero(ctx, trunc.saturating_sub(1)),
        }
    }

    pub fn from_geometric(x: GradedElement<S>) -> Self {
        let t = x.truncation();
        ArakelovElement { analytic: GradedElement::zero(x.ctx(), t.saturating_sub(1)), geometric: x }
    }

    /// `a(eta)`; `eta` must be truncated at `D - 1`.
    pub fn from_analytic(eta: GradedElement<S>) -> Self {
        let t = eta.truncation() + 1;
        ArakelovElement { geometric: GradedElement::zero(eta.ctx(), t), analytic: eta }
    }

    pub fn truncation(&self) -> usize {
        self.geometric.truncation()
    }

    pub fn add(&self, o: &Self) -> Self {
        ArakelovElement { geometric: self.geometric.add(&o.geometric), analytic: self.analytic.add(&o.analytic) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ArakelovElement { geometric: self.geometric.sub(&o.geometric), analytic: self.analytic.sub(&o.analytic) }
    }

    pub fn scale_q(&self, q: &Rational) -> Self {
        ArakelovElement { geometric: self.geometric.scale_q(q), analytic: self.analytic.scale_q(q) }
    }

    pub fn is_zero(&self) -> bool {
        self.geometric.is_zero() && self.analytic.is_zero()
    }

    pub fn is_analytic(&self) -> bool {
        self.geometric.is_zero()
    }
}

/// `(x, eta)(x', eta') = (x x', x eta' + x' eta)`.
pub fn arakelov_mul<S: Scalar>(a: &ArakelovElement<S>, b: &ArakelovElement<S>) -> ArakelovElement<S> {
    let ta = a.analytic.truncation();
    let cross = a
        .geometric
        .with_truncation(ta)
        .mul(&b.analytic)
        .add(&b.geometric.with_truncation(ta).mul(&a.analytic));
    ArakelovElement { geometric: a.geometric.mul(&b.geometric), analytic: cross }
}

/// The geometric part.
pub fn forget<S: Scalar>(a: &ArakelovElement<S>) -> GradedElement<S> {
    a.geometric.clone()
}
