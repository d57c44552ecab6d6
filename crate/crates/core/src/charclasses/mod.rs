//! Characteristic classes of formal bundles via the splitting principle.
//!
//! A bundle is a list of Chern roots (rational linear forms in degree-1
//! symbols) carrying `Z/n` weights, so every identity here is a polynomial
//! identity checked exactly.

mod arakelov;
mod bundle;
mod graded;
mod identities;

pub use arakelov::{arakelov_mul, forget, ArakelovElement};
pub use bundle::{
    c_top, c_total, ch, ch_equivariant, lambda_minus1, lambda_op, td, to_cyclotomic, FormalBundle, Root,
    VirtualBundle,
};
pub use graded::{GradedElement, Monomial, Var};
pub use identities::{
    borel_serre_residual, equivariant_gauss_bonnet_residual, grr_curve, kappa_residual, woods_hole_check,
    woods_hole_sides, Matrix,
};
