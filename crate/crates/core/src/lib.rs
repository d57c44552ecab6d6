//! Dirichlet L-values, Lerch zeta values and a formal characteristic-class
//! calculus, with exact cyclotomic arithmetic underneath.

pub mod characters;
pub mod charclasses;
pub mod error;
pub mod exactnum;
pub mod hp;
pub mod lderiv;
pub mod lvalues;
pub mod par;
pub mod reproductions;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
