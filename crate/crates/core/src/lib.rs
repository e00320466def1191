//! Exact arithmetic for the endomorphism algebras of Gross Q-curves over
//! imaginary quadratic fields with class group `C2 x C2`.

pub mod arith;
pub mod checks;
pub mod cocycle;
pub mod crep;
pub mod error;
pub mod forms;
pub mod hecke;
pub mod multiquad;
pub mod nakamura;
pub mod quad;
pub mod report;

pub type Rational = num_rational::BigRational;

pub use error::{Error, Result};
