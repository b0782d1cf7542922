//! Univariate polynomials over Q, resultants, real root isolation and exact
//! real algebraic numbers.

mod real;
mod upoly;

pub use real::{signum, AlgebraicReal};
pub use upoly::{coeffs_in, det_over_upoly, resultant, simplest_between, RootInterval, UPoly};
