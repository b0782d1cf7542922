//! Nilpotent Lie algebras given by structure constants: BCH multiplication,
//! weak Malcev bases and pushforward fields with polynomial flows.

mod algebra;
mod bch;
mod malcev;

pub use algebra::{check_algebra, AlgebraReport, NilpotentAlgebra, MAX_STEP};
pub use bch::{bch_poly, bch_product};
pub use malcev::{bracket_sign, pushforward_fields, weak_malcev_basis, weak_malcev_basis_with_first, MalcevBasis};
