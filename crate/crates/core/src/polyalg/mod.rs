//! Exact polynomial algebra: polynomials, polynomial vector fields, Lie
//! brackets, bracket-generating tests and the continuum exponent formula.

mod field;
mod poly;

pub use field::{
    apply_field, bracket_determinant, continuum_exponents, generated_algebra, hormander_check,
    independent_subset, iterated_bracket, lie_bracket, BracketWord, ContinuumExponents, GeneratedAlgebra,
    HormanderReport, NilpotencyStep, VectorField, DEFAULT_STEP_CAP,
};
pub use poly::{Monomial, Poly};
