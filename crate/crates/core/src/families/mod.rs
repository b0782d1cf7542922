//! Curve and point families from the Heisenberg, moment-curve, X-ray and
//! Loomis-Whitney constructions, and the square-triple counting behind the
//! tangency example.

mod numtheory;
mod spec;

pub use crate::flows::{load_family, save_family};
pub use numtheory::{count_square_triples, squarefree_part};
pub use spec::{generate, parabola, FamilyKind, FamilySpec, Span};
