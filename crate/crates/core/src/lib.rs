//! Exact algebra for polynomial flows, curve families and incidence counting.

pub mod algebraic;
pub mod error;
pub mod experiment;
pub mod families;
pub mod flows;
pub mod hp;
pub mod incidence;
pub mod liealg;
pub mod linalg;
pub mod models;
pub mod modular;
pub mod partition;
pub mod polyalg;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Rational;
