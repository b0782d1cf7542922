//! Vanishing polynomials and iterated polynomial ham-sandwich partitioning
//! of weighted point sets.

mod cells;
mod cut;
mod points;
mod vanishing;

pub use cells::{curve_class_crossings, optimal_rounds, partition_points, Cell, CrossingReport, PartitionResult};
pub use cut::{bisects, ham_sandwich_cut, CutOptions};
pub use points::{binomial, cut_degree, monomials_upto, WeightedPoints};
pub use vanishing::{vanishing_poly, VanishingPoly};
