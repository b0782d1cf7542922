//! Exact curve intersections, incidence sets, tangencies, joints and the
//! bound evaluators they are compared against.

mod bounds;
mod counters;
mod intersect;
mod joints;
mod sets;

pub use bounds::{bound_report, BoundCounts, BoundReport};
pub use counters::{
    count_tangent_pairs, n7_grid_formula, n7_grid_incidences, parabola_grid_size, tangent_pairs_bruteforce,
};
pub use intersect::{intersect_curves, tangent_pair, AlgebraicPoint, IncidenceRecord, CSV_HEADER};
pub use joints::{detect_joints, loomis_whitney_rhs, multijoint_sum, Joint, MultijointSum};
pub use sets::{incidence_set, run_with_workers, IncidenceOptions, IncidenceSet};
