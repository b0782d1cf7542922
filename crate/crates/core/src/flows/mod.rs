//! Polynomial flows `e^{tX}`, curve values and polynomial projections.

mod curve;
mod io;

pub use curve::{eval_curve, exp_flow, flow_map, project_curve, Curve, ProjectionMap, DEFAULT_TERM_CAP};
pub use io::{curve_from_line, curve_to_line, load_family, save_family};
