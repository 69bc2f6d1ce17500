//! Roots of univariate polynomials over `F_q((t^Q))`: Newton polygons,
//! Hensel lifting and a budgeted Newton-Puiseux search.

mod hensel;
mod literal;
mod polygon;
mod puiseux;
mod upoly;

pub use hensel::{hensel_lift, hensel_lift_traced, HenselTrace};
pub use polygon::{newton_polygon, residual_polynomial, NewtonPolygon, Segment};
pub use puiseux::{has_root_to_precision, puiseux_roots, BranchNode, BranchReport, BranchStatus, Verdict, DEFAULT_BUDGET};
pub use upoly::UPoly;

#[cfg(test)]
mod tests;
