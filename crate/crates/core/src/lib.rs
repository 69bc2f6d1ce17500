pub mod error;
pub mod evaluator;
pub mod exponent;
pub mod finite_field;
pub mod formula_lang;
pub mod hahn_series;
pub mod intpoly;
pub mod root_solver;
pub mod verify_harness;

pub use error::{Error, Result};
pub use exponent::Exponent;
pub use finite_field::{FqContext, FqElem, FqPoly};
pub use hahn_series::{HahnSeries, ValBound};
pub use intpoly::IntPoly;
