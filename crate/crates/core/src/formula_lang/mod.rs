//! Formulas of the positive existential fragments: AST, parser, printer,
//! the explicit definability formulas and the collapse maps.

mod ast;
mod build;
mod collapse;
mod parse;
mod print;
mod shape;

pub use ast::{Formula, Sign, Term};
pub use build::{checked_f, default_f, mk_alpha, mk_epsilon, mk_epsilon_rational, mk_eta, mk_kochen, mk_phi, mk_zeta, mk_zeta_rational, wp, Kochen, PhiVariant};
pub use collapse::{collapse_and, collapse_or, fe_to_e, CollapseMode, Collapsed};
pub use parse::{parse_formula, parse_term, print_formula, Mode};
pub use shape::{FormulaReport, Shape};
