use serde::Serialize;

use super::ast::Formula;
use super::parse::Mode;

/// Syntactic fragment of a formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Shape {
    /// One existential over one atomic equation.
    EPlus,
    /// Positive boolean combination of `EPlus` formulas and atoms.
    FEPlus,
    /// Anything else the grammar allows (nested or multiple binders).
    Other,
}

impl Formula {
    pub fn is_e_plus(&self) -> bool {
        matches!(self, Formula::Exists(_, body) if matches!(**body, Formula::Eq(..)))
    }

    pub fn is_fe_plus(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Eq(..) => true,
            Formula::Exists(..) => self.is_e_plus(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().all(Formula::is_fe_plus),
        }
    }

    pub fn shape(&self) -> Shape {
        if self.is_e_plus() {
            Shape::EPlus
        } else if self.is_fe_plus() {
            Shape::FEPlus
        } else {
            Shape::Other
        }
    }

    pub fn mode(&self) -> Mode {
        if self.has_inverse() {
            Mode::Field
        } else {
            Mode::Ring
        }
    }

    /// Number of existential binders at the head of the formula.
    pub fn leading_binders(&self) -> usize {
        match self {
            Formula::Exists(_, b) => 1 + b.leading_binders(),
            _ => 0,
        }
    }
}

/// Stable machine-readable form: printed text, flags and the AST.
#[derive(Debug, Clone, Serialize)]
pub struct FormulaReport<'a> {
    pub text: String,
    pub mode: Mode,
    pub shape: Shape,
    pub free_vars: Vec<String>,
    pub ast: &'a Formula,
}

impl Formula {
    pub fn report(&self) -> FormulaReport<'_> {
        FormulaReport {
            text: self.to_string(),
            mode: self.mode(),
            shape: self.shape(),
            free_vars: self.free_vars().into_iter().collect(),
            ast: self,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.report()).expect("formula serializes")
    }
}
