//! Truth of formulas at points of `F_q((t^Q))`, plus the valuation oracles
//! the definability formulas are checked against.

mod clear;
mod mpoly;
mod solve;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::finite_field::FqContext;
use crate::formula_lang::{Formula, Mode, Sign, Term};
use crate::hahn_series::{HahnSeries, ValBound};
use crate::intpoly::IntPoly;
use crate::root_solver::{UPoly, DEFAULT_BUDGET};

pub type Assignment = BTreeMap<String, HahnSeries>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvalConfig {
    /// Witnesses must make every atom vanish to this valuation.
    pub target: Exponent,
    /// Polygon steps allowed per root-solver branch.
    pub budget: usize,
    pub mode: Mode,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            target: Exponent::int(10),
            budget: DEFAULT_BUDGET,
            mode: Mode::Ring,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum EvalVerdict {
    /// Witness for each existential binder.
    True(Assignment),
    False,
    Unknown(String),
}

impl EvalVerdict {
    pub fn is_true(&self) -> bool {
        matches!(self, EvalVerdict::True(_))
    }

    /// `Some(truth)` unless unknown.
    pub fn truth(&self) -> Option<bool> {
        match self {
            EvalVerdict::True(_) => Some(true),
            EvalVerdict::False => Some(false),
            EvalVerdict::Unknown(_) => None,
        }
    }
}

/// Value of a term; `inv` of an exact zero is zero, other inverses are
/// computed to precision `cfg.target`.
pub fn eval_term(term: &Term, sigma: &Assignment, ctx: &Arc<FqContext>, cfg: &EvalConfig) -> Result<HahnSeries> {
    Ok(match term {
        Term::Int(n) => HahnSeries::from_int(ctx, (*n % ctx.p()) as i64),
        Term::Var(v) => {
            let x = sigma.get(v).ok_or_else(|| Error::UnboundVariable(v.clone()))?;
            if **x.context() != **ctx {
                return Err(Error::ContextMismatch);
            }
            x.clone()
        }
        Term::Sum(ts) => {
            let mut acc = HahnSeries::zero(ctx);
            for (s, t) in ts {
                let v = eval_term(t, sigma, ctx, cfg)?;
                acc = if *s == Sign::Plus { acc.add(&v) } else { acc.sub(&v) };
            }
            acc
        }
        Term::Product(ts) => {
            let mut acc = HahnSeries::one(ctx);
            for t in ts {
                acc = acc.mul(&eval_term(t, sigma, ctx, cfg)?);
            }
            acc
        }
        Term::Pow(b, e) => eval_term(b, sigma, ctx, cfg)?.pow(*e, None),
        Term::Neg(t) => eval_term(t, sigma, ctx, cfg)?.neg(),
        Term::Inv(t) => formal_inverse(&eval_term(t, sigma, ctx, cfg)?, &cfg.target)?,
    })
}

/// `x^{-1}` with `0^{-1} = 0`.
pub(crate) fn formal_inverse(x: &HahnSeries, cap: &Exponent) -> Result<HahnSeries> {
    if x.is_zero() {
        return Ok(x.clone());
    }
    if x.support_is_empty() {
        return Err(Error::precision("cannot tell whether the argument of inv is zero"));
    }
    x.inv(cap)
}

/// Evaluates a formula with all free variables assigned.
pub fn eval_formula(phi: &Formula, sigma: &Assignment, ctx: &Arc<FqContext>, cfg: &EvalConfig) -> Result<EvalVerdict> {
    if cfg.mode == Mode::Ring && phi.has_inverse() {
        return Err(Error::syntax(0, "inv(...) is not allowed in ring mode"));
    }
    if let Some(v) = phi.free_vars().into_iter().find(|v| !sigma.contains_key(v)) {
        return Err(Error::UnboundVariable(v));
    }
    for x in sigma.values() {
        if **x.context() != **ctx {
            return Err(Error::ContextMismatch);
        }
    }
    solve::eval(phi, sigma, ctx, cfg)
}

/// `v(x) >= 0`.
pub fn ground_truth_o(x: &HahnSeries) -> Result<bool> {
    membership(x, |v| !v.is_negative())
}

/// `v(x) > 0`.
pub fn ground_truth_m(x: &HahnSeries) -> Result<bool> {
    membership(x, Exponent::is_positive)
}

fn membership(x: &HahnSeries, pred: impl Fn(&Exponent) -> bool) -> Result<bool> {
    match x.val() {
        ValBound::Infinite => Ok(true),
        ValBound::Known(v) => Ok(pred(&v)),
        ValBound::AtLeast(b) if pred(&b) => Ok(true),
        ValBound::AtLeast(_) => Err(Error::precision("valuation not determined at this precision")),
    }
}

/// `beta_f(y) = (f(0) - f(y)) / (f(y) f(0))`, known modulo `t^cap`.
pub fn eval_beta(f: &IntPoly, y: &HahnSeries, cap: &Exponent) -> Result<HahnSeries> {
    let ctx = y.context();
    let fy = UPoly::from_int_poly(ctx, f).eval(y);
    let f0 = HahnSeries::from_int(ctx, f.eval(0));
    let den = fy.mul(&f0);
    if den.support_is_empty() {
        return Err(Error::CannotInvert);
    }
    f0.sub(&fy).div(&den, cap)
}

#[cfg(test)]
mod tests;
