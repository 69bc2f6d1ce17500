//! Precision-tracked elements of `F_q((t^Q))`.
//!
//! A [`HahnSeries`] is a finite sum `sum c_e t^e` together with a precision
//! bound `prec`: the represented element is known modulo terms of valuation
//! `>= prec`. `prec = None` means the finite sum is the exact element.

mod arith;
mod literal;
mod mpoly;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::finite_field::{FqContext, FqElem};

pub use arith::SeriesOp;
pub use mpoly::SeriesPoly;

/// Valuation information available at the stored precision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ValBound {
    Known(Exponent),
    AtLeast(Exponent),
    Infinite,
}

impl ValBound {
    /// Lower bound on the valuation, `None` for `+∞`.
    pub fn lower(&self) -> Option<&Exponent> {
        match self {
            ValBound::Known(e) | ValBound::AtLeast(e) => Some(e),
            ValBound::Infinite => None,
        }
    }

    pub fn known(&self) -> Option<&Exponent> {
        match self {
            ValBound::Known(e) => Some(e),
            _ => None,
        }
    }

    /// True when the valuation is certainly `>= bound`.
    pub fn at_least(&self, bound: &Exponent) -> bool {
        self.lower().is_none_or(|e| e >= bound)
    }
}

impl fmt::Display for ValBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValBound::Known(e) => write!(f, "{e}"),
            ValBound::AtLeast(e) => write!(f, ">={e}"),
            ValBound::Infinite => write!(f, "inf"),
        }
    }
}

/// Outcome of comparing two series at their shared precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesEq {
    /// Both exact and identical.
    Exact,
    /// Identical below the given shared precision.
    UpTo(Exponent),
    Different,
}

#[derive(Clone)]
pub struct HahnSeries {
    ctx: Arc<FqContext>,
    /// Strictly increasing exponents, nonzero coefficient codes, all `< prec`.
    terms: Vec<(Exponent, u32)>,
    prec: Option<Exponent>,
}

impl PartialEq for HahnSeries {
    /// Structural equality: same support and same precision.
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.terms == other.terms && self.prec == other.prec
    }
}

impl Eq for HahnSeries {}

impl HahnSeries {
    /// Canonicalizes arbitrary terms: merges repeated exponents, drops zero
    /// coefficients and terms at or beyond `prec`.
    pub fn make(ctx: &Arc<FqContext>, terms: Vec<(Exponent, FqElem)>, prec: Option<Exponent>) -> Self {
        let raw = terms
            .into_iter()
            .map(|(e, c)| {
                debug_assert!(**c.context() == **ctx);
                (e, c.code())
            })
            .collect();
        Self::from_raw(ctx, raw, prec)
    }

    pub(crate) fn from_raw(ctx: &Arc<FqContext>, mut raw: Vec<(Exponent, u32)>, prec: Option<Exponent>) -> Self {
        raw.sort_by(|a, b| a.0.cmp(&b.0));
        let mut terms: Vec<(Exponent, u32)> = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            match terms.last_mut() {
                Some(last) if last.0 == e => last.1 = ctx.add_raw(last.1, c),
                _ => terms.push((e, c)),
            }
        }
        terms.retain(|(e, c)| *c != 0 && prec.as_ref().is_none_or(|p| e < p));
        HahnSeries {
            ctx: ctx.clone(),
            terms,
            prec,
        }
    }

    /// Builds from terms already sorted, merged and nonzero.
    pub(crate) fn from_sorted(ctx: &Arc<FqContext>, mut terms: Vec<(Exponent, u32)>, prec: Option<Exponent>) -> Self {
        if let Some(p) = &prec {
            let cut = terms.partition_point(|(e, _)| e < p);
            terms.truncate(cut);
        }
        HahnSeries {
            ctx: ctx.clone(),
            terms,
            prec,
        }
    }

    pub fn zero(ctx: &Arc<FqContext>) -> Self {
        Self::from_sorted(ctx, vec![], None)
    }

    /// Zero known only modulo `t^prec`.
    pub fn big_o(ctx: &Arc<FqContext>, prec: Exponent) -> Self {
        Self::from_sorted(ctx, vec![], Some(prec))
    }

    pub fn one(ctx: &Arc<FqContext>) -> Self {
        Self::from_sorted(ctx, vec![(Exponent::zero(), 1)], None)
    }

    pub fn constant(c: &FqElem) -> Self {
        Self::monomial(c, Exponent::zero())
    }

    pub fn from_int(ctx: &Arc<FqContext>, n: i64) -> Self {
        Self::constant(&FqElem::from_int(ctx, n))
    }

    /// `c * t^e`, exact.
    pub fn monomial(c: &FqElem, e: Exponent) -> Self {
        Self::from_raw(c.context(), vec![(e, c.code())], None)
    }

    /// The uniformizer `t`.
    pub fn t(ctx: &Arc<FqContext>) -> Self {
        Self::from_sorted(ctx, vec![(Exponent::one(), 1)], None)
    }

    /// `t^e`, exact.
    pub fn t_pow(ctx: &Arc<FqContext>, e: Exponent) -> Self {
        Self::from_sorted(ctx, vec![(e, 1)], None)
    }

    pub fn context(&self) -> &Arc<FqContext> {
        &self.ctx
    }

    pub fn prec(&self) -> Option<&Exponent> {
        self.prec.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// Exact and zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.prec.is_none()
    }

    /// No nonzero term is known (exact zero or `O(t^prec)`).
    pub fn support_is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, FqElem)> + '_ {
        self.terms
            .iter()
            .map(|(e, c)| (e, FqElem::from_code(&self.ctx, *c)))
    }

    /// Coefficient at exponent `e` (zero when absent).
    pub fn coeff(&self, e: &Exponent) -> FqElem {
        let code = self
            .terms
            .binary_search_by(|(x, _)| x.cmp(e))
            .map_or(0, |i| self.terms[i].1);
        FqElem::from_code(&self.ctx, code)
    }

    /// Leading term `(v, c)` when the valuation is known.
    pub fn leading(&self) -> Option<(&Exponent, FqElem)> {
        self.terms
            .first()
            .map(|(e, c)| (e, FqElem::from_code(&self.ctx, *c)))
    }

    pub fn val(&self) -> ValBound {
        match (self.terms.first(), &self.prec) {
            (Some((e, _)), _) => ValBound::Known(e.clone()),
            (None, None) => ValBound::Infinite,
            (None, Some(p)) => ValBound::AtLeast(p.clone()),
        }
    }

    /// Valuation lower bound, `None` for `+∞`.
    pub fn lower_val(&self) -> Option<&Exponent> {
        self.terms.first().map(|(e, _)| e).or(self.prec.as_ref())
    }

    /// Forgets everything at or beyond `cap`.
    pub fn truncate(&self, cap: &Exponent) -> Self {
        if self.prec.as_ref().is_some_and(|p| p <= cap) {
            return self.clone();
        }
        Self::from_sorted(&self.ctx, self.terms.clone(), Some(cap.clone()))
    }

    /// Treats the stored finite sum as an exact element.
    pub fn to_exact(&self) -> Self {
        Self::from_sorted(&self.ctx, self.terms.clone(), None)
    }

    /// Compares at shared precision.
    pub fn compare(&self, other: &HahnSeries) -> Result<SeriesEq> {
        let diff = self.checked(other)?.sub(other);
        Ok(match diff.val() {
            ValBound::Infinite => SeriesEq::Exact,
            ValBound::AtLeast(p) => SeriesEq::UpTo(p),
            ValBound::Known(_) => SeriesEq::Different,
        })
    }

    pub(crate) fn checked(&self, other: &HahnSeries) -> Result<&Self> {
        if self.ctx == other.ctx {
            Ok(self)
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Coefficient at exponent 0 of an integral series.
    pub fn residue(&self) -> Result<FqElem> {
        match self.lower_val() {
            Some(lb) if lb.is_negative() => return Err(Error::NotIntegral),
            _ => {}
        }
        if self.prec.as_ref().is_some_and(|p| !p.is_positive()) {
            return Err(Error::precision("residue needs precision > 0"));
        }
        Ok(self.coeff(&Exponent::zero()))
    }

    /// The unique `p`-th root: exponents and precision divided by `p`,
    /// coefficients mapped by the inverse Frobenius.
    pub fn pth_root(&self) -> Self {
        let p = self.ctx.p() as i64;
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.div_int(p), self.ctx.frobenius_inv_raw(*c)))
            .collect();
        Self::from_sorted(&self.ctx, terms, self.prec.as_ref().map(|e| e.div_int(p)))
    }

    /// Multiplies by `t^e`.
    pub fn shift(&self, e: &Exponent) -> Self {
        let terms = self.terms.iter().map(|(x, c)| (x + e, *c)).collect();
        Self::from_sorted(&self.ctx, terms, self.prec.as_ref().map(|p| p + e))
    }

    /// Multiplies every coefficient by a field element.
    pub fn scale(&self, c: &FqElem) -> Self {
        if c.is_zero() {
            return Self::from_sorted(&self.ctx, vec![], self.prec.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, x)| (e.clone(), self.ctx.mul_raw(*x, c.code())))
            .collect();
        Self::from_sorted(&self.ctx, terms, self.prec.clone())
    }

    /// Exponents of the support, ascending.
    pub fn exponents(&self) -> impl Iterator<Item = &Exponent> + '_ {
        self.terms.iter().map(|(e, _)| e)
    }
}

impl fmt::Debug for HahnSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for HahnSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests;
