use std::collections::BTreeMap;
use std::ops;

use super::HahnSeries;
use crate::error::{Error, Result};
use crate::exponent::{add_inf, common_denominator, min_inf, Exponent};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
    Neg,
}

impl HahnSeries {
    /// Checked dispatcher; `Neg` ignores `y`.
    pub fn arith(op: SeriesOp, x: &HahnSeries, y: &HahnSeries) -> Result<HahnSeries> {
        x.checked(y)?;
        Ok(match op {
            SeriesOp::Add => x.add(y),
            SeriesOp::Sub => x.sub(y),
            SeriesOp::Mul => x.mul(y),
            SeriesOp::Neg => x.neg(),
        })
    }

    pub fn neg(&self) -> HahnSeries {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), self.ctx.neg_raw(*c)))
            .collect();
        HahnSeries::from_sorted(&self.ctx, terms, self.prec.clone())
    }

    pub fn add(&self, other: &HahnSeries) -> HahnSeries {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &HahnSeries) -> HahnSeries {
        self.merge(other, true)
    }

    fn merge(&self, other: &HahnSeries, negate: bool) -> HahnSeries {
        assert!(self.ctx == other.ctx, "series from different fields");
        let ctx = &self.ctx;
        let prec = min_inf(self.prec.as_ref(), other.prec.as_ref());
        let below = |e: &Exponent| prec.as_ref().is_none_or(|p| e < p);
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let rhs = |c: u32| if negate { ctx.neg_raw(c) } else { c };
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            let (e, c) = match ord {
                std::cmp::Ordering::Less => {
                    i += 1;
                    (&a[i - 1].0, a[i - 1].1)
                }
                std::cmp::Ordering::Greater => {
                    j += 1;
                    (&b[j - 1].0, rhs(b[j - 1].1))
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                    (&a[i - 1].0, ctx.add_raw(a[i - 1].1, rhs(b[j - 1].1)))
                }
            };
            if !below(e) {
                break;
            }
            if c != 0 {
                out.push((e.clone(), c));
            }
        }
        HahnSeries::from_sorted(ctx, out, prec)
    }

    pub fn mul(&self, other: &HahnSeries) -> HahnSeries {
        self.mul_capped(other, None)
    }

    /// Product, additionally truncated at `cap` when given. Without a cap the
    /// precision is `min(prec_x + lb(y), prec_y + lb(x))`.
    pub fn mul_capped(&self, other: &HahnSeries, cap: Option<&Exponent>) -> HahnSeries {
        assert!(self.ctx == other.ctx, "series from different fields");
        let natural = min_inf(
            add_inf(self.prec.as_ref(), other.lower_val()).as_ref(),
            add_inf(other.prec.as_ref(), self.lower_val()).as_ref(),
        );
        let prec = min_inf(natural.as_ref(), cap);
        if self.terms.is_empty() || other.terms.is_empty() {
            return HahnSeries::from_sorted(&self.ctx, vec![], prec);
        }
        let terms = match self.convolve_grid(other, prec.as_ref()) {
            Some(t) => t,
            None => self.convolve_exact(other, prec.as_ref()),
        };
        HahnSeries::from_sorted(&self.ctx, terms, prec)
    }

    /// Convolution on the integer grid `(1/D) Z`; `None` if it overflows.
    fn convolve_grid(&self, other: &HahnSeries, prec: Option<&Exponent>) -> Option<Vec<(Exponent, u32)>> {
        let ctx = &self.ctx;
        let all = self
            .terms
            .iter()
            .chain(&other.terms)
            .map(|(e, _)| e)
            .chain(prec);
        let den = common_denominator(all)?;
        let xs: Vec<(i64, u32)> = self
            .terms
            .iter()
            .map(|(e, c)| Some((e.scaled(den)?, *c)))
            .collect::<Option<_>>()?;
        let ys: Vec<(i64, u32)> = other
            .terms
            .iter()
            .map(|(e, c)| Some((e.scaled(den)?, *c)))
            .collect::<Option<_>>()?;
        let limit = match prec {
            Some(p) => Some(p.scaled(den)?),
            None => None,
        };
        let mut acc: Vec<(i64, u32)> = Vec::with_capacity(xs.len() * ys.len());
        for &(ex, cx) in &xs {
            for &(ey, cy) in &ys {
                let s = ex.checked_add(ey)?;
                if limit.is_some_and(|l| s >= l) {
                    break;
                }
                acc.push((s, ctx.mul_raw(cx, cy)));
            }
        }
        acc.sort_unstable_by_key(|t| t.0);
        let mut out: Vec<(Exponent, u32)> = Vec::new();
        let mut i = 0;
        while i < acc.len() {
            let (e, mut c) = acc[i];
            i += 1;
            while i < acc.len() && acc[i].0 == e {
                c = ctx.add_raw(c, acc[i].1);
                i += 1;
            }
            if c != 0 {
                out.push((Exponent::new(e, den), c));
            }
        }
        Some(out)
    }

    fn convolve_exact(&self, other: &HahnSeries, prec: Option<&Exponent>) -> Vec<(Exponent, u32)> {
        let ctx = &self.ctx;
        let mut acc: BTreeMap<Exponent, u32> = BTreeMap::new();
        for (ex, cx) in &self.terms {
            for (ey, cy) in &other.terms {
                let s = ex + ey;
                if prec.is_some_and(|p| &s >= p) {
                    break;
                }
                let slot = acc.entry(s).or_insert(0);
                *slot = ctx.add_raw(*slot, ctx.mul_raw(*cx, *cy));
            }
        }
        acc.into_iter().filter(|(_, c)| *c != 0).collect()
    }

    /// Multiplicative inverse. The result is known modulo
    /// `t^(prec - 2v)`, further truncated at `cap`; an exact monomial has an
    /// exact inverse.
    pub fn inv(&self, cap: &Exponent) -> Result<HahnSeries> {
        let ctx = &self.ctx;
        let Some((v, lead)) = self.terms.first().cloned() else {
            return Err(Error::CannotInvert);
        };
        let lead_inv = ctx.inv_raw(lead);
        if self.terms.len() == 1 && self.prec.is_none() {
            return Ok(HahnSeries::from_sorted(ctx, vec![(-&v, lead_inv)], None));
        }
        // relative precision of the unit part u = x / (lead t^v)
        let natural_rel = self.prec.as_ref().map(|p| p - &v);
        let cap_rel = cap + &v;
        let rel = min_inf(natural_rel.as_ref(), Some(&cap_rel)).unwrap();
        let abs_prec = &rel - &v;
        if !rel.is_positive() {
            return Ok(HahnSeries::big_o(ctx, abs_prec));
        }
        let unit: Vec<(Exponent, u32)> = self
            .terms
            .iter()
            .map(|(e, c)| (e - &v, ctx.mul_raw(*c, lead_inv)))
            .take_while(|(e, _)| e < &rel)
            .collect();
        let den = common_denominator(unit.iter().map(|(e, _)| e).chain([&rel]));
        let series = match den.and_then(|d| Some((d, rel.scaled(d)?))) {
            Some((d, n)) if n <= 4_000_000 => {
                let a: Vec<(usize, u32)> = unit
                    .iter()
                    .skip(1)
                    .map(|(e, c)| (e.scaled(d).unwrap() as usize, *c))
                    .collect();
                // b_0 = 1, b_n = -sum_{k>=1} a_k b_{n-k}
                let n = n as usize;
                let mut b = vec![0u32; n];
                b[0] = 1;
                for m in 1..n {
                    let mut s = 0u32;
                    for &(k, ak) in &a {
                        if k > m {
                            break;
                        }
                        let bk = b[m - k];
                        if bk != 0 {
                            s = ctx.add_raw(s, ctx.mul_raw(ak, bk));
                        }
                    }
                    b[m] = ctx.neg_raw(s);
                }
                b.into_iter()
                    .enumerate()
                    .filter(|(_, c)| *c != 0)
                    .map(|(i, c)| (Exponent::new(i as i64, d), c))
                    .collect()
            }
            _ => invert_unit_newton(ctx, &unit, &rel),
        };
        let unit_inv = HahnSeries::from_sorted(ctx, series, Some(rel));
        Ok(unit_inv
            .shift(&-&v)
            .scale(&crate::finite_field::FqElem::from_code(ctx, lead_inv)))
    }

    /// `self / other` with the quotient known modulo `t^cap`.
    pub fn div(&self, other: &HahnSeries, cap: &Exponent) -> Result<HahnSeries> {
        self.checked(other)?;
        let Some(lb) = self.lower_val() else {
            return Ok(self.clone());
        };
        let inv = other.inv(&(cap - lb))?;
        Ok(self.mul_capped(&inv, Some(cap)))
    }

    /// `self^n`. With nonnegative valuation every intermediate product may
    /// be truncated at `cap`; otherwise only the result is.
    pub fn pow(&self, n: u32, cap: Option<&Exponent>) -> HahnSeries {
        let inner = match self.lower_val() {
            Some(v) if v.is_negative() => None,
            _ => cap,
        };
        let mut acc = HahnSeries::one(&self.ctx);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_capped(&base, inner);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_capped(&base, inner);
            }
        }
        match cap {
            Some(c) => acc.truncate(c),
            None => acc,
        }
    }
}

/// Fallback inversion of a unit `1 + h` by Newton iteration `z <- z(2 - uz)`.
fn invert_unit_newton(
    ctx: &std::sync::Arc<crate::finite_field::FqContext>,
    unit: &[(Exponent, u32)],
    rel: &Exponent,
) -> Vec<(Exponent, u32)> {
    let u = HahnSeries::from_sorted(ctx, unit.to_vec(), Some(rel.clone()));
    let two = HahnSeries::from_int(ctx, 2);
    let mut z = HahnSeries::one(ctx);
    loop {
        let next = z.mul_capped(&two.sub(&u.mul_capped(&z, Some(rel))), Some(rel));
        if next.terms == z.terms {
            return next.terms;
        }
        z = next.to_exact();
    }
}

impl ops::Add for &HahnSeries {
    type Output = HahnSeries;
    fn add(self, rhs: &HahnSeries) -> HahnSeries {
        HahnSeries::add(self, rhs)
    }
}

impl ops::Sub for &HahnSeries {
    type Output = HahnSeries;
    fn sub(self, rhs: &HahnSeries) -> HahnSeries {
        HahnSeries::sub(self, rhs)
    }
}

impl ops::Mul for &HahnSeries {
    type Output = HahnSeries;
    fn mul(self, rhs: &HahnSeries) -> HahnSeries {
        HahnSeries::mul(self, rhs)
    }
}

impl ops::Neg for &HahnSeries {
    type Output = HahnSeries;
    fn neg(self) -> HahnSeries {
        HahnSeries::neg(self)
    }
}

