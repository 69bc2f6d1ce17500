//! Clearing formal inverses: a term becomes a list of cases, each a
//! fraction of polynomials in the bound variables together with the
//! vanishing / nonvanishing assumptions that select it.

use std::collections::HashMap;
use std::sync::Arc;

use super::mpoly::MPoly;
use super::{formal_inverse, Assignment};
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::finite_field::FqContext;
use crate::formula_lang::{Sign, Term};
use crate::hahn_series::HahnSeries;

#[derive(Clone)]
pub(crate) struct Frac {
    pub num: MPoly,
    /// `None` stands for 1.
    pub den: Option<MPoly>,
    pub zero: Vec<MPoly>,
    pub nonzero: Vec<MPoly>,
}

pub(crate) struct Clearer<'a> {
    pub ctx: &'a Arc<FqContext>,
    pub index: &'a HashMap<String, usize>,
    pub sigma: &'a Assignment,
    pub cap: Exponent,
}

impl Frac {
    fn den_or_one(&self, ctx: &Arc<FqContext>, nvars: usize) -> MPoly {
        self.den.clone().unwrap_or_else(|| MPoly::constant(ctx, nvars, HahnSeries::one(ctx)))
    }
}

fn mul_opt(a: &Option<MPoly>, b: &Option<MPoly>) -> Option<MPoly> {
    match (a, b) {
        (None, None) => None,
        (Some(x), None) | (None, Some(x)) => Some(x.clone()),
        (Some(x), Some(y)) => Some(x.mul(y)),
    }
}

impl Clearer<'_> {
    fn nvars(&self) -> usize {
        self.index.len()
    }

    fn plain(&self, num: MPoly) -> Vec<Frac> {
        vec![Frac {
            num,
            den: None,
            zero: vec![],
            nonzero: vec![],
        }]
    }

    fn combine(a: &[Frac], b: &[Frac], f: impl Fn(&Frac, &Frac) -> (MPoly, Option<MPoly>)) -> Vec<Frac> {
        let mut out = Vec::with_capacity(a.len() * b.len());
        for x in a {
            for y in b {
                let (num, den) = f(x, y);
                out.push(Frac {
                    num,
                    den,
                    zero: [x.zero.clone(), y.zero.clone()].concat(),
                    nonzero: [x.nonzero.clone(), y.nonzero.clone()].concat(),
                });
            }
        }
        out
    }

    fn add(&self, a: &[Frac], b: &[Frac], sign: Sign) -> Vec<Frac> {
        let (ctx, n) = (self.ctx, self.nvars());
        Self::combine(a, b, |x, y| {
            let nb = if sign == Sign::Plus { y.num.clone() } else { y.num.neg() };
            match (&x.den, &y.den) {
                (None, None) => (x.num.add(&nb), None),
                _ => {
                    let num = x.num.mul(&y.den_or_one(ctx, n)).add(&nb.mul(&x.den_or_one(ctx, n)));
                    (num, mul_opt(&x.den, &y.den))
                }
            }
        })
    }

    pub fn term(&self, t: &Term) -> Result<Vec<Frac>> {
        let (ctx, n) = (self.ctx, self.nvars());
        Ok(match t {
            Term::Int(k) => self.plain(MPoly::constant(ctx, n, HahnSeries::from_int(ctx, (*k % ctx.p()) as i64))),
            Term::Var(v) => match self.index.get(v) {
                Some(&i) => self.plain(MPoly::var(ctx, n, i)),
                None => {
                    let x = self.sigma.get(v).ok_or_else(|| Error::UnboundVariable(v.clone()))?;
                    self.plain(MPoly::constant(ctx, n, x.clone()))
                }
            },
            Term::Neg(t) => self
                .term(t)?
                .into_iter()
                .map(|f| Frac { num: f.num.neg(), ..f })
                .collect(),
            Term::Sum(ts) => {
                let mut acc = self.term(&ts[0].1)?;
                if ts[0].0 == Sign::Minus {
                    acc = acc.into_iter().map(|f| Frac { num: f.num.neg(), ..f }).collect();
                }
                for (s, t) in &ts[1..] {
                    acc = self.add(&acc, &self.term(t)?, *s);
                }
                acc
            }
            Term::Product(ts) => {
                let mut acc = self.term(&ts[0])?;
                for t in &ts[1..] {
                    acc = Self::combine(&acc, &self.term(t)?, |x, y| (x.num.mul(&y.num), mul_opt(&x.den, &y.den)));
                }
                acc
            }
            Term::Pow(b, e) => self
                .term(b)?
                .into_iter()
                .map(|f| Frac {
                    num: f.num.pow(*e),
                    den: f.den.as_ref().map(|d| d.pow(*e)),
                    ..f
                })
                .collect(),
            Term::Inv(t) => {
                let mut out = Vec::new();
                for f in self.term(t)? {
                    if let Some(c) = f.num.as_constant() {
                        let inv = formal_inverse(&c, &self.cap)?;
                        let num = f.den_or_one(ctx, n).mul(&MPoly::constant(ctx, n, inv));
                        out.push(Frac { num, den: None, ..f });
                        continue;
                    }
                    let mut zero = f.zero.clone();
                    zero.push(f.num.clone());
                    out.push(Frac {
                        num: MPoly::constant(ctx, n, HahnSeries::zero(ctx)),
                        den: None,
                        zero,
                        nonzero: f.nonzero.clone(),
                    });
                    let mut nonzero = f.nonzero.clone();
                    nonzero.push(f.num.clone());
                    out.push(Frac {
                        num: f.den_or_one(ctx, n),
                        den: Some(f.num),
                        zero: f.zero,
                        nonzero,
                    });
                }
                out
            }
        })
    }

    /// Cases of `lhs = rhs` as `(polynomials = 0, polynomials != 0)`.
    pub fn atom(&self, lhs: &Term, rhs: &Term) -> Result<Vec<(Vec<MPoly>, Vec<MPoly>)>> {
        let diff = self.add(&self.term(lhs)?, &self.term(rhs)?, Sign::Minus);
        Ok(diff
            .into_iter()
            .map(|f| {
                let mut zero = f.zero;
                zero.push(f.num);
                (zero, f.nonzero)
            })
            .collect())
    }
}
