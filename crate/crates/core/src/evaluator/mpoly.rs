use std::collections::BTreeMap;
use std::sync::Arc;

use crate::finite_field::FqContext;
use crate::hahn_series::HahnSeries;
use crate::root_solver::UPoly;

/// Polynomial in numbered variables with series coefficients.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct MPoly {
    ctx: Arc<FqContext>,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, HahnSeries>,
}

impl MPoly {
    pub fn constant(ctx: &Arc<FqContext>, nvars: usize, c: HahnSeries) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        MPoly {
            ctx: ctx.clone(),
            nvars,
            terms,
        }
    }

    pub fn var(ctx: &Arc<FqContext>, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MPoly {
            ctx: ctx.clone(),
            nvars,
            terms: BTreeMap::from([(e, HahnSeries::one(ctx))]),
        }
    }

    fn insert(terms: &mut BTreeMap<Vec<u32>, HahnSeries>, e: Vec<u32>, c: HahnSeries) {
        match terms.get_mut(&e) {
            Some(old) => {
                let s = old.add(&c);
                if s.is_zero() {
                    terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None if !c.is_zero() => {
                terms.insert(e, c);
            }
            None => {}
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            Self::insert(&mut terms, e.clone(), c.clone());
        }
        MPoly { terms, ..self.clone_empty() }
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
            ..self.clone_empty()
        }
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                Self::insert(&mut terms, e, ca.mul(cb));
            }
        }
        MPoly { terms, ..self.clone_empty() }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut acc = MPoly::constant(&self.ctx, self.nvars, HahnSeries::one(&self.ctx));
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn clone_empty(&self) -> MPoly {
        MPoly {
            ctx: self.ctx.clone(),
            nvars: self.nvars,
            terms: BTreeMap::new(),
        }
    }

    /// Indices of variables that occur.
    pub fn vars(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect()
    }

    /// The constant value, if no variable occurs.
    pub fn as_constant(&self) -> Option<HahnSeries> {
        if self.vars().is_empty() {
            Some(
                self.terms
                    .values()
                    .next()
                    .cloned()
                    .unwrap_or_else(|| HahnSeries::zero(&self.ctx)),
            )
        } else {
            None
        }
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Coefficient of `x_i^k` as a polynomial in the other variables.
    pub fn coeff_in(&self, i: usize, k: u32) -> MPoly {
        let mut out = self.clone_empty();
        for (e, c) in &self.terms {
            if e[i] == k {
                let mut e2 = e.clone();
                e2[i] = 0;
                out.terms.insert(e2, c.clone());
            }
        }
        out
    }

    /// Substitutes `x_i = value`.
    pub fn substitute(&self, i: usize, value: &HahnSeries) -> MPoly {
        let mut powers = vec![HahnSeries::one(&self.ctx)];
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap().mul(value);
                powers.push(next);
            }
            let mut e2 = e.clone();
            e2[i] = 0;
            Self::insert(&mut out, e2, c.mul(&powers[k]));
        }
        MPoly { terms: out, ..self.clone_empty() }
    }

    /// Substitutes the polynomial `value` for `x_i`.
    pub fn substitute_poly(&self, i: usize, value: &MPoly) -> MPoly {
        let mut powers = vec![MPoly::constant(&self.ctx, self.nvars, HahnSeries::one(&self.ctx))];
        let mut out = self.clone_empty();
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap().mul(value);
                powers.push(next);
            }
            let mut e2 = e.clone();
            e2[i] = 0;
            let mono = MPoly {
                terms: BTreeMap::from([(e2, c.clone())]),
                ..self.clone_empty()
            };
            out = out.add(&mono.mul(&powers[k]));
        }
        out
    }

    /// Univariate view in `x_i`, when no other variable occurs.
    pub fn to_upoly(&self, i: usize) -> Option<UPoly> {
        if self.vars().iter().any(|&j| j != i) {
            return None;
        }
        let n = self.degree_in(i) as usize;
        let mut coeffs = vec![HahnSeries::zero(&self.ctx); n + 1];
        for (e, c) in &self.terms {
            coeffs[e[i] as usize] = c.clone();
        }
        Some(UPoly::new(&self.ctx, coeffs))
    }

    /// Replaces `x_i` by `c + w` (`inverted = false`) or by `1/w`, clearing
    /// the denominator `w^deg`; the new variable keeps index `i`.
    pub fn chart(&self, i: usize, c: &HahnSeries, inverted: bool) -> MPoly {
        let d = self.degree_in(i);
        let mut out = self.clone_empty();
        let shift = if inverted {
            None
        } else {
            Some(MPoly::var(&self.ctx, self.nvars, i).add(&MPoly::constant(&self.ctx, self.nvars, c.clone())))
        };
        for k in 0..=d {
            let part = self.coeff_in(i, k);
            if part.is_zero() {
                continue;
            }
            let mono = match &shift {
                Some(s) => s.pow(k),
                None => MPoly::var(&self.ctx, self.nvars, i).pow(d - k),
            };
            out = out.add(&part.mul(&mono));
        }
        out
    }

    /// Certifies that no point with every listed variable in the maximal
    /// ideal is a zero: the constant term has known valuation no larger
    /// than the lower valuation bound of every other coefficient.
    pub fn no_zero_near_origin(&self) -> bool {
        let zero = vec![0; self.nvars];
        let Some(v0) = self.terms.get(&zero).and_then(|c| c.val().known().cloned()) else {
            return false;
        };
        self.terms
            .iter()
            .filter(|(e, _)| **e != zero)
            .all(|(_, c)| c.lower_val().is_none_or(|v| *v >= v0))
    }
}
