use std::collections::HashMap;
use std::sync::Arc;

use super::HahnSeries;
use crate::error::{Error, Result};
use crate::finite_field::FqContext;

/// Sparse multivariate polynomial with series coefficients.
#[derive(Debug, Clone)]
pub struct SeriesPoly {
    ctx: Arc<FqContext>,
    vars: Vec<String>,
    /// `(coefficient, exponent of each variable)`.
    terms: Vec<(HahnSeries, Vec<u32>)>,
}

impl SeriesPoly {
    pub fn new(ctx: &Arc<FqContext>, vars: &[&str]) -> Self {
        SeriesPoly {
            ctx: ctx.clone(),
            vars: vars.iter().map(|v| v.to_string()).collect(),
            terms: Vec::new(),
        }
    }

    /// Adds `coeff * prod vars[i]^exps[i]`.
    pub fn term(mut self, coeff: HahnSeries, exps: &[u32]) -> Self {
        assert_eq!(exps.len(), self.vars.len());
        self.terms.push((coeff, exps.to_vec()));
        self
    }

    /// Adds an integer-coefficient term.
    pub fn int_term(self, c: i64, exps: &[u32]) -> Self {
        let coeff = HahnSeries::from_int(&self.ctx, c);
        self.term(coeff, exps)
    }

    /// Evaluates under the precision algebra, sharing powers across terms.
    pub fn eval(&self, assignment: &HashMap<String, HahnSeries>) -> Result<HahnSeries> {
        let values: Vec<&HahnSeries> = self
            .vars
            .iter()
            .map(|v| assignment.get(v).ok_or_else(|| Error::UnboundVariable(v.clone())))
            .collect::<Result<_>>()?;
        if values.iter().any(|x| **x.context() != *self.ctx) {
            return Err(Error::ContextMismatch);
        }
        let mut powers: Vec<Vec<HahnSeries>> = values.iter().map(|x| vec![HahnSeries::one(x.context()), (*x).clone()]).collect();
        let mut acc = HahnSeries::zero(&self.ctx);
        for (coeff, exps) in &self.terms {
            let mut m = coeff.clone();
            for (i, &e) in exps.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(values[i]);
                    powers[i].push(next);
                }
                m = m.mul(&powers[i][e as usize]);
            }
            acc = acc.add(&m);
        }
        Ok(acc)
    }
}
