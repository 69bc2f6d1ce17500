use super::UPoly;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::hahn_series::{HahnSeries, ValBound};

const MAX_STEPS: usize = 200;

/// Result of a Newton iteration together with the residual valuation
/// observed before each step and after the last one.
#[derive(Debug, Clone)]
pub struct HenselTrace {
    pub root: HahnSeries,
    pub derivative_valuation: Exponent,
    pub residuals: Vec<ValBound>,
}

/// Newton iteration `y <- y - g(y)/g'(y)` from `y0` until `v(g(y)) >= target`.
pub fn hensel_lift(g: &UPoly, y0: &HahnSeries, target: &Exponent) -> Result<HahnSeries> {
    hensel_lift_traced(g, y0, target).map(|t| t.root)
}

pub fn hensel_lift_traced(g: &UPoly, y0: &HahnSeries, target: &Exponent) -> Result<HenselTrace> {
    let dg = g.derivative();
    let mut y = y0.to_exact();
    let mut residuals = Vec::new();
    let mut delta: Option<Exponent> = None;
    for _ in 0..MAX_STEPS {
        let r = g.eval_capped(&y, target);
        residuals.push(r.val());
        if r.val().at_least(target) {
            return Ok(HenselTrace {
                root: y,
                derivative_valuation: delta.unwrap_or_else(|| derivative_valuation(&dg, y0, target).unwrap_or_else(Exponent::zero)),
                residuals,
            });
        }
        let Some(eps) = r.val().known().cloned() else {
            return Err(Error::precision("coefficient precision below target"));
        };
        let d = match &delta {
            Some(_) => dg.eval_capped(&y, target),
            None => {
                let dv = derivative_valuation(&dg, &y, target).ok_or(Error::NotHenselReady)?;
                if eps <= dv.mul_int(2) {
                    return Err(Error::NotHenselReady);
                }
                delta = Some(dv);
                dg.eval_capped(&y, target)
            }
        };
        let dv = delta.as_ref().unwrap();
        if d.val().known() != Some(dv) {
            return Err(Error::NotHenselReady);
        }
        if let Some(prev) = residuals.iter().rev().nth(1).and_then(ValBound::known) {
            if eps <= *prev {
                // no progress: the quadratic regime was never entered
                return Err(Error::NotHenselReady);
            }
        }
        let step = r.div(&d, &(target - dv))?;
        y = y.sub(&step).to_exact();
    }
    Err(Error::NotHenselReady)
}

fn derivative_valuation(dg: &UPoly, y: &HahnSeries, target: &Exponent) -> Option<Exponent> {
    dg.eval_capped(y, target).val().known().cloned()
}
