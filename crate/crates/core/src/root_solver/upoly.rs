use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::finite_field::FqContext;
use crate::hahn_series::HahnSeries;
use crate::intpoly::IntPoly;

/// Univariate polynomial with series coefficients, `coeffs[i]` for `Y^i`.
/// Trailing exact-zero coefficients are trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct UPoly {
    ctx: Arc<FqContext>,
    coeffs: Vec<HahnSeries>,
}

impl UPoly {
    pub fn new(ctx: &Arc<FqContext>, mut coeffs: Vec<HahnSeries>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn zero(ctx: &Arc<FqContext>) -> Self {
        Self::new(ctx, vec![])
    }

    pub fn constant(c: HahnSeries) -> Self {
        let ctx = c.context().clone();
        Self::new(&ctx, vec![c])
    }

    /// The variable `Y`.
    pub fn var(ctx: &Arc<FqContext>) -> Self {
        Self::new(ctx, vec![HahnSeries::zero(ctx), HahnSeries::one(ctx)])
    }

    pub fn from_int_poly(ctx: &Arc<FqContext>, f: &IntPoly) -> Self {
        Self::new(
            ctx,
            f.coeffs().iter().map(|&c| HahnSeries::from_int(ctx, c)).collect(),
        )
    }

    pub fn context(&self) -> &Arc<FqContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[HahnSeries] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> HahnSeries {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| HahnSeries::zero(&self.ctx))
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.iter().all(HahnSeries::is_exact)
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(&self.ctx, (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect())
    }

    pub fn neg(&self) -> UPoly {
        Self::new(&self.ctx, self.coeffs.iter().map(HahnSeries::neg).collect())
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ctx);
        }
        let mut out = vec![HahnSeries::zero(&self.ctx); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(&self.ctx, out)
    }

    pub fn pow(&self, e: u32) -> UPoly {
        let mut acc = Self::constant(HahnSeries::one(&self.ctx));
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn scale(&self, c: &HahnSeries) -> UPoly {
        Self::new(&self.ctx, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn derivative(&self) -> UPoly {
        Self::new(
            &self.ctx,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.mul(&HahnSeries::from_int(&self.ctx, i as i64)))
                .collect(),
        )
    }

    /// Horner evaluation, exact when everything is exact.
    pub fn eval(&self, y: &HahnSeries) -> HahnSeries {
        self.coeffs
            .iter()
            .rev()
            .fold(HahnSeries::zero(&self.ctx), |acc, c| acc.mul(y).add(c))
    }

    /// Horner evaluation known modulo `t^cap` (or less, when the inputs
    /// carry less precision). Intermediate values that will still be
    /// multiplied by `y` `k` more times are truncated at `cap - k v(y)`.
    pub fn eval_capped(&self, y: &HahnSeries, cap: &Exponent) -> HahnSeries {
        let Some(n) = self.degree() else {
            return HahnSeries::zero(&self.ctx);
        };
        let Some(vy) = y.lower_val().cloned() else {
            return self.coeff(0).truncate(cap);
        };
        let mut acc = self.coeffs[n].clone();
        for k in (0..n).rev() {
            let level = cap - &vy.mul_int(k as i64);
            acc = acc.mul_capped(y, Some(&level)).add(&self.coeffs[k]).truncate(&level);
        }
        acc
    }

    /// `g(c + Y)` by repeated synthetic division.
    pub fn taylor_shift(&self, c: &HahnSeries) -> UPoly {
        let mut b = self.coeffs.clone();
        let n = b.len();
        let monomial = c.is_exact() && c.len() == 1;
        let times_c = |x: &HahnSeries| {
            if x.is_zero() {
                x.clone()
            } else if monomial {
                let (e, k) = c.leading().unwrap();
                x.shift(e).scale(&k)
            } else {
                x.mul(c)
            }
        };
        for i in 0..n.saturating_sub(1) {
            for j in (i..n - 1).rev() {
                let t = times_c(&b[j + 1]);
                if !t.is_zero() {
                    b[j] = b[j].add(&t);
                }
            }
        }
        Self::new(&self.ctx, b)
    }

    /// Divides by `Y^m`, dropping the lowest `m` coefficients.
    pub fn shift_down(&self, m: usize) -> UPoly {
        Self::new(&self.ctx, self.coeffs.iter().skip(m).cloned().collect())
    }

    /// Number of lowest coefficients that are exactly zero.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// If only exponents divisible by `p` occur, returns `g1` with
    /// `g(Y) = g1(Y)^p` (coefficients replaced by their `p`-th roots).
    pub fn pth_root_reduction(&self) -> Option<UPoly> {
        let p = self.ctx.p() as usize;
        if self.degree().unwrap_or(0) == 0 {
            return None;
        }
        let ok = self
            .coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| i % p == 0 || c.is_zero());
        ok.then(|| {
            Self::new(
                &self.ctx,
                self.coeffs.iter().step_by(p).map(HahnSeries::pth_root).collect(),
            )
        })
    }

    /// Divides by the leading coefficient when its valuation is known.
    pub fn normalized(&self, cap: &Exponent) -> Result<UPoly> {
        let lead = self.coeffs.last().ok_or(Error::ZeroPolynomial)?;
        if lead.val().known().is_none() {
            return Err(Error::NotMonic);
        }
        if lead.is_exact() && lead.len() == 1 && lead.leading().unwrap().1.is_one() && lead.leading().unwrap().0.is_zero() {
            return Ok(self.clone());
        }
        let inv = lead.inv(cap)?;
        Ok(self.scale(&inv))
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*y"),
                _ => format!("({c})*y^{i}"),
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
