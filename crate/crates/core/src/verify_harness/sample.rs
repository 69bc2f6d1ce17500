use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exponent::Exponent;
use crate::finite_field::{elements, FqContext, FqElem};
use crate::hahn_series::HahnSeries;

/// Seeded description of a sample of points of `F_q((t^Q))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleSpec {
    pub q: u64,
    pub count: usize,
    pub seed: u64,
}

/// Which exponents a random series may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Any,
    /// Valuation ring: exponents `>= 0`.
    Ring,
    /// Maximal ideal: exponents `> 0`.
    Ideal,
}

impl SampleSpec {
    pub fn new(q: u64, count: usize, seed: u64) -> Self {
        SampleSpec { q, count, seed }
    }

    /// Generator for this spec; `stream` separates independent draws.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ self.q.rotate_left(32));
        rng.set_stream(stream);
        rng
    }

    /// Mandatory edge cases followed by `count` random series.
    pub fn points(&self, ctx: &Arc<FqContext>) -> Vec<HahnSeries> {
        let mut out = edge_cases(ctx);
        let mut rng = self.rng(0);
        out.extend((0..self.count).map(|_| random_series(&mut rng, ctx, Region::Any)));
        out
    }
}

pub fn edge_cases(ctx: &Arc<FqContext>) -> Vec<HahnSeries> {
    let p = ctx.p() as i64;
    let t = HahnSeries::t(ctx);
    let mut out = vec![
        HahnSeries::zero(ctx),
        HahnSeries::one(ctx),
        t.clone(),
        HahnSeries::t_pow(ctx, Exponent::int(-1)),
        HahnSeries::t_pow(ctx, Exponent::new(1, p)),
        HahnSeries::t_pow(ctx, Exponent::new(-1, p)),
    ];
    for u in elements(ctx).filter(|u| !u.is_zero()) {
        out.push(HahnSeries::constant(&u).add(&t));
    }
    out
}

/// Up to four terms, numerators `|a| <= 6`, denominators in `{1, 2, 3, p, 2p}`.
pub fn random_series(rng: &mut impl Rng, ctx: &Arc<FqContext>, region: Region) -> HahnSeries {
    let p = ctx.p() as i64;
    let dens = [1, 2, 3, p, 2 * p];
    let n = rng.gen_range(0..=4);
    let lo = match region {
        Region::Any => -6,
        Region::Ring => 0,
        Region::Ideal => 1,
    };
    let terms = (0..n)
        .map(|_| {
            let e = Exponent::new(rng.gen_range(lo..=6), dens[rng.gen_range(0..dens.len())]);
            (e, random_unit(rng, ctx))
        })
        .collect();
    HahnSeries::make(ctx, terms, None)
}

/// Nonzero element of `F_q`.
pub fn random_unit(rng: &mut impl Rng, ctx: &Arc<FqContext>) -> FqElem {
    let all: Vec<FqElem> = elements(ctx).filter(|c| !c.is_zero()).collect();
    all[rng.gen_range(0..all.len())].clone()
}
