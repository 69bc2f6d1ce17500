//! Shared generators for the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use hahn_core::formula_lang::{Formula, Sign, Term};
use hahn_core::root_solver::UPoly;
use hahn_core::verify_harness::{random_series, Region};
use hahn_core::{FqContext, HahnSeries};
use rand::Rng;

const VARS: [&str; 4] = ["x", "y", "z", "w1"];

/// Random term in canonical shape: n-ary sums and products have at least
/// two operands and sums start with `+`.
pub fn random_term(rng: &mut impl Rng, depth: u32, field: bool) -> Term {
    if depth == 0 || rng.gen_bool(0.3) {
        return if rng.gen_bool(0.5) {
            Term::Int(rng.gen_range(0..20))
        } else {
            Term::var(VARS[rng.gen_range(0..VARS.len())])
        };
    }
    let sub = |rng: &mut _| random_term(rng, depth - 1, field);
    match rng.gen_range(0..if field { 5 } else { 4 }) {
        0 => {
            let n = rng.gen_range(2..4);
            let mut parts = vec![(Sign::Plus, sub(rng))];
            for _ in 1..n {
                let s = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
                parts.push((s, sub(rng)));
            }
            Term::Sum(parts)
        }
        1 => Term::Product((0..rng.gen_range(2..4)).map(|_| sub(rng)).collect()),
        2 => Term::Pow(Box::new(sub(rng)), rng.gen_range(1..5)),
        3 => Term::Neg(Box::new(sub(rng))),
        _ => Term::Inv(Box::new(sub(rng))),
    }
}

pub fn random_formula(rng: &mut impl Rng, depth: u32, field: bool) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..10) {
            0 => Formula::True,
            1 => Formula::False,
            _ => Formula::Eq(random_term(rng, 3, field), random_term(rng, 3, field)),
        };
    }
    let sub = |rng: &mut _| random_formula(rng, depth - 1, field);
    match rng.gen_range(0..3) {
        0 => Formula::exists(VARS[rng.gen_range(0..VARS.len())], sub(rng)),
        1 => Formula::And((0..rng.gen_range(2..4)).map(|_| sub(rng)).collect()),
        _ => Formula::Or((0..rng.gen_range(2..4)).map(|_| sub(rng)).collect()),
    }
}

/// Exact series, nonzero unless the draw is empty.
pub fn series(rng: &mut impl Rng, ctx: &Arc<FqContext>, region: Region) -> HahnSeries {
    random_series(rng, ctx, region)
}

/// `prod (Y - r_i)` for distinct planted roots.
pub fn planted(ctx: &Arc<FqContext>, roots: &[HahnSeries]) -> UPoly {
    let mut g = UPoly::constant(HahnSeries::one(ctx));
    for r in roots {
        g = g.mul(&UPoly::var(ctx).sub(&UPoly::constant(r.clone())));
    }
    g
}

pub fn distinct_roots(rng: &mut impl Rng, ctx: &Arc<FqContext>, n: usize) -> Vec<HahnSeries> {
    let mut roots: Vec<HahnSeries> = Vec::new();
    while roots.len() < n {
        let r = series(rng, ctx, Region::Any);
        if !roots.contains(&r) {
            roots.push(r);
        }
    }
    roots
}
