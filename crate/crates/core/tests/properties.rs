mod common;

use std::sync::Arc;

use hahn_core::finite_field::elements;
use hahn_core::formula_lang::{parse_formula, Mode};
use hahn_core::root_solver::{hensel_lift_traced, puiseux_roots, UPoly, Verdict, DEFAULT_BUDGET};
use hahn_core::{Exponent, FqContext, HahnSeries, ValBound};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const ORDERS: [u64; 6] = [2, 3, 4, 5, 8, 9];

fn field(i: usize) -> Arc<FqContext> {
    FqContext::from_order(ORDERS[i]).unwrap()
}

/// `(numerator, denominator index, coefficient index)` triples.
fn raw_terms() -> impl Strategy<Value = Vec<(i64, usize, usize)>> {
    prop::collection::vec((-6i64..=6, 0usize..5, 0usize..8), 0..5)
}

fn build(ctx: &Arc<FqContext>, raw: &[(i64, usize, usize)]) -> HahnSeries {
    let p = ctx.p() as i64;
    let dens = [1, 2, 3, p, 2 * p];
    let units: Vec<_> = elements(ctx).filter(|c| !c.is_zero()).collect();
    let terms = raw
        .iter()
        .map(|&(a, d, c)| (Exponent::new(a, dens[d]), units[c % units.len()].clone()))
        .collect();
    HahnSeries::make(ctx, terms, None)
}

fn lower(v: &ValBound) -> Option<Exponent> {
    v.lower().cloned()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn canonical_form_is_idempotent(i in 0usize..6, raw in raw_terms()) {
        let ctx = field(i);
        let s = build(&ctx, &raw);
        let again = HahnSeries::make(&ctx, s.terms().map(|(e, c)| (e.clone(), c)).collect(), None);
        prop_assert_eq!(again, s);
    }

    #[test]
    fn valuation_is_multiplicative_and_ultrametric(i in 0usize..6, a in raw_terms(), b in raw_terms()) {
        let ctx = field(i);
        let (x, y) = (build(&ctx, &a), build(&ctx, &b));
        match (x.val(), y.val()) {
            (ValBound::Known(u), ValBound::Known(v)) => {
                prop_assert_eq!(x.mul(&y).val(), ValBound::Known(&u + &v));
                let s = x.add(&y).val();
                if u != v {
                    prop_assert_eq!(s, ValBound::Known(std::cmp::min(u, v)));
                } else if let ValBound::Known(w) = s {
                    prop_assert!(w >= u);
                }
            }
            _ => prop_assert!(x.mul(&y).is_zero()),
        }
    }

    #[test]
    fn pth_root_round_trip(i in 0usize..6, raw in raw_terms()) {
        let ctx = field(i);
        let p = ctx.p() as u32;
        let x = build(&ctx, &raw);
        prop_assert_eq!(x.pth_root().pow(p, None), x.clone());
        prop_assert_eq!(x.pow(p, None).pth_root(), x);
    }

    #[test]
    fn truncation_is_sound(i in 0usize..6, raw in raw_terms(), cap in -6i64..6) {
        let ctx = field(i);
        let x = build(&ctx, &raw);
        let cap = Exponent::new(cap, 2);
        let tr = x.truncate(&cap);
        prop_assert_eq!(tr.prec(), Some(&cap));
        prop_assert!(x.sub(&tr).val().at_least(&cap));
        prop_assert!(tr.exponents().all(|e| *e < cap));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn printed_formulas_parse_back(seed in any::<u64>(), field_mode in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = common::random_formula(&mut rng, 3, field_mode);
        let mode = if field_mode { Mode::Field } else { Mode::Ring };
        let text = phi.to_string();
        prop_assert_eq!(parse_formula(&text, mode).unwrap(), phi, "{}", text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn planted_roots_are_recovered(i in 0usize..6, n in 1usize..4, seed in any::<u64>()) {
        let ctx = field(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let roots = common::distinct_roots(&mut rng, &ctx, n);
        let g = common::planted(&ctx, &roots);
        let target = Exponent::int(10);
        let report = puiseux_roots(&g, &target, DEFAULT_BUDGET).unwrap();
        let Verdict::Yes(ws) = &report.verdict else {
            return Err(TestCaseError::fail(format!("{g}: {:?}", report.verdict)));
        };
        for r in &roots {
            prop_assert!(ws.iter().any(|w| w.sub(r).val().at_least(&target)), "{} missing from {:?}", r, ws);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn hensel_residual_doubles(i in 0usize..6, seed in any::<u64>(), e in prop::sample::select(vec![(1i64, 3i64), (1, 2), (1, 1), (2, 1)])) {
        let ctx = field(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = common::series(&mut rng, &ctx, hahn_core::verify_harness::Region::Ring);
        let units: Vec<_> = elements(&ctx).filter(|c| !c.is_zero()).collect();
        let c = HahnSeries::constant(&units[0]);
        let y = UPoly::var(&ctx);
        let mut g = y.sub(&UPoly::constant(r.clone())).mul(&y.sub(&UPoly::constant(r.add(&c))));
        if units.len() > 1 {
            g = g.mul(&y.sub(&UPoly::constant(r.add(&HahnSeries::constant(&units[1])))));
        }
        let y0 = r.add(&HahnSeries::t_pow(&ctx, Exponent::new(e.0, e.1)));
        let target = Exponent::int(20);
        let trace = hensel_lift_traced(&g, &y0, &target).unwrap();
        prop_assert!(trace.root.sub(&r).val().at_least(&target));
        for pair in trace.residuals.windows(2) {
            let (a, b) = (lower(&pair[0]).unwrap(), lower(&pair[1]).unwrap());
            prop_assert!(b >= std::cmp::min(a.mul_int(2), target.clone()), "{:?}", trace.residuals);
        }
    }
}
