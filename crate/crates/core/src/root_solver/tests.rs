use std::sync::Arc;

use super::*;
use crate::error::Error;
use crate::exponent::Exponent;
use crate::finite_field::FqContext;
use crate::hahn_series::HahnSeries;

fn field(q: u64) -> Arc<FqContext> {
    FqContext::from_order(q).unwrap()
}

fn poly(ctx: &Arc<FqContext>, s: &str) -> UPoly {
    UPoly::parse(ctx, s).unwrap()
}

fn series(ctx: &Arc<FqContext>, s: &str) -> HahnSeries {
    HahnSeries::parse(ctx, s).unwrap()
}

#[test]
fn parses_literals() {
    let f3 = field(3);
    let g = poly(&f3, "y^2 - (1+t)*y + t^(1/2)");
    assert_eq!(g.degree(), Some(2));
    assert_eq!(g.coeff(1), series(&f3, "2 + 2*t"));
    assert_eq!(g.coeff(0), series(&f3, "t^(1/2)"));
    assert_eq!(poly(&f3, "(y-1)^2"), poly(&f3, "y^2 + y + 1"));
    assert!(matches!(UPoly::parse(&f3, "y^(1/2)"), Err(Error::Syntax { .. })));
}

#[test]
fn hensel_square_root() {
    let f3 = field(3);
    let g = poly(&f3, "y^2 - (1+t)");
    let y = hensel_lift(&g, &HahnSeries::one(&f3), &Exponent::int(3)).unwrap();
    // oracle: square directly and compare with 1 + t below t^3
    let sq = y.mul(&y).truncate(&Exponent::int(3));
    assert_eq!(sq.compare(&series(&f3, "1 + t")).unwrap(), crate::hahn_series::SeriesEq::UpTo(Exponent::int(3)));
    assert_eq!(y.truncate(&Exponent::int(3)), series(&f3, "1 + 2*t + t^2 + O(t^3)"));
}

#[test]
fn hensel_linear_is_exact() {
    let f5 = field(5);
    let g = poly(&f5, "y - t");
    let y = hensel_lift(&g, &HahnSeries::zero(&f5), &Exponent::int(10)).unwrap();
    assert_eq!(y, HahnSeries::t(&f5));
}

#[test]
fn hensel_rejects_bad_start() {
    let f3 = field(3);
    let g = poly(&f3, "y^2 - t");
    assert_eq!(hensel_lift(&g, &HahnSeries::zero(&f3), &Exponent::int(4)), Err(Error::NotHenselReady));
}

#[test]
fn hensel_residual_doubles() {
    let f3 = field(3);
    let g = poly(&f3, "y^3 - y - t^2 + t");
    let tr = hensel_lift_traced(&g, &HahnSeries::zero(&f3), &Exponent::int(40)).unwrap();
    let target = Exponent::int(40);
    let d2 = tr.derivative_valuation.mul_int(2);
    for w in tr.residuals.windows(2) {
        let prev = w[0].known().unwrap();
        let bound = std::cmp::min(target.clone(), &prev.mul_int(2) - &d2);
        assert!(w[1].at_least(&bound), "{:?}", tr.residuals);
    }
}

#[test]
fn polygon_orientation() {
    let f2 = field(2);
    let p = newton_polygon(&poly(&f2, "y^2 - t")).unwrap();
    assert_eq!(p.segments.len(), 1);
    assert_eq!(p.segments[0].root_valuation, Exponent::new(1, 2));
    assert_eq!(p.segments[0].length(), 2);

    // the point (1, 0) lies above the chord from (0,-1) to (2,0)
    let p = newton_polygon(&poly(&f2, "y^2 - y - t^-1")).unwrap();
    assert_eq!(p.root_valuations(), vec![Exponent::new(-1, 2); 2]);

    let f5 = field(5);
    let p = newton_polygon(&poly(&f5, "y*(y-1)")).unwrap();
    assert_eq!(p.root_valuations(), vec![Exponent::zero()]);
}

#[test]
fn polygon_needs_precision() {
    let f3 = field(3);
    let g = UPoly::new(&f3, vec![HahnSeries::big_o(&f3, Exponent::int(1)), HahnSeries::one(&f3)]);
    assert!(matches!(newton_polygon(&g), Err(Error::InsufficientPrecision(_))));
}

#[test]
fn frobenius_square_root() {
    let f2 = field(2);
    let v = has_root_to_precision(&poly(&f2, "y^2 - t"), &Exponent::int(10), DEFAULT_BUDGET).unwrap();
    assert_eq!(v, Verdict::Yes(vec![series(&f2, "t^(1/2)")]));
}

#[test]
fn artin_schreier_tower() {
    for p in [2u64, 3, 5] {
        let fp = field(p);
        let g = poly(&fp, &format!("y^{p} - y - t^-1"));
        let target = Exponent::new(-1, (p * p * p * p) as i64);
        let Verdict::Yes(ws) = has_root_to_precision(&g, &target, DEFAULT_BUDGET).unwrap() else {
            panic!("no witness for p = {p}");
        };
        // oracle: the root sum_{n>=1} t^(-1/p^n), compared below the target
        let mut exact = HahnSeries::zero(&fp);
        let mut den = 1i64;
        for _ in 0..6 {
            den *= p as i64;
            exact = exact.add(&HahnSeries::t_pow(&fp, Exponent::new(-1, den)));
        }
        let w = &ws[0];
        let diff = w.sub(&exact);
        assert!(diff.val().at_least(&target), "p={p}: {w}");
        let res = w.pow(p as u32, None).sub(w).sub(&HahnSeries::t_pow(&fp, Exponent::int(-1)));
        assert!(res.val().at_least(&target));
    }
}

#[test]
fn no_roots() {
    for q in [2u64, 3, 4, 5, 9] {
        let fq = field(q);
        let g = poly(&fq, &format!("y^{q} - y - 1"));
        assert_eq!(has_root_to_precision(&g, &Exponent::int(10), DEFAULT_BUDGET).unwrap(), Verdict::No, "q={q}");
    }
    let f2 = field(2);
    assert_eq!(has_root_to_precision(&poly(&f2, "y^2 + y + 1"), &Exponent::int(5), 8).unwrap(), Verdict::No);
}

#[test]
fn budget_zero_is_inconclusive() {
    let f3 = field(3);
    let g = poly(&f3, "y^2 - (1+t)");
    assert_eq!(has_root_to_precision(&g, &Exponent::int(3), 0).unwrap(), Verdict::Inconclusive);
    assert!(has_root_to_precision(&g, &Exponent::int(3), DEFAULT_BUDGET).unwrap().is_yes());
}

#[test]
fn rational_function_lemma_instance() {
    // g(Y) = Y^3 - Y - 1 - (t - 1)^{-1}, Hensel from 0 (g(0) in m, g'(0) = -1)
    let f3 = field(3);
    let x = HahnSeries::t(&f3);
    let k = x.sub(&HahnSeries::one(&f3)).inv(&Exponent::int(20)).unwrap();
    let c = HahnSeries::one(&f3).add(&k).neg();
    let g = UPoly::new(&f3, vec![c, HahnSeries::from_int(&f3, -1), HahnSeries::zero(&f3), HahnSeries::one(&f3)]);
    let target = Exponent::int(5);
    let y = hensel_lift(&g, &HahnSeries::zero(&f3), &target).unwrap();
    assert!(y.val().at_least(&Exponent::new(1, 1_000_000)));
    let back = y.pow(3, None).sub(&y).sub(&HahnSeries::one(&f3)).sub(&k);
    assert!(back.val().at_least(&target));
}

#[test]
fn non_monic_leading_coefficient() {
    let f5 = field(5);
    let g = poly(&f5, "(1+t)*y - t");
    let Verdict::Yes(ws) = has_root_to_precision(&g, &Exponent::int(6), DEFAULT_BUDGET).unwrap() else {
        panic!()
    };
    // t/(1+t) = t - t^2 + t^3 - ...
    let expect = series(&f5, "t - t^2 + t^3 - t^4 + t^5 + O(t^6)");
    assert_eq!(ws[0].truncate(&Exponent::int(6)), expect);
    let g = UPoly::new(&f5, vec![HahnSeries::one(&f5), HahnSeries::big_o(&f5, Exponent::int(2))]);
    assert_eq!(has_root_to_precision(&g, &Exponent::int(2), 4), Err(Error::NotMonic));
}

#[test]
fn finds_every_product_root() {
    let f3 = field(3);
    let roots = [series(&f3, "1 + t^(1/2)"), series(&f3, "2*t^-1 + t"), series(&f3, "1 + 2*t^(1/2)")];
    let mut g = UPoly::constant(HahnSeries::one(&f3));
    for r in &roots {
        g = g.mul(&UPoly::new(&f3, vec![r.neg(), HahnSeries::one(&f3)]));
    }
    let target = Exponent::int(4);
    let report = puiseux_roots(&g, &target, DEFAULT_BUDGET).unwrap();
    let Verdict::Yes(ws) = report.verdict else { panic!() };
    for r in &roots {
        assert!(ws.iter().any(|w| w.sub(r).val().at_least(&target)), "missing {r}: {ws:?}");
    }
}
