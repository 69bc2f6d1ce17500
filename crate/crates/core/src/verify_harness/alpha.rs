use std::sync::Arc;

use rand::Rng;

use super::zeta::wp_preimage;
use super::{lift_from_zero, random_series, CaseReport, Region, SampleSpec, SuiteReport};
use crate::error::Result;
use crate::evaluator::{eval_term, ground_truth_m, Assignment, EvalConfig};
use crate::exponent::Exponent;
use crate::finite_field::{prime_power, FqContext, FqElem, FqPoly};
use crate::formula_lang::{mk_alpha, mk_kochen, Formula, Mode, Term};
use crate::hahn_series::HahnSeries;
use crate::intpoly::IntPoly;
use crate::root_solver::{hensel_lift, UPoly};

const PAIRS: usize = 50;

fn cfg() -> EvalConfig {
    EvalConfig {
        mode: Mode::Field,
        ..EvalConfig::default()
    }
}

fn wp_value(q: u64, x: &HahnSeries) -> HahnSeries {
    x.pow(q as u32, None).sub(x)
}

fn at(y: &HahnSeries) -> Assignment {
    Assignment::from([("y".to_string(), y.clone())])
}

/// `(w, x)` with `w` in the ring and `x` in the ideal; the first pair is
/// `(0, t)`, then `(0, 0)`.
fn pairs(spec: &SampleSpec, ctx: &Arc<FqContext>, stream: u64) -> Vec<(HahnSeries, HahnSeries)> {
    let mut rng = spec.rng(stream);
    let mut out = vec![(HahnSeries::zero(ctx), HahnSeries::t(ctx)), (HahnSeries::zero(ctx), HahnSeries::zero(ctx))];
    while out.len() < PAIRS {
        let w = random_series(&mut rng, ctx, Region::Ring);
        let x = random_series(&mut rng, ctx, Region::Ideal);
        if rng.gen_bool(0.5) {
            out.push((w, x));
        } else {
            out.push((HahnSeries::zero(ctx), x));
        }
    }
    out
}

fn check_close(case: &mut CaseReport, got: &HahnSeries, want: &HahnSeries, target: &Exponent) {
    let r = got.sub(want);
    case.residual(&r);
    if !r.val().at_least(target) {
        case.fail(format!("identity holds only to {:?}", r.val()));
    }
}

/// Piecewise values of `alpha_q(u, y)` and surjectivity of
/// `y -> alpha_q(u, w + y)` from the ideal onto `-1/u + m`.
pub fn check_alpha(spec: &SampleSpec, u: i64) -> Result<SuiteReport> {
    let ctx = FqContext::from_order(spec.q)?;
    let q = spec.q;
    let alpha = mk_alpha(q, u, "y")?;
    let cfg = cfg();
    let cap = &cfg.target + &Exponent::int(2);
    let ue = HahnSeries::from_int(&ctx, u);
    let minus_uinv = HahnSeries::constant(&FqElem::from_int(&ctx, u).inv()?).neg();
    let mut report = SuiteReport::new("alpha", spec);
    for y in spec.points(&ctx) {
        let mut case = CaseReport::new(report.cases.len(), format!("y = {y}"));
        let a = eval_term(&alpha, &at(&y), &ctx, &cfg)?;
        case.witness("alpha", &a);
        let negative = y.val().known().is_some_and(Exponent::is_negative);
        let in_ideal = if negative { a.clone() } else { a.sub(&minus_uinv) };
        if !ground_truth_m(&in_ideal)? {
            case.fail(if negative { "alpha not in m" } else { "alpha not in -1/u + m" });
        }
        report.cases.push(case);
    }
    for (w, x) in pairs(spec, &ctx, 1) {
        let mut case = CaseReport::new(report.cases.len(), format!("w = {w}, x = {x}"));
        let want = minus_uinv.add(&x);
        // wp(w + Y) - u - 1/want, using additivity of wp
        let c = wp_value(q, &w).sub(&ue).sub(&want.inv(&cap)?);
        let g = UPoly::from_int_poly(&ctx, &IntPoly::artin_schreier_minus_one(q))
            .add(&UPoly::constant(HahnSeries::one(&ctx).add(&c)));
        let y = lift_from_zero(&g, &cap)?;
        case.witness("y", &y);
        if !ground_truth_m(&y)? {
            case.fail("lifted y not in m");
        }
        let got = eval_term(&alpha, &at(&w.add(&y)), &ctx, &cfg)?;
        check_close(&mut case, &got, &want, &cfg.target);
        report.cases.push(case);
    }
    Ok(report)
}

/// `alpha(u,Y) + alpha(-u,Y) = 2 wp(Y) / (wp(Y)^2 - u^2)` in `F_q(Y)`,
/// compared as cross-multiplied polynomials.
pub fn kochen_identity(ctx: &Arc<FqContext>, u: i64) -> bool {
    let q = ctx.order();
    let mut c = vec![0i64; q as usize + 1];
    c[1] = -1;
    c[q as usize] = 1;
    let wp = FqPoly::from_int_poly(ctx, &IntPoly::new(c));
    let k = |n: i64| FqPoly::new(ctx, &[FqElem::from_int(ctx, n)]);
    let (plus, minus) = (wp.add(&k(u)), wp.sub(&k(u)));
    let num = plus.add(&minus);
    let den = minus.mul(&plus);
    let rnum = k(2).mul(&wp);
    let rden = wp.mul(&wp).sub(&k(u * u));
    !den.is_zero() && !rden.is_zero() && num.mul(&rden) == rnum.mul(&den)
}

fn gamma_term(kochen: &Formula) -> &Term {
    match kochen {
        Formula::Exists(_, body) => match &**body {
            Formula::Eq(_, rhs) => rhs,
            _ => unreachable!("x = gamma"),
        },
        _ => unreachable!("exists y"),
    }
}

/// Image of `y -> alpha(u, y) + alpha(-u, y)`: lands in `m`, and every
/// `x` in `m` is reached through the square root `s` of `1 + u^2 x^2`,
/// `wp = -u^2 x / (1 + s)` and an Artin-Schreier root.
pub fn check_kochen(spec: &SampleSpec, u: i64) -> Result<SuiteReport> {
    let ctx = FqContext::from_order(spec.q)?;
    let q = spec.q;
    let kochen = mk_kochen(q, u)?;
    let mut report = SuiteReport::new("kochen", spec);
    let (p, _) = prime_power(q)?;
    if p == 2 {
        report.skipped = Some("p = 2 is outside the hypothesis p != 2".into());
        return Ok(report);
    }
    let cfg = cfg();
    let cap = &cfg.target + &Exponent::int(2);
    let gamma = gamma_term(&kochen.formula);
    let simple = gamma_term(&kochen.simplified);

    let mut case = CaseReport::new(0, "alpha(u,Y) + alpha(-u,Y) = 2 wp(Y) / (wp(Y)^2 - u^2)");
    if !kochen_identity(&ctx, u) {
        case.fail("rational functions differ");
    }
    report.cases.push(case);

    for y in spec.points(&ctx) {
        let mut case = CaseReport::new(report.cases.len(), format!("y = {y}"));
        let g = eval_term(gamma, &at(&y), &ctx, &cfg)?;
        case.witness("gamma", &g);
        if !ground_truth_m(&g)? {
            case.fail("gamma(y) not in m");
        }
        // the inverse is multiplied by wp(y), so it needs -v(wp(y)) more digits
        let lost = wp_value(q, &y).val().known().filter(|v| v.is_negative()).map_or_else(Exponent::zero, |v| v.mul_int(-1));
        let wide = EvalConfig {
            target: &cfg.target + &lost,
            ..cfg.clone()
        };
        check_close(&mut case, &eval_term(simple, &at(&y), &ctx, &wide)?, &g, &cfg.target);
        report.cases.push(case);
    }

    let one = HahnSeries::one(&ctx);
    let u2 = HahnSeries::from_int(&ctx, u * u);
    for (w, x) in pairs(spec, &ctx, 2) {
        let mut case = CaseReport::new(report.cases.len(), format!("w = {w}, x = {x}"));
        let disc = one.add(&u2.mul(&x).mul(&x));
        let sq = UPoly::new(&ctx, vec![disc.neg(), HahnSeries::zero(&ctx), one.clone()]);
        let s = hensel_lift(&sq, &one, &cap)?;
        let wp_target = u2.mul(&x).neg().div(&one.add(&s), &cap)?;
        let y = wp_preimage(&ctx, q, &wp_target.sub(&wp_value(q, &w)), &cap)?;
        case.witness("s", &s);
        case.witness("wp", &wp_target);
        case.witness("y", &y);
        let got = eval_term(gamma, &at(&w.add(&y)), &ctx, &cfg)?;
        check_close(&mut case, &got, &x, &cfg.target);
        report.cases.push(case);
    }
    Ok(report)
}
