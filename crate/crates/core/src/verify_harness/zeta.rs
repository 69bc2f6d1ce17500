use std::sync::Arc;

use super::{lift_from_zero, matrix_residuals, CaseReport, SampleSpec, SuiteReport};
use crate::error::Result;
use crate::evaluator::{eval_beta, eval_formula, ground_truth_m, ground_truth_o, Assignment, EvalConfig, EvalVerdict};
use crate::exponent::Exponent;
use crate::finite_field::{FqContext, FqElem, FqPoly};
use crate::formula_lang::{default_f, mk_epsilon, mk_eta, mk_zeta, Formula, Mode};
use crate::hahn_series::{HahnSeries, ValBound};
use crate::intpoly::IntPoly;
use crate::root_solver::UPoly;

fn field_cfg() -> EvalConfig {
    EvalConfig {
        mode: Mode::Field,
        ..EvalConfig::default()
    }
}

/// Dichotomy for `f(y)`, membership of `1/f(y)` and `beta_f(y)` in the ring.
pub fn check_fehm_lemma(spec: &SampleSpec) -> Result<SuiteReport> {
    let ctx = FqContext::from_order(spec.q)?;
    let f = default_f(spec.q);
    let fpoly = UPoly::from_int_poly(&ctx, &f);
    let fbar = FqPoly::from_int_poly(&ctx, &f);
    let cap = EvalConfig::default().target;
    let mut report = SuiteReport::new("fehm", spec);
    for (i, y) in spec.points(&ctx).into_iter().enumerate() {
        let mut case = CaseReport::new(i, y.to_string());
        let fy = fpoly.eval(&y);
        case.residual(&fy);
        let vy = y.val();
        match (&vy, fy.val()) {
            (ValBound::Known(v), ValBound::Known(w)) if v.is_negative() => {
                if w != v.mul_int(spec.q as i64) {
                    case.fail(format!("v(f(y)) = {w}, expected {}", v.mul_int(spec.q as i64)));
                }
            }
            (_, ValBound::Known(w)) => {
                let res = y.residue()?;
                if !w.is_zero() {
                    case.fail(format!("v(f(y)) = {w} for v(y) >= 0"));
                } else if fy.residue()? != fbar.eval(&res) || fbar.eval(&res).is_zero() {
                    case.fail("residue of f(y) is not the nonzero value f(res y)");
                }
            }
            (_, other) => case.fail(format!("v(f(y)) not exact: {other:?}")),
        }
        match fy.inv(&cap) {
            Ok(inv) if ground_truth_o(&inv)? => {}
            _ => case.fail("1/f(y) outside the valuation ring"),
        }
        let beta = eval_beta(&f, &y, &cap)?;
        case.witness("beta", &beta);
        if !ground_truth_o(&beta)? {
            case.fail("beta_f(y) outside the valuation ring");
        }
        report.cases.push(case);
    }
    Ok(report)
}

/// `y` with `beta_f(y) = b` for `b` in the maximal ideal: the root near 0
/// of `f(Y) = f(0) / (1 + f(0) b)`.
pub(crate) fn beta_preimage(ctx: &Arc<FqContext>, f: &IntPoly, b: &HahnSeries, cap: &Exponent) -> Result<HahnSeries> {
    let f0 = HahnSeries::from_int(ctx, f.eval(0));
    let c = f0.div(&HahnSeries::one(ctx).add(&f0.mul(b)), cap)?;
    let g = UPoly::from_int_poly(ctx, f).sub(&UPoly::constant(c));
    lift_from_zero(&g, cap)
}

/// Root near 0 of `Y^q - Y = x` for `x` in the maximal ideal.
pub(crate) fn wp_preimage(ctx: &Arc<FqContext>, q: u64, x: &HahnSeries, cap: &Exponent) -> Result<HahnSeries> {
    let g = UPoly::from_int_poly(ctx, &IntPoly::artin_schreier_minus_one(q))
        .add(&UPoly::constant(HahnSeries::one(ctx).sub(x)));
    lift_from_zero(&g, cap)
}

fn wp_value(q: u64, x: &HahnSeries) -> HahnSeries {
    x.pow(q as u32, None).sub(x)
}

/// Checks a recipe witness against the formula's matrix.
fn confirm(case: &mut CaseReport, phi: &Formula, sigma: &Assignment, ctx: &Arc<FqContext>, cfg: &EvalConfig) -> Result<()> {
    match matrix_residuals(phi, sigma, ctx, cfg)? {
        Some(rs) => rs.iter().for_each(|r| case.residual(r)),
        None => case.fail("constructed witness does not satisfy the matrix"),
    }
    Ok(())
}

fn record(case: &mut CaseReport, label: &str, verdict: &EvalVerdict, expected: bool) {
    match verdict.truth() {
        None => case.unknown(format!("{label}: {verdict:?}")),
        Some(b) if b != expected => case.fail(format!("{label} gave {b}, ground truth {expected}")),
        Some(_) => {}
    }
}

/// Evaluator verdicts for zeta and epsilon against `v >= 0` and `v > 0`,
/// with witnesses built by Hensel lifting for the true cases.
pub fn check_zeta_epsilon(spec: &SampleSpec) -> Result<SuiteReport> {
    let ctx = FqContext::from_order(spec.q)?;
    let q = spec.q;
    let f = default_f(q);
    let zeta = mk_zeta(q, None)?;
    let eps = mk_epsilon(q, None)?;
    let cfg = field_cfg();
    let cap = &cfg.target + &Exponent::int(2);
    let mut report = SuiteReport::new("zeta", spec);
    for (i, x) in spec.points(&ctx).into_iter().enumerate() {
        let mut case = CaseReport::new(i, x.to_string());
        let (o, m) = (ground_truth_o(&x)?, ground_truth_m(&x)?);
        let sigma = Assignment::from([("x".to_string(), x.clone())]);
        let vz = eval_formula(&zeta, &sigma, &ctx, &cfg)?;
        let ve = eval_formula(&eps, &sigma, &ctx, &EvalConfig::default())?;
        record(&mut case, "zeta", &vz, o);
        record(&mut case, "epsilon", &ve, m);
        if o {
            let y = beta_preimage(&ctx, &f, &wp_value(q, &x), &cap)?;
            case.witness("zeta.y", &y);
            let mut s = sigma.clone();
            s.insert("y".into(), y);
            confirm(&mut case, &zeta, &s, &ctx, &cfg)?;
        }
        if m {
            let b = wp_preimage(&ctx, q, &x, &cap)?;
            let y = beta_preimage(&ctx, &f, &b, &cap)?;
            case.witness("epsilon.y", &y);
            let mut s = sigma.clone();
            s.insert("y".into(), y);
            confirm(&mut case, &eps, &s, &ctx, &cfg)?;
        }
        report.cases.push(case);
    }
    Ok(report)
}

/// `eta_f` against `zeta_q` and `v >= 0`; the true cases are witnessed by
/// `s` = residue of `x`, `r = x - s`, `z = 0` and `y` with `beta_f(y) = r`.
pub fn check_eta_vs_zeta(spec: &SampleSpec) -> Result<SuiteReport> {
    let ctx = FqContext::from_order(spec.q)?;
    let q = spec.q;
    let f = default_f(q);
    let eta = mk_eta(q, None)?;
    let zeta = mk_zeta(q, None)?;
    let cfg = field_cfg();
    let cap = &cfg.target + &Exponent::int(2);
    let mut report = SuiteReport::new("eta", spec);
    for (i, x) in spec.points(&ctx).into_iter().enumerate() {
        let mut case = CaseReport::new(i, x.to_string());
        let o = ground_truth_o(&x)?;
        let sigma = Assignment::from([("x".to_string(), x.clone())]);
        let ve = eval_formula(&eta, &sigma, &ctx, &EvalConfig::default())?;
        let vz = eval_formula(&zeta, &sigma, &ctx, &cfg)?;
        record(&mut case, "eta", &ve, o);
        record(&mut case, "zeta", &vz, o);
        if o {
            let s = HahnSeries::constant(&x.residue()?);
            let r = x.sub(&s);
            if !wp_value(q, &s).is_zero() {
                case.fail("wp(s) != 0 for a constant s");
            }
            let y = beta_preimage(&ctx, &f, &r, &cap)?;
            let mut full = sigma.clone();
            for (k, v) in [("r", r), ("s", s), ("y", y), ("z", HahnSeries::constant(&FqElem::zero(&ctx)))] {
                case.witness(k, &v);
                full.insert(k.into(), v);
            }
            confirm(&mut case, &eta, &full, &ctx, &cfg)?;
        }
        report.cases.push(case);
    }
    Ok(report)
}
