use std::sync::Arc;

use rand::Rng;

use super::{random_series, CaseReport, CaseStatus, Region, SampleSpec, SuiteReport};
use crate::error::{Error, Result};
use crate::evaluator::{eval_term, Assignment, EvalConfig};
use crate::finite_field::{elements, FqContext, FqPoly};
use crate::formula_lang::{collapse_and, collapse_or, default_f, fe_to_e, parse_formula, CollapseMode, Formula, Mode, Sign, Term};
use crate::hahn_series::HahnSeries;
use crate::intpoly::IntPoly;

const SMALL_FIELDS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];
const PAIRS: usize = 20;
const HAHN_POINTS: usize = 100;

/// Truth with exact zero tests; binders range over `F_q` only.
fn finite_truth(phi: &Formula, sigma: &Assignment, ctx: &Arc<FqContext>) -> Result<bool> {
    Ok(match phi {
        Formula::True => true,
        Formula::False => false,
        Formula::Eq(l, r) => {
            let cfg = EvalConfig::default();
            let d = eval_term(l, sigma, ctx, &cfg)?.sub(&eval_term(r, sigma, ctx, &cfg)?);
            if !d.is_exact() {
                return Err(Error::precision("inexact atom in a truth table"));
            }
            d.is_zero()
        }
        Formula::And(fs) => {
            for f in fs {
                if !finite_truth(f, sigma, ctx)? {
                    return Ok(false);
                }
            }
            true
        }
        Formula::Or(fs) => {
            for f in fs {
                if finite_truth(f, sigma, ctx)? {
                    return Ok(true);
                }
            }
            false
        }
        Formula::Exists(v, body) => {
            for c in elements(ctx) {
                let mut s = sigma.clone();
                s.insert(v.clone(), HahnSeries::constant(&c));
                if finite_truth(body, &s, ctx)? {
                    return Ok(true);
                }
            }
            false
        }
    })
}

/// `sum c_ij z^i x^j` over `i + j <= 3`, constant term often dropped so
/// that common zeros occur.
fn random_g(rng: &mut impl Rng, p: u64) -> Term {
    let mut parts = Vec::new();
    for i in 0..=3u32 {
        for j in 0..=(3 - i) {
            if (i + j == 0 && rng.gen_bool(0.5)) || !rng.gen_bool(0.4) {
                continue;
            }
            let mut factors = vec![Term::Int(rng.gen_range(1..p))];
            for (v, e) in [("z", i), ("x", j)] {
                match e {
                    0 => {}
                    1 => factors.push(Term::var(v)),
                    e => factors.push(Term::pow(Term::var(v), e)),
                }
            }
            let t = if factors.len() == 1 { factors.pop().unwrap() } else { Term::Product(factors) };
            parts.push((Sign::Plus, t));
        }
    }
    if parts.is_empty() {
        Term::zero()
    } else {
        Term::sum(parts)
    }
}

fn atom(t: Term) -> Formula {
    Formula::Eq(t, Term::zero())
}

fn has_root(ctx: &Arc<FqContext>, f: &IntPoly) -> Result<bool> {
    Ok(!FqPoly::from_int_poly(ctx, f).roots()?.is_empty())
}

/// Pointwise comparison of `g1 = 0 & g2 = 0` and `g1 = 0 | g2 = 0` with
/// their collapses.
fn compare(case: &mut CaseReport, g1: &Formula, g2: &Formula, f: &IntPoly, points: &[Assignment], ctx: &Arc<FqContext>) -> Result<()> {
    let both = Formula::And(vec![g1.clone(), g2.clone()]);
    let either = Formula::Or(vec![g1.clone(), g2.clone()]);
    let cand = collapse_and(g1, g2, f)?;
    let cor = collapse_or(g1, g2)?;
    for sigma in points {
        if finite_truth(&both, sigma, ctx)? != finite_truth(&cand, sigma, ctx)? {
            case.fail(format!("and-collapse differs at {}", show(sigma)));
            return Ok(());
        }
        if finite_truth(&either, sigma, ctx)? != finite_truth(&cor, sigma, ctx)? {
            case.fail(format!("or-collapse differs at {}", show(sigma)));
            return Ok(());
        }
    }
    Ok(())
}

fn show(sigma: &Assignment) -> String {
    sigma.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(", ")
}

/// `(exists y. y-1 = 0) & (exists z. z-2 = 0)` over `F_5` with `f = X^2 - 2`:
/// identifying the binders turns a true sentence into a false one, while
/// the sound collapse keeps them apart.
pub fn distinct_binder_fixture() -> Result<CaseReport> {
    let ctx = FqContext::from_order(5)?;
    let f = IntPoly::new(vec![-2, 0, 1]);
    let input = parse_formula("(exists y. y-1 = 0) & (exists z. z-2 = 0)", Mode::Ring)?;
    let paper = fe_to_e(&input, &f, CollapseMode::Paper)?.formula;
    let sound = fe_to_e(&input, &f, CollapseMode::Sound)?.formula;
    let mut case = CaseReport::new(0, format!("{input} over F_5, f = X^2-2"));
    case.note(format!("paper: {paper}"));
    let none = Assignment::new();
    let (i, o, s) = (
        finite_truth(&input, &none, &ctx)?,
        finite_truth(&paper, &none, &ctx)?,
        finite_truth(&sound, &none, &ctx)?,
    );
    case.note(format!("input {i}, paper output {o}, sound output {s}"));
    if i && !o && s {
        case.status = CaseStatus::ExpectedDivergence;
    } else {
        case.fail("distinct-binder divergence not reproduced");
    }
    Ok(case)
}

/// Exhaustive truth tables over every small field where `f` is rootless,
/// sampled Hahn points over `F_q`, and the distinct-binder fixture.
pub fn check_collapse(spec: &SampleSpec) -> Result<SuiteReport> {
    let f = default_f(spec.q);
    let mut report = SuiteReport::new("collapse", spec);
    let mut rng = spec.rng(3);
    for qq in SMALL_FIELDS {
        let small = FqContext::from_order(qq)?;
        if has_root(&small, &f)? {
            continue;
        }
        let elems: Vec<HahnSeries> = elements(&small).map(|c| HahnSeries::constant(&c)).collect();
        let points: Vec<Assignment> = elems
            .iter()
            .flat_map(|z| elems.iter().map(move |x| Assignment::from([("z".into(), z.clone()), ("x".into(), x.clone())])))
            .collect();
        for _ in 0..PAIRS {
            let (g1, g2) = (atom(random_g(&mut rng, small.p())), atom(random_g(&mut rng, small.p())));
            let mut case = CaseReport::new(report.cases.len(), format!("F_{qq}: {g1} ; {g2}"));
            compare(&mut case, &g1, &g2, &f, &points, &small)?;
            report.cases.push(case);
        }
    }

    let ctx = FqContext::from_order(spec.q)?;
    let p = ctx.p();
    for _ in 0..HAHN_POINTS {
        let z = random_series(&mut rng, &ctx, Region::Any);
        let x = random_series(&mut rng, &ctx, Region::Any);
        let mut sigma = Assignment::from([("z".into(), z), ("x".into(), x)]);
        let mut gs = Vec::new();
        for c in ["c1", "c2"] {
            let g = random_g(&mut rng, p);
            let value = if rng.gen_bool(0.6) {
                eval_term(&g, &sigma, &ctx, &EvalConfig::default())?
            } else {
                random_series(&mut rng, &ctx, Region::Any)
            };
            sigma.insert(c.into(), value);
            gs.push(atom(Term::minus(g, Term::var(c))));
        }
        let mut case = CaseReport::new(report.cases.len(), format!("{} ; {} at {}", gs[0], gs[1], show(&sigma)));
        compare(&mut case, &gs[0], &gs[1], &f, std::slice::from_ref(&sigma), &ctx)?;
        report.cases.push(case);
    }

    let mut fixture = distinct_binder_fixture()?;
    fixture.index = report.cases.len();
    report.cases.push(fixture);
    Ok(report)
}
