//! Existential evaluation: prenex form, disjunctive normal form, and a
//! conjunction solver that eliminates binders one at a time.

use std::collections::HashMap;
use std::sync::Arc;

use super::clear::Clearer;
use super::mpoly::MPoly;
use super::{eval_term, Assignment, EvalConfig, EvalVerdict};
use crate::error::Result;
use crate::exponent::Exponent;
use crate::finite_field::{elements, FqContext};
use crate::formula_lang::{Formula, Term};
use crate::hahn_series::{HahnSeries, ValBound};
use crate::root_solver::{has_root_to_precision, puiseux_roots, Verdict};

const ATTEMPTS: usize = 3;
const MAX_CHARTS: usize = 400;

type Atom = (Term, Term);

/// Pulls every binder to the front, renaming apart.
fn prenex(phi: &Formula, binders: &mut Vec<(String, String)>) -> Formula {
    match phi {
        Formula::Exists(v, body) => {
            let fresh = format!("{v}#{}", binders.len());
            binders.push((fresh.clone(), v.clone()));
            let renamed = body.substitute(v, &Term::Var(fresh));
            prenex(&renamed, binders)
        }
        Formula::And(fs) => Formula::And(fs.iter().map(|f| prenex(f, binders)).collect()),
        Formula::Or(fs) => Formula::Or(fs.iter().map(|f| prenex(f, binders)).collect()),
        _ => phi.clone(),
    }
}

fn dnf(phi: &Formula) -> Vec<Vec<Atom>> {
    match phi {
        Formula::True => vec![vec![]],
        Formula::False => vec![],
        Formula::Eq(l, r) => vec![vec![(l.clone(), r.clone())]],
        Formula::Or(fs) => fs.iter().flat_map(dnf).collect(),
        Formula::And(fs) => fs.iter().fold(vec![vec![]], |acc, f| {
            let part = dnf(f);
            acc.iter()
                .flat_map(|a| part.iter().map(move |b| [a.clone(), b.clone()].concat()))
                .collect()
        }),
        Formula::Exists(..) => unreachable!("prenexed"),
    }
}

enum Outcome {
    True(Vec<Option<HahnSeries>>),
    False,
    Unknown(String),
}

/// Kleene disjunction over alternatives.
fn any(outcomes: impl IntoIterator<Item = Outcome>) -> Outcome {
    let mut unknown = None;
    for o in outcomes {
        match o {
            Outcome::True(a) => return Outcome::True(a),
            Outcome::Unknown(r) => unknown = Some(r),
            Outcome::False => {}
        }
    }
    unknown.map_or(Outcome::False, Outcome::Unknown)
}

struct State {
    zero: Vec<MPoly>,
    nonzero: Vec<MPoly>,
    assign: Vec<Option<HahnSeries>>,
    derived: Vec<(usize, MPoly)>,
    /// Some assigned value is only an approximation of a true root.
    approx: bool,
}

struct Solver<'a> {
    ctx: &'a Arc<FqContext>,
    target: Exponent,
    budget: usize,
    nvars: usize,
    candidates: Vec<HahnSeries>,
}

enum Check {
    Holds,
    Fails,
    Undecided,
}

impl Solver<'_> {
    fn check_zero(&self, c: &HahnSeries, approx: bool) -> Check {
        if approx {
            return if c.val().at_least(&self.target) { Check::Holds } else { Check::Undecided };
        }
        match c.val() {
            ValBound::Infinite => Check::Holds,
            ValBound::Known(_) => Check::Fails,
            ValBound::AtLeast(b) if b >= self.target => Check::Holds,
            ValBound::AtLeast(_) => Check::Undecided,
        }
    }

    fn check_nonzero(&self, c: &HahnSeries, approx: bool) -> Check {
        match c.val() {
            ValBound::Infinite if !approx => Check::Fails,
            ValBound::Known(v) if !approx || v < self.target => Check::Holds,
            _ => Check::Undecided,
        }
    }

    fn assign(&self, st: &State, i: usize, value: &HahnSeries, approx: bool) -> State {
        let mut assign = st.assign.clone();
        assign[i] = Some(value.clone());
        State {
            zero: st.zero.iter().map(|p| p.substitute(i, value)).collect(),
            nonzero: st.nonzero.iter().map(|p| p.substitute(i, value)).collect(),
            assign,
            derived: st.derived.clone(),
            approx: st.approx || approx,
        }
    }

    fn finish(&self, st: &State) -> Outcome {
        let mut assign = st.assign.clone();
        for (i, e) in st.derived.iter().rev() {
            let mut p = e.clone();
            for (j, v) in assign.iter().enumerate() {
                if let Some(v) = v {
                    p = p.substitute(j, v);
                }
            }
            for j in p.vars() {
                p = p.substitute(j, &HahnSeries::zero(self.ctx));
            }
            assign[*i] = Some(p.as_constant().unwrap().to_exact());
        }
        Outcome::True(assign)
    }

    fn solve(&self, mut st: State, depth: usize) -> Outcome {
        if depth > 4 * self.nvars + 8 {
            return Outcome::Unknown("elimination too deep".into());
        }
        let mut undecided = None;
        let mut zero = Vec::new();
        for p in std::mem::take(&mut st.zero) {
            match p.as_constant() {
                None => zero.push(p),
                Some(c) => match self.check_zero(&c, st.approx) {
                    Check::Holds => {}
                    Check::Fails => return Outcome::False,
                    Check::Undecided => undecided = Some(format!("cannot decide {c} = 0")),
                },
            }
        }
        let mut nonzero = Vec::new();
        for p in std::mem::take(&mut st.nonzero) {
            match p.as_constant() {
                None => nonzero.push(p),
                Some(c) => match self.check_nonzero(&c, st.approx) {
                    Check::Holds => {}
                    Check::Fails => return Outcome::False,
                    Check::Undecided => undecided = Some(format!("cannot decide {c} != 0")),
                },
            }
        }
        if let Some(r) = undecided {
            return Outcome::Unknown(r);
        }
        st.zero = zero;
        st.nonzero = nonzero;

        if st.zero.is_empty() {
            let Some(i) = st.nonzero.iter().flat_map(MPoly::vars).next() else {
                return self.finish(&st);
            };
            return any(self.candidates.iter().map(|c| self.solve(self.assign(&st, i, c, false), depth + 1)));
        }
        if let Some(next) = self.eliminate_linear(&st) {
            return self.solve(next, depth + 1);
        }
        if let Some(o) = self.solve_univariate(&st, depth) {
            return o;
        }
        self.solve_multivariate(&st, depth)
    }

    /// `a x_i + b = 0` with `a` a known nonzero constant: `x_i = -b/a`.
    fn eliminate_linear(&self, st: &State) -> Option<State> {
        for (k, p) in st.zero.iter().enumerate() {
            if p.vars().len() < 2 {
                continue;
            }
            for i in p.vars() {
                if p.degree_in(i) != 1 {
                    continue;
                }
                let Some(a) = p.coeff_in(i, 1).as_constant() else { continue };
                if a.val().known().is_none() {
                    continue;
                }
                let exact = a.is_exact() && a.len() == 1;
                let Ok(inv) = a.inv(&self.target) else { continue };
                let expr = p.coeff_in(i, 0).neg().mul(&MPoly::constant(self.ctx, self.nvars, inv));
                let mut derived = st.derived.clone();
                derived.push((i, expr.clone()));
                let rest = |v: &Vec<MPoly>, skip: Option<usize>| {
                    v.iter()
                        .enumerate()
                        .filter(|(j, _)| Some(*j) != skip)
                        .map(|(_, q)| q.substitute_poly(i, &expr))
                        .collect()
                };
                return Some(State {
                    zero: rest(&st.zero, Some(k)),
                    nonzero: rest(&st.nonzero, None),
                    assign: st.assign.clone(),
                    derived,
                    approx: st.approx || !exact,
                });
            }
        }
        None
    }

    fn solve_univariate(&self, st: &State, depth: usize) -> Option<Outcome> {
        let (k, i) = st
            .zero
            .iter()
            .enumerate()
            .filter_map(|(k, p)| match p.vars()[..] {
                [i] => Some((k, i, p.degree_in(i))),
                _ => None,
            })
            .min_by_key(|t| t.2)
            .map(|t| (t.0, t.1))?;
        let g = st.zero[k].to_upoly(i).unwrap();
        let alone = st.zero.len() == 1 && st.nonzero.is_empty();
        if alone {
            return Some(match has_root_to_precision(&g, &self.target, self.budget) {
                Ok(Verdict::Yes(ws)) => {
                    let next = self.assign(st, i, &ws[0], true);
                    self.finish(&next)
                }
                Ok(Verdict::No) if !st.approx => Outcome::False,
                Ok(_) => Outcome::Unknown(format!("root search for {g} inconclusive")),
                Err(e) => Outcome::Unknown(e.to_string()),
            });
        }
        let report = match puiseux_roots(&g, &self.target, self.budget) {
            Ok(r) => r,
            Err(e) => return Some(Outcome::Unknown(e.to_string())),
        };
        Some(match report.verdict {
            Verdict::No if !st.approx => Outcome::False,
            Verdict::Yes(ws) => {
                let approx = !report.exhaustive;
                let o = any(ws.iter().map(|w| self.solve(self.assign(st, i, w, approx), depth + 1)));
                match o {
                    Outcome::False if approx || st.approx => Outcome::Unknown("root set not enumerated exactly".into()),
                    o => o,
                }
            }
            _ => Outcome::Unknown(format!("root search for {g} inconclusive")),
        })
    }

    /// Refutes an atom chart by chart, then tries constant assignments.
    fn solve_multivariate(&self, st: &State, depth: usize) -> Outcome {
        if !st.approx && st.zero.iter().any(|p| self.refute(p)) {
            return Outcome::False;
        }
        let p = st.zero.iter().min_by_key(|p| p.vars().len()).unwrap();
        let u = *p.vars().last().unwrap();
        match any(self.candidates.iter().map(|c| self.solve(self.assign(st, u, c, false), depth + 1))) {
            Outcome::False => Outcome::Unknown("no witness among candidate values".into()),
            o => o,
        }
    }

    /// Every point lies in a chart `x = c + w` (`c` in `F_q`) or `x = 1/w`
    /// with `w` in the maximal ideal; the atom is refuted when it has no
    /// zero near the origin of any chart.
    fn refute(&self, p: &MPoly) -> bool {
        let vars = p.vars();
        let q = self.ctx.order() as usize;
        let per_var = q + 1;
        if per_var.checked_pow(vars.len() as u32).is_none_or(|n| n > MAX_CHARTS) {
            return false;
        }
        let consts: Vec<HahnSeries> = elements(self.ctx).map(|c| HahnSeries::constant(&c)).collect();
        let mut charts = vec![p.clone()];
        for &i in &vars {
            let mut next = Vec::with_capacity(charts.len() * per_var);
            for c in &charts {
                for k in &consts {
                    next.push(c.chart(i, k, false));
                }
                next.push(c.chart(i, &HahnSeries::zero(self.ctx), true));
            }
            charts = next;
        }
        charts.iter().all(MPoly::no_zero_near_origin)
    }
}

pub(super) fn eval(phi: &Formula, sigma: &Assignment, ctx: &Arc<FqContext>, cfg: &EvalConfig) -> Result<EvalVerdict> {
    let mut binders = Vec::new();
    let matrix = prenex(phi, &mut binders);
    let disjuncts = dnf(&matrix);
    let index: HashMap<String, usize> = binders.iter().enumerate().map(|(i, (b, _))| (b.clone(), i)).collect();
    let mut candidates = vec![HahnSeries::zero(ctx)];
    candidates.extend(elements(ctx).filter(|c| !c.is_zero()).map(|c| HahnSeries::constant(&c)));
    candidates.push(HahnSeries::t(ctx));
    candidates.push(HahnSeries::t_pow(ctx, Exponent::int(-1)));

    let mut target = cfg.target.clone();
    let mut last_reason = String::new();
    for _ in 0..ATTEMPTS {
        let solver = Solver {
            ctx,
            target: target.clone(),
            budget: cfg.budget,
            nvars: binders.len(),
            candidates: candidates.clone(),
        };
        let clearer = Clearer {
            ctx,
            index: &index,
            sigma,
            cap: target.clone(),
        };
        let mut outcomes = Vec::new();
        for conj in &disjuncts {
            let mut cases: Vec<(Vec<MPoly>, Vec<MPoly>)> = vec![(vec![], vec![])];
            let mut failed = None;
            for (l, r) in conj {
                match clearer.atom(l, r) {
                    Ok(alts) => {
                        cases = cases
                            .iter()
                            .flat_map(|(z, n)| {
                                alts.iter()
                                    .map(move |(z2, n2)| ([z.clone(), z2.clone()].concat(), [n.clone(), n2.clone()].concat()))
                            })
                            .collect();
                    }
                    Err(e) => failed = Some(e.to_string()),
                }
            }
            if let Some(r) = failed {
                outcomes.push((conj, Outcome::Unknown(r)));
                continue;
            }
            let o = any(cases.into_iter().map(|(zero, nonzero)| {
                solver.solve(
                    State {
                        zero,
                        nonzero,
                        assign: vec![None; binders.len()],
                        derived: vec![],
                        approx: false,
                    },
                    0,
                )
            }));
            let stop = matches!(o, Outcome::True(_));
            outcomes.push((conj, o));
            if stop {
                break;
            }
        }
        let mut unknown = None;
        let mut retry = None;
        for (conj, o) in outcomes {
            match o {
                Outcome::True(values) => match verify(conj, &values, &binders, sigma, ctx, cfg, &target) {
                    Ok(witness) => return Ok(EvalVerdict::True(witness)),
                    Err(deficit) => retry = Some(deficit),
                },
                Outcome::Unknown(r) => unknown = Some(r),
                Outcome::False => {}
            }
        }
        match (retry, unknown) {
            (Some(deficit), _) => {
                last_reason = "witness failed back-substitution".into();
                target = &target + &deficit + Exponent::one();
            }
            (None, Some(r)) => return Ok(EvalVerdict::Unknown(r)),
            (None, None) => return Ok(EvalVerdict::False),
        }
    }
    Ok(EvalVerdict::Unknown(last_reason))
}

/// Back-substitutes into the original atoms; on failure returns how far
/// the worst residual fell short of the configured target.
fn verify(
    conj: &[Atom],
    values: &[Option<HahnSeries>],
    binders: &[(String, String)],
    sigma: &Assignment,
    ctx: &Arc<FqContext>,
    cfg: &EvalConfig,
    target: &Exponent,
) -> std::result::Result<Assignment, Exponent> {
    let mut full = sigma.clone();
    let mut witness = Assignment::new();
    for ((internal, original), v) in binders.iter().zip(values) {
        let v = v.clone().unwrap_or_else(|| HahnSeries::zero(ctx));
        full.insert(internal.clone(), v.clone());
        witness.entry(original.clone()).or_insert(v);
    }
    let inner = EvalConfig {
        target: target.clone(),
        ..cfg.clone()
    };
    let mut worst = Exponent::zero();
    for (l, r) in conj {
        let res = match (eval_term(l, &full, ctx, &inner), eval_term(r, &full, ctx, &inner)) {
            (Ok(a), Ok(b)) => a.sub(&b),
            _ => return Err(Exponent::one()),
        };
        match res.val().lower() {
            Some(v) if *v < cfg.target => worst = std::cmp::max(worst, &cfg.target - v),
            _ => {}
        }
    }
    if worst.is_zero() {
        Ok(witness)
    } else {
        Err(worst)
    }
}
