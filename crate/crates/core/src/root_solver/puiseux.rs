use serde::Serialize;

use super::hensel::hensel_lift;
use super::polygon::{newton_polygon, residual_polynomial};
use super::UPoly;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::hahn_series::{HahnSeries, ValBound};

pub const DEFAULT_BUDGET: usize = 32;
const MAX_NODES: usize = 4096;
const HENSEL_RETRIES: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BranchStatus {
    RootFound,
    BranchDead,
    BudgetExhausted,
}

#[derive(Debug, Clone, Serialize)]
pub struct BranchNode {
    pub partial_root: HahnSeries,
    /// Valuation of the last term added to reach this node.
    pub step_valuation: Option<Exponent>,
    /// `None` for interior nodes that only branched further.
    pub status: Option<BranchStatus>,
    pub children: Vec<BranchNode>,
}

impl BranchNode {
    fn leaf(partial_root: HahnSeries, step_valuation: Option<Exponent>, status: BranchStatus) -> Self {
        BranchNode {
            partial_root,
            step_valuation,
            status: Some(status),
            children: Vec::new(),
        }
    }

    /// Statuses of all leaves.
    pub fn leaf_statuses(&self) -> Vec<BranchStatus> {
        if self.children.is_empty() {
            return self.status.into_iter().collect();
        }
        let mut out: Vec<BranchStatus> = self.status.into_iter().filter(|s| *s == BranchStatus::RootFound).collect();
        for c in &self.children {
            out.extend(c.leaf_statuses());
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Yes(Vec<HahnSeries>),
    No,
    Inconclusive,
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BranchReport {
    pub tree: BranchNode,
    pub verdict: Verdict,
    /// The witnesses are exactly the distinct roots of the polynomial.
    pub exhaustive: bool,
}

struct Search<'a> {
    g: &'a UPoly,
    target: Exponent,
    budget: usize,
    stop_at_first: bool,
    nodes: usize,
    witnesses: Vec<HahnSeries>,
    /// Some root was only pinned down to the target, not found exactly.
    approximate: bool,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.stop_at_first && !self.witnesses.is_empty()
    }

    /// Records `r` if it back-substitutes to residual `>= target`.
    fn try_witness(&mut self, r: &HahnSeries) -> bool {
        let ok = self.g.eval_capped(r, &self.target).val().at_least(&self.target);
        if ok && !self.witnesses.contains(r) {
            self.witnesses.push(r.clone());
        }
        ok
    }

    /// Explores roots `r + Y` of `g` where `Y` is a root of `h` with
    /// valuation `> mu_last`.
    fn explore(&mut self, h: UPoly, r: HahnSeries, mu_last: Option<Exponent>, depth: usize) -> BranchNode {
        self.nodes += 1;
        let mut h = h;
        let above = |mu: &Exponent| mu_last.as_ref().is_none_or(|m| mu > m);

        // exact root at r
        let m = h.zero_root_multiplicity();
        let mut exact_here = false;
        if m > 0 {
            exact_here = self.try_witness(&r);
            h = h.shift_down(m);
        }
        if h.degree() == Some(0) {
            let status = if exact_here { BranchStatus::RootFound } else { BranchStatus::BranchDead };
            return BranchNode::leaf(r, mu_last, status);
        }
        while let Some(h1) = h.pth_root_reduction() {
            h = h1;
        }
        let found = if exact_here { BranchStatus::RootFound } else { BranchStatus::BudgetExhausted };
        if self.done() || depth >= self.budget || self.nodes >= MAX_NODES {
            return BranchNode::leaf(r, mu_last, found);
        }
        let polygon = match newton_polygon(&h) {
            Ok(p) => p,
            Err(_) => return BranchNode::leaf(r, mu_last, found),
        };
        let relevant: Vec<_> = polygon.segments.iter().filter(|s| above(&s.root_valuation)).cloned().collect();
        if relevant.is_empty() {
            let status = if exact_here { BranchStatus::RootFound } else { BranchStatus::BranchDead };
            return BranchNode::leaf(r, mu_last, status);
        }
        let all_fine = relevant.iter().all(|s| s.root_valuation >= self.target);
        if all_fine && (exact_here || self.try_witness(&r)) {
            self.approximate = true;
            return BranchNode::leaf(r, mu_last, BranchStatus::RootFound);
        }
        let total: usize = relevant.iter().map(|s| s.length()).sum();
        if total == 1 {
            if let Some(w) = self.hensel_branch(&h, &r) {
                return BranchNode::leaf(w, mu_last, BranchStatus::RootFound);
            }
        }

        let mut children = Vec::new();
        let mut relevant = relevant;
        relevant.sort_by(|a, b| b.root_valuation.cmp(&a.root_valuation));
        for seg in relevant {
            let mu = seg.root_valuation.clone();
            let residue = residual_polynomial(&h, &polygon, &seg);
            let roots: Vec<_> = match residue.roots() {
                Ok(rs) => rs.into_iter().filter(|c| !c.is_zero()).collect(),
                Err(_) => Vec::new(),
            };
            if roots.is_empty() {
                children.push(BranchNode::leaf(r.clone(), Some(mu), BranchStatus::BranchDead));
                continue;
            }
            for c in roots {
                if self.done() {
                    break;
                }
                let step = HahnSeries::monomial(&c, mu.clone());
                let child = self.explore(h.taylor_shift(&step), r.add(&step), Some(mu.clone()), depth + 1);
                children.push(child);
            }
        }
        BranchNode {
            partial_root: r,
            step_valuation: mu_last,
            status: exact_here.then_some(BranchStatus::RootFound),
            children,
        }
    }

    /// Hensel lift of `h` from 0 when exactly one relevant root remains;
    /// the target is raised until the original polynomial is satisfied.
    fn hensel_branch(&mut self, h: &UPoly, r: &HahnSeries) -> Option<HahnSeries> {
        let e0 = h.coeff(0).val().known().cloned()?;
        let d0 = h.coeff(1).val().known().cloned()?;
        if e0 <= d0.mul_int(2) {
            return None;
        }
        let zero = Exponent::zero();
        let mut local = &self.target + std::cmp::max(&zero, &d0);
        for _ in 0..HENSEL_RETRIES {
            let y = hensel_lift(h, &HahnSeries::zero(h.context()), &local).ok()?;
            let w = r.add(&y);
            let res = self.g.eval_capped(&w, &self.target);
            if res.val().at_least(&self.target) {
                let exact = h.degree() == Some(1) && h.is_exact() && h.eval(&y).is_zero();
                self.approximate |= !exact;
                self.try_witness(&w);
                return Some(w);
            }
            let got = match res.val() {
                ValBound::Known(v) => v,
                _ => return None,
            };
            local = &local + &(&self.target - &got) + Exponent::one();
        }
        None
    }
}

/// Newton-Puiseux expansion of the roots of `g`, to `target` precision,
/// with at most `budget` polygon steps along any branch.
pub fn puiseux_roots(g: &UPoly, target: &Exponent, budget: usize) -> Result<BranchReport> {
    run(g, target, budget, false)
}

/// Like [`puiseux_roots`] but stops at the first verified witness.
pub fn has_root_to_precision(g: &UPoly, target: &Exponent, budget: usize) -> Result<Verdict> {
    run(g, target, budget, true).map(|r| r.verdict)
}

fn run(g: &UPoly, target: &Exponent, budget: usize, stop_at_first: bool) -> Result<BranchReport> {
    let ctx = g.context();
    let zero = HahnSeries::zero(ctx);
    if g.is_zero() {
        return Ok(BranchReport {
            tree: BranchNode::leaf(zero.clone(), None, BranchStatus::RootFound),
            verdict: Verdict::Yes(vec![zero]),
            exhaustive: false,
        });
    }
    let lead = g.coeffs().last().unwrap();
    if lead.val().known().is_none() {
        return Err(Error::NotMonic);
    }
    let g = normalize(g);
    if g.degree() == Some(0) {
        let verdict = if g.is_exact() { Verdict::No } else { Verdict::Inconclusive };
        return Ok(BranchReport {
            exhaustive: g.is_exact(),
            tree: BranchNode::leaf(zero, None, BranchStatus::BranchDead),
            verdict,
        });
    }
    let mut search = Search {
        g: &g,
        target: target.clone(),
        budget,
        stop_at_first,
        nodes: 0,
        witnesses: Vec::new(),
        approximate: false,
    };
    let tree = search.explore(g.clone(), zero, None, 0);
    let statuses = tree.leaf_statuses();
    let exhaustive = g.is_exact()
        && !stop_at_first
        && !search.approximate
        && !statuses.contains(&BranchStatus::BudgetExhausted);
    let verdict = if !search.witnesses.is_empty() {
        Verdict::Yes(search.witnesses)
    } else if g.is_exact() && statuses.iter().all(|s| *s == BranchStatus::BranchDead) {
        Verdict::No
    } else {
        Verdict::Inconclusive
    };
    Ok(BranchReport {
        tree,
        verdict,
        exhaustive,
    })
}

/// Divides by an exact monomial leading coefficient; other leading
/// coefficients are kept so that every coefficient stays exact.
fn normalize(g: &UPoly) -> UPoly {
    let lead = g.coeffs().last().unwrap();
    if lead.is_exact() && lead.len() == 1 {
        let (e, c) = lead.leading().unwrap();
        if e.is_zero() && c.is_one() {
            return g.clone();
        }
        let inv = lead.inv(&Exponent::zero()).expect("monomial is invertible");
        return g.scale(&inv);
    }
    g.clone()
}
