//! Collapsing positive combinations of equations into one equation.

use serde::Serialize;

use super::ast::{Formula, Sign, Term};
use crate::error::{Error, Result};
use crate::intpoly::IntPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CollapseMode {
    /// Only equivalence-preserving steps; distinct binders under a
    /// conjunction are kept apart.
    Sound,
    /// Also identifies distinct binders under a conjunction, so the output
    /// is always a single existential. Not equivalence-preserving in general.
    Paper,
}

#[derive(Debug, Clone, Serialize)]
pub struct Collapsed {
    pub formula: Formula,
    /// False when more than one binder (or atom) survived.
    pub single_exists: bool,
    /// True when paper mode merged binders of different conjuncts.
    pub identified_binders: bool,
}

fn atom_term(a: &Formula) -> Result<Term> {
    match a {
        Formula::Eq(l, r) => Ok(Formula::atom_difference(l, r)),
        Formula::True => Ok(Term::zero()),
        Formula::False => Ok(Term::Int(1)),
        _ => Err(Error::Shape(format!("expected an equation, got `{a}`"))),
    }
}

fn check_f(f: &IntPoly) -> Result<()> {
    let ok = f.is_monic() && f.degree().unwrap_or(0) >= 1 && f.coeff(0) != 0;
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidF(format!("{f} must be monic of positive degree with nonzero constant term")))
    }
}

fn power(g: &Term, e: usize) -> Option<Term> {
    match e {
        0 => None,
        1 => Some(g.clone()),
        _ => Some(Term::pow(g.clone(), e as u32)),
    }
}

/// `sum_i c_i g1^i g2^(n-i)`, highest `i` first.
fn and_term(g1: &Term, g2: &Term, f: &IntPoly) -> Term {
    let n = f.degree().unwrap();
    let mut parts = Vec::new();
    for i in (0..=n).rev() {
        let c = f.coeff(i);
        if c == 0 {
            continue;
        }
        let mut factors = Vec::new();
        if c.unsigned_abs() != 1 {
            factors.push(Term::Int(c.unsigned_abs()));
        }
        factors.extend(power(g1, i));
        factors.extend(power(g2, n - i));
        let t = if factors.len() == 1 { factors.pop().unwrap() } else { Term::Product(factors) };
        parts.push((if c < 0 { Sign::Minus } else { Sign::Plus }, t));
    }
    if parts.len() == 1 {
        return parts.pop().unwrap().1;
    }
    Term::Sum(parts)
}

fn or_term(g1: &Term, g2: &Term) -> Term {
    Term::Product(vec![g1.clone(), g2.clone()])
}

/// `g1 = 0 | g2 = 0` as `g1*g2 = 0`.
pub fn collapse_or(g1: &Formula, g2: &Formula) -> Result<Formula> {
    Ok(Formula::Eq(or_term(&atom_term(g1)?, &atom_term(g2)?), Term::zero()))
}

/// `g1 = 0 & g2 = 0` as `sum_i c_i g1^i g2^(n-i) = 0`; equivalent wherever
/// `f = sum_i c_i X^i` has no root.
pub fn collapse_and(g1: &Formula, g2: &Formula, f: &IntPoly) -> Result<Formula> {
    check_f(f)?;
    Ok(Formula::Eq(and_term(&atom_term(g1)?, &atom_term(g2)?, f), Term::zero()))
}

/// `exists binders. AND atoms = 0`
struct Block {
    binders: Vec<String>,
    atoms: Vec<Term>,
}

struct Eliminator<'a> {
    f: &'a IntPoly,
    mode: CollapseMode,
    fresh: usize,
    identified: bool,
}

impl Eliminator<'_> {
    fn fresh(&mut self) -> String {
        self.fresh += 1;
        format!("_b{}", self.fresh)
    }

    fn single(&self, atoms: &[Term]) -> Term {
        let mut it = atoms.iter();
        let first = it.next().cloned().unwrap_or_else(Term::zero);
        it.fold(first, |acc, g| and_term(&acc, g, self.f))
    }

    /// Renames both blocks' binders positionally onto one shared list.
    fn identify(&mut self, a: Block, b: Block) -> (Vec<String>, Term, Term) {
        let n = a.binders.len().max(b.binders.len());
        let shared: Vec<String> = (0..n).map(|_| self.fresh()).collect();
        let rename = |blk: &Block, e: &Eliminator| {
            let mut t = e.single(&blk.atoms);
            for (old, new) in blk.binders.iter().zip(&shared) {
                t = t.substitute(old, &Term::Var(new.clone()));
            }
            t
        };
        let ta = rename(&a, self);
        let tb = rename(&b, self);
        (shared, ta, tb)
    }

    fn block(&mut self, phi: &Formula) -> Result<Block> {
        Ok(match phi {
            Formula::True | Formula::False | Formula::Eq(..) => Block {
                binders: vec![],
                atoms: vec![atom_term(phi)?],
            },
            Formula::Exists(v, body) => {
                let b = self.fresh();
                let t = atom_term(body)?.substitute(v, &Term::Var(b.clone()));
                Block {
                    binders: vec![b],
                    atoms: vec![t],
                }
            }
            Formula::Or(fs) => {
                let mut acc = self.block(&fs[0])?;
                for g in &fs[1..] {
                    let next = self.block(g)?;
                    let (binders, a, b) = self.identify(acc, next);
                    acc = Block {
                        binders,
                        atoms: vec![or_term(&a, &b)],
                    };
                }
                acc
            }
            Formula::And(fs) => {
                let mut acc = self.block(&fs[0])?;
                for g in &fs[1..] {
                    let next = self.block(g)?;
                    let both = !acc.binders.is_empty() && !next.binders.is_empty();
                    acc = if both && self.mode == CollapseMode::Sound {
                        Block {
                            binders: [acc.binders, next.binders].concat(),
                            atoms: [acc.atoms, next.atoms].concat(),
                        }
                    } else {
                        self.identified |= both;
                        let (binders, a, b) = self.identify(acc, next);
                        Block {
                            binders,
                            atoms: vec![and_term(&a, &b, self.f)],
                        }
                    };
                }
                acc
            }
        })
    }
}

/// Eliminates a positive boolean combination of single-binder existentials
/// into (ideally) one existential over one equation.
pub fn fe_to_e(phi: &Formula, f: &IntPoly, mode: CollapseMode) -> Result<Collapsed> {
    check_f(f)?;
    if !phi.is_fe_plus() {
        return Err(Error::Shape(format!("not a positive combination of E+ formulas: `{phi}`")));
    }
    let mut el = Eliminator {
        f,
        mode,
        fresh: 0,
        identified: false,
    };
    let block = el.block(phi)?;
    let taken = phi.free_vars();
    let names = binder_names(block.binders.len(), &taken);
    let rename = |t: &Term| {
        block
            .binders
            .iter()
            .zip(&names)
            .fold(t.clone(), |acc, (old, new)| acc.substitute(old, &Term::Var(new.clone())))
    };
    let eqs: Vec<Formula> = block
        .atoms
        .iter()
        .map(|t| Formula::Eq(rename(t), Term::zero()))
        .collect();
    let single_atom = eqs.len() == 1;
    let mut formula = if single_atom { eqs.into_iter().next().unwrap() } else { Formula::And(eqs) };
    for name in names.iter().rev() {
        formula = Formula::exists(name, formula);
    }
    Ok(Collapsed {
        formula,
        single_exists: block.binders.len() == 1 && single_atom,
        identified_binders: el.identified,
    })
}

fn binder_names(n: usize, taken: &std::collections::BTreeSet<String>) -> Vec<String> {
    let base = ["z", "w", "v", "u"]
        .into_iter()
        .find(|b| !taken.contains(*b) && (1..=n).all(|i| !taken.contains(&format!("{b}{i}"))))
        .unwrap_or("z_");
    if n == 1 {
        vec![base.to_string()]
    } else {
        (1..=n).map(|i| format!("{base}{i}")).collect()
    }
}
