use std::collections::BTreeSet;

use serde::Serialize;

use crate::intpoly::IntPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// Ring terms, plus the formal inverse in field mode. Sums and products
/// are n-ary; nesting written with explicit parentheses is preserved.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Term {
    Int(u64),
    Var(String),
    /// The first summand always carries `Plus`.
    Sum(Vec<(Sign, Term)>),
    Product(Vec<Term>),
    Pow(Box<Term>, u32),
    Neg(Box<Term>),
    Inv(Box<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Formula {
    True,
    False,
    Eq(Term, Term),
    Exists(String, Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    /// `n` as `Int` or `Neg(Int)`.
    pub fn int(n: i64) -> Term {
        if n < 0 {
            Term::Neg(Box::new(Term::Int(n.unsigned_abs())))
        } else {
            Term::Int(n as u64)
        }
    }

    pub fn zero() -> Term {
        Term::Int(0)
    }

    pub fn sum(terms: Vec<(Sign, Term)>) -> Term {
        debug_assert!(terms.first().is_some_and(|t| t.0 == Sign::Plus));
        Term::Sum(terms)
    }

    /// `a - b`.
    pub fn minus(a: Term, b: Term) -> Term {
        Term::Sum(vec![(Sign::Plus, a), (Sign::Minus, b)])
    }

    pub fn pow(base: Term, e: u32) -> Term {
        Term::Pow(Box::new(base), e)
    }

    pub fn neg(t: Term) -> Term {
        Term::Neg(Box::new(t))
    }

    pub fn inv(t: Term) -> Term {
        Term::Inv(Box::new(t))
    }

    /// Integer polynomial in `var`, highest degree first: `y^2-y-1`.
    /// A constant polynomial becomes `Int` or `Neg(Int)`.
    pub fn from_int_poly(f: &IntPoly, var: &str) -> Term {
        let d = match f.degree() {
            Some(d) if d > 0 => d,
            _ => return Term::int(f.coeff(0)),
        };
        let mut parts = Vec::new();
        for k in (0..=d).rev() {
            let c = f.coeff(k);
            if c == 0 {
                continue;
            }
            let mono = match k {
                0 => None,
                1 => Some(Term::var(var)),
                _ => Some(Term::pow(Term::var(var), k as u32)),
            };
            let mag = c.unsigned_abs();
            let t = match (mono, mag) {
                (None, m) => Term::Int(m),
                (Some(m), 1) => m,
                (Some(m), n) => Term::Product(vec![Term::Int(n), m]),
            };
            let sign = if c < 0 { Sign::Minus } else { Sign::Plus };
            parts.push((sign, t));
        }
        if parts[0].0 == Sign::Minus {
            let t = parts[0].1.clone();
            parts[0] = (Sign::Plus, Term::neg(t));
        }
        if parts.len() == 1 {
            return parts.pop().unwrap().1;
        }
        Term::Sum(parts)
    }

    /// Capture-free substitution is not needed: terms have no binders.
    pub fn substitute(&self, var: &str, by: &Term) -> Term {
        match self {
            Term::Var(v) if v == var => by.clone(),
            Term::Int(_) | Term::Var(_) => self.clone(),
            Term::Sum(ts) => Term::Sum(ts.iter().map(|(s, t)| (*s, t.substitute(var, by))).collect()),
            Term::Product(ts) => Term::Product(ts.iter().map(|t| t.substitute(var, by)).collect()),
            Term::Pow(b, e) => Term::Pow(Box::new(b.substitute(var, by)), *e),
            Term::Neg(t) => Term::Neg(Box::new(t.substitute(var, by))),
            Term::Inv(t) => Term::Inv(Box::new(t.substitute(var, by))),
        }
    }

    pub fn vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Int(_) => {}
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Sum(ts) => ts.iter().for_each(|(_, t)| t.vars(out)),
            Term::Product(ts) => ts.iter().for_each(|t| t.vars(out)),
            Term::Pow(t, _) | Term::Neg(t) | Term::Inv(t) => t.vars(out),
        }
    }

    pub fn has_inverse(&self) -> bool {
        match self {
            Term::Int(_) | Term::Var(_) => false,
            Term::Inv(_) => true,
            Term::Sum(ts) => ts.iter().any(|(_, t)| t.has_inverse()),
            Term::Product(ts) => ts.iter().any(Term::has_inverse),
            Term::Pow(t, _) | Term::Neg(t) => t.has_inverse(),
        }
    }
}

impl Formula {
    pub fn exists(var: &str, body: Formula) -> Formula {
        Formula::Exists(var.to_string(), Box::new(body))
    }

    /// `lhs - rhs` as one term (`lhs` alone when `rhs` is literally 0).
    pub fn atom_difference(lhs: &Term, rhs: &Term) -> Term {
        match (lhs, rhs) {
            (l, Term::Int(0)) => l.clone(),
            (Term::Int(0), r) => Term::neg(r.clone()),
            (l, r) => Term::minus(l.clone(), r.clone()),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Eq(l, r) => {
                let mut vs = BTreeSet::new();
                l.vars(&mut vs);
                r.vars(&mut vs);
                out.extend(vs.into_iter().filter(|v| !bound.contains(v)));
            }
            Formula::Exists(v, body) => {
                bound.push(v.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_free(bound, out)),
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Eq(l, r) => {
                l.vars(&mut out);
                r.vars(&mut out);
            }
            Formula::Exists(v, _) => {
                out.insert(v.clone());
            }
            _ => {}
        });
        out
    }

    fn visit(&self, g: &mut impl FnMut(&Formula)) {
        g(self);
        match self {
            Formula::Exists(_, b) => b.visit(g),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.visit(g)),
            _ => {}
        }
    }

    pub fn has_inverse(&self) -> bool {
        match self {
            Formula::True | Formula::False => false,
            Formula::Eq(l, r) => l.has_inverse() || r.has_inverse(),
            Formula::Exists(_, b) => b.has_inverse(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().any(Formula::has_inverse),
        }
    }

    /// Substitutes a free variable; bound occurrences are left alone.
    pub fn substitute(&self, var: &str, by: &Term) -> Formula {
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Eq(l, r) => Formula::Eq(l.substitute(var, by), r.substitute(var, by)),
            Formula::Exists(v, _) if v == var => self.clone(),
            Formula::Exists(v, b) => Formula::Exists(v.clone(), Box::new(b.substitute(var, by))),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.substitute(var, by)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.substitute(var, by)).collect()),
        }
    }
}
