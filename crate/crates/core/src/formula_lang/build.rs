//! Constructors for the explicit definability formulas.

use serde::Serialize;

use super::ast::{Formula, Sign, Term};
use crate::error::{Error, Result};
use crate::finite_field::{validate_f, FqContext};
use crate::intpoly::IntPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PhiVariant {
    /// `exists y. f(y)f(a)x = f(a)-f(y)`
    Point,
    /// `exists y. exists z. f(y)f(z)x = f(z)-f(y)`
    TwoWitness,
}

/// `X^q - X - 1`.
pub fn default_f(q: u64) -> IntPoly {
    IntPoly::artin_schreier_minus_one(q)
}

/// Artin-Schreier map `t^q - t` as a term.
pub fn wp(q: u64, t: Term) -> Term {
    Term::minus(Term::pow(t.clone(), q as u32), t)
}

/// Resolves an optional `f` for `F_q`, insisting it is monic, rootless
/// and with `f'(0) != 0` over `F_q`.
pub fn checked_f(q: u64, f: Option<&IntPoly>) -> Result<IntPoly> {
    let ctx = FqContext::from_order(q)?;
    let f = f.cloned().unwrap_or_else(|| default_f(q));
    match validate_f(&f, &ctx) {
        Ok(true) => Ok(f),
        Ok(false) => Err(Error::InvalidF(format!("{f} has a root or f'(0) = 0 over F_{q}"))),
        Err(_) => Err(Error::InvalidF(format!("{f} is not monic of positive degree"))),
    }
}

fn monic(f: &IntPoly) -> Result<()> {
    if f.is_monic() && f.degree().unwrap_or(0) >= 1 {
        Ok(())
    } else {
        Err(Error::NotMonic)
    }
}

fn phi_body(fy: Term, fa: Term, x: Term) -> Formula {
    Formula::Eq(
        Term::Product(vec![fy.clone(), fa.clone(), x]),
        Term::minus(fa, fy),
    )
}

pub fn mk_phi(f: &IntPoly, a: i64, variant: PhiVariant) -> Result<Formula> {
    monic(f)?;
    let fy = Term::from_int_poly(f, "y");
    let x = Term::var("x");
    Ok(match variant {
        PhiVariant::Point => Formula::exists("y", phi_body(fy, Term::int(f.eval(a)), x)),
        PhiVariant::TwoWitness => {
            let fz = Term::from_int_poly(f, "z");
            Formula::exists("y", Formula::exists("z", phi_body(fy, fz, x)))
        }
    })
}

/// `phi_{f,0}(wp(x))`: defines the valuation ring.
pub fn mk_zeta(q: u64, f: Option<&IntPoly>) -> Result<Formula> {
    let f = checked_f(q, f)?;
    let phi = mk_phi(&f, 0, PhiVariant::Point)?;
    Ok(phi.substitute("x", &wp(q, Term::var("x"))))
}

/// `x = wp(beta_f(y))` with denominators cleared:
/// `(f(y)f(0))^q x = (f(0)-f(y))^q - (f(0)-f(y))(f(y)f(0))^(q-1)`.
/// Defines the maximal ideal.
pub fn mk_epsilon(q: u64, f: Option<&IntPoly>) -> Result<Formula> {
    let f = checked_f(q, f)?;
    let fy = Term::from_int_poly(&f, "y");
    let f0 = Term::int(f.eval(0));
    let den = Term::Product(vec![fy.clone(), f0.clone()]);
    let num = Term::minus(f0, fy);
    let den_pow = |e: u64| if e == 1 { den.clone() } else { Term::pow(den.clone(), e as u32) };
    let lhs = Term::Product(vec![den_pow(q), Term::var("x")]);
    let rhs = Term::minus(
        Term::pow(num.clone(), q as u32),
        Term::Product(vec![num, den_pow(q - 1)]),
    );
    Ok(Formula::exists("y", Formula::Eq(lhs, rhs)))
}

/// `exists r. exists s. (x = r+s & phi_f(r) & wp(s) = 0)`.
pub fn mk_eta(q: u64, f: Option<&IntPoly>) -> Result<Formula> {
    let f = checked_f(q, f)?;
    let phi_r = mk_phi(&f, 0, PhiVariant::TwoWitness)?.substitute("x", &Term::var("r"));
    let body = Formula::And(vec![
        Formula::Eq(
            Term::var("x"),
            Term::Sum(vec![(Sign::Plus, Term::var("r")), (Sign::Plus, Term::var("s"))]),
        ),
        phi_r,
        Formula::Eq(wp(q, Term::var("s")), Term::zero()),
    ]);
    Ok(Formula::exists("r", Formula::exists("s", body)))
}

fn check_unit(q: u64, u: i64) -> Result<u64> {
    let (p, _) = crate::finite_field::prime_power(q)?;
    if u.rem_euclid(p as i64) == 0 {
        return Err(Error::BadUnit { u, p });
    }
    Ok(p)
}

/// `wp(y) - u` with the sign folded into the summand.
fn wp_minus(q: u64, y: &str, u: i64) -> Term {
    let sign = if u >= 0 { Sign::Minus } else { Sign::Plus };
    Term::Sum(vec![(Sign::Plus, wp(q, Term::var(y))), (sign, Term::Int(u.unsigned_abs()))])
}

/// `alpha_q(u, y) = inv(wp(y) - u)`.
pub fn mk_alpha(q: u64, u: i64, y: &str) -> Result<Term> {
    check_unit(q, u)?;
    Ok(Term::inv(wp_minus(q, y, u)))
}

#[derive(Debug, Clone, Serialize)]
pub struct Kochen {
    /// `exists y. x = alpha(u,y) + alpha(-u,y)`
    pub formula: Formula,
    /// `exists y. x = 2*wp(y)*inv(wp(y)^2-u^2)`
    pub simplified: Formula,
    /// Set for `p = 2`, where the surjectivity statement is not claimed.
    pub p_is_two: bool,
}

pub fn mk_kochen(q: u64, u: i64) -> Result<Kochen> {
    let p = check_unit(q, u)?;
    let gamma = Term::Sum(vec![(Sign::Plus, mk_alpha(q, u, "y")?), (Sign::Plus, mk_alpha(q, -u, "y")?)]);
    let w = wp(q, Term::var("y"));
    let den = Term::minus(Term::pow(w.clone(), 2), Term::Int(u.unsigned_abs().pow(2)));
    let simple = Term::Product(vec![Term::Int(2), w, Term::inv(den)]);
    let x = Term::var("x");
    Ok(Kochen {
        formula: Formula::exists("y", Formula::Eq(x.clone(), gamma)),
        simplified: Formula::exists("y", Formula::Eq(x, simple)),
        p_is_two: p == 2,
    })
}

/// `wp(y) - 1`, the default `f` at `y`.
fn default_f_term(q: u64, y: &str) -> Term {
    Term::minus(wp(q, Term::var(y)), Term::Int(1))
}

/// Rational display of zeta for the default `f`:
/// `exists y. wp(x) = inv(wp(y)-1) + 1`.
pub fn mk_zeta_rational(q: u64) -> Result<Formula> {
    crate::finite_field::prime_power(q)?;
    let beta = Term::Sum(vec![(Sign::Plus, Term::inv(default_f_term(q, "y"))), (Sign::Plus, Term::Int(1))]);
    Ok(Formula::exists("y", Formula::Eq(wp(q, Term::var("x")), beta)))
}

/// Rational display of epsilon for the default `f`:
/// `exists y. x = wp(inv(wp(y)-1))`.
pub fn mk_epsilon_rational(q: u64) -> Result<Formula> {
    crate::finite_field::prime_power(q)?;
    Ok(Formula::exists(
        "y",
        Formula::Eq(Term::var("x"), wp(q, Term::inv(default_f_term(q, "y")))),
    ))
}
