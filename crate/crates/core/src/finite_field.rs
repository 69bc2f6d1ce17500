//! Table-driven arithmetic in `F_q = F_p[a]/(m(a))`.
//!
//! Elements are encoded as integers `sum c_i p^i` over their coefficient
//! vectors, so addition and multiplication are single table lookups. This
//! only makes sense for small `q`, which is all the residue-level root
//! searches need.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::intpoly::IntPoly;

/// Largest field order for which tables are built.
pub const MAX_ORDER: u64 = 1024;

#[derive(Debug)]
pub struct FqContext {
    p: u32,
    degree: u32,
    order: u32,
    /// Monic modulus, ascending coefficients, length `degree + 1`.
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl PartialEq for FqContext {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.p == other.p && self.modulus == other.modulus)
    }
}

impl Eq for FqContext {}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Splits `q = p^l`, or fails when `q` is not a prime power.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    let mut rest = q;
    let mut l = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        l += 1;
    }
    if rest != 1 || !is_prime(p) {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p, l))
}

// Polynomials over F_p as ascending coefficient vectors.
fn fp_trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn fp_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = fp_trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = fp_pow(m[dm], p - 2, p);
    while r.len() > dm {
        let dr = r.len() - 1;
        let c = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &mi) in m.iter().enumerate() {
            let idx = dr - dm + i;
            r[idx] = ((r[idx] as u64 + (p - c) as u64 * mi as u64) % p as u64) as u32;
        }
        r = fp_trim(r);
    }
    r
}

fn fp_pow(a: u32, mut e: u32, p: u32) -> u32 {
    let (mut base, mut acc) = (a as u64 % p as u64, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

fn digits(mut code: u32, p: u32, len: u32) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = code % p;
            code /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Irreducibility by exhaustive trial division by monic polynomials of
/// degree `1..=deg/2`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() as u32 - 1;
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d) {
            let mut cand = digits(low, p, d);
            cand.push(1);
            if fp_rem(m, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FqContext {
    /// `GF(p^degree)` with the lexicographically least monic irreducible
    /// modulus (highest non-leading coefficient most significant).
    pub fn new(p: u64, degree: u32) -> Result<Arc<Self>> {
        if !is_prime(p) || degree == 0 {
            return Err(Error::NotPrimePower(p.saturating_pow(degree)));
        }
        let q = p.checked_pow(degree).filter(|&q| q <= MAX_ORDER);
        let q = q.ok_or(Error::FieldTooLarge(p.saturating_pow(degree)))?;
        let p32 = p as u32;
        let modulus = (0..q as u32)
            .map(|low| {
                let mut m = digits(low, p32, degree);
                m.push(1);
                m
            })
            .find(|m| is_irreducible(m, p32))
            .expect("irreducible polynomials exist in every degree");
        Ok(Arc::new(Self::build(p32, modulus)))
    }

    /// `GF(q)` with the default modulus.
    pub fn from_order(q: u64) -> Result<Arc<Self>> {
        let (p, l) = prime_power(q)?;
        Self::new(p, l)
    }

    /// Uses the given monic modulus (ascending coefficients, reduced mod `p`).
    pub fn with_modulus(p: u64, modulus: &[i64]) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return Err(Error::NotPrimePower(p));
        }
        let p32 = p as u32;
        let m = fp_trim(
            modulus
                .iter()
                .map(|c| c.rem_euclid(p as i64) as u32)
                .collect(),
        );
        let degree = m.len().saturating_sub(1) as u32;
        if degree == 0 || m[degree as usize] != 1 || !is_irreducible(&m, p32) {
            return Err(Error::BadModulus(degree));
        }
        if p.checked_pow(degree).is_none_or(|q| q > MAX_ORDER) {
            return Err(Error::FieldTooLarge(p.saturating_pow(degree)));
        }
        Ok(Arc::new(Self::build(p32, m)))
    }

    fn build(p: u32, modulus: Vec<u32>) -> Self {
        let degree = modulus.len() as u32 - 1;
        let q = p.pow(degree);
        let n = q as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        let mut neg = vec![0; n];
        let all: Vec<Vec<u32>> = (0..q).map(|c| digits(c, p, degree)).collect();
        for a in 0..n {
            neg[a] = undigits(&all[a].iter().map(|&d| (p - d) % p).collect::<Vec<_>>(), p);
            for b in 0..n {
                let s: Vec<u32> = all[a].iter().zip(&all[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * n + b] = undigits(&s, p);
                let mut prod = vec![0u32; 2 * degree as usize];
                for (i, &x) in all[a].iter().enumerate() {
                    for (j, &y) in all[b].iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = fp_rem(&prod, &modulus, p);
                r.resize(degree as usize, 0);
                mul[a * n + b] = undigits(&r, p);
            }
        }
        let mut inv = vec![0; n];
        for a in 1..n {
            inv[a] = (1..n).find(|&b| mul[a * n + b] == 1).unwrap() as u32;
        }
        FqContext {
            p,
            degree,
            order: q,
            modulus,
            add,
            mul,
            neg,
            inv,
        }
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `q = p^degree`.
    pub fn order(&self) -> u64 {
        self.order as u64
    }

    /// Monic modulus, ascending coefficients.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub(crate) fn add_raw(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.order + b) as usize]
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.order + b) as usize]
    }

    #[inline]
    pub(crate) fn neg_raw(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub(crate) fn sub_raw(&self, a: u32, b: u32) -> u32 {
        self.add_raw(a, self.neg_raw(b))
    }

    /// Inverse of a nonzero code; callers check for zero.
    #[inline]
    pub(crate) fn inv_raw(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    pub(crate) fn pow_raw(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }

    /// Unique `b` with `b^p = a`: `a^(p^(l-1))`.
    pub(crate) fn frobenius_inv_raw(&self, a: u32) -> u32 {
        (1..self.degree).fold(a, |acc, _| self.pow_raw(acc, self.p as u64))
    }

    pub(crate) fn int_raw(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    /// Header syntax `GF(q)` or `GF(q;modulus-in-a)`.
    pub fn header(&self) -> String {
        if self.degree == 1 {
            format!("GF({})", self.order)
        } else {
            let m = IntPoly::new(self.modulus.iter().map(|&c| c as i64).collect());
            format!("GF({};{})", self.order, m.to_string_in("a"))
        }
    }

    /// Parses `GF(4)` or `GF(4;a^2+a+1)`.
    pub fn parse_header(s: &str) -> Result<Arc<Self>> {
        let s = s.trim();
        let inner = s
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::syntax(0, "expected GF(q) or GF(q;modulus)"))?;
        let (q_str, modulus) = match inner.split_once(';') {
            Some((a, b)) => (a, Some(b)),
            None => (inner, None),
        };
        let q: u64 = q_str
            .trim()
            .parse()
            .map_err(|_| Error::syntax(3, "field order must be an integer"))?;
        let (p, l) = prime_power(q)?;
        match modulus {
            None => Self::new(p, l),
            Some(m) => {
                let poly = parse_int_poly(m, "a")?;
                if poly.degree() != Some(l as usize) {
                    return Err(Error::BadModulus(l));
                }
                Self::with_modulus(p, poly.coeffs())
            }
        }
    }
}

impl fmt::Display for FqContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.header())
    }
}

/// Parses a sum of monomials `c*v^k` in one variable with integer
/// coefficients, e.g. `a^2+a+1` or `2*a-1`.
pub fn parse_int_poly(s: &str, var: &str) -> Result<IntPoly> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(Error::syntax(0, "empty polynomial"));
    }
    let mut coeffs: Vec<i64> = Vec::new();
    let mut i = 0;
    let var_chars: Vec<char> = var.chars().collect();
    let read_int = |i: &mut usize| -> Option<i64> {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        (start < *i).then(|| chars[start..*i].iter().collect::<String>().parse().ok())?
    };
    while i < chars.len() {
        let mut sign = 1i64;
        if chars[i] == '+' || chars[i] == '-' {
            if chars[i] == '-' {
                sign = -1;
            }
            i += 1;
        } else if i != 0 {
            return Err(Error::syntax(i, "expected '+' or '-'"));
        }
        let c = read_int(&mut i);
        let has_var = chars[i.min(chars.len())..].starts_with(&var_chars)
            || (c.is_some() && chars.get(i) == Some(&'*'));
        let mut exp = 0usize;
        if has_var {
            if chars.get(i) == Some(&'*') {
                i += 1;
            }
            if !chars[i.min(chars.len())..].starts_with(&var_chars) {
                return Err(Error::syntax(i, format!("expected `{var}`")));
            }
            i += var_chars.len();
            exp = 1;
            if chars.get(i) == Some(&'^') {
                i += 1;
                exp = read_int(&mut i).ok_or_else(|| Error::syntax(i, "expected exponent"))?
                    as usize;
            }
        } else if c.is_none() {
            return Err(Error::syntax(i, "expected a term"));
        }
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, 0);
        }
        coeffs[exp] += sign * c.unwrap_or(1);
    }
    Ok(IntPoly::new(coeffs))
}

/// An element of `F_q`.
#[derive(Clone)]
pub struct FqElem {
    ctx: Arc<FqContext>,
    code: u32,
}

impl PartialEq for FqElem {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code && self.ctx == other.ctx
    }
}

impl Eq for FqElem {}

impl std::hash::Hash for FqElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.code.hash(state);
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Arithmetic selector for [`FqElem::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FfOp {
    Add,
    Sub,
    Mul,
    Inv,
    Pow,
}

/// Second operand of [`FqElem::arith`].
#[derive(Debug, Clone)]
pub enum FfOperand {
    Elem(FqElem),
    Int(u64),
    None,
}

impl FqElem {
    pub(crate) fn from_code(ctx: &Arc<FqContext>, code: u32) -> Self {
        debug_assert!(code < ctx.order);
        FqElem {
            ctx: ctx.clone(),
            code,
        }
    }

    pub fn zero(ctx: &Arc<FqContext>) -> Self {
        Self::from_code(ctx, 0)
    }

    pub fn one(ctx: &Arc<FqContext>) -> Self {
        Self::from_code(ctx, 1)
    }

    /// The class of the generator `a` (reduced by the modulus, so in a prime
    /// field with modulus `a` this is zero).
    pub fn generator(ctx: &Arc<FqContext>) -> Self {
        Self::from_int_poly(ctx, &IntPoly::new(vec![0, 1]))
    }

    pub fn from_int(ctx: &Arc<FqContext>, n: i64) -> Self {
        Self::from_code(ctx, ctx.int_raw(n))
    }

    /// Element with the given coefficient vector in the basis `1, a, a^2, ...`.
    pub fn from_coeffs(ctx: &Arc<FqContext>, coeffs: &[i64]) -> Self {
        let poly = IntPoly::new(coeffs.to_vec());
        Self::from_int_poly(ctx, &poly)
    }

    fn from_int_poly(ctx: &Arc<FqContext>, poly: &IntPoly) -> Self {
        let p = ctx.p;
        let reduced: Vec<u32> = poly.coeffs().iter().map(|&c| ctx.int_raw(c)).collect();
        let mut r = if reduced.len() > ctx.degree as usize {
            fp_rem(&reduced, &ctx.modulus, p)
        } else {
            reduced
        };
        r.resize(ctx.degree as usize, 0);
        Self::from_code(ctx, undigits(&r, p))
    }

    /// Parses a polynomial expression in the generator `a` (or an integer).
    pub fn parse(ctx: &Arc<FqContext>, s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(s);
        Ok(Self::from_int_poly(ctx, &parse_int_poly(s, "a")?))
    }

    pub fn context(&self) -> &Arc<FqContext> {
        &self.ctx
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn coeffs(&self) -> Vec<u32> {
        digits(self.code, self.ctx.p, self.ctx.degree)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    pub fn is_one(&self) -> bool {
        self.code == 1
    }

    fn check(&self, other: &FqElem) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Checked dispatcher over the field operations.
    pub fn arith(op: FfOp, a: &FqElem, b: &FfOperand) -> Result<FqElem> {
        match (op, b) {
            (FfOp::Add | FfOp::Sub | FfOp::Mul, FfOperand::Elem(b)) => {
                a.check(b)?;
                let c = &a.ctx;
                let code = match op {
                    FfOp::Add => c.add_raw(a.code, b.code),
                    FfOp::Sub => c.sub_raw(a.code, b.code),
                    _ => c.mul_raw(a.code, b.code),
                };
                Ok(Self::from_code(c, code))
            }
            (FfOp::Inv, _) => a.inv(),
            (FfOp::Pow, FfOperand::Int(e)) => Ok(a.pow(*e)),
            _ => Err(Error::ContextMismatch),
        }
    }

    pub fn inv(&self) -> Result<FqElem> {
        if self.code == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_code(&self.ctx, self.ctx.inv_raw(self.code)))
    }

    pub fn pow(&self, e: u64) -> FqElem {
        Self::from_code(&self.ctx, self.ctx.pow_raw(self.code, e))
    }

    /// `a^q - a` for the field's own `q`; zero on all of `F_q`.
    pub fn artin_schreier(&self) -> FqElem {
        self.artin_schreier_with(self.ctx.order())
    }

    /// `a^r - a` for an arbitrary exponent `r` (e.g. `℘_2` on `F_4`).
    pub fn artin_schreier_with(&self, r: u64) -> FqElem {
        let c = &self.ctx;
        Self::from_code(c, c.sub_raw(c.pow_raw(self.code, r), self.code))
    }

    /// The unique `p`-th root.
    pub fn frobenius_inv(&self) -> FqElem {
        Self::from_code(&self.ctx, self.ctx.frobenius_inv_raw(self.code))
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ctx.degree == 1 {
            return write!(f, "{}", self.code);
        }
        let poly = IntPoly::new(self.coeffs().iter().map(|&c| c as i64).collect());
        f.write_str(&poly.to_string_in("a"))
    }
}

macro_rules! fq_binop {
    ($trait:ident, $method:ident, $raw:ident) => {
        impl std::ops::$trait for &FqElem {
            type Output = FqElem;
            fn $method(self, rhs: &FqElem) -> FqElem {
                assert!(self.ctx == rhs.ctx, "elements from different fields");
                FqElem::from_code(&self.ctx, self.ctx.$raw(self.code, rhs.code))
            }
        }
        impl std::ops::$trait for FqElem {
            type Output = FqElem;
            fn $method(self, rhs: FqElem) -> FqElem {
                (&self).$method(&rhs)
            }
        }
    };
}

fq_binop!(Add, add, add_raw);
fq_binop!(Sub, sub, sub_raw);
fq_binop!(Mul, mul, mul_raw);

impl std::ops::Neg for &FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        FqElem::from_code(&self.ctx, self.ctx.neg_raw(self.code))
    }
}

impl std::ops::Neg for FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        -&self
    }
}

/// All elements of the field, in code order.
pub fn elements(ctx: &Arc<FqContext>) -> impl Iterator<Item = FqElem> + '_ {
    (0..ctx.order).map(move |c| FqElem::from_code(ctx, c))
}

/// Dense univariate polynomial over `F_q`, ascending coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct FqPoly {
    ctx: Arc<FqContext>,
    coeffs: Vec<u32>,
}

impl fmt::Debug for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| format!("{}*X^{i}", FqElem::from_code(&self.ctx, c)))
            .collect();
        write!(f, "FqPoly[{}]", parts.join(" + "))
    }
}

impl FqPoly {
    pub fn new(ctx: &Arc<FqContext>, coeffs: &[FqElem]) -> Self {
        Self::from_codes(ctx, coeffs.iter().map(|c| c.code).collect())
    }

    pub(crate) fn from_codes(ctx: &Arc<FqContext>, coeffs: Vec<u32>) -> Self {
        FqPoly {
            ctx: ctx.clone(),
            coeffs: fp_trim(coeffs),
        }
    }

    /// Reduces each integer coefficient modulo `p`.
    pub fn from_int_poly(ctx: &Arc<FqContext>, f: &IntPoly) -> Self {
        Self::from_codes(ctx, f.coeffs().iter().map(|&c| ctx.int_raw(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        FqElem::from_code(&self.ctx, self.coeffs.get(i).copied().unwrap_or(0))
    }

    pub fn eval(&self, x: &FqElem) -> FqElem {
        let c = &self.ctx;
        let v = self
            .coeffs
            .iter()
            .rev()
            .fold(0, |acc, &a| c.add_raw(c.mul_raw(acc, x.code), a));
        FqElem::from_code(c, v)
    }

    pub fn derivative(&self) -> FqPoly {
        let c = &self.ctx;
        let d = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| c.mul_raw(a, c.int_raw(i as i64)))
            .collect();
        Self::from_codes(c, d)
    }

    pub fn add(&self, other: &FqPoly) -> FqPoly {
        let c = &self.ctx;
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[u32], i: usize| v.get(i).copied().unwrap_or(0);
        Self::from_codes(
            c,
            (0..n)
                .map(|i| c.add_raw(get(&self.coeffs, i), get(&other.coeffs, i)))
                .collect(),
        )
    }

    pub fn neg(&self) -> FqPoly {
        Self::from_codes(&self.ctx, self.coeffs.iter().map(|&a| self.ctx.neg_raw(a)).collect())
    }

    pub fn sub(&self, other: &FqPoly) -> FqPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FqPoly) -> FqPoly {
        let c = &self.ctx;
        if self.is_zero() || other.is_zero() {
            return Self::from_codes(c, vec![]);
        }
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = c.add_raw(out[i + j], c.mul_raw(a, b));
            }
        }
        Self::from_codes(c, out)
    }

    pub fn pow(&self, e: u32) -> FqPoly {
        (0..e).fold(Self::from_codes(&self.ctx, vec![1]), |acc, _| acc.mul(self))
    }

    /// Every root in `F_q`, found by evaluating at all `q` elements.
    pub fn roots(&self) -> Result<Vec<FqElem>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(elements(&self.ctx).filter(|x| self.eval(x).is_zero()).collect())
    }
}

/// True iff `f mod p` has no root in `F_q` and `(f mod p)'(0) != 0`.
pub fn validate_f(f: &IntPoly, ctx: &Arc<FqContext>) -> Result<bool> {
    if !f.is_monic() || f.degree().unwrap_or(0) < 1 {
        return Err(Error::NotMonic);
    }
    let fbar = FqPoly::from_int_poly(ctx, f);
    let rootless = fbar.roots()?.is_empty();
    Ok(rootless && !fbar.derivative().coeff(0).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Arc<FqContext> {
        FqContext::from_order(4).unwrap()
    }

    #[test]
    fn default_moduli() {
        assert_eq!(f4().modulus(), &[1, 1, 1]);
        assert_eq!(FqContext::from_order(8).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FqContext::from_order(9).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FqContext::from_order(9).unwrap().header(), "GF(9;a^2+1)");
        assert!(matches!(FqContext::from_order(6), Err(Error::NotPrimePower(6))));
        assert!(FqContext::with_modulus(2, &[1, 0, 1]).is_err());
    }

    #[test]
    fn f4_arithmetic() {
        let ctx = f4();
        let a = FqElem::generator(&ctx);
        let a1 = FqElem::parse(&ctx, "(a+1)").unwrap();
        assert_eq!(&a * &a, a1);
        // inverse by exhaustive multiplication table
        let inv = elements(&ctx).find(|b| (&a * b).is_one()).unwrap();
        assert_eq!(a.inv().unwrap(), inv);
        assert_eq!(inv, a1);
        assert_eq!(FqElem::zero(&ctx).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn fermat_in_f5() {
        let ctx = FqContext::from_order(5).unwrap();
        let two = FqElem::from_int(&ctx, 2);
        let r = FqElem::arith(FfOp::Pow, &two, &FfOperand::Int(4)).unwrap();
        assert!(r.is_one());
    }

    #[test]
    fn mixed_contexts_rejected() {
        let a = FqElem::one(&f4());
        let b = FqElem::one(&FqContext::from_order(5).unwrap());
        assert_eq!(
            FqElem::arith(FfOp::Add, &a, &FfOperand::Elem(b)),
            Err(Error::ContextMismatch)
        );
    }

    #[test]
    fn artin_schreier_values() {
        let ctx = f4();
        for x in elements(&ctx) {
            assert!(x.artin_schreier().is_zero());
        }
        // ℘_2(a) = a^2 + a = (a+1) + a = 1
        assert!(FqElem::generator(&ctx).artin_schreier_with(2).is_one());
        let f2 = FqContext::from_order(2).unwrap();
        assert!(FqElem::one(&f2).artin_schreier().is_zero());
    }

    #[test]
    fn frobenius_inverse_tables() {
        let ctx = f4();
        let a = FqElem::generator(&ctx);
        let a1 = &a + &FqElem::one(&ctx);
        assert_eq!(a1.frobenius_inv(), a);
        let f9 = FqContext::from_order(9).unwrap();
        for x in elements(&f9) {
            assert_eq!(x.frobenius_inv(), x.pow(3));
            assert_eq!(x.frobenius_inv().pow(3), x);
        }
        assert_eq!(FqElem::one(&FqContext::from_order(2).unwrap()).frobenius_inv().code(), 1);
    }

    #[test]
    fn root_search() {
        for q in [2, 3, 4, 5, 8, 9] {
            let ctx = FqContext::from_order(q).unwrap();
            let g = FqPoly::from_int_poly(&ctx, &IntPoly::artin_schreier_minus_one(q).add(&IntPoly::new(vec![1])));
            assert_eq!(g.roots().unwrap().len() as u64, q);
        }
        let f5 = FqContext::from_order(5).unwrap();
        assert!(FqPoly::from_int_poly(&f5, &IntPoly::new(vec![-2, 0, 1])).roots().unwrap().is_empty());
        let f2 = FqContext::from_order(2).unwrap();
        assert!(FqPoly::from_int_poly(&f2, &IntPoly::new(vec![1, 1, 1])).roots().unwrap().is_empty());
        assert_eq!(FqPoly::from_codes(&f2, vec![]).roots(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn validate_default_f() {
        for q in [2, 3, 4, 5, 8, 9] {
            let ctx = FqContext::from_order(q).unwrap();
            assert!(validate_f(&IntPoly::artin_schreier_minus_one(q), &ctx).unwrap());
            let wp = IntPoly::artin_schreier_minus_one(q).add(&IntPoly::new(vec![1]));
            assert!(!validate_f(&wp, &ctx).unwrap());
        }
        let f5 = FqContext::from_order(5).unwrap();
        assert!(!validate_f(&IntPoly::new(vec![-2, 0, 1]), &f5).unwrap());
        assert_eq!(validate_f(&IntPoly::new(vec![-2, 0, 2]), &f5), Err(Error::NotMonic));
    }

    #[test]
    fn header_round_trip() {
        let ctx = FqContext::parse_header("GF(4;a^2+a+1)").unwrap();
        assert_eq!(*ctx, *f4());
        assert_eq!(FqContext::parse_header(&ctx.header()).unwrap().header(), ctx.header());
        assert!(FqContext::parse_header("GF(4;a^2+1)").is_err());
    }
}
