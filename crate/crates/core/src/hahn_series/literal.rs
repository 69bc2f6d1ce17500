//! Text form of series: `2*t^(-1/3) + (a+1)*t + O(t^(5/2))`.

use std::fmt;
use std::sync::Arc;

use super::HahnSeries;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::finite_field::{FqContext, FqElem};

fn monomial(e: &Exponent) -> String {
    if *e == Exponent::one() {
        "t".to_string()
    } else {
        format!("t^({e})")
    }
}

/// Coefficient in literal syntax: an integer for prime fields, `(poly)` otherwise.
pub(crate) fn coeff_literal(c: &FqElem) -> String {
    if c.context().degree() == 1 {
        c.to_string()
    } else {
        format!("({c})")
    }
}

impl fmt::Display for HahnSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .terms()
            .map(|(e, c)| {
                if e.is_zero() {
                    coeff_literal(&c)
                } else if c.is_one() {
                    monomial(e)
                } else {
                    format!("{}*{}", coeff_literal(&c), monomial(e))
                }
            })
            .collect();
        if let Some(p) = self.prec() {
            parts.push(format!("O({})", monomial(p)));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + "))
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::syntax(self.pos, format!("expected `{}`", c as char)))
        }
    }

    fn integer(&mut self) -> Option<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }

    /// Text up to the matching close paren (the open paren is consumed).
    fn balanced(&mut self) -> Result<&'a str> {
        let start = self.pos;
        let mut depth = 1;
        while self.pos < self.s.len() {
            match self.s[self.pos] {
                b'(' => depth += 1,
                b')' => {
                    depth -= 1;
                    if depth == 0 {
                        let inner = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                        self.pos += 1;
                        return Ok(inner);
                    }
                }
                _ => {}
            }
            self.pos += 1;
        }
        Err(Error::syntax(start, "unbalanced parenthesis"))
    }

    /// `t`, `t^(r)` or `t^n`.
    fn monomial(&mut self) -> Result<Exponent> {
        self.expect(b't')?;
        if !self.eat(b'^') {
            return Ok(Exponent::one());
        }
        if self.eat(b'(') {
            let at = self.pos;
            self.balanced()?
                .parse()
                .map_err(|_| Error::syntax(at, "bad rational exponent"))
        } else {
            let neg = self.eat(b'-');
            let n = self
                .integer()
                .ok_or_else(|| Error::syntax(self.pos, "expected exponent"))?;
            Ok(Exponent::int(if neg { -n } else { n }))
        }
    }
}

impl HahnSeries {
    /// Parses the series literal grammar. Terms are separated by `+`
    /// (a `-` separator negates the following term); an optional final
    /// `O(monomial)` sets the precision.
    pub fn parse(ctx: &Arc<FqContext>, text: &str) -> Result<HahnSeries> {
        let mut cur = Cursor {
            s: text.as_bytes(),
            pos: 0,
        };
        let mut terms = Vec::new();
        let mut prec = None;
        let mut first = true;
        loop {
            let mut negate = false;
            if !first {
                match cur.peek() {
                    None => break,
                    Some(b'+') => cur.pos += 1,
                    Some(b'-') => {
                        cur.pos += 1;
                        negate = true;
                    }
                    Some(_) => return Err(Error::syntax(cur.pos, "expected `+`")),
                }
            } else if cur.eat(b'-') {
                negate = true;
            }
            first = false;
            if cur.peek() == Some(b'O') {
                cur.pos += 1;
                cur.expect(b'(')?;
                prec = Some(cur.monomial()?);
                cur.expect(b')')?;
                if cur.peek().is_some() {
                    return Err(Error::syntax(cur.pos, "O(...) must come last"));
                }
                break;
            }
            let coeff = match cur.peek() {
                Some(b'(') => {
                    cur.pos += 1;
                    let at = cur.pos;
                    let inner = cur.balanced()?;
                    Some(FqElem::parse(ctx, inner).map_err(|_| Error::syntax(at, "bad coefficient"))?)
                }
                Some(c) if c.is_ascii_digit() => Some(FqElem::from_int(ctx, cur.integer().unwrap())),
                Some(b'a') => {
                    let at = cur.pos;
                    cur.pos += 1;
                    let mut gen = "a".to_string();
                    if cur.eat(b'^') {
                        let k = cur.integer().ok_or_else(|| Error::syntax(cur.pos, "expected an integer"))?;
                        gen = format!("a^{k}");
                    }
                    Some(FqElem::parse(ctx, &gen).map_err(|_| Error::syntax(at, "bad coefficient"))?)
                }
                Some(b't') => None,
                _ => return Err(Error::syntax(cur.pos, "expected a term")),
            };
            let exp = match coeff {
                None => cur.monomial()?,
                Some(_) if cur.eat(b'*') => cur.monomial()?,
                Some(_) => Exponent::zero(),
            };
            let c = coeff.unwrap_or_else(|| FqElem::one(ctx));
            terms.push((exp, if negate { -c } else { c }));
        }
        Ok(HahnSeries::make(ctx, terms, prec))
    }
}
