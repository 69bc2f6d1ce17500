//! Polynomial literals such as `y^2 - (1+t)*y + t^(1/2)`.

use std::sync::Arc;

use super::UPoly;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::finite_field::{FqContext, FqElem};
use crate::hahn_series::HahnSeries;

struct Parser<'a> {
    ctx: &'a Arc<FqContext>,
    s: &'a [u8],
    pos: usize,
}

enum Atom {
    T,
    Poly(UPoly),
}

impl Parser<'_> {
    fn peek(&mut self) -> Option<u8> {
        while self.s.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        let hit = self.peek() == Some(c);
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::syntax(self.pos, format!("expected `{}`", c as char)))
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.peek();
        let start = self.pos;
        while self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::syntax(start, "expected an integer"))
    }

    fn expr(&mut self) -> Result<UPoly> {
        let mut acc = if self.eat(b'-') {
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<UPoly> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<UPoly> {
        let atom = self.atom()?;
        if !self.eat(b'^') {
            return Ok(match atom {
                Atom::T => UPoly::constant(HahnSeries::t(self.ctx)),
                Atom::Poly(p) => p,
            });
        }
        let at = self.pos;
        let exp: Exponent = if self.eat(b'(') {
            let start = self.pos;
            while self.peek().is_some_and(|c| c != b')') {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap().to_string();
            self.expect(b')')?;
            text.trim().parse().map_err(|_| Error::syntax(start, "bad exponent"))?
        } else {
            let neg = self.eat(b'-');
            let n = self.integer()?;
            Exponent::int(if neg { -n } else { n })
        };
        match atom {
            Atom::T => Ok(UPoly::constant(HahnSeries::t_pow(self.ctx, exp))),
            Atom::Poly(p) => {
                if !exp.is_integer() || exp.is_negative() {
                    return Err(Error::syntax(at, "only t takes rational or negative exponents"));
                }
                let n = u32::try_from(exp.numer()).map_err(|_| Error::syntax(at, "exponent too large"))?;
                Ok(p.pow(n))
            }
        }
    }

    fn atom(&mut self) -> Result<Atom> {
        let ctx = self.ctx;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(Atom::Poly(inner))
            }
            Some(b'y' | b'Y') => {
                self.pos += 1;
                Ok(Atom::Poly(UPoly::var(ctx)))
            }
            Some(b't') => {
                self.pos += 1;
                Ok(Atom::T)
            }
            Some(b'a') => {
                self.pos += 1;
                Ok(Atom::Poly(UPoly::constant(HahnSeries::constant(&FqElem::generator(ctx)))))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Atom::Poly(UPoly::constant(HahnSeries::from_int(ctx, n))))
            }
            _ => Err(Error::syntax(self.pos, "expected `y`, `t`, `a`, an integer or `(`")),
        }
    }
}

impl UPoly {
    /// Parses a polynomial in `y` whose coefficients are exact series in `t`.
    pub fn parse(ctx: &Arc<FqContext>, text: &str) -> Result<UPoly> {
        let mut p = Parser {
            ctx,
            s: text.as_bytes(),
            pos: 0,
        };
        let poly = p.expr()?;
        if p.peek().is_some() {
            return Err(Error::syntax(p.pos, "unexpected trailing input"));
        }
        Ok(poly)
    }
}
