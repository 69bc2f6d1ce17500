use serde::Serialize;

use super::ast::{Formula, Sign, Term};
use crate::error::{Error, Result};

/// Which term language the parser accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mode {
    /// `+ - * ^` only.
    Ring,
    /// Additionally the formal inverse `inv(...)`.
    Field,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let n = text[s..i].parse().map_err(|_| Error::syntax(s, "integer literal too large"))?;
            out.push((s, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let s = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_' || b[i] == b'\'') {
                i += 1;
            }
            out.push((s, Tok::Ident(text[s..i].to_string())));
        } else if "+-*^()=.|&".contains(c as char) {
            out.push((i, Tok::Sym(c as char)));
            i += 1;
        } else {
            return Err(Error::syntax(i, format!("unexpected character `{}`", c as char)));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
    mode: Mode,
}

const KEYWORDS: [&str; 4] = ["exists", "true", "false", "inv"];

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.0)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    fn eat(&mut self, c: char) -> bool {
        let hit = self.is_sym(c);
        if hit {
            self.i += 1;
        }
        hit
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::syntax(self.pos(), format!("expected `{c}`")))
        }
    }

    fn is_ident(&self, name: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == name)
    }

    fn formula(&mut self) -> Result<Formula> {
        if self.is_ident("exists") {
            self.i += 1;
            let v = match self.peek() {
                Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()) => s.clone(),
                _ => return Err(Error::syntax(self.pos(), "expected a variable after `exists`")),
            };
            self.i += 1;
            self.expect('.')?;
            let body = self.formula()?;
            return Ok(Formula::Exists(v, Box::new(body)));
        }
        self.disj()
    }

    fn disj(&mut self) -> Result<Formula> {
        let mut parts = vec![self.conj()?];
        while self.eat('|') {
            parts.push(self.conj()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::Or(parts) })
    }

    fn conj(&mut self) -> Result<Formula> {
        let mut parts = vec![self.prim()?];
        while self.eat('&') {
            parts.push(self.prim()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::And(parts) })
    }

    fn prim(&mut self) -> Result<Formula> {
        if self.is_ident("true") {
            self.i += 1;
            return Ok(Formula::True);
        }
        if self.is_ident("false") {
            self.i += 1;
            return Ok(Formula::False);
        }
        if self.is_sym('(') {
            // a parenthesized formula, unless the parentheses open a term
            let save = self.i;
            self.i += 1;
            if let Ok(f) = self.formula() {
                if self.eat(')') && !matches!(self.peek(), Some(Tok::Sym('=' | '+' | '-' | '*' | '^'))) {
                    return Ok(f);
                }
            }
            self.i = save;
        }
        let lhs = self.term()?;
        self.expect('=')?;
        let rhs = self.term()?;
        Ok(Formula::Eq(lhs, rhs))
    }

    fn term(&mut self) -> Result<Term> {
        let first = if self.eat('-') {
            Term::Neg(Box::new(self.product()?))
        } else {
            self.product()?
        };
        let mut parts = vec![(Sign::Plus, first)];
        loop {
            let sign = if self.eat('+') {
                Sign::Plus
            } else if self.eat('-') {
                Sign::Minus
            } else {
                break;
            };
            parts.push((sign, self.product()?));
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap().1 } else { Term::Sum(parts) })
    }

    fn product(&mut self) -> Result<Term> {
        let mut parts = vec![self.power()?];
        while self.eat('*') {
            parts.push(self.power()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Term::Product(parts) })
    }

    fn power(&mut self) -> Result<Term> {
        let mut base = self.atom()?;
        while self.eat('^') {
            let at = self.pos();
            match self.peek() {
                Some(Tok::Int(n)) => {
                    let e = u32::try_from(*n).map_err(|_| Error::syntax(at, "exponent too large"))?;
                    self.i += 1;
                    base = Term::Pow(Box::new(base), e);
                }
                _ => return Err(Error::syntax(at, "expected a nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Term> {
        let at = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.i += 1;
                Ok(Term::Int(n))
            }
            Some(Tok::Ident(s)) if s == "inv" => {
                if self.mode == Mode::Ring {
                    return Err(Error::syntax(at, "inv(...) is not allowed in ring mode"));
                }
                self.i += 1;
                self.expect('(')?;
                let t = self.term()?;
                self.expect(')')?;
                Ok(Term::Inv(Box::new(t)))
            }
            Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()) => {
                self.i += 1;
                Ok(Term::Var(s))
            }
            Some(Tok::Sym('(')) => {
                self.i += 1;
                let t = self.term()?;
                self.expect(')')?;
                Ok(t)
            }
            _ => Err(Error::syntax(at, "expected a term")),
        }
    }
}

/// Parses the formula grammar; `inv(...)` is accepted only in field mode.
pub fn parse_formula(text: &str, mode: Mode) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text)?,
        i: 0,
        end: text.len(),
        mode,
    };
    let f = p.formula()?;
    if p.i < p.toks.len() {
        return Err(Error::syntax(p.pos(), "unexpected trailing input"));
    }
    Ok(f)
}

pub fn parse_term(text: &str, mode: Mode) -> Result<Term> {
    let mut p = Parser {
        toks: lex(text)?,
        i: 0,
        end: text.len(),
        mode,
    };
    let t = p.term()?;
    if p.i < p.toks.len() {
        return Err(Error::syntax(p.pos(), "unexpected trailing input"));
    }
    Ok(t)
}

pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}
