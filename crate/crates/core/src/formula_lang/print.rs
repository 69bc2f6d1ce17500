use std::fmt;

use super::ast::{Formula, Sign, Term};

fn sum_spaced(ts: &[(Sign, Term)]) -> bool {
    ts.iter().any(|(_, t)| matches!(t, Term::Inv(_)))
}

fn paren(f: &mut fmt::Formatter<'_>, t: &Term) -> fmt::Result {
    write!(f, "({t})")
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Int(n) => write!(f, "{n}"),
            Term::Var(v) => f.write_str(v),
            Term::Sum(ts) => {
                let spaced = sum_spaced(ts);
                for (i, (s, t)) in ts.iter().enumerate() {
                    if i > 0 {
                        let op = if *s == Sign::Plus { "+" } else { "-" };
                        if spaced {
                            write!(f, " {op} ")?;
                        } else {
                            f.write_str(op)?;
                        }
                    }
                    if matches!(t, Term::Sum(_)) {
                        paren(f, t)?;
                    } else {
                        write!(f, "{t}")?;
                    }
                }
                Ok(())
            }
            Term::Product(ts) => {
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    if matches!(t, Term::Sum(_) | Term::Product(_)) {
                        paren(f, t)?;
                    } else {
                        write!(f, "{t}")?;
                    }
                }
                Ok(())
            }
            Term::Pow(b, e) => {
                match **b {
                    Term::Var(_) | Term::Int(_) | Term::Neg(_) | Term::Inv(_) => write!(f, "{b}")?,
                    _ => paren(f, b)?,
                }
                write!(f, "^{e}")
            }
            Term::Neg(t) => {
                if matches!(**t, Term::Sum(_)) {
                    write!(f, "(-({t}))")
                } else {
                    write!(f, "(-{t})")
                }
            }
            Term::Inv(t) => write!(f, "inv({t})"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Eq(l, r) => write!(f, "{l} = {r}"),
            Formula::Exists(v, body) => write!(f, "exists {v}. {body}"),
            Formula::Or(fs) => {
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" | ")?;
                    }
                    if matches!(g, Formula::Exists(..) | Formula::Or(_)) {
                        write!(f, "({g})")?;
                    } else {
                        write!(f, "{g}")?;
                    }
                }
                Ok(())
            }
            Formula::And(fs) => {
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" & ")?;
                    }
                    if matches!(g, Formula::Exists(..) | Formula::Or(_) | Formula::And(_)) {
                        write!(f, "({g})")?;
                    } else {
                        write!(f, "{g}")?;
                    }
                }
                Ok(())
            }
        }
    }
}
