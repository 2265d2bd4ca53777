use std::fmt;
use std::str::FromStr;

use super::{OrdinalError, Term};

// sum   := prod ('+' prod)*
// prod  := atom ('*' int)?
// atom  := int | 'e0' | 'w' ('^' atom)? | '(' sum ')'
struct Parser<'a> {
    text: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn fail(&self, reason: impl Into<String>) -> OrdinalError {
        OrdinalError::Syntax { text: self.text.to_string(), reason: reason.into() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<usize, OrdinalError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let n: usize = digits.parse().map_err(|_| self.fail(format!("expected an integer at {start}")))?;
        if n > 1_000_000 {
            return Err(self.fail("integer too large"));
        }
        Ok(n)
    }

    fn sum(&mut self) -> Result<Term, OrdinalError> {
        let mut acc = self.prod()?;
        while self.eat('+') {
            let next = self.prod()?;
            if acc.contains_epsilon0() || next.contains_epsilon0() {
                return Err(self.fail("ε₀ must stand alone"));
            }
            acc = acc.plus(&next);
        }
        Ok(acc)
    }

    fn prod(&mut self) -> Result<Term, OrdinalError> {
        let a = self.atom()?;
        if self.eat('*') {
            let k = self.int()?;
            if a.contains_epsilon0() && k != 1 {
                return Err(self.fail("ε₀ cannot be repeated"));
            }
            return Ok(if k == 1 { a } else { a.times(k) });
        }
        Ok(a)
    }

    fn atom(&mut self) -> Result<Term, OrdinalError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Term::nat(self.int()?)),
            Some('(') => {
                self.pos += 1;
                let t = self.sum()?;
                if !self.eat(')') {
                    return Err(self.fail("missing ')'"));
                }
                Ok(t)
            }
            Some('e') | Some('ε') => {
                self.pos += 1;
                if !matches!(self.chars.get(self.pos), Some('0') | Some('₀')) {
                    return Err(self.fail("expected e0"));
                }
                self.pos += 1;
                Ok(Term::Epsilon0)
            }
            Some('w') | Some('ω') => {
                self.pos += 1;
                if self.eat('^') {
                    let e = self.atom()?;
                    if e.contains_epsilon0() {
                        return Err(self.fail("ε₀ cannot appear in an exponent"));
                    }
                    Ok(Term::omega_pow(e))
                } else {
                    Ok(Term::omega())
                }
            }
            Some(c) => Err(self.fail(format!("unexpected {c:?}"))),
            None => Err(self.fail("unexpected end of input")),
        }
    }
}

impl FromStr for Term {
    type Err = OrdinalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { text: s, chars: s.chars().collect(), pos: 0 };
        let t = p.sum()?;
        if p.peek().is_some() {
            return Err(p.fail(format!("trailing input at {}", p.pos)));
        }
        if t.contains_epsilon0() && t != Term::Epsilon0 {
            return Err(p.fail("ε₀ must stand alone"));
        }
        Ok(t)
    }
}

fn exponent(e: &Term, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if e.as_nat().is_some() || *e == Term::omega() {
        write!(f, "{e}")
    } else {
        write!(f, "({e})")
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exps = match self {
            Term::Epsilon0 => return f.write_str("e0"),
            Term::Sum(v) if v.is_empty() => return f.write_str("0"),
            Term::Sum(v) => v,
        };
        let mut i = 0;
        while i < exps.len() {
            let e = &exps[i];
            let run = exps[i..].iter().take_while(|x| *x == e).count();
            if i > 0 {
                f.write_str(" + ")?;
            }
            if e.is_zero() {
                write!(f, "{run}")?;
            } else {
                f.write_str("w")?;
                if *e != Term::one() {
                    f.write_str("^")?;
                    exponent(e, f)?;
                }
                if run > 1 {
                    write!(f, "*{run}")?;
                }
            }
            i += run;
        }
        Ok(())
    }
}

impl serde::Serialize for Term {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Term {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
