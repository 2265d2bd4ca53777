use crate::automata::{Dfa, Nfa};
use crate::word::Letter;

use super::GadgetError;

/// Regular expressions over a priority alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lang {
    Eps,
    Letter(Letter),
    /// Any single letter in `lo..=hi`.
    Range(Letter, Letter),
    Cat(Vec<Lang>),
    Alt(Vec<Lang>),
    Star(Box<Lang>),
}

impl Lang {
    pub fn word(letters: &[Letter]) -> Lang {
        Lang::Cat(letters.iter().map(|&a| Lang::Letter(a)).collect())
    }

    pub fn star(l: Lang) -> Lang {
        Lang::Star(Box::new(l))
    }

    pub fn plus(l: Lang) -> Lang {
        Lang::Cat(vec![l.clone(), Lang::star(l)])
    }

    /// `Σ_max*`.
    pub fn any(max: Letter) -> Lang {
        Lang::star(Lang::Range(0, max))
    }

    /// `P_{-1} = {ε}`, `P_a = (P_{a-1} a)*`.
    pub fn proper(a: i32) -> Lang {
        if a < 0 {
            return Lang::Eps;
        }
        Lang::star(Lang::Cat(vec![Lang::proper(a - 1), Lang::Letter(a as Letter)]))
    }

    /// `P_hi P_{hi-1} ⋯ P_lo`, empty product when `lo > hi`.
    pub fn proper_chain(hi: i32, lo: i32) -> Lang {
        Lang::Cat((lo..=hi).rev().map(Lang::proper).collect())
    }

    pub fn max_letter(&self) -> Option<Letter> {
        match self {
            Lang::Eps => None,
            Lang::Letter(a) => Some(*a),
            Lang::Range(lo, hi) => (lo <= hi).then_some(*hi),
            Lang::Cat(v) | Lang::Alt(v) => v.iter().filter_map(Lang::max_letter).max(),
            Lang::Star(l) => l.max_letter(),
        }
    }

    /// Thompson construction, then subset construction and minimization.
    pub fn compile(&self, level: Letter) -> Result<Dfa, GadgetError> {
        if let Some(a) = self.max_letter().filter(|&a| a > level) {
            return Err(GadgetError::LetterOutOfRange { letter: a, level });
        }
        let mut nfa = Nfa::new(usize::from(level) + 1);
        let (s, t) = self.thompson(&mut nfa);
        nfa.set_start(s);
        nfa.set_accepting(t, true);
        Ok(nfa.determinize().minimize())
    }

    fn thompson(&self, nfa: &mut Nfa) -> (usize, usize) {
        let s = nfa.add_state(false);
        let t = nfa.add_state(false);
        match self {
            Lang::Eps => nfa.add_eps(s, t),
            Lang::Letter(a) => nfa.add_move(s, usize::from(*a), t),
            Lang::Range(lo, hi) => {
                for a in *lo..=*hi {
                    nfa.add_move(s, usize::from(a), t);
                }
            }
            Lang::Cat(parts) => {
                let mut cur = s;
                for p in parts {
                    let (ps, pt) = p.thompson(nfa);
                    nfa.add_eps(cur, ps);
                    cur = pt;
                }
                nfa.add_eps(cur, t);
            }
            Lang::Alt(parts) => {
                for p in parts {
                    let (ps, pt) = p.thompson(nfa);
                    nfa.add_eps(s, ps);
                    nfa.add_eps(pt, t);
                }
            }
            Lang::Star(inner) => {
                let (ps, pt) = inner.thompson(nfa);
                nfa.add_eps(s, t);
                nfa.add_eps(s, ps);
                nfa.add_eps(pt, ps);
                nfa.add_eps(pt, t);
            }
        }
        (s, t)
    }

    /// Parses `0`–`9`, `{12}` for larger letters, `$` for `dollar`, `[a-b]`,
    /// `|`, `*`, `+`, `?`, parentheses and `ε`.
    pub fn parse(text: &str, dollar: Letter) -> Result<Lang, GadgetError> {
        let mut p = Parser { text, chars: text.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, dollar };
        let l = p.alt()?;
        if p.pos < p.chars.len() {
            return Err(p.fail(format!("unexpected {:?}", p.chars[p.pos])));
        }
        Ok(l)
    }
}

struct Parser<'a> {
    text: &'a str,
    chars: Vec<char>,
    pos: usize,
    dollar: Letter,
}

impl Parser<'_> {
    fn fail(&self, reason: impl Into<String>) -> GadgetError {
        GadgetError::Syntax { text: self.text.to_string(), reason: reason.into() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn alt(&mut self) -> Result<Lang, GadgetError> {
        let mut parts = vec![self.cat()?];
        while self.peek() == Some('|') {
            self.pos += 1;
            parts.push(self.cat()?);
        }
        Ok(if parts.len() == 1 { parts.pop().expect("one part") } else { Lang::Alt(parts) })
    }

    fn cat(&mut self) -> Result<Lang, GadgetError> {
        let mut parts = Vec::new();
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            parts.push(self.postfix()?);
        }
        Ok(match parts.len() {
            0 => Lang::Eps,
            1 => parts.pop().expect("one part"),
            _ => Lang::Cat(parts),
        })
    }

    fn postfix(&mut self) -> Result<Lang, GadgetError> {
        let mut l = self.atom()?;
        while let Some(c) = self.peek() {
            l = match c {
                '*' => Lang::star(l),
                '+' => Lang::plus(l),
                '?' => Lang::Alt(vec![Lang::Eps, l]),
                _ => break,
            };
            self.pos += 1;
        }
        Ok(l)
    }

    fn letter(&mut self) -> Result<Letter, GadgetError> {
        match self.peek() {
            Some('$') => {
                self.pos += 1;
                Ok(self.dollar)
            }
            Some(c) if c.is_ascii_digit() => {
                self.pos += 1;
                Ok(c as Letter - b'0')
            }
            Some('{') => {
                self.pos += 1;
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                if self.peek() != Some('}') {
                    return Err(self.fail("missing '}'"));
                }
                self.pos += 1;
                digits.parse().map_err(|_| self.fail(format!("bad letter {{{digits}}}")))
            }
            Some(c) => Err(self.fail(format!("expected a letter, found {c:?}"))),
            None => Err(self.fail("unexpected end of input")),
        }
    }

    fn atom(&mut self) -> Result<Lang, GadgetError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let l = self.alt()?;
                if self.peek() != Some(')') {
                    return Err(self.fail("missing ')'"));
                }
                self.pos += 1;
                Ok(l)
            }
            Some('[') => {
                self.pos += 1;
                let lo = self.letter()?;
                if self.peek() != Some('-') {
                    return Err(self.fail("expected '-' in range"));
                }
                self.pos += 1;
                let hi = self.letter()?;
                if self.peek() != Some(']') {
                    return Err(self.fail("missing ']'"));
                }
                self.pos += 1;
                Ok(Lang::Range(lo, hi))
            }
            Some('ε') => {
                self.pos += 1;
                Ok(Lang::Eps)
            }
            _ => Ok(Lang::Letter(self.letter()?)),
        }
    }
}
