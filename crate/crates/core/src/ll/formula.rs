//! Propositional linear-logic formulas.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(String),
    Dual(Box<Formula>),
    Tensor(Box<Formula>, Box<Formula>),
    Par(Box<Formula>, Box<Formula>),
    With(Box<Formula>, Box<Formula>),
    Plus(Box<Formula>, Box<Formula>),
    One,
    Bot,
    Zero,
    Top,
    Bang(Box<Formula>),
    Quest(Box<Formula>),
}

use Formula::*;

impl Formula {
    pub fn atom(s: &str) -> Self {
        Atom(s.to_string())
    }

    pub fn dual_of(f: Formula) -> Self {
        Dual(Box::new(f))
    }

    /// Negation pushed to the atoms; `A^^` collapses to `A`.
    pub fn normalize(&self) -> Formula {
        match self {
            Atom(_) | One | Bot | Zero | Top => self.clone(),
            Dual(f) => f.negate(),
            Tensor(a, b) => Tensor(Box::new(a.normalize()), Box::new(b.normalize())),
            Par(a, b) => Par(Box::new(a.normalize()), Box::new(b.normalize())),
            With(a, b) => With(Box::new(a.normalize()), Box::new(b.normalize())),
            Plus(a, b) => Plus(Box::new(a.normalize()), Box::new(b.normalize())),
            Bang(a) => Bang(Box::new(a.normalize())),
            Quest(a) => Quest(Box::new(a.normalize())),
        }
    }

    /// Normal form of the linear negation of `self`.
    pub fn negate(&self) -> Formula {
        let n = |f: &Formula| Box::new(f.negate());
        match self {
            Atom(_) => Dual(Box::new(self.clone())),
            Dual(f) => f.normalize(),
            Tensor(a, b) => Par(n(a), n(b)),
            Par(a, b) => Tensor(n(a), n(b)),
            With(a, b) => Plus(n(a), n(b)),
            Plus(a, b) => With(n(a), n(b)),
            One => Bot,
            Bot => One,
            Zero => Top,
            Top => Zero,
            Bang(a) => Quest(n(a)),
            Quest(a) => Bang(n(a)),
        }
    }

    pub fn is_exponential_free(&self) -> bool {
        match self {
            Atom(_) | One | Bot | Zero | Top => true,
            Dual(a) => a.is_exponential_free(),
            Tensor(a, b) | Par(a, b) | With(a, b) | Plus(a, b) => a.is_exponential_free() && b.is_exponential_free(),
            Bang(_) | Quest(_) => false,
        }
    }

    pub fn atoms(&self, out: &mut Vec<String>) {
        match self {
            Atom(s) => {
                if !out.contains(s) {
                    out.push(s.clone());
                }
            }
            One | Bot | Zero | Top => {}
            Dual(a) | Bang(a) | Quest(a) => a.atoms(out),
            Tensor(a, b) | Par(a, b) | With(a, b) | Plus(a, b) => {
                a.atoms(out);
                b.atoms(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            With(..) | Plus(..) => 1,
            Tensor(..) | Par(..) => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, x: &Formula, min: u8| {
            if x.precedence() < min {
                write!(f, "({x})")
            } else {
                write!(f, "{x}")
            }
        };
        let bin = |f: &mut fmt::Formatter<'_>, a: &Formula, op: &str, b: &Formula, p: u8| {
            wrap(f, a, p + 1)?;
            write!(f, " {op} ")?;
            wrap(f, b, p)
        };
        match self {
            Atom(s) => write!(f, "{s}"),
            One => write!(f, "1"),
            Bot => write!(f, "bot"),
            Zero => write!(f, "0"),
            Top => write!(f, "top"),
            // `!A^` reads as `!(A^)`, so a prefixed operand needs parentheses.
            Dual(a) if matches!(**a, Bang(_) | Quest(_)) => write!(f, "({a})^"),
            Dual(a) => {
                wrap(f, a, 3)?;
                write!(f, "^")
            }
            Bang(a) => {
                write!(f, "!")?;
                wrap(f, a, 3)
            }
            Quest(a) => {
                write!(f, "?")?;
                wrap(f, a, 3)
            }
            Tensor(a, b) => bin(f, a, "*", b, 2),
            Par(a, b) => bin(f, a, "par", b, 2),
            With(a, b) => bin(f, a, "&", b, 1),
            Plus(a, b) => bin(f, a, "+", b, 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Tensor,
    Par,
    With,
    Plus,
    Lolli,
    Caret,
    Bang,
    Quest,
    One,
    Bot,
    Zero,
    Top,
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '*' | '⊗' => Some(Tok::Tensor),
            '⅋' => Some(Tok::Par),
            '&' => Some(Tok::With),
            '+' | '⊕' => Some(Tok::Plus),
            '⊸' => Some(Tok::Lolli),
            '^' => Some(Tok::Caret),
            '!' => Some(Tok::Bang),
            '?' => Some(Tok::Quest),
            '⊥' => Some(Tok::Bot),
            '⊤' => Some(Tok::Top),
            '1' => Some(Tok::One),
            '0' => Some(Tok::Zero),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c == '-' {
            if chars.get(i + 1).map(|p| p.1) == Some('o') {
                out.push((Tok::Lolli, pos));
                i += 2;
            } else {
                return Err(Error::Parse {
                    pos,
                    msg: "expected `-o`".into(),
                });
            }
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().map(|p| p.1).collect();
            let tok = match word.as_str() {
                "par" => Tok::Par,
                "bot" => Tok::Bot,
                "top" => Tok::Top,
                _ => Tok::Ident(word),
            };
            out.push((tok, pos));
        } else {
            return Err(Error::Parse {
                pos,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.0)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.1)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    // lolli := additive ('-o' lolli)?
    fn lolli(&mut self) -> Result<Formula> {
        let a = self.additive()?;
        if self.peek() == Some(&Tok::Lolli) {
            self.i += 1;
            let b = self.lolli()?;
            return Ok(Par(Box::new(Dual(Box::new(a))), Box::new(b)));
        }
        Ok(a)
    }

    // additive := mult (('&' | '+') additive)?
    fn additive(&mut self) -> Result<Formula> {
        let a = self.mult()?;
        match self.peek() {
            Some(Tok::With) => {
                self.i += 1;
                Ok(With(Box::new(a), Box::new(self.additive()?)))
            }
            Some(Tok::Plus) => {
                self.i += 1;
                Ok(Plus(Box::new(a), Box::new(self.additive()?)))
            }
            _ => Ok(a),
        }
    }

    // mult := unary (('*' | 'par') mult)?
    fn mult(&mut self) -> Result<Formula> {
        let a = self.unary()?;
        match self.peek() {
            Some(Tok::Tensor) => {
                self.i += 1;
                Ok(Tensor(Box::new(a), Box::new(self.mult()?)))
            }
            Some(Tok::Par) => {
                self.i += 1;
                Ok(Par(Box::new(a), Box::new(self.mult()?)))
            }
            _ => Ok(a),
        }
    }

    // unary := ('!' | '?') unary | atom '^'*
    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Some(Tok::Bang) => {
                self.i += 1;
                Ok(Bang(Box::new(self.unary()?)))
            }
            Some(Tok::Quest) => {
                self.i += 1;
                Ok(Quest(Box::new(self.unary()?)))
            }
            _ => {
                let mut a = self.primary()?;
                while self.peek() == Some(&Tok::Caret) {
                    self.i += 1;
                    a = Dual(Box::new(a));
                }
                Ok(a)
            }
        }
    }

    fn primary(&mut self) -> Result<Formula> {
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => return self.err("unexpected end of formula"),
        };
        self.i += 1;
        match tok {
            Tok::Ident(s) => Ok(Atom(s)),
            Tok::One => Ok(One),
            Tok::Zero => Ok(Zero),
            Tok::Bot => Ok(Bot),
            Tok::Top => Ok(Top),
            Tok::LParen => {
                let f = self.lolli()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.i += 1;
                Ok(f)
            }
            _ => {
                self.i -= 1;
                self.err("expected a formula")
            }
        }
    }
}

/// Parses ASCII or Unicode syntax; `A -o B` becomes `A^ par B`.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text)?,
        i: 0,
        end: text.len(),
    };
    let f = p.lolli()?;
    if p.i != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(f)
}

/// Comma-separated formulas; the empty string is the empty sequent.
pub fn parse_sequent(text: &str) -> Result<Vec<Formula>> {
    if text.trim().is_empty() {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let f = parse_formula(part).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse { pos: pos + offset, msg },
            other => other,
        })?;
        out.push(f.normalize());
        offset += part.len() + 1;
    }
    Ok(out)
}

pub fn fmt_sequent(s: &[Formula]) -> String {
    s.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn grammar() {
        assert_eq!(
            p("!(A -o B)"),
            Bang(Box::new(Par(Box::new(Dual(Box::new(p("A")))), Box::new(p("B")))))
        );
        assert_eq!(
            p("A * B par C"),
            Tensor(Box::new(p("A")), Box::new(Par(Box::new(p("B")), Box::new(p("C")))))
        );
        assert_eq!(p("A & B * C"), With(Box::new(p("A")), Box::new(p("B * C"))));
        assert_eq!(p("A -o B -o C"), p("A -o (B -o C)"));
        assert_eq!(p("A ⊗ B ⅋ C ⊕ ⊤"), p("A * B par C + top"));
        assert_eq!(p("A ⊸ ⊥"), p("A -o bot"));
        assert_eq!(p("!A^"), Bang(Box::new(Dual(Box::new(p("A"))))));
    }

    #[test]
    fn normalization() {
        assert_eq!(p("A^^").normalize(), p("A"));
        assert_eq!(p("(A*B)^").normalize().to_string(), "A^ par B^");
        assert_eq!(p("(!A & 1)^").normalize(), p("?A^ + bot"));
        assert_eq!(p("(A -o B)^").normalize(), p("A * B^"));
    }

    #[test]
    fn errors_have_positions() {
        assert!(matches!(parse_formula("A * "), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_formula("A $ B"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_formula("(A"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_sequent("A, B *"), Err(Error::Parse { pos: 6, .. })));
    }

    #[test]
    fn display_round_trips() {
        for s in ["A * (B & C)", "?(A par B)^", "(A + B) * C", "!!A", "1 & 0 + top"] {
            let f = p(s).normalize();
            assert_eq!(p(&f.to_string()).normalize(), f, "{s}");
        }
    }
}
