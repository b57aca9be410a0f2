//! Minimal s-expressions: lists, bare atoms, `:keywords` and quoted strings.
//! `;` starts a comment running to the end of the line.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SExp {
    Atom(String, usize),
    Str(String, usize),
    List(Vec<SExp>, usize),
}

impl SExp {
    pub fn pos(&self) -> usize {
        match self {
            SExp::Atom(_, p) | SExp::Str(_, p) | SExp::List(_, p) => *p,
        }
    }
}

pub fn parse_all(text: &str) -> Result<Vec<SExp>> {
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    let mut out = Vec::new();
    loop {
        skip(&bytes, &mut i);
        if i >= bytes.len() {
            return Ok(out);
        }
        out.push(parse_one(&bytes, &mut i, text.len())?);
    }
}

fn skip(b: &[(usize, char)], i: &mut usize) {
    while *i < b.len() {
        match b[*i].1 {
            c if c.is_whitespace() => *i += 1,
            ';' => {
                while *i < b.len() && b[*i].1 != '\n' {
                    *i += 1;
                }
            }
            _ => return,
        }
    }
}

fn parse_one(b: &[(usize, char)], i: &mut usize, end: usize) -> Result<SExp> {
    let (pos, c) = b[*i];
    match c {
        '(' => {
            *i += 1;
            let mut items = Vec::new();
            loop {
                skip(b, i);
                match b.get(*i) {
                    None => {
                        return Err(Error::Parse {
                            pos: end,
                            msg: format!("unclosed `(` opened at {pos}"),
                        })
                    }
                    Some((_, ')')) => {
                        *i += 1;
                        return Ok(SExp::List(items, pos));
                    }
                    Some(_) => items.push(parse_one(b, i, end)?),
                }
            }
        }
        ')' => Err(Error::Parse {
            pos,
            msg: "unexpected `)`".into(),
        }),
        '"' => {
            *i += 1;
            let mut s = String::new();
            while let Some(&(_, ch)) = b.get(*i) {
                *i += 1;
                if ch == '"' {
                    return Ok(SExp::Str(s, pos));
                }
                s.push(ch);
            }
            Err(Error::Parse {
                pos,
                msg: "unterminated string".into(),
            })
        }
        _ => {
            let mut s = String::new();
            while let Some(&(_, ch)) = b.get(*i) {
                if ch.is_whitespace() || ch == '(' || ch == ')' || ch == '"' || ch == ';' {
                    break;
                }
                s.push(ch);
                *i += 1;
            }
            Ok(SExp::Atom(s, pos))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_nested() {
        let v = parse_all("; c\n(cut (ax :formula \"A\") :left 1)").unwrap();
        let SExp::List(items, 4) = &v[0] else { panic!("{v:?}") };
        assert_eq!(items[0], SExp::Atom("cut".into(), 5));
        assert!(matches!(&items[1], SExp::List(inner, _) if inner[2] == SExp::Str("A".into(), 22)));
        assert!(matches!(parse_all("(a (b)"), Err(Error::Parse { pos: 6, .. })));
        assert!(matches!(parse_all(")"), Err(Error::Parse { pos: 0, .. })));
    }
}
