//! One-sided sequent proofs: the s-expression format and the rule checker.
//!
//! Conventions: unary rules rewrite their active formula in place; binary
//! rules list the first premise's sequent (its active formula rewritten, or
//! removed for `cut`) followed by the second premise's sequent without its
//! active formula. `bot`, `top` and `weaken` append their formula.

use std::fmt;

use crate::error::{Error, Result};

use super::formula::{fmt_sequent, parse_formula, parse_sequent, Formula};
use super::sexp::{parse_all, SExp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Ax,
    Cut,
    Ex,
    Tensor,
    Par,
    One,
    Bot,
    With,
    Plus1,
    Plus2,
    Top,
    Weaken,
    Contract,
    Derelict,
    Promote,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Ax => "ax",
            Rule::Cut => "cut",
            Rule::Ex => "ex",
            Rule::Tensor => "tensor",
            Rule::Par => "par",
            Rule::One => "one",
            Rule::Bot => "bot",
            Rule::With => "with",
            Rule::Plus1 => "plus1",
            Rule::Plus2 => "plus2",
            Rule::Top => "top",
            Rule::Weaken => "weaken",
            Rule::Contract => "contract",
            Rule::Derelict => "derelict",
            Rule::Promote => "promote",
        }
    }

    fn from_name(s: &str) -> Option<Rule> {
        const ALL: [Rule; 15] = [
            Rule::Ax,
            Rule::Cut,
            Rule::Ex,
            Rule::Tensor,
            Rule::Par,
            Rule::One,
            Rule::Bot,
            Rule::With,
            Rule::Plus1,
            Rule::Plus2,
            Rule::Top,
            Rule::Weaken,
            Rule::Contract,
            Rule::Derelict,
            Rule::Promote,
        ];
        ALL.into_iter().find(|r| r.name() == s)
    }

    fn arity(self) -> usize {
        match self {
            Rule::Ax | Rule::One | Rule::Top => 0,
            Rule::Cut | Rule::Tensor | Rule::With => 2,
            _ => 1,
        }
    }

    pub fn is_exponential(self) -> bool {
        matches!(self, Rule::Weaken | Rule::Contract | Rule::Derelict | Rule::Promote)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub rule: Rule,
    pub premises: Vec<Proof>,
    pub formula: Option<Formula>,
    pub context: Option<Vec<Formula>>,
    pub perm: Option<Vec<usize>>,
    pub left: Option<usize>,
    pub right: Option<usize>,
    pub principal: Option<usize>,
    pub conclusion: Option<Vec<Formula>>,
    pub pos: usize,
}

impl Proof {
    pub fn node(&self) -> String {
        format!("{}@{}", self.rule, self.pos)
    }

    fn ill<T>(&self, reason: impl Into<String>) -> Result<T> {
        Err(Error::IllFormed {
            node: self.node(),
            reason: reason.into(),
        })
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Proof::size).sum::<usize>()
    }

    pub fn uses_exponentials(&self) -> bool {
        self.rule.is_exponential() || self.premises.iter().any(Proof::uses_exponentials)
    }
}

pub fn parse_proof(text: &str) -> Result<Proof> {
    let items = parse_all(text)?;
    match items.as_slice() {
        [one] => from_sexp(one),
        [] => Err(Error::Parse {
            pos: 0,
            msg: "empty proof file".into(),
        }),
        [_, second, ..] => Err(Error::Parse {
            pos: second.pos(),
            msg: "one proof per file".into(),
        }),
    }
}

fn from_sexp(e: &SExp) -> Result<Proof> {
    let SExp::List(items, pos) = e else {
        return Err(Error::Parse {
            pos: e.pos(),
            msg: "a proof node is a parenthesized list".into(),
        });
    };
    let pos = *pos;
    let Some(SExp::Atom(head, hpos)) = items.first() else {
        return Err(Error::Parse {
            pos,
            msg: "a proof node starts with a rule name".into(),
        });
    };
    let rule = Rule::from_name(head).ok_or_else(|| Error::Parse {
        pos: *hpos,
        msg: format!("unknown rule `{head}`"),
    })?;
    let mut p = Proof {
        rule,
        premises: vec![],
        formula: None,
        context: None,
        perm: None,
        left: None,
        right: None,
        principal: None,
        conclusion: None,
        pos,
    };
    let mut i = 1;
    while i < items.len() {
        match &items[i] {
            SExp::List(..) => {
                p.premises.push(from_sexp(&items[i])?);
                i += 1;
            }
            SExp::Atom(k, kpos) if k.starts_with(':') => {
                let v = items.get(i + 1).ok_or_else(|| Error::Parse {
                    pos: *kpos,
                    msg: format!("{k} needs a value"),
                })?;
                match k.as_str() {
                    ":formula" => p.formula = Some(parse_formula(&text_of(v)?).map_err(|e| shift(e, v.pos() + 1))?.normalize()),
                    ":context" => p.context = Some(parse_sequent(&text_of(v)?).map_err(|e| shift(e, v.pos() + 1))?),
                    ":conclusion" => p.conclusion = Some(parse_sequent(&text_of(v)?).map_err(|e| shift(e, v.pos() + 1))?),
                    ":perm" => p.perm = Some(numbers(v)?),
                    ":left" => p.left = Some(number(v)?),
                    ":right" => p.right = Some(number(v)?),
                    ":principal" => p.principal = Some(number(v)?),
                    _ => {
                        return Err(Error::Parse {
                            pos: *kpos,
                            msg: format!("unknown keyword {k}"),
                        })
                    }
                }
                i += 2;
            }
            other => {
                return Err(Error::Parse {
                    pos: other.pos(),
                    msg: "expected a premise or a :keyword".into(),
                })
            }
        }
    }
    if p.premises.len() != rule.arity() {
        return Err(Error::Parse {
            pos,
            msg: format!("{rule} takes {} premise(s), got {}", rule.arity(), p.premises.len()),
        });
    }
    Ok(p)
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + by, msg },
        other => other,
    }
}

fn text_of(v: &SExp) -> Result<String> {
    match v {
        SExp::Str(s, _) | SExp::Atom(s, _) => Ok(s.clone()),
        SExp::List(_, p) => Err(Error::Parse {
            pos: *p,
            msg: "expected a string".into(),
        }),
    }
}

fn number(v: &SExp) -> Result<usize> {
    match v {
        SExp::Atom(s, p) => s.parse().map_err(|_| Error::Parse {
            pos: *p,
            msg: format!("expected an index, got `{s}`"),
        }),
        other => Err(Error::Parse {
            pos: other.pos(),
            msg: "expected an index".into(),
        }),
    }
}

fn numbers(v: &SExp) -> Result<Vec<usize>> {
    match v {
        SExp::List(items, _) => items.iter().map(number).collect(),
        SExp::Str(s, p) => s
            .split_whitespace()
            .map(|t| {
                t.parse().map_err(|_| Error::Parse {
                    pos: *p,
                    msg: format!("bad index `{t}`"),
                })
            })
            .collect(),
        SExp::Atom(_, p) => Err(Error::Parse {
            pos: *p,
            msg: "expected a list of indices".into(),
        }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub conclusion: Vec<Formula>,
    pub nodes: usize,
    pub exponential: bool,
}

pub fn check_proof(p: &Proof) -> Result<CheckReport> {
    Ok(CheckReport {
        conclusion: conclusion(p)?,
        nodes: p.size(),
        exponential: p.uses_exponentials(),
    })
}

/// Active positions resolved with their defaults; shared with the interpreter.
#[derive(Clone, Debug)]
pub(crate) struct Active {
    pub k: usize,
    pub l: usize,
}

pub(crate) fn active(p: &Proof, prem: &[Vec<Formula>]) -> Result<Active> {
    let last = |g: &Vec<Formula>| g.len().checked_sub(1);
    let need = |o: Option<usize>, what: &str| {
        o.ok_or_else(|| Error::IllFormed {
            node: p.node(),
            reason: format!("{what} is empty"),
        })
    };
    let (k, l) = match p.rule {
        Rule::Cut => {
            let k = match p.left {
                Some(k) => k,
                None => need(last(&prem[0]), "left premise")?,
            };
            let neg = prem[0].get(k).map(Formula::negate);
            let l = match p.right {
                Some(l) => l,
                None => neg
                    .and_then(|n| prem[1].iter().position(|f| *f == n))
                    .ok_or_else(|| Error::IllFormed {
                        node: p.node(),
                        reason: "no dual of the cut formula in the right premise".into(),
                    })?,
            };
            (k, l)
        }
        Rule::Tensor => (
            p.left.map_or_else(|| need(last(&prem[0]), "left premise"), Ok)?,
            p.right.map_or_else(|| need(last(&prem[1]), "right premise"), Ok)?,
        ),
        Rule::Par | Rule::Contract => {
            let k = match p.principal {
                Some(k) => k,
                None => prem[0].len().checked_sub(2).ok_or_else(|| Error::IllFormed {
                    node: p.node(),
                    reason: "needs two formulas".into(),
                })?,
            };
            (k, k + 1)
        }
        Rule::With | Rule::Plus1 | Rule::Plus2 | Rule::Derelict | Rule::Promote => {
            let k = p.principal.map_or_else(|| need(last(&prem[0]), "premise"), Ok)?;
            (k, k)
        }
        _ => (0, 0),
    };
    let check = |g: &Vec<Formula>, i: usize| {
        if i >= g.len() {
            Err(Error::IllFormed {
                node: p.node(),
                reason: format!("position {i} outside a sequent of length {}", g.len()),
            })
        } else {
            Ok(())
        }
    };
    match p.rule {
        Rule::Cut | Rule::Tensor => {
            check(&prem[0], k)?;
            check(&prem[1], l)?;
        }
        Rule::Par | Rule::Contract | Rule::With | Rule::Plus1 | Rule::Plus2 | Rule::Derelict | Rule::Promote => {
            check(&prem[0], k)?;
            check(&prem[0], l)?;
        }
        _ => {}
    }
    Ok(Active { k, l })
}

fn without(g: &[Formula], i: usize) -> Vec<Formula> {
    g.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, f)| f.clone()).collect()
}

/// Conclusion of `p`, checking every node.
pub fn conclusion(p: &Proof) -> Result<Vec<Formula>> {
    let prem: Vec<Vec<Formula>> = p.premises.iter().map(conclusion).collect::<Result<_>>()?;
    let a = active(p, &prem)?;
    let b = |f: &Formula| Box::new(f.clone());
    let out = match p.rule {
        Rule::Ax => {
            let f = p.formula.as_ref().map_or_else(|| p.ill(":formula is required"), Ok)?;
            vec![f.negate(), f.clone()]
        }
        Rule::Cut => {
            let (x, y) = (&prem[0][a.k], &prem[1][a.l]);
            if *y != x.negate() {
                return p.ill(format!("cut formulas {x} and {y} are not dual"));
            }
            let mut g = without(&prem[0], a.k);
            g.extend(without(&prem[1], a.l));
            g
        }
        Rule::Ex => {
            let perm = p.perm.as_ref().map_or_else(|| p.ill(":perm is required"), Ok)?;
            let mut seen = vec![false; prem[0].len()];
            if perm.len() != prem[0].len() || perm.iter().any(|&i| i >= seen.len() || std::mem::replace(&mut seen[i], true)) {
                return p.ill(format!("{perm:?} is not a permutation of {} positions", prem[0].len()));
            }
            perm.iter().map(|&i| prem[0][i].clone()).collect()
        }
        Rule::Tensor => {
            let mut g = prem[0].clone();
            g[a.k] = Formula::Tensor(b(&prem[0][a.k]), b(&prem[1][a.l]));
            g.extend(without(&prem[1], a.l));
            g
        }
        Rule::Par => {
            let mut g = prem[0].clone();
            let f = Formula::Par(b(&g[a.k]), b(&g[a.l]));
            g.splice(a.k..=a.l, [f]);
            g
        }
        Rule::One => vec![Formula::One],
        Rule::Bot => {
            let mut g = prem[0].clone();
            g.push(Formula::Bot);
            g
        }
        Rule::With => {
            if without(&prem[0], a.k) != without(&prem[1], a.k) || a.k >= prem[1].len() {
                return p.ill("premises differ outside the principal position");
            }
            let mut g = prem[0].clone();
            g[a.k] = Formula::With(b(&prem[0][a.k]), b(&prem[1][a.k]));
            g
        }
        Rule::Plus1 | Rule::Plus2 => {
            let other = p
                .formula
                .as_ref()
                .map_or_else(|| p.ill(":formula (the other disjunct) is required"), Ok)?;
            let mut g = prem[0].clone();
            g[a.k] = if p.rule == Rule::Plus1 {
                Formula::Plus(b(&g[a.k]), b(other))
            } else {
                Formula::Plus(b(other), b(&g[a.k]))
            };
            g
        }
        Rule::Top => {
            let mut g = p.context.clone().unwrap_or_default();
            g.push(Formula::Top);
            g
        }
        Rule::Weaken => {
            let f = p.formula.as_ref().map_or_else(|| p.ill(":formula is required"), Ok)?;
            if !matches!(f, Formula::Quest(_)) {
                return p.ill(format!("can only weaken a ?-formula, got {f}"));
            }
            let mut g = prem[0].clone();
            g.push(f.clone());
            g
        }
        Rule::Contract => {
            let g = &prem[0];
            if !matches!(g[a.k], Formula::Quest(_)) || g[a.k] != g[a.l] {
                return p.ill(format!("contraction needs two equal ?-formulas, got {} and {}", g[a.k], g[a.l]));
            }
            without(g, a.l)
        }
        Rule::Derelict => {
            let mut g = prem[0].clone();
            g[a.k] = Formula::Quest(b(&g[a.k]));
            g
        }
        Rule::Promote => {
            let g = &prem[0];
            if let Some(f) = g.iter().enumerate().find(|(j, f)| *j != a.k && !matches!(f, Formula::Quest(_))) {
                return p.ill(format!("promotion context must be all ?-formulas, found {}", f.1));
            }
            let mut g = g.clone();
            g[a.k] = Formula::Bang(b(&g[a.k]));
            g
        }
    };
    if let Some(expected) = &p.conclusion {
        if *expected != out {
            return p.ill(format!(
                "derived ⊢ {} but :conclusion says ⊢ {}",
                fmt_sequent(&out),
                fmt_sequent(expected)
            ));
        }
    }
    Ok(out)
}
