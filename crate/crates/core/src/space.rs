//! Polytope-normed rigged sequence spaces.
//!
//! A space on a finite index set is given by two finite sets of nonnegative
//! generators: `P` spans the nonnegative part of the unit ball and `Q` the
//! nonnegative part of the dual unit ball. Both are kept as canonical
//! antichains, so the norm and dual norm are maxima of pairings against
//! generators.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::index::IndexSet;
use crate::lp::{maximize, LpOutcome};
use crate::polar::{canonicalize, check_generators, dominated_generator, polar_vertices, uncovered_coordinate};
use crate::rational::{fmt_rat, parse_rat, Rat};
use crate::seq::{dot, Sequence};

#[derive(Clone, Debug)]
pub struct PolytopeSpace {
    index: IndexSet,
    p: Vec<Sequence>,
    q: Vec<Sequence>,
    pub name: String,
}

impl PartialEq for PolytopeSpace {
    /// Equality of labels and of canonical generator sets; names are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index && self.p == other.p && self.q == other.q
    }
}

impl PolytopeSpace {
    /// Space defined by its dual-ball generators; `P` is computed as the polar.
    pub fn from_q(index: IndexSet, q: Vec<Sequence>, name: impl Into<String>) -> Result<Self> {
        let dim = index.len();
        check_generators(&q, dim)?;
        let q = canonicalize(&q)?;
        let p = polar_vertices(&q, dim)?;
        Ok(PolytopeSpace {
            index,
            p,
            q,
            name: name.into(),
        })
    }

    pub fn from_p(index: IndexSet, p: Vec<Sequence>, name: impl Into<String>) -> Result<Self> {
        Ok(PolytopeSpace::from_q(index, p, name)?.dual())
    }

    /// Takes both generator sets as given (sorted, deduplicated) without
    /// checking the invariants; run [`validate`] on the result.
    pub fn from_parts(index: IndexSet, mut p: Vec<Sequence>, mut q: Vec<Sequence>, name: impl Into<String>) -> Self {
        p.sort();
        p.dedup();
        q.sort();
        q.dedup();
        PolytopeSpace {
            index,
            p,
            q,
            name: name.into(),
        }
    }

    /// `l^∞` on `n` coordinates.
    pub fn sup_norm(index: IndexSet) -> Self {
        let n = index.len();
        let q = (0..n).map(|i| Sequence::basis(n, i)).collect::<Vec<_>>();
        let p = vec![Sequence(vec![crate::rational::one(); n])];
        let mut s = PolytopeSpace::from_parts(index, p, q, "sup");
        if n == 0 {
            s.p = vec![Sequence(vec![])];
            s.q = vec![Sequence(vec![])];
        }
        s
    }

    /// `l^1` on `n` coordinates.
    pub fn sum_norm(index: IndexSet) -> Self {
        let mut s = PolytopeSpace::sup_norm(index).dual();
        s.name = "sum".into();
        s
    }

    pub fn index(&self) -> &IndexSet {
        &self.index
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn p(&self) -> &[Sequence] {
        &self.p
    }

    pub fn q(&self) -> &[Sequence] {
        &self.q
    }

    /// Swap the two balls.
    pub fn dual(&self) -> Self {
        PolytopeSpace {
            index: self.index.clone(),
            p: self.q.clone(),
            q: self.p.clone(),
            name: format!("({})^", self.name),
        }
    }

    /// Same generators on a relabeled index set of equal size.
    pub fn relabel(&self, index: IndexSet) -> Result<Self> {
        if index.len() != self.dim() {
            return Err(Error::IndexMismatch {
                expected: self.dim(),
                found: index.len(),
            });
        }
        Ok(PolytopeSpace { index, ..self.clone() })
    }

    /// Moves coordinate `i` to position `perm[i]`.
    pub fn permute(&self, perm: &[usize], index: IndexSet) -> Result<Self> {
        let n = self.dim();
        if perm.len() != n || index.len() != n {
            return Err(Error::IndexMismatch {
                expected: n,
                found: perm.len(),
            });
        }
        let mv = |s: &Sequence| {
            let mut v = vec![Rat::default(); n];
            for (i, x) in s.entries().iter().enumerate() {
                v[perm[i]] = x.clone();
            }
            Sequence(v)
        };
        Ok(PolytopeSpace::from_parts(
            index,
            self.p.iter().map(mv).collect(),
            self.q.iter().map(mv).collect(),
            self.name.clone(),
        ))
    }

    /// Generator sets agree positionally, whatever the labels.
    pub fn same_up_to_relabel(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.p == other.p && self.q == other.q
    }

    fn check_spanning(gens: &[Sequence], dim: usize, which: &str) -> Result<()> {
        if dim > 0 && gens.is_empty() {
            return Err(Error::InvalidSpace(format!("{which} is empty")));
        }
        if let Some(i) = uncovered_coordinate(gens, dim) {
            return Err(Error::InvalidSpace(format!("{which} does not span coordinate {i}")));
        }
        Ok(())
    }

    /// `||a|| = max_{q in Q} <|a|, q>`.
    pub fn norm(&self, a: &Sequence) -> Result<Rat> {
        a.check_len(self.dim())?;
        Self::check_spanning(&self.q, self.dim(), "Q")?;
        Ok(generator_max(&self.q, &a.abs()))
    }

    /// `||b||* = max_{p in P} <p, |b|>`.
    pub fn dual_norm(&self, b: &Sequence) -> Result<Rat> {
        b.check_len(self.dim())?;
        Self::check_spanning(&self.p, self.dim(), "P")?;
        Ok(generator_max(&self.p, &b.abs()))
    }

    /// `max{<c, x> : x >= 0, <x, q> <= 1 for q in Q}`; `None` if unbounded.
    pub fn ball_support_lp(&self, c: &Sequence) -> Result<Option<Rat>> {
        support_lp(&self.q, c)
    }

    pub fn to_json(&self) -> Value {
        let gens = |g: &[Sequence]| -> Value { Value::Array(g.iter().map(|s| json!(s.to_strings())).collect()) };
        json!({
            "labels": self.index.to_json(),
            "P": gens(&self.p),
            "Q": gens(&self.q),
            "name": self.name,
        })
    }

    /// Reads the space file format. If only one of `P`, `Q` is present the
    /// other is computed as its polar.
    pub fn from_json(v: &Value) -> Result<Self> {
        let index = IndexSet::from_json(v.get("labels").ok_or_else(|| Error::Json("missing labels".into()))?)?;
        let name = v.get("name").and_then(Value::as_str).unwrap_or("").to_string();
        let read = |key: &str| -> Result<Option<Vec<Sequence>>> {
            match v.get(key) {
                None | Some(Value::Null) => Ok(None),
                Some(arr) => Ok(Some(read_generators(arr)?)),
            }
        };
        match (read("P")?, read("Q")?) {
            (Some(p), Some(q)) => Ok(PolytopeSpace::from_parts(index, p, q, name)),
            (None, Some(q)) => PolytopeSpace::from_q(index, q, name),
            (Some(p), None) => PolytopeSpace::from_p(index, p, name),
            (None, None) => Err(Error::Json("space needs P or Q".into())),
        }
    }
}

pub fn read_generators(arr: &Value) -> Result<Vec<Sequence>> {
    let rows = arr.as_array().ok_or_else(|| Error::Json("generators must be arrays".into()))?;
    rows.iter().map(read_sequence).collect()
}

pub fn read_sequence(row: &Value) -> Result<Sequence> {
    let row = row.as_array().ok_or_else(|| Error::Json("vector must be an array".into()))?;
    row.iter()
        .map(|x| match x {
            Value::String(s) => parse_rat(s),
            Value::Number(n) => parse_rat(&n.to_string()),
            _ => Err(Error::Json(format!("bad rational {x}"))),
        })
        .collect::<Result<Vec<_>>>()
        .map(Sequence)
}

pub(crate) fn generator_max(gens: &[Sequence], v: &Sequence) -> Rat {
    gens.iter().map(|g| dot(g, v)).max().unwrap_or_default()
}

pub(crate) fn support_lp(constraints: &[Sequence], c: &Sequence) -> Result<Option<Rat>> {
    let rows: Vec<Vec<Rat>> = constraints.iter().map(|q| q.entries().to_vec()).collect();
    let b = vec![crate::rational::one(); rows.len()];
    match maximize(c.entries(), &rows, &b)? {
        LpOutcome::Optimal { value, .. } => Ok(Some(value)),
        LpOutcome::Unbounded => Ok(None),
    }
}

/// One violated invariant with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub invariant: &'static str,
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn fail(&mut self, invariant: &'static str, witness: String) {
        self.violations.push(Violation { invariant, witness });
    }
}

fn show(s: &Sequence) -> String {
    format!("({})", s.entries().iter().map(fmt_rat).collect::<Vec<_>>().join(","))
}

/// Checks every generator-set invariant and reports each failure.
pub fn validate(space: &PolytopeSpace) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let dim = space.dim();
    for (which, gens) in [("P", space.p()), ("Q", space.q())] {
        for g in gens {
            if g.len() != dim {
                rep.fail("dimension", format!("{which} generator {} has length {}", show(g), g.len()));
            } else if !g.is_nonnegative() {
                rep.fail("nonnegative", format!("{which} generator {}", show(g)));
            }
        }
        if dim > 0 && gens.is_empty() {
            rep.fail("spanning", format!("{which} is empty"));
        } else if let Some(i) = uncovered_coordinate(gens, dim) {
            rep.fail("spanning", format!("{which} vanishes on coordinate {}", space.index().label(i)));
        }
    }
    if !rep.passed() {
        // later checks assume well-formed generators
        if rep.violations.iter().any(|v| v.invariant != "spanning") {
            return rep;
        }
    }
    for p in space.p() {
        for q in space.q() {
            let v = dot(p, q);
            if v > crate::rational::one() {
                rep.fail("polarity", format!("<{}, {}> = {}", show(p), show(q), fmt_rat(&v)));
            }
        }
    }
    for (which, gens) in [("P", space.p()), ("Q", space.q())] {
        match dominated_generator(gens) {
            Ok(Some(g)) => rep.fail("antichain", format!("{which} generator {} is dominated", show(&g))),
            Ok(None) => {}
            Err(e) => rep.fail("antichain", e.to_string()),
        }
    }
    if rep.violations.iter().any(|v| v.invariant == "spanning") {
        return rep;
    }
    // Bipolarity: canonical P must be the polar vertex set of Q, and vice versa.
    for (which, gens, other) in [("P", space.p(), space.q()), ("Q", space.q(), space.p())] {
        let expected = match polar_vertices(other, dim) {
            Ok(v) => v,
            Err(e) => {
                rep.fail("bipolarity", e.to_string());
                continue;
            }
        };
        let have = canonicalize(gens).unwrap_or_default();
        if have != expected {
            let witness = expected
                .iter()
                .find(|v| !have.contains(v))
                .or_else(|| have.iter().find(|v| !expected.contains(v)))
                .map(|c| {
                    let lp = support_lp(other, c).ok().flatten();
                    format!(
                        "direction {}: generator max {} vs LP {}",
                        show(c),
                        fmt_rat(&generator_max(gens, c)),
                        lp.map(|x| fmt_rat(&x)).unwrap_or_else(|| "unbounded".into())
                    )
                })
                .unwrap_or_default();
            rep.fail("bipolarity", format!("{which}: {witness}"));
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn idx(n: usize) -> IndexSet {
        IndexSet::numbered("i", n)
    }

    #[test]
    fn norm_examples() {
        let sup = PolytopeSpace::sup_norm(idx(2));
        let sum = PolytopeSpace::sum_norm(idx(2));
        let a = Sequence::from_ints(&[3, -4]);
        assert_eq!(sup.norm(&a).unwrap(), rat(4));
        assert_eq!(sum.norm(&a).unwrap(), rat(7));
        assert_eq!(sup.norm(&Sequence::zeros(2)).unwrap(), rat(0));
        assert_eq!(sup.dual_norm(&Sequence::from_ints(&[1, 1])).unwrap(), rat(2));
        assert_eq!(sum.dual_norm(&a).unwrap(), rat(4));
        assert_eq!(sum.dual_norm(&Sequence::zeros(2)).unwrap(), rat(0));
    }

    #[test]
    fn norm_rejects_degenerate_q() {
        let s = PolytopeSpace::from_parts(
            idx(2),
            vec![Sequence::from_ints(&[1, 1])],
            vec![Sequence::from_ints(&[1, 0])],
            "bad",
        );
        assert!(matches!(s.norm(&Sequence::from_ints(&[0, 1])), Err(Error::InvalidSpace(_))));
        assert!(matches!(s.norm(&Sequence::zeros(3)), Err(Error::IndexMismatch { .. })));
    }

    #[test]
    fn from_q_matches_sup_norm() {
        let s = PolytopeSpace::from_q(idx(2), vec![Sequence::basis(2, 0), Sequence::basis(2, 1)], "sup").unwrap();
        assert_eq!(s, PolytopeSpace::sup_norm(idx(2)));
    }

    #[test]
    fn validate_examples() {
        assert!(validate(&PolytopeSpace::sup_norm(idx(2))).passed());

        let bad = PolytopeSpace::from_parts(idx(2), vec![Sequence::from_ints(&[2, 0])], vec![Sequence::basis(2, 0)], "bad");
        let rep = validate(&bad);
        let kinds: Vec<_> = rep.violations.iter().map(|v| v.invariant).collect();
        assert!(kinds.contains(&"spanning"));
        assert!(kinds.contains(&"polarity"));

        let dom = PolytopeSpace::from_parts(
            idx(2),
            vec![
                Sequence::basis(2, 0),
                Sequence::basis(2, 1),
                Sequence(vec![ratio(1, 2), ratio(1, 2)]),
            ],
            vec![Sequence::from_ints(&[1, 1])],
            "dominated",
        );
        let rep = validate(&dom);
        assert!(rep
            .violations
            .iter()
            .any(|v| v.invariant == "antichain" && v.witness.contains("1/2")));
    }

    #[test]
    fn validate_catches_missing_vertex() {
        // P misses (1,1): polarity holds but the balls are not polar to each other
        let s = PolytopeSpace::from_parts(
            idx(2),
            vec![Sequence::from_ints(&[1, 0])],
            vec![Sequence::basis(2, 0), Sequence::basis(2, 1)],
            "x",
        );
        let rep = validate(&s);
        assert!(rep
            .violations
            .iter()
            .any(|v| v.invariant == "bipolarity" || v.invariant == "spanning"));
    }

    #[test]
    fn json_round_trip() {
        let s = PolytopeSpace::from_q(
            idx(3),
            vec![Sequence(vec![ratio(1, 3), rat(1), rat(0)]), Sequence::from_ints(&[1, 0, 2])],
            "t",
        )
        .unwrap();
        let text = serde_json::to_string(&s.to_json()).unwrap();
        let back = PolytopeSpace::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.name, "t");
    }
}
