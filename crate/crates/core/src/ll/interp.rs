//! Compilation of formulas to spaces and of proofs to tensors of the model.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::connectives;
use crate::error::{Error, Result};
use crate::expo::bang::{ball_points, level_rows};
use crate::expo::series::{all_multisets, monomial};
use crate::guard::{check, Guards};
use crate::index::{IndexSet, Label};
use crate::polar::polar_vertices_capped;
use crate::rational::Rat;
use crate::regmap::MatrixRep;
use crate::seq::Sequence;
use crate::space::PolytopeSpace;

use super::formula::{fmt_sequent, Formula};
use super::proof::{active, conclusion, Proof, Rule};

/// Atom name to space.
#[derive(Clone, Debug, Default)]
pub struct Bindings {
    spaces: BTreeMap<String, PolytopeSpace>,
}

impl Bindings {
    pub fn new() -> Self {
        Bindings::default()
    }

    pub fn insert(&mut self, name: &str, space: PolytopeSpace) {
        self.spaces.insert(name.to_string(), space);
    }

    pub fn get(&self, name: &str) -> Result<&PolytopeSpace> {
        self.spaces.get(name).ok_or_else(|| Error::UnboundAtom(name.to_string()))
    }

    /// `{"A": <space JSON> | "relative/path.json", ...}`.
    pub fn from_json(v: &Value, base_dir: Option<&Path>) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Json("bindings must be an object".into()))?;
        let mut b = Bindings::new();
        for (name, entry) in obj {
            let space = match entry {
                Value::String(path) => {
                    let full = base_dir.map_or_else(|| Path::new(path).to_path_buf(), |d| d.join(path));
                    let text = std::fs::read_to_string(&full).map_err(|e| Error::Json(format!("{}: {e}", full.display())))?;
                    PolytopeSpace::from_json(&serde_json::from_str(&text)?)?
                }
                other => PolytopeSpace::from_json(other)?,
            };
            b.insert(name, space);
        }
        Ok(b)
    }
}

/// The space a formula denotes: a polytope space for exponential-free
/// formulas, otherwise the index set of the degree-truncated graded space.
#[derive(Clone, Debug)]
pub enum CompiledSpace {
    Polytope(PolytopeSpace),
    Graded { index: IndexSet, cap: usize },
}

impl CompiledSpace {
    pub fn index(&self) -> &IndexSet {
        match self {
            CompiledSpace::Polytope(s) => s.index(),
            CompiledSpace::Graded { index, .. } => index,
        }
    }
}

pub struct Env<'a> {
    pub bindings: &'a Bindings,
    pub cap: usize,
    pub guards: Guards,
    indices: RefCell<HashMap<Formula, IndexSet>>,
    spaces: RefCell<HashMap<Formula, PolytopeSpace>>,
}

impl<'a> Env<'a> {
    pub fn new(bindings: &'a Bindings, cap: usize, guards: Guards) -> Self {
        Env {
            bindings,
            cap,
            guards,
            indices: RefCell::default(),
            spaces: RefCell::default(),
        }
    }

    pub fn index_of(&self, f: &Formula) -> Result<IndexSet> {
        if let Some(i) = self.indices.borrow().get(f) {
            return Ok(i.clone());
        }
        let idx = match f {
            Formula::Atom(s) => self.bindings.get(s)?.index().clone(),
            Formula::Dual(a) => self.index_of(a)?,
            Formula::Tensor(a, b) | Formula::Par(a, b) => IndexSet::product(&self.index_of(a)?, &self.index_of(b)?),
            Formula::With(a, b) | Formula::Plus(a, b) => IndexSet::disjoint_union(&self.index_of(a)?, &self.index_of(b)?),
            Formula::One | Formula::Bot => IndexSet::unit(),
            Formula::Zero | Formula::Top => IndexSet::empty(),
            Formula::Bang(a) | Formula::Quest(a) => {
                let base = self.index_of(a)?;
                let count = crate::rational::binomial(base.len() + self.cap, self.cap);
                let size = usize::try_from(count).unwrap_or(usize::MAX);
                check("index_size", size, self.guards.index_size)?;
                let labels = all_multisets(base.len(), self.cap)
                    .into_iter()
                    .map(|m| Label::multiset(m.into_iter().map(|i| base.label(i).clone()).collect()))
                    .collect();
                IndexSet::new(labels)?
            }
        };
        check("index_size", idx.len(), self.guards.index_size)?;
        self.indices.borrow_mut().insert(f.clone(), idx.clone());
        Ok(idx)
    }

    /// The polytope space of an exponential-free formula.
    pub fn polytope_of(&self, f: &Formula) -> Result<PolytopeSpace> {
        if let Some(s) = self.spaces.borrow().get(f) {
            return Ok(s.clone());
        }
        let g = &self.guards;
        let s = match f {
            Formula::Atom(name) => self.bindings.get(name)?.clone(),
            Formula::Dual(a) => self.polytope_of(a)?.dual(),
            Formula::Tensor(a, b) => connectives::tensor(&self.polytope_of(a)?, &self.polytope_of(b)?, g)?,
            Formula::Par(a, b) => connectives::cotensor(&self.polytope_of(a)?, &self.polytope_of(b)?, g)?,
            Formula::With(a, b) => connectives::product(&self.polytope_of(a)?, &self.polytope_of(b)?, g)?,
            Formula::Plus(a, b) => connectives::coproduct(&self.polytope_of(a)?, &self.polytope_of(b)?, g)?,
            Formula::One | Formula::Bot => connectives::unit(),
            Formula::Zero | Formula::Top => connectives::zero(),
            Formula::Bang(_) | Formula::Quest(_) => {
                return Err(Error::Unsupported(format!("{f} is not a polytope space")));
            }
        };
        self.spaces.borrow_mut().insert(f.clone(), s.clone());
        Ok(s)
    }

    pub fn space_of(&self, f: &Formula) -> Result<CompiledSpace> {
        let f = f.normalize();
        if f.is_exponential_free() {
            Ok(CompiledSpace::Polytope(self.polytope_of(&f)?))
        } else {
            Ok(CompiledSpace::Graded {
                index: self.index_of(&f)?,
                cap: self.cap,
            })
        }
    }
}

/// A proof of `⊢ A_1, …, A_m` as a sparse tensor on the slot index sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interpretation {
    pub sequent: Vec<Formula>,
    pub slots: Vec<IndexSet>,
    pub entries: BTreeMap<Vec<usize>, Rat>,
}

impl Interpretation {
    fn new(sequent: Vec<Formula>, slots: Vec<IndexSet>) -> Self {
        Interpretation {
            sequent,
            slots,
            entries: BTreeMap::new(),
        }
    }

    fn add(&mut self, key: Vec<usize>, v: Rat) {
        if v.is_zero() {
            return;
        }
        let e = self.entries.entry(key.clone()).or_insert_with(Rat::zero);
        *e += v;
        if e.is_zero() {
            self.entries.remove(&key);
        }
    }

    pub fn get(&self, key: &[usize]) -> Rat {
        self.entries.get(key).cloned().unwrap_or_else(Rat::zero)
    }

    /// Entries keyed by slot labels.
    pub fn labeled(&self) -> BTreeMap<Vec<Label>, Rat> {
        self.entries
            .iter()
            .map(|(k, v)| {
                (
                    k.iter().enumerate().map(|(j, &i)| self.slots[j].label(i).clone()).collect(),
                    v.clone(),
                )
            })
            .collect()
    }

    /// Entries of `self` whose labels all exist in the slots of `smaller`.
    pub fn restricted_to(&self, smaller: &Interpretation) -> BTreeMap<Vec<Label>, Rat> {
        self.labeled()
            .into_iter()
            .filter(|(k, _)| k.iter().zip(&smaller.slots).all(|(l, s)| s.position(l).is_some()))
            .collect()
    }

    /// Rows: the first `m − 1` slots (nested pairs); columns: the last slot.
    pub fn to_matrix(&self) -> Result<MatrixRep> {
        let m = self.slots.len();
        let (row_slots, col) = if m == 0 {
            (&self.slots[..], IndexSet::unit())
        } else {
            (&self.slots[..m - 1], self.slots[m - 1].clone())
        };
        let rows = row_slots
            .iter()
            .skip(1)
            .fold(row_slots.first().cloned().unwrap_or_else(IndexSet::unit), |acc, s| {
                IndexSet::product(&acc, s)
            });
        let mut mat = MatrixRep::zero(rows, col);
        for (k, v) in &self.entries {
            let (r, c) = if m == 0 {
                (0, 0)
            } else {
                let r = k[..m - 1].iter().zip(row_slots).fold(0usize, |acc, (&i, s)| acc * s.len() + i);
                (r, k[m - 1])
            };
            mat.set(r, c, v.clone());
        }
        Ok(mat)
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .labeled()
            .into_iter()
            .map(|(k, v)| serde_json::json!([k.iter().map(Label::to_json).collect::<Vec<_>>(), crate::rational::fmt_rat(&v)]))
            .collect();
        serde_json::json!({
            "sequent": fmt_sequent(&self.sequent),
            "slots": self.slots.iter().map(IndexSet::to_json).collect::<Vec<_>>(),
            "entries": entries,
        })
    }
}

fn items(l: &Label) -> &[Label] {
    match l {
        Label::Multiset(v) => v,
        _ => &[],
    }
}

fn position(slot: &IndexSet, l: &Label) -> Result<usize> {
    slot.position(l)
        .ok_or_else(|| Error::OutOfRange(format!("label {l} missing from its slot")))
}

pub fn interpret(p: &Proof, env: &Env<'_>) -> Result<Interpretation> {
    let prem: Vec<Interpretation> = p.premises.iter().map(|q| interpret(q, env)).collect::<Result<_>>()?;
    let seq = conclusion(p)?;
    let slots = seq.iter().map(|f| env.index_of(f)).collect::<Result<Vec<_>>>()?;
    let mut out = Interpretation::new(seq, slots);
    let prem_seqs: Vec<Vec<Formula>> = prem.iter().map(|t| t.sequent.clone()).collect();
    let a = active(p, &prem_seqs)?;
    let (k, l) = (a.k, a.l);
    match p.rule {
        Rule::Ax => {
            for i in 0..out.slots[0].len() {
                out.add(vec![i, i], Rat::one());
            }
        }
        Rule::Cut => {
            let mut by_a: BTreeMap<usize, Vec<(Vec<usize>, &Rat)>> = BTreeMap::new();
            for (key, v) in &prem[1].entries {
                let mut rest = key.clone();
                let x = rest.remove(l);
                by_a.entry(x).or_default().push((rest, v));
            }
            for (key, v) in &prem[0].entries {
                let mut g = key.clone();
                let x = g.remove(k);
                for (d, w) in by_a.get(&x).into_iter().flatten() {
                    let mut key2 = g.clone();
                    key2.extend(d);
                    out.add(key2, v * *w);
                }
            }
        }
        Rule::Ex => {
            let perm = p.perm.as_ref().expect("checked");
            for (key, v) in &prem[0].entries {
                out.add(perm.iter().map(|&i| key[i]).collect(), v.clone());
            }
        }
        Rule::Tensor => {
            let nb = prem[1].slots[l].len();
            for (k1, v) in &prem[0].entries {
                for (k2, w) in &prem[1].entries {
                    let mut key = k1.clone();
                    key[k] = k1[k] * nb + k2[l];
                    key.extend(k2.iter().enumerate().filter(|(j, _)| *j != l).map(|(_, &i)| i));
                    out.add(key, v * w);
                }
            }
        }
        Rule::Par => {
            let nb = prem[0].slots[l].len();
            for (key, v) in &prem[0].entries {
                let mut key2 = key.clone();
                let merged = key[k] * nb + key[l];
                key2.splice(k..=l, [merged]);
                out.add(key2, v.clone());
            }
        }
        Rule::One => out.add(vec![0], Rat::one()),
        Rule::Bot | Rule::Weaken => {
            let unit_pos = match p.rule {
                Rule::Bot => 0,
                _ => position(out.slots.last().expect("appended"), &Label::Multiset(vec![]))?,
            };
            for (key, v) in &prem[0].entries {
                let mut key2 = key.clone();
                key2.push(unit_pos);
                out.add(key2, v.clone());
            }
        }
        Rule::With => {
            let na = prem[0].slots[k].len();
            for (side, t) in prem.iter().enumerate() {
                for (key, v) in &t.entries {
                    let mut key2 = key.clone();
                    key2[k] = key[k] + side * na;
                    out.add(key2, v.clone());
                }
            }
        }
        Rule::Plus1 | Rule::Plus2 => {
            let shift = if p.rule == Rule::Plus2 {
                out.slots[k].len() - prem[0].slots[k].len()
            } else {
                0
            };
            for (key, v) in &prem[0].entries {
                let mut key2 = key.clone();
                key2[k] += shift;
                out.add(key2, v.clone());
            }
        }
        Rule::Top => {}
        Rule::Contract => {
            let src = &prem[0].slots[k];
            for (key, v) in &prem[0].entries {
                let mut joined = items(src.label(key[k])).to_vec();
                joined.extend_from_slice(items(src.label(key[l])));
                if joined.len() > env.cap {
                    continue;
                }
                let mut key2 = key.clone();
                key2.remove(l);
                key2[k] = position(&out.slots[k], &Label::multiset(joined))?;
                out.add(key2, v.clone());
            }
        }
        Rule::Derelict => {
            if env.cap == 0 {
                return Ok(out);
            }
            let src = &prem[0].slots[k];
            for (key, v) in &prem[0].entries {
                let mut key2 = key.clone();
                key2[k] = position(&out.slots[k], &Label::multiset(vec![src.label(key[k]).clone()]))?;
                out.add(key2, v.clone());
            }
        }
        Rule::Promote => promote(&prem[0], k, env.cap, &mut out)?,
    }
    Ok(out)
}

/// `t'(μ⃗, ν) = [y^{μ⃗}] Π_{a∈ν} F_a(y)` with `F_a(y) = Σ_{μ⃗} t(μ⃗, a) y^{μ⃗}`.
fn promote(t: &Interpretation, k: usize, cap: usize, out: &mut Interpretation) -> Result<()> {
    type Key = Vec<Vec<Label>>;
    let m = t.slots.len();
    let ctx: Vec<usize> = (0..m).filter(|&j| j != k).collect();
    let mut f: BTreeMap<usize, BTreeMap<Key, Rat>> = BTreeMap::new();
    for (key, v) in &t.entries {
        let mu: Key = ctx.iter().map(|&j| items(t.slots[j].label(key[j])).to_vec()).collect();
        *f.entry(key[k]).or_default().entry(mu).or_insert_with(Rat::zero) += v;
    }
    let base = &t.slots[k];
    let target = out.slots[k].clone();
    for (nu_pos, nu) in target.labels().iter().enumerate() {
        let mut acc: BTreeMap<Key, Rat> = BTreeMap::from([(vec![vec![]; ctx.len()], Rat::one())]);
        for a in items(nu) {
            let fa = match f.get(&position(base, a)?) {
                Some(fa) => fa,
                None => {
                    acc.clear();
                    break;
                }
            };
            let mut next: BTreeMap<Key, Rat> = BTreeMap::new();
            for (k1, v1) in &acc {
                for (k2, v2) in fa {
                    if k1.iter().zip(k2).any(|(x, y)| x.len() + y.len() > cap) {
                        continue;
                    }
                    let merged: Key = k1.iter().zip(k2).map(|(x, y)| x.iter().chain(y).cloned().collect()).collect();
                    *next.entry(merged).or_insert_with(Rat::zero) += v1 * v2;
                }
            }
            acc = next;
        }
        for (mu, v) in acc {
            let mut key = vec![0usize; m];
            key[k] = nu_pos;
            for (c, &j) in ctx.iter().enumerate() {
                key[j] = position(&out.slots[j], &Label::multiset(mu[c].clone()))?;
            }
            out.add(key, v);
        }
    }
    Ok(())
}

/// Upper bound on the norm of an interpretation in `⅋Γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismBound {
    pub upper: Rat,
    /// True when every slot is exponential-free, so the bound is the norm.
    pub exact: bool,
}

/// Dense vectors `S` on the slot with `‖f‖ ≤ max_{s∈S} ⟨|f|, s⟩` for every `f`.
fn bounding_set(f: &Formula, slot: &IndexSet, env: &Env<'_>, level: usize) -> Result<Vec<Vec<Rat>>> {
    if f.is_exponential_free() {
        return Ok(env.polytope_of(f)?.q().iter().map(|s| s.entries().to_vec()).collect());
    }
    let (x, is_quest) = match f {
        Formula::Quest(x) if x.is_exponential_free() => (x, true),
        Formula::Bang(x) if x.is_exponential_free() => (x, false),
        _ => {
            return Err(Error::Unsupported(format!(
                "norm bound for slot {f}: only ?X and !X with exponential-free X"
            )))
        }
    };
    let xs = env.polytope_of(x)?;
    let vars = all_multisets(xs.dim(), env.cap);
    let to_slot: Vec<usize> = vars
        .iter()
        .map(|m| position(slot, &Label::multiset(m.iter().map(|&i| xs.index().label(i).clone()).collect())))
        .collect::<Result<_>>()?;
    let scatter = |row: Vec<Rat>| {
        let mut dense = vec![Rat::zero(); slot.len()];
        for (v, &j) in row.into_iter().zip(&to_slot) {
            dense[j] = v;
        }
        dense
    };
    if is_quest {
        let rows = level_rows(&vars, xs.q(), xs.dim(), level.max(env.cap), &env.guards)?;
        Ok(rows.into_iter().map(scatter).collect())
    } else {
        let gens: Vec<Sequence> = ball_points(&xs)
            .iter()
            .map(|p| Sequence(vars.iter().map(|m| monomial(p, m)).collect()))
            .collect();
        let verts = polar_vertices_capped(&gens, vars.len(), env.guards.polar_vertices)?;
        Ok(verts.into_iter().map(|v| scatter(v.0)).collect())
    }
}

/// `max` over products of per-slot bounding vectors of `Σ |t| Π s_j`; ?-slots
/// use level-`level` weights, !-slots the vertices of a relaxation of the
/// dual ball.
pub fn morphism_bound(t: &Interpretation, env: &Env<'_>, level: usize) -> Result<MorphismBound> {
    let sets: Vec<Vec<Vec<Rat>>> = t
        .sequent
        .iter()
        .zip(&t.slots)
        .map(|(f, s)| bounding_set(f, s, env, level))
        .collect::<Result<_>>()?;
    let combos: usize = sets.iter().map(Vec::len).product();
    check(
        "tensor_entries",
        combos.saturating_mul(t.entries.len().max(1)),
        env.guards.tensor_entries,
    )?;
    let abs: Vec<(&Vec<usize>, Rat)> = t.entries.iter().map(|(k, v)| (k, v.abs())).collect();
    let mut best = Rat::zero();
    let mut choice = vec![0usize; sets.len()];
    'outer: loop {
        if sets.iter().all(|s| !s.is_empty()) {
            let v: Rat = abs
                .iter()
                .map(|(key, a)| {
                    key.iter().enumerate().fold(
                        a.clone(),
                        |acc, (j, &i)| if acc.is_zero() { acc } else { acc * &sets[j][choice[j]][i] },
                    )
                })
                .sum();
            if v > best {
                best = v;
            }
        } else {
            break;
        }
        for j in (0..sets.len()).rev() {
            choice[j] += 1;
            if choice[j] < sets[j].len() {
                continue 'outer;
            }
            choice[j] = 0;
        }
        break;
    }
    Ok(MorphismBound {
        upper: best,
        exact: t.sequent.iter().all(Formula::is_exponential_free),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ll::formula::parse_formula;
    use crate::ll::proof::parse_proof;
    use crate::rational::rat;

    fn bindings() -> Bindings {
        let mut b = Bindings::new();
        b.insert(
            "A",
            PolytopeSpace::from_q(
                IndexSet::numbered("a", 2),
                vec![Sequence::from_ints(&[2, 1]), Sequence::from_ints(&[1, 3])],
                "A",
            )
            .unwrap(),
        );
        b.insert("B", PolytopeSpace::sup_norm(IndexSet::numbered("b", 2)));
        b.insert("X", PolytopeSpace::sup_norm(IndexSet::numbered("x", 1)));
        b
    }

    fn run(src: &str, cap: usize) -> Interpretation {
        let b = bindings();
        let env = Env::new(&b, cap, Guards::default());
        interpret(&parse_proof(src).unwrap(), &env).unwrap()
    }

    #[test]
    fn axiom_and_cut_are_identities() {
        let id = MatrixRep::identity(IndexSet::numbered("a", 2));
        assert_eq!(run("(ax :formula \"A\")", 2).to_matrix().unwrap().entries(), id.entries());
        assert_eq!(
            run("(cut (ax :formula \"A\") (ax :formula \"A\"))", 2)
                .to_matrix()
                .unwrap()
                .entries(),
            id.entries()
        );
    }

    #[test]
    fn space_of_examples() {
        let b = bindings();
        let env = Env::new(&b, 2, Guards::default());
        let a = b.get("A").unwrap();
        let hom = connectives::hom(a, a, &Guards::default()).unwrap();
        let CompiledSpace::Polytope(s) = env.space_of(&parse_formula("A -o A").unwrap()).unwrap() else {
            panic!()
        };
        assert_eq!(s, hom);
        let CompiledSpace::Polytope(u) = env.space_of(&parse_formula("1").unwrap()).unwrap() else {
            panic!()
        };
        assert_eq!(u, connectives::unit());
        let CompiledSpace::Graded { index, .. } = env.space_of(&parse_formula("?X").unwrap()).unwrap() else {
            panic!()
        };
        let labels: Vec<String> = index.labels().iter().map(ToString::to_string).collect();
        assert_eq!(labels, ["[]", "[x0]", "[x0,x0]"]);
        assert!(matches!(env.space_of(&parse_formula("C").unwrap()), Err(Error::UnboundAtom(_))));
    }

    #[test]
    fn mall_bounds_are_at_most_one() {
        let b = bindings();
        let env = Env::new(&b, 2, Guards::default());
        for src in [
            "(ax :formula \"A\")",
            "(tensor (ax :formula \"A\") (ax :formula \"B\"))",
            "(with (ax :formula \"A\") (ax :formula \"A\"))",
            "(plus1 (ax :formula \"B\") :formula \"A\")",
        ] {
            let t = interpret(&parse_proof(src).unwrap(), &env).unwrap();
            let bound = morphism_bound(&t, &env, 4).unwrap();
            assert!(bound.exact && bound.upper == rat(1), "{src}: {bound:?}");
        }
    }

    #[test]
    fn exponential_rules() {
        let t = run("(promote (derelict (ax :formula \"X\") :principal 0))", 3);
        // identity on multisets of size ≤ 3
        assert_eq!(t.entries.len(), 4);
        assert!(t.entries.iter().all(|(k, v)| k[0] == k[1] && *v == rat(1)));
        let c = run(
            "(contract (ex (weaken (derelict (ax :formula \"X\") :principal 0) :formula \"?X^\") :perm (0 2 1)) :principal 0)",
            3,
        );
        assert_eq!(c.entries.len(), 1);
        let b = bindings();
        let env = Env::new(&b, 3, Guards::default());
        assert!(morphism_bound(&t, &env, 4).unwrap().upper <= rat(1));
        assert!(morphism_bound(&c, &env, 4).unwrap().upper <= rat(1));
    }
}
