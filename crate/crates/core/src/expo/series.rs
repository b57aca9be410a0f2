//! Finitely supported power series keyed by multisets, truncated at a degree
//! cap, and the structure maps of the exponential.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::index::{IndexSet, Label};
use crate::rational::{fmt_rat, parse_rat, Rat};
use crate::regmap::MatrixRep;
use crate::seq::Sequence;

/// Atoms a multiset can be built from. Base coordinates have degree one;
/// a multiset has the sum of its members' degrees.
pub trait Key: Ord + Clone + Debug {
    fn degree(&self) -> usize;
}

impl Key for usize {
    fn degree(&self) -> usize {
        1
    }
}

impl<K: Key> Key for Vec<K> {
    fn degree(&self) -> usize {
        self.iter().map(Key::degree).sum()
    }
}

/// Sorted list of base coordinates.
pub type MultiIndex = Vec<usize>;

/// `Σ_μ c_μ x^μ` with `μ` ranging over multisets of `K`, all of degree `≤ cap`.
/// `dim` is the size of the underlying base index set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series<K: Key> {
    dim: usize,
    cap: usize,
    coeffs: BTreeMap<Vec<K>, Rat>,
}

/// Elements of `?A` (or `!A`) in the monomial basis.
pub type GradedCoeffs = Series<usize>;

impl<K: Key> Series<K> {
    pub fn zero(dim: usize, cap: usize) -> Self {
        Series {
            dim,
            cap,
            coeffs: BTreeMap::new(),
        }
    }

    /// Terms above the cap are rejected.
    pub fn from_terms(dim: usize, cap: usize, terms: impl IntoIterator<Item = (Vec<K>, Rat)>) -> Result<Self> {
        let mut s = Series::zero(dim, cap);
        for (k, c) in terms {
            let deg = k.degree();
            if deg > cap {
                return Err(Error::CapMismatch(format!("term {k:?} has degree {deg} above cap {cap}")));
            }
            s.accumulate(k, c);
        }
        Ok(s)
    }

    /// Adds `c` at `key` (sorted first); terms above the cap are dropped.
    pub fn accumulate(&mut self, mut key: Vec<K>, c: Rat) {
        if c.is_zero() || key.degree() > self.cap {
            return;
        }
        key.sort();
        let e = self.coeffs.entry(key.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn coeff(&self, key: &[K]) -> Rat {
        let mut k = key.to_vec();
        k.sort();
        self.coeffs.get(&k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<K>, &Rat)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest degree carrying a nonzero coefficient.
    pub fn degree(&self) -> usize {
        self.coeffs.keys().map(Key::degree).max().unwrap_or(0)
    }

    pub fn truncate(&self, cap: usize) -> Self {
        Series {
            dim: self.dim,
            cap,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| k.degree() <= cap)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn homogeneous(&self, k: usize) -> Self {
        Series {
            dim: self.dim,
            cap: self.cap,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, v)| (m.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&Rat) -> Rat) -> Self {
        let mut out = Series::zero(self.dim, self.cap);
        for (k, v) in &self.coeffs {
            out.accumulate(k.clone(), f(v));
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        self.map_coeffs(|v| v * c)
    }

    pub fn abs(&self) -> Self {
        self.map_coeffs(Signed::abs)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.accumulate(k.clone(), v.clone());
        }
        Ok(out)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.cap != other.cap {
            return Err(Error::CapMismatch(format!("caps {} and {}", self.cap, other.cap)));
        }
        if self.dim != other.dim {
            return Err(Error::IndexMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    /// Graded pairing `Σ_μ a_μ b_μ`.
    pub fn pair(&self, other: &Self) -> Result<Rat> {
        self.check_compatible(other)?;
        Ok(self.coeffs.iter().filter_map(|(k, v)| other.coeffs.get(k).map(|w| v * w)).sum())
    }

    /// `Σ_μ c_μ Π_{k∈μ} y(k)`.
    pub fn eval_with(&self, y: impl Fn(&K) -> Rat) -> Rat {
        let mut cache: BTreeMap<&K, Rat> = BTreeMap::new();
        let mut total = Rat::zero();
        for (key, c) in &self.coeffs {
            let mut term = c.clone();
            for k in key {
                let v = cache.entry(k).or_insert_with(|| y(k));
                term *= &*v;
                if term.is_zero() {
                    break;
                }
            }
            total += term;
        }
        total
    }

    /// First key (in canonical order) where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<(Vec<K>, Rat, Rat)> {
        let keys: std::collections::BTreeSet<&Vec<K>> = self.coeffs.keys().chain(other.coeffs.keys()).collect();
        keys.into_iter().find_map(|k| {
            let (a, b) = (self.coeff(k), other.coeff(k));
            (a != b).then(|| (k.clone(), a, b))
        })
    }
}

/// `x^μ`.
pub fn monomial(x: &Sequence, mu: &[usize]) -> Rat {
    mu.iter().fold(Rat::one(), |acc, &i| acc * &x[i])
}

/// All multisets on `0..dim` of size at most `max_degree`, by degree then
/// lexicographically.
pub fn all_multisets(dim: usize, max_degree: usize) -> Vec<MultiIndex> {
    let mut out = vec![vec![]];
    let mut layer: Vec<MultiIndex> = vec![vec![]];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for m in &layer {
            let start = m.last().copied().unwrap_or(0);
            for i in start..dim {
                let mut m2 = m.clone();
                m2.push(i);
                next.push(m2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

impl GradedCoeffs {
    pub fn check_index(&self) -> Result<()> {
        match self.coeffs.keys().flatten().find(|&&i| i >= self.dim) {
            Some(&i) => Err(Error::OutOfRange(format!("coordinate {i} outside dimension {}", self.dim))),
            None => Ok(()),
        }
    }

    pub fn eval(&self, x: &Sequence) -> Result<Rat> {
        x.check_len(self.dim)?;
        Ok(self.eval_with(|&i| x[i].clone()))
    }

    /// `Σ |c_μ| |x|^μ`.
    pub fn eval_abs(&self, x: &Sequence) -> Result<Rat> {
        self.abs().eval(&x.abs())
    }

    pub fn to_json(&self, index: &IndexSet, base: &str) -> Value {
        let coeffs: Vec<Value> = self
            .coeffs
            .iter()
            .map(|(k, v)| {
                let labels: Vec<Value> = k.iter().map(|&i| index.label(i).to_json()).collect();
                json!([labels, fmt_rat(v)])
            })
            .collect();
        json!({ "base": base, "degree": self.cap, "coeffs": coeffs })
    }

    pub fn from_json(v: &Value, index: &IndexSet) -> Result<Self> {
        let cap = v
            .get("degree")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Json("series needs an integer `degree`".into()))? as usize;
        let rows = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("series needs a `coeffs` array".into()))?;
        let mut terms = Vec::with_capacity(rows.len());
        for row in rows {
            let pair = row
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::Json("each coefficient is [multiset, rational]".into()))?;
            let labels = pair[0]
                .as_array()
                .ok_or_else(|| Error::Json("multiset must be an array of labels".into()))?;
            let key = labels
                .iter()
                .map(|l| {
                    let l = Label::from_json(l)?;
                    index.position(&l).ok_or_else(|| Error::Json(format!("unknown label {l}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let c = match &pair[1] {
                Value::String(s) => parse_rat(s)?,
                Value::Number(n) => parse_rat(&n.to_string())?,
                other => return Err(Error::Json(format!("bad coefficient {other}"))),
            };
            terms.push((key, c));
        }
        Series::from_terms(index.len(), cap, terms)
    }
}

/// The constant series `t`.
pub fn unit_u(t: Rat, dim: usize, cap: usize) -> GradedCoeffs {
    let mut s = Series::zero(dim, cap);
    s.accumulate(vec![], t);
    s
}

/// The linear series `x ↦ ⟨a, x⟩`.
pub fn eta(a: &Sequence, cap: usize) -> GradedCoeffs {
    let mut s = Series::zero(a.len(), cap);
    for (i, ai) in a.entries().iter().enumerate() {
        s.accumulate(vec![i], ai.clone());
    }
    s
}

/// `(δ_x)_μ = x^μ` for `|μ| ≤ cap`.
pub fn delta(x: &Sequence, cap: usize) -> GradedCoeffs {
    let mut s = Series::zero(x.len(), cap);
    for mu in all_multisets(x.len(), cap) {
        let v = monomial(x, &mu);
        s.accumulate(mu, v);
    }
    s
}

/// `η` one level up: `f ↦` the linear series on `?A` with coefficient `c_μ` at `{μ}`.
pub fn eta_series<K: Key>(f: &Series<K>) -> Series<Vec<K>> {
    let mut s = Series::zero(f.dim, f.cap);
    for (k, v) in &f.coeffs {
        s.accumulate(vec![k.clone()], v.clone());
    }
    s
}

/// Digging: `(μ h)_ρ = Σ_{⊎M = ρ} h_M`.
pub fn mu<K: Key>(h: &Series<Vec<K>>) -> Series<K> {
    let mut s = Series::zero(h.dim, h.cap);
    for (m, v) in &h.coeffs {
        s.accumulate(m.iter().flatten().cloned().collect(), v.clone());
    }
    s
}

/// `f ↦ f ∘ T` where `T` substitutes `Σ_{(k', a) ∈ row(k)} a·y_{k'}` for each variable `k`.
pub fn lift<K: Key, K2: Key>(f: &Series<K>, dim: usize, row: impl Fn(&K) -> Vec<(K2, Rat)>) -> Series<K2> {
    let mut rows: BTreeMap<&K, Vec<(K2, Rat)>> = BTreeMap::new();
    let mut out = Series::zero(dim, f.cap);
    for (key, c) in &f.coeffs {
        let mut partial: BTreeMap<Vec<K2>, Rat> = BTreeMap::from([(vec![], c.clone())]);
        for k in key {
            let r = rows.entry(k).or_insert_with(|| row(k));
            let mut next: BTreeMap<Vec<K2>, Rat> = BTreeMap::new();
            for (m, v) in &partial {
                for (k2, a) in r.iter() {
                    let mut m2 = m.clone();
                    let pos = m2.partition_point(|x| x <= k2);
                    m2.insert(pos, k2.clone());
                    *next.entry(m2).or_insert_with(Rat::zero) += v * a;
                }
            }
            next.retain(|_, v| !v.is_zero());
            partial = next;
        }
        for (m, v) in partial {
            out.accumulate(m, v);
        }
    }
    out
}

/// `?L f = f ∘ L*` for `L: A → B`.
pub fn lift_matrix(l: &MatrixRep, f: &GradedCoeffs) -> Result<GradedCoeffs> {
    if f.dim != l.n_rows() {
        return Err(Error::IndexMismatch {
            expected: l.n_rows(),
            found: f.dim,
        });
    }
    Ok(lift(f, l.n_cols(), |&i| {
        (0..l.n_cols())
            .filter(|&j| !l.get(i, j).is_zero())
            .map(|j| (j, l.get(i, j).clone()))
            .collect()
    }))
}

/// `?η`, the lift of `η_A : A → ?A`.
pub fn lift_eta<K: Key>(f: &Series<K>) -> Series<Vec<K>> {
    lift(f, f.dim, |k| vec![(vec![k.clone()], Rat::one())])
}

/// `?μ`, the lift of `μ_A : ??A → ?A`.
pub fn lift_mu<K: Key>(h: &Series<Vec<Vec<K>>>) -> Series<Vec<K>> {
    lift(h, h.dim, |m: &Vec<Vec<K>>| {
        let mut flat: Vec<K> = m.iter().flatten().cloned().collect();
        flat.sort();
        vec![(flat, Rat::one())]
    })
}

/// `??L`: the lift of `?L` to series over `?A`.
pub fn lift_lift_matrix(l: &MatrixRep, h: &Series<MultiIndex>) -> Result<Series<MultiIndex>> {
    if h.dim != l.n_rows() {
        return Err(Error::IndexMismatch {
            expected: l.n_rows(),
            found: h.dim,
        });
    }
    let cap = h.cap;
    Ok(lift(h, l.n_cols(), |m: &MultiIndex| {
        let mono = Series::from_terms(l.n_rows(), cap, [(m.clone(), Rat::one())]).expect("degree within cap");
        let image = lift_matrix(l, &mono).expect("shape checked");
        image.coeffs.into_iter().collect()
    }))
}

/// Series in several independent sets of variables `x_1, …, x_r`, each
/// slot capped at `cap`; keys are one multi-index per slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiSeries {
    dim: usize,
    cap: usize,
    arity: usize,
    coeffs: BTreeMap<Vec<MultiIndex>, Rat>,
}

impl MultiSeries {
    pub fn from_terms(dim: usize, cap: usize, arity: usize, terms: impl IntoIterator<Item = (Vec<MultiIndex>, Rat)>) -> Result<Self> {
        let mut s = MultiSeries {
            dim,
            cap,
            arity,
            coeffs: BTreeMap::new(),
        };
        for (mut k, c) in terms {
            if k.len() != arity {
                return Err(Error::ShapeMismatch(format!("key with {} slots for arity {arity}", k.len())));
            }
            if k.iter().any(|m| m.len() > cap) {
                return Err(Error::CapMismatch(format!("slot above cap {cap}")));
            }
            k.iter_mut().for_each(|m| m.sort());
            s.add(k, c);
        }
        Ok(s)
    }

    fn add(&mut self, k: Vec<MultiIndex>, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    /// `f_1(x_1) ⋯ f_r(x_r)`.
    pub fn tensor(fs: &[&GradedCoeffs]) -> Result<Self> {
        let first = fs.first().ok_or_else(|| Error::ShapeMismatch("empty tensor".into()))?;
        let (dim, cap) = (first.dim, first.cap);
        if let Some(f) = fs.iter().find(|f| f.cap != cap || f.dim != dim) {
            return Err(Error::CapMismatch(format!(
                "factor with dim {} cap {} against dim {dim} cap {cap}",
                f.dim, f.cap
            )));
        }
        let mut acc: BTreeMap<Vec<MultiIndex>, Rat> = BTreeMap::from([(vec![], Rat::one())]);
        for f in fs {
            let mut next = BTreeMap::new();
            for (k, v) in &acc {
                for (m, c) in &f.coeffs {
                    let mut k2 = k.clone();
                    k2.push(m.clone());
                    next.insert(k2, v * c);
                }
            }
            acc = next;
        }
        Ok(MultiSeries {
            dim,
            cap,
            arity: fs.len(),
            coeffs: acc,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<MultiIndex>, &Rat)> {
        self.coeffs.iter()
    }

    /// Identifies slots `i` and `i + 1` (contraction); degrees above the cap drop.
    pub fn merge(&self, i: usize) -> Result<Self> {
        if i + 1 >= self.arity {
            return Err(Error::OutOfRange(format!("cannot merge slot {i} of {}", self.arity)));
        }
        let mut out = MultiSeries {
            dim: self.dim,
            cap: self.cap,
            arity: self.arity - 1,
            coeffs: BTreeMap::new(),
        };
        for (k, v) in &self.coeffs {
            if k[i].len() + k[i + 1].len() > self.cap {
                continue;
            }
            let mut merged = k[i].clone();
            merged.extend(k[i + 1].iter().copied());
            merged.sort();
            let mut k2 = k.clone();
            k2.splice(i..i + 2, [merged]);
            out.add(k2, v.clone());
        }
        Ok(out)
    }

    pub fn swap(&self, i: usize) -> Result<Self> {
        if i + 1 >= self.arity {
            return Err(Error::OutOfRange(format!("cannot swap slot {i} of {}", self.arity)));
        }
        let mut out = MultiSeries {
            coeffs: BTreeMap::new(),
            ..self.clone()
        };
        for (k, v) in &self.coeffs {
            let mut k2 = k.clone();
            k2.swap(i, i + 1);
            out.add(k2, v.clone());
        }
        Ok(out)
    }

    pub fn into_series(self) -> Result<GradedCoeffs> {
        if self.arity != 1 {
            return Err(Error::ShapeMismatch(format!("arity {} is not 1", self.arity)));
        }
        let mut s = Series::zero(self.dim, self.cap);
        for (mut k, v) in self.coeffs {
            s.accumulate(k.pop().expect("one slot"), v);
        }
        Ok(s)
    }
}

/// Contraction `m`: `(m g)_ρ = Σ_{μ⊎ν=ρ} g_{μ,ν}`.
pub fn mult_m(g: &MultiSeries) -> Result<GradedCoeffs> {
    if g.arity != 2 {
        return Err(Error::ShapeMismatch(format!("m expects two slots, got {}", g.arity)));
    }
    g.merge(0)?.into_series()
}
