//! Matrices as regular maps between polytope spaces.

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::index::IndexSet;
use crate::rational::{fmt_rat, Rat};
use crate::seq::{dot, Sequence};
use crate::space::{read_sequence, PolytopeSpace};

/// Dense matrix `M_{ij}` with `i` ranging over the domain (rows) and `j` over
/// the codomain (columns); `(M a)_j = Σ_i M_{ij} a_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRep {
    rows: IndexSet,
    cols: IndexSet,
    entries: Vec<Rat>,
}

impl MatrixRep {
    pub fn new(rows: IndexSet, cols: IndexSet, entries: Vec<Rat>) -> Result<Self> {
        if entries.len() != rows.len() * cols.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                rows.len(),
                cols.len()
            )));
        }
        Ok(MatrixRep { rows, cols, entries })
    }

    pub fn from_rows(rows: IndexSet, cols: IndexSet, data: Vec<Vec<Rat>>) -> Result<Self> {
        if data.len() != rows.len() || data.iter().any(|r| r.len() != cols.len()) {
            return Err(Error::ShapeMismatch("row data does not match index sets".into()));
        }
        MatrixRep::new(rows, cols, data.into_iter().flatten().collect())
    }

    pub fn zero(rows: IndexSet, cols: IndexSet) -> Self {
        let n = rows.len() * cols.len();
        MatrixRep {
            rows,
            cols,
            entries: vec![Rat::zero(); n],
        }
    }

    pub fn identity(index: IndexSet) -> Self {
        let n = index.len();
        let mut m = MatrixRep::zero(index.clone(), index);
        for i in 0..n {
            m.entries[i * n + i] = crate::rational::one();
        }
        m
    }

    pub fn rows(&self) -> &IndexSet {
        &self.rows
    }

    pub fn cols(&self) -> &IndexSet {
        &self.cols
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.n_cols() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        let c = self.n_cols();
        self.entries[i * c + j] = v;
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn map_entries(&self, f: impl Fn(&Rat) -> Rat) -> Self {
        MatrixRep {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        self.map_entries(|x| x * c)
    }

    /// The matrix read as a sequence on `rows × cols`.
    pub fn as_sequence(&self) -> Sequence {
        Sequence(self.entries.clone())
    }

    pub fn to_json(&self) -> Value {
        let data: Vec<Vec<String>> = (0..self.n_rows())
            .map(|i| (0..self.n_cols()).map(|j| fmt_rat(self.get(i, j))).collect())
            .collect();
        json!({ "rows": self.rows.to_json(), "cols": self.cols.to_json(), "entries": data })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let get = |k: &str| v.get(k).ok_or_else(|| Error::Json(format!("matrix needs `{k}`")));
        let rows = IndexSet::from_json(get("rows")?)?;
        let cols = IndexSet::from_json(get("cols")?)?;
        let data = get("entries")?
            .as_array()
            .ok_or_else(|| Error::Json("entries must be an array of rows".into()))?
            .iter()
            .map(|r| read_sequence(r).map(|s| s.0))
            .collect::<Result<Vec<_>>>()?;
        MatrixRep::from_rows(rows, cols, data)
    }
}

pub fn apply(m: &MatrixRep, a: &Sequence) -> Result<Sequence> {
    a.check_len(m.n_rows())?;
    let mut out = vec![Rat::zero(); m.n_cols()];
    for (i, ai) in a.entries().iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, o) in out.iter_mut().enumerate() {
            let mij = m.get(i, j);
            if !mij.is_zero() {
                *o += mij * ai;
            }
        }
    }
    Ok(Sequence(out))
}

/// Transpose: `⟨M a, b⟩ = ⟨a, M* b⟩`.
pub fn adjoint(m: &MatrixRep) -> MatrixRep {
    let (r, c) = (m.n_rows(), m.n_cols());
    let mut entries = Vec::with_capacity(r * c);
    for j in 0..c {
        for i in 0..r {
            entries.push(m.get(i, j).clone());
        }
    }
    MatrixRep {
        rows: m.cols.clone(),
        cols: m.rows.clone(),
        entries,
    }
}

/// `(M⁺, M⁻, |M|)` entrywise.
pub fn abs_decompose(m: &MatrixRep) -> (MatrixRep, MatrixRep, MatrixRep) {
    let zero = Rat::zero();
    (
        m.map_entries(|x| x.max(&zero).clone()),
        m.map_entries(|x| (-x).max(zero.clone())),
        m.map_entries(Signed::abs),
    )
}

fn check_shape(a: &PolytopeSpace, b: &PolytopeSpace, m: &MatrixRep) -> Result<()> {
    if m.n_rows() != a.dim() || m.n_cols() != b.dim() {
        return Err(Error::IndexMismatch {
            expected: a.dim() * b.dim(),
            found: m.n_rows() * m.n_cols(),
        });
    }
    Ok(())
}

/// `max_{p ∈ P_A, q ∈ Q_B} Σ p_i |M_ij| q_j`.
pub fn map_norm(a: &PolytopeSpace, b: &PolytopeSpace, m: &MatrixRep) -> Result<Rat> {
    check_shape(a, b, m)?;
    let abs = m.map_entries(Signed::abs);
    let mut best = Rat::zero();
    for p in a.p() {
        let image = apply(&abs, p)?;
        for q in b.q() {
            let v = dot(&image, q);
            if v > best {
                best = v;
            }
        }
    }
    Ok(best)
}

/// `N ∘ M` for `M: A → B`, `N: B → C`.
pub fn compose(n: &MatrixRep, m: &MatrixRep) -> Result<MatrixRep> {
    if m.n_cols() != n.n_rows() {
        return Err(Error::ShapeMismatch(format!(
            "cannot compose {}x{} after {}x{}",
            n.n_rows(),
            n.n_cols(),
            m.n_rows(),
            m.n_cols()
        )));
    }
    let mut out = MatrixRep::zero(m.rows.clone(), n.cols.clone());
    for i in 0..m.n_rows() {
        for j in 0..m.n_cols() {
            let mij = m.get(i, j);
            if mij.is_zero() {
                continue;
            }
            for k in 0..n.n_cols() {
                let njk = n.get(j, k);
                if !njk.is_zero() {
                    let idx = i * out.n_cols() + k;
                    out.entries[idx] += mij * njk;
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismCheck {
    pub is_morphism: bool,
    pub norm: Rat,
}

/// Regular contraction test, exact `≤ 1`.
pub fn is_morphism(a: &PolytopeSpace, b: &PolytopeSpace, m: &MatrixRep) -> Result<MorphismCheck> {
    let norm = map_norm(a, b, m)?;
    Ok(MorphismCheck {
        is_morphism: norm <= crate::rational::one(),
        norm,
    })
}
