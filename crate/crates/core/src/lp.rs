//! Exact dense simplex for packing-form programs.
//!
//! Solves `max c·x  s.t.  A x <= b, x >= 0` with `b >= 0`, so the origin is
//! feasible and no phase one is needed. Pivoting uses Bland's rule, which
//! guarantees termination under degeneracy.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rat, x: Vec<Rat> },
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rat> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            LpOutcome::Unbounded => None,
        }
    }
}

pub fn maximize(c: &[Rat], a: &[Vec<Rat>], b: &[Rat]) -> Result<LpOutcome> {
    let n = c.len();
    let m = a.len();
    if b.len() != m {
        return Err(Error::ShapeMismatch(format!("{m} rows but {} bounds", b.len())));
    }
    if let Some(row) = a.iter().find(|r| r.len() != n) {
        return Err(Error::ShapeMismatch(format!("row of length {} for {n} variables", row.len())));
    }
    if b.iter().any(Signed::is_negative) {
        return Err(Error::OutOfRange("packing LP needs b >= 0".into()));
    }

    let width = n + m;
    // rows: [coefficients | slack | rhs]
    let mut t: Vec<Vec<Rat>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = Vec::with_capacity(width + 1);
            r.extend(row.iter().cloned());
            r.extend((0..m).map(|j| if i == j { Rat::from_integer(1.into()) } else { Rat::zero() }));
            r.push(b[i].clone());
            r
        })
        .collect();
    let mut obj: Vec<Rat> = c.iter().map(|x| -x).chain((0..=m).map(|_| Rat::zero())).collect();
    let mut basis: Vec<usize> = (n..n + m).collect();

    while let Some(enter) = (0..width).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, Rat)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[width] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            return Ok(LpOutcome::Unbounded);
        };
        pivot(&mut t, &mut obj, r, enter);
        basis[r] = enter;
    }

    let mut x = vec![Rat::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width].clone();
        }
    }
    Ok(LpOutcome::Optimal {
        value: obj[width].clone(),
        x,
    })
}

fn pivot(t: &mut [Vec<Rat>], obj: &mut [Rat], r: usize, col: usize) {
    let p = t[r][col].clone();
    for v in t[r].iter_mut() {
        *v = &*v / &p;
    }
    let pivot_row = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r || row[col].is_zero() {
            continue;
        }
        let f = row[col].clone();
        for (v, pv) in row.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
    if !obj[col].is_zero() {
        let f = obj[col].clone();
        for (v, pv) in obj.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
}
