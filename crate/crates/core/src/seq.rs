//! Exact sequences on a finite index set and the coordinatewise lattice
//! operations.

use std::ops::{Add, Index, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{parse_rat, Rat};

/// A dense exact vector. The index set it lives on is carried by the space
/// or matrix that consumes it; only the dimension is checked here.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequence(pub Vec<Rat>);

impl Sequence {
    pub fn zeros(n: usize) -> Self {
        Sequence(vec![Rat::zero(); n])
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Sequence::zeros(n);
        v.0[i] = crate::rational::one();
        v
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Sequence(v.iter().map(|&x| crate::rational::rat(x)).collect())
    }

    /// Comma-separated rationals, e.g. `"3,-4"` or `"1/2, 1/3"`.
    pub fn parse(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(Sequence(vec![]));
        }
        s.split(',').map(parse_rat).collect::<Result<Vec<_>>>().map(Sequence)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    pub fn abs(&self) -> Sequence {
        Sequence(self.0.iter().map(Signed::abs).collect())
    }

    pub fn scale(&self, c: &Rat) -> Sequence {
        Sequence(self.0.iter().map(|x| x * c).collect())
    }

    /// Coordinatewise `self >= other`.
    pub fn dominates(&self, other: &Sequence) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    pub fn check_len(&self, n: usize) -> Result<()> {
        if self.len() != n {
            return Err(Error::IndexMismatch {
                expected: n,
                found: self.len(),
            });
        }
        Ok(())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(crate::rational::fmt_rat).collect()
    }
}

impl Index<usize> for Sequence {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

impl Add for &Sequence {
    type Output = Sequence;
    fn add(self, rhs: &Sequence) -> Sequence {
        Sequence(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Sequence {
    type Output = Sequence;
    fn sub(self, rhs: &Sequence) -> Sequence {
        Sequence(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Sequence {
    type Output = Sequence;
    fn neg(self) -> Sequence {
        Sequence(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&Rat> for &Sequence {
    type Output = Sequence;
    fn mul(self, rhs: &Rat) -> Sequence {
        self.scale(rhs)
    }
}

/// `⟨a, b⟩ = Σ a_i b_i`.
pub fn pairing(a: &Sequence, b: &Sequence) -> Result<Rat> {
    b.check_len(a.len())?;
    Ok(dot(a, b))
}

/// Unchecked pairing for internal callers that already agree on length.
pub(crate) fn dot(a: &Sequence, b: &Sequence) -> Rat {
    a.0.iter()
        .zip(&b.0)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

/// Positive part, negative part and absolute value.
pub fn abs_parts(a: &Sequence) -> (Sequence, Sequence, Sequence) {
    let zero = Rat::zero();
    let plus = Sequence(a.0.iter().map(|x| x.max(&zero).clone()).collect());
    let minus = Sequence(a.0.iter().map(|x| (-x).max(zero.clone())).collect());
    (plus, minus, a.abs())
}

/// Outer product `a ⊗ b` in row-major order.
pub fn outer(a: &Sequence, b: &Sequence) -> Sequence {
    let mut v = Vec::with_capacity(a.len() * b.len());
    for x in &a.0 {
        for y in &b.0 {
            v.push(x * y);
        }
    }
    Sequence(v)
}
