//! The bounded but non-regular operator `L` from sup-norm sequences to
//! sum-norm sequences on even-length binary strings, truncated at length `2N`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::guard::{check, Guards};
use crate::index::{IndexSet, Label};
use crate::rational::{binomial, fmt_decimal, fmt_rat, Rat};
use crate::regmap::MatrixRep;
use crate::space::PolytopeSpace;

pub const MAX_N: usize = 9;
/// Levels whose per-string sums are enumerated string by string.
pub const BRUTE_FORCE_LEVELS: usize = 6;

/// A binary string of length `len`; bit `i` (0-based, left to right) is
/// `(bits >> (len - 1 - i)) & 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Word {
    pub len: usize,
    pub bits: u64,
}

impl Word {
    pub fn bit(&self, i: usize) -> u8 {
        ((self.bits >> (self.len - 1 - i)) & 1) as u8
    }

    pub fn parse(s: &str) -> Option<Word> {
        if s.len() > 64 || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return None;
        }
        let bits = s.bytes().fold(0u64, |acc, b| (acc << 1) | u64::from(b - b'0'));
        Some(Word { len: s.len(), bits })
    }

    /// |#ones − #zeros|.
    pub fn imbalance(&self) -> usize {
        let ones = (0..self.len).filter(|&i| self.bit(i) == 1).count();
        ones.abs_diff(self.len - ones)
    }

    pub fn all_of_length(len: usize) -> impl Iterator<Item = Word> {
        (0..1u64 << len).map(move |bits| Word { len, bits })
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", self.bit(i))?;
        }
        Ok(())
    }
}

/// `1 / (|w|² 2^{|w|})`.
fn weight(len: usize) -> Rat {
    Rat::new(BigInt::one(), BigInt::from(len * len) << len)
}

/// Entry of `L` at domain coordinate `i`, codomain string `w`.
pub fn entry(i: usize, w: &Word) -> Rat {
    if i >= w.len {
        return Rat::zero();
    }
    let m = weight(w.len);
    if w.bit(i) == 0 {
        m
    } else {
        -m
    }
}

pub fn codomain_words(n_max: usize) -> Vec<Word> {
    (1..=n_max).flat_map(|n| Word::all_of_length(2 * n)).collect()
}

#[derive(Clone, Debug)]
pub struct CounterexampleInstance {
    pub n: usize,
    pub domain: PolytopeSpace,
    pub codomain: PolytopeSpace,
    pub l: MatrixRep,
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::OutOfRange(format!("N must lie in 1..={MAX_N}, got {n}")));
    }
    Ok(())
}

pub fn build(n: usize, guards: &Guards) -> Result<CounterexampleInstance> {
    check_n(n)?;
    let words = codomain_words(n);
    check("counterexample_entries", 2 * n * words.len(), guards.counterexample_entries)?;
    let dom = IndexSet::new((0..2 * n).map(|i| Label::atom(i.to_string())).collect())?;
    let cod = IndexSet::new(words.iter().map(|w| Label::atom(w.to_string())).collect())?;
    let mut l = MatrixRep::zero(dom.clone(), cod.clone());
    for i in 0..2 * n {
        for (j, w) in words.iter().enumerate() {
            l.set(i, j, entry(i, w));
        }
    }
    Ok(CounterexampleInstance {
        n,
        domain: PolytopeSpace::sup_norm(dom),
        codomain: PolytopeSpace::sum_norm(cod),
        l,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelRow {
    pub n: usize,
    /// `Σ_{|w|=2n} (|L|Ω)_w`, accumulated string by string.
    pub abs_omega: Rat,
    /// `Σ_{|w|=2n} D(w)` by enumeration, for `n ≤ BRUTE_FORCE_LEVELS`.
    pub t_enumerated: Option<BigInt>,
    /// `Σ_k C(2n,k)·|2n − 2k|`.
    pub t_binomial: BigInt,
    /// `T_n / (4n² 4^n)`.
    pub level_bound: Rat,
    /// Best `Σ_{|w|=2n} |(La)_w|` over sign vectors found by coordinate ascent.
    pub searched: Option<Rat>,
    /// `T_n / (√n 4^n)` squared, to keep it rational.
    pub c_squared: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub n: usize,
    pub levels: Vec<LevelRow>,
    /// Truncated `‖|L|Ω‖₁`.
    pub abs_omega_norm: Rat,
    /// `Σ_n level_bound`, an upper bound on the truncated operator norm.
    pub operator_upper: Rat,
    /// `Σ_n searched` where available; a lower bound.
    pub operator_lower: Option<Rat>,
}

fn level_abs_omega(n: usize) -> Rat {
    // each string contributes |w| entries of magnitude weight(|w|)
    let len = 2 * n;
    let mut count = BigInt::zero();
    for w in Word::all_of_length(len) {
        count += (0..w.len).filter(|&i| !entry(i, &w).is_zero()).count();
    }
    weight(len) * Rat::from(count)
}

fn t_binomial(n: usize) -> BigInt {
    let m = 2 * n;
    (0..=m).map(|k| binomial(m, k) * BigInt::from(m.abs_diff(2 * k))).sum()
}

fn t_enumerated(n: usize) -> BigInt {
    Word::all_of_length(2 * n).map(|w| BigInt::from(w.imbalance())).sum()
}

/// `Σ_{|w|=2n} |Σ_i (−1)^{w_i} a_i|` for a sign vector `a`, unweighted.
fn level_signed_sum(n: usize, signs: &[i64]) -> BigInt {
    Word::all_of_length(2 * n)
        .map(|w| {
            let s: i64 = (0..w.len).map(|i| if w.bit(i) == 0 { signs[i] } else { -signs[i] }).sum();
            BigInt::from(s.abs())
        })
        .sum()
}

/// Coordinate ascent over `{±1}^{2n}` from the alternating vector.
fn search_signs(n: usize) -> BigInt {
    let mut signs: Vec<i64> = (0..2 * n).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
    let mut best = level_signed_sum(n, &signs);
    loop {
        let mut improved = false;
        for i in 0..signs.len() {
            signs[i] = -signs[i];
            let v = level_signed_sum(n, &signs);
            if v > best {
                best = v;
                improved = true;
            } else {
                signs[i] = -signs[i];
            }
        }
        if !improved {
            return best;
        }
    }
}

pub fn report(n_max: usize) -> Result<CounterexampleReport> {
    check_n(n_max)?;
    let mut levels = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let t = t_binomial(n);
        let scale = weight(2 * n);
        let brute = n <= BRUTE_FORCE_LEVELS;
        let pow4 = BigInt::one() << (2 * n);
        levels.push(LevelRow {
            n,
            abs_omega: level_abs_omega(n),
            t_enumerated: brute.then(|| t_enumerated(n)),
            level_bound: &scale * Rat::from(t.clone()),
            searched: brute.then(|| &scale * Rat::from(search_signs(n))),
            c_squared: Rat::new(&t * &t, BigInt::from(n) * &pow4 * &pow4),
            t_binomial: t,
        });
    }
    let abs_omega_norm = levels.iter().map(|r| r.abs_omega.clone()).sum();
    let operator_upper = levels.iter().map(|r| r.level_bound.clone()).sum();
    let operator_lower = levels.iter().map(|r| r.searched.clone()).sum::<Option<Rat>>();
    Ok(CounterexampleReport {
        n: n_max,
        levels,
        abs_omega_norm,
        operator_upper,
        operator_lower,
    })
}

fn num(r: &Rat) -> Value {
    json!({ "exact": fmt_rat(r), "decimal": fmt_decimal(r, 12) })
}

impl CounterexampleReport {
    pub fn to_json(&self) -> Value {
        let levels: Vec<Value> = self
            .levels
            .iter()
            .map(|r| {
                json!({
                    "n": r.n,
                    "abs_omega": num(&r.abs_omega),
                    "T_enumerated": r.t_enumerated.as_ref().map(|t| t.to_string()),
                    "T_binomial": r.t_binomial.to_string(),
                    "level_bound": num(&r.level_bound),
                    "searched_lower": r.searched.as_ref().map(num),
                    "C_squared": num(&r.c_squared),
                })
            })
            .collect();
        json!({
            "N": self.n,
            "abs_omega_norm": num(&self.abs_omega_norm),
            "operator_upper": num(&self.operator_upper),
            "operator_lower": self.operator_lower.as_ref().map(num),
            "levels": levels,
        })
    }

    /// Levels for which enumeration disagrees with the binomial formula.
    pub fn t_mismatches(&self) -> Vec<usize> {
        self.levels
            .iter()
            .filter(|r| r.t_enumerated.as_ref().is_some_and(|t| *t != r.t_binomial))
            .map(|r| r.n)
            .collect()
    }

    /// Level bounds must decrease once past the first level.
    pub fn bounds_decreasing(&self) -> bool {
        self.levels.windows(2).all(|w| w[1].level_bound < w[0].level_bound) && self.levels.iter().all(|r| !r.level_bound.is_negative())
    }
}
