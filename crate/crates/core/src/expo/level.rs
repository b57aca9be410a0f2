//! Level-`n` multiaffine representations and the level norms that bound the
//! `?A` norm from above.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::guard::Guards;
use crate::rational::{binomial, factorial, falling, fmt_rat, Rat};
use crate::seq::Sequence;
use crate::space::PolytopeSpace;

use super::series::{all_multisets, lift, GradedCoeffs, MultiIndex};

/// Symmetrization of a dense `n`-tensor on `dim` coordinates (row-major).
pub fn sym_n(t: &[Rat], dim: usize, n: usize) -> Result<Vec<Rat>> {
    let size = dim.checked_pow(n as u32).filter(|&s| s == t.len());
    if size.is_none() {
        return Err(Error::ShapeMismatch(format!(
            "{} entries for a {n}-tensor on {dim} coordinates",
            t.len()
        )));
    }
    let perms = permutations(n);
    let nfact = Rat::from(factorial(n));
    let mut out = Vec::with_capacity(t.len());
    let mut tuple = vec![0usize; n];
    for flat in 0..t.len() {
        decode(flat, dim, &mut tuple);
        let mut s = Rat::zero();
        for p in &perms {
            let permuted: usize = p.iter().fold(0, |acc, &j| acc * dim + tuple[j]);
            s += &t[permuted];
        }
        out.push(s / &nfact);
    }
    Ok(out)
}

fn decode(mut flat: usize, dim: usize, tuple: &mut [usize]) {
    for slot in tuple.iter_mut().rev() {
        *slot = flat % dim;
        flat /= dim;
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Symmetric `k`-linear form `f̂_k` with `f̂_k(x, …, x) = p_k(x)`, evaluated
/// by inclusion–exclusion over subsets of the arguments.
pub fn polarize(f: &GradedCoeffs, k: usize, xs: &[Sequence]) -> Result<Rat> {
    if xs.len() != k {
        return Err(Error::ShapeMismatch(format!("{} arguments for a {k}-linear form", xs.len())));
    }
    let p = f.homogeneous(k);
    let mut total = Rat::zero();
    for mask in 0u64..(1 << k) {
        let mut y = Sequence::zeros(f.dim());
        for (i, x) in xs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                y = &y + x;
            }
        }
        let v = p.eval(&y)?;
        if (k - mask.count_ones() as usize).is_multiple_of(2) {
            total += v;
        } else {
            total -= v;
        }
    }
    Ok(total / Rat::from(factorial(k)))
}

/// `f̂_k` as a table on sorted index tuples: `c_μ Π m_i! / k!`.
pub fn symmetric_table(f: &GradedCoeffs, k: usize) -> BTreeMap<MultiIndex, Rat> {
    let kf = Rat::from(factorial(k));
    f.homogeneous(k)
        .terms()
        .map(|(mu, c)| {
            let mut mult = BigInt::one();
            let mut i = 0;
            while i < mu.len() {
                let j = mu[i..].iter().take_while(|&&x| x == mu[i]).count();
                mult *= factorial(j);
                i += j;
            }
            (mu.clone(), c * Rat::from(mult) / &kf)
        })
        .collect()
}

/// The level-`n` image of a series: `tables[k]` holds `f̂_k / C(n,k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelRep {
    pub n: usize,
    pub dim: usize,
    pub tables: Vec<BTreeMap<MultiIndex, Rat>>,
}

pub fn embed_level(f: &GradedCoeffs, n: usize) -> Result<LevelRep> {
    if n < f.cap() {
        return Err(Error::LevelBelowCap { level: n, cap: f.cap() });
    }
    let dim = f.dim();
    let mut tables = Vec::with_capacity(f.cap() + 1);
    for k in 0..=f.cap() {
        let scale = Rat::from(binomial(n, k));
        let mut table = BTreeMap::new();
        if !f.homogeneous(k).is_empty() {
            for mu in all_multisets(dim, k).into_iter().filter(|m| m.len() == k) {
                let args: Vec<Sequence> = mu.iter().map(|&i| Sequence::basis(dim, i)).collect();
                let v = polarize(f, k, &args)?;
                if !v.is_zero() {
                    table.insert(mu, v / &scale);
                }
            }
        }
        tables.push(table);
    }
    Ok(LevelRep { n, dim, tables })
}

impl LevelRep {
    /// `Σ_k Σ_{i_1<…<i_k} tables[k](x_{i_1}, …, x_{i_k})`.
    pub fn eval(&self, xs: &[Sequence]) -> Result<Rat> {
        if xs.len() != self.n {
            return Err(Error::ShapeMismatch(format!("{} points at level {}", xs.len(), self.n)));
        }
        for x in xs {
            x.check_len(self.dim)?;
        }
        let mut total = Rat::zero();
        for (k, table) in self.tables.iter().enumerate() {
            if table.is_empty() {
                continue;
            }
            for subset in subsets(self.n, k) {
                let pts: Vec<&Sequence> = subset.iter().map(|&i| &xs[i]).collect();
                total += multilinear(table, &pts, self.dim);
            }
        }
        Ok(total)
    }

    /// Same form seen at a higher level.
    pub fn reembed(&self, n2: usize) -> Result<LevelRep> {
        if n2 < self.n {
            return Err(Error::LevelBelowCap { level: n2, cap: self.n });
        }
        let tables = self
            .tables
            .iter()
            .enumerate()
            .map(|(k, t)| {
                let s = Rat::new(binomial(self.n, k), binomial(n2, k));
                t.iter().map(|(m, v)| (m.clone(), v * &s)).collect()
            })
            .collect();
        Ok(LevelRep {
            n: n2,
            dim: self.dim,
            tables,
        })
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Symmetric table evaluated at `pts` (one point per slot) by summing over
/// all index tuples.
fn multilinear(table: &BTreeMap<MultiIndex, Rat>, pts: &[&Sequence], dim: usize) -> Rat {
    let k = pts.len();
    if k == 0 {
        return table.get(&vec![]).cloned().unwrap_or_else(Rat::zero);
    }
    let mut total = Rat::zero();
    let mut tuple = vec![0usize; k];
    for flat in 0..dim.pow(k as u32) {
        decode(flat, dim, &mut tuple);
        let mut key = tuple.clone();
        key.sort_unstable();
        if let Some(v) = table.get(&key) {
            let mut term = v.clone();
            for (slot, &i) in tuple.iter().enumerate() {
                term *= &pts[slot][i];
                if term.is_zero() {
                    break;
                }
            }
            total += term;
        }
    }
    total
}

/// Compositions of `n` into `r` nonnegative parts.
pub(crate) fn compositions(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize; r];
    fn rec(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for v in (0..=left).rev() {
            cur[i] = v;
            rec(i + 1, left - v, cur, out);
        }
    }
    rec(0, n, &mut cur, &mut out);
    out
}

/// `max` over size-`n` multisets of `Q_A` of the level-`n` form of `|f|`,
/// with the witness composition over `Q_A`.
pub fn level_norm_with_witness(a: &PolytopeSpace, f: &GradedCoeffs, n: usize, guards: &Guards) -> Result<(Rat, Vec<usize>)> {
    if f.dim() != a.dim() {
        return Err(Error::IndexMismatch {
            expected: a.dim(),
            found: f.dim(),
        });
    }
    if n < f.cap() {
        return Err(Error::LevelBelowCap { level: n, cap: f.cap() });
    }
    let q = a.q();
    let r = q.len();
    let count = binomial(n + r - 1, n);
    let limit = BigInt::from(guards.level_multisets);
    if count > limit {
        return Err(Error::SizeGuard {
            guard: "level_multisets",
            size: usize::try_from(count).unwrap_or(usize::MAX),
            limit: guards.level_multisets,
        });
    }
    // |f|(Σ_j t_j q_j) as a polynomial in t
    let in_t = lift(&f.abs(), r, |&i| {
        (0..r).filter(|&j| !q[j][i].is_zero()).map(|j| (j, q[j][i].clone())).collect()
    });
    let terms: Vec<(Vec<usize>, Rat)> = in_t
        .terms()
        .map(|(kappa, c)| {
            let mut counts = vec![0usize; r];
            kappa.iter().for_each(|&j| counts[j] += 1);
            (counts, c / Rat::from(falling(n, kappa.len())))
        })
        .collect();
    let mut best: Option<(Rat, Vec<usize>)> = None;
    for comp in compositions(n, r) {
        let mut v = Rat::zero();
        for (counts, c) in &terms {
            let w: BigInt = counts.iter().zip(&comp).map(|(&k, &nj)| falling(nj, k)).product();
            if !w.is_zero() {
                v += c * Rat::from(w);
            }
        }
        if best.as_ref().is_none_or(|(b, _)| v > *b) {
            best = Some((v, comp));
        }
    }
    Ok(best.unwrap_or_else(|| (Rat::zero(), vec![])))
}

pub fn level_norm(a: &PolytopeSpace, f: &GradedCoeffs, n: usize, guards: &Guards) -> Result<Rat> {
    level_norm_with_witness(a, f, n, guards).map(|(v, _)| v)
}

/// Reference maximization through [`LevelRep::eval`] over every multiset of
/// `Q_A`; exponential, for testing.
pub fn level_norm_bruteforce(a: &PolytopeSpace, f: &GradedCoeffs, n: usize) -> Result<Rat> {
    let rep = embed_level(&f.abs(), n)?;
    let q = a.q();
    let mut best = Rat::zero();
    for ms in all_multisets(q.len(), n).into_iter().filter(|m| m.len() == n) {
        let pts: Vec<Sequence> = ms.iter().map(|&j| q[j].clone()).collect();
        let v = rep.eval(&pts)?;
        if v > best {
            best = v;
        }
    }
    Ok(best)
}

/// Points of the nonnegative dual ball: `Q_A`, pairwise midpoints, then
/// `samples` random convex combinations of `Q_A`.
pub fn dual_ball_points(a: &PolytopeSpace, samples: usize, seed: u64) -> Vec<Sequence> {
    let q = a.q();
    let mut pts: Vec<Sequence> = q.to_vec();
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    for i in 0..q.len() {
        for j in i + 1..q.len() {
            pts.push((&q[i] + &q[j]).scale(&half));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let w: Vec<u32> = (0..q.len()).map(|_| rng.gen_range(0..=64)).collect();
        let total: u32 = w.iter().sum();
        if total == 0 {
            continue;
        }
        let mut x = Sequence::zeros(a.dim());
        for (wj, qj) in w.iter().zip(q) {
            x = &x + &qj.scale(&Rat::new(BigInt::from(*wj), BigInt::from(total)));
        }
        pts.push(x);
    }
    pts
}

/// Best `eval_abs(f, x)` over [`dual_ball_points`].
pub fn lower_bound(a: &PolytopeSpace, f: &GradedCoeffs, samples: usize, seed: u64) -> Result<(Rat, Sequence)> {
    let mut best = (Rat::zero(), Sequence::zeros(a.dim()));
    for x in dual_ball_points(a, samples, seed) {
        let v = f.eval_abs(&x)?;
        if v > best.0 {
            best = (v, x);
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpInterval {
    pub lower: Rat,
    pub upper: Rat,
    pub n_used: usize,
    pub lower_witness: Sequence,
}

impl ExpInterval {
    pub fn width(&self) -> Rat {
        &self.upper - &self.lower
    }

    pub fn collapsed(&self) -> bool {
        self.lower == self.upper
    }
}

/// Certified bracket on the `?A` norm of `f`: levels from `cap(f)` up to
/// `n_max`, stopping once the width is at most `tol`.
pub fn exp_norm_interval(
    a: &PolytopeSpace,
    f: &GradedCoeffs,
    n_max: usize,
    tol: &Rat,
    samples: usize,
    seed: u64,
    guards: &Guards,
) -> Result<ExpInterval> {
    let start = f.cap();
    if n_max < start {
        return Err(Error::LevelBelowCap { level: n_max, cap: start });
    }
    let (lower, lower_witness) = lower_bound(a, f, samples, seed)?;
    let mut upper = level_norm(a, f, start, guards)?;
    let mut n_used = start;
    while &upper - &lower > *tol && n_used < n_max {
        n_used += 1;
        upper = level_norm(a, f, n_used, guards)?;
    }
    Ok(ExpInterval {
        lower,
        upper,
        n_used,
        lower_witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub level_norm: Rat,
    pub best_lower: Rat,
}

impl ConvergenceRow {
    pub fn width(&self) -> Rat {
        &self.level_norm - &self.best_lower
    }
}

pub fn convergence(
    a: &PolytopeSpace,
    f: &GradedCoeffs,
    n_max: usize,
    samples: usize,
    seed: u64,
    guards: &Guards,
) -> Result<Vec<ConvergenceRow>> {
    let start = f.cap();
    if n_max < start {
        return Err(Error::LevelBelowCap { level: n_max, cap: start });
    }
    let (best_lower, _) = lower_bound(a, f, samples, seed)?;
    (start..=n_max)
        .map(|n| {
            Ok(ConvergenceRow {
                n,
                level_norm: level_norm(a, f, n, guards)?,
                best_lower: best_lower.clone(),
            })
        })
        .collect()
}

pub fn convergence_csv(rows: &[ConvergenceRow]) -> String {
    let mut s = String::from("n,level_norm,best_lower,width\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{}\n",
            r.n,
            fmt_rat(&r.level_norm),
            fmt_rat(&r.best_lower),
            fmt_rat(&r.width())
        ));
    }
    s
}

/// True when `rows` never increase in level norm.
pub fn non_increasing(rows: &[ConvergenceRow]) -> bool {
    rows.windows(2).all(|w| w[1].level_norm <= w[0].level_norm) && rows.iter().all(|r| !r.level_norm.is_negative())
}
