//! Polar vertex enumeration and canonical generator sets.
//!
//! For a finite set `G` of nonnegative vectors the polar
//! `{x >= 0 : <x, g> <= 1 for all g in G}` is a down-closed polytope. Its
//! vertices are found with the double description method on the homogenized
//! cone `{(x, t) : x >= 0, t >= 0, <g, x> <= t}`, in exact integer arithmetic.
//! Only Pareto-maximal vertices are kept: a vertex is dropped when some
//! coordinate can be increased without leaving the polytope, which is exactly
//! when it lies in the solid hull of the other vertices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lp::{maximize, LpOutcome};
use crate::rational::Rat;
use crate::seq::Sequence;

/// Default cap on intermediate ray counts.
pub const DEFAULT_VERTEX_CAP: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(bits: usize) -> Self {
        BitSet(vec![0; bits.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] & (1 << (i % 64)) != 0
    }
    fn and(&self, o: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn subset_of(&self, o: &BitSet) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
}

struct Ray {
    v: Vec<BigInt>,
    tight: BitSet,
}

fn integer_row(g: &Sequence) -> (Vec<BigInt>, BigInt) {
    let l = g.entries().iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let row = g
        .entries()
        .iter()
        .map(|x| (x * Rat::from_integer(l.clone())).to_integer())
        .collect();
    (row, l)
}

fn primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

pub(crate) fn check_generators(gens: &[Sequence], dim: usize) -> Result<()> {
    for g in gens {
        g.check_len(dim)?;
        if !g.is_nonnegative() {
            return Err(Error::InvalidSpace("generators must be nonnegative".into()));
        }
    }
    Ok(())
}

/// First coordinate not covered by any generator, if any.
pub fn uncovered_coordinate(gens: &[Sequence], dim: usize) -> Option<usize> {
    (0..dim).find(|&i| gens.iter().all(|g| g[i].is_zero()))
}

/// Canonical vertex set of the nonnegative polar of `gens`.
pub fn polar_vertices(gens: &[Sequence], dim: usize) -> Result<Vec<Sequence>> {
    polar_vertices_capped(gens, dim, DEFAULT_VERTEX_CAP)
}

pub fn polar_vertices_capped(gens: &[Sequence], dim: usize, cap: usize) -> Result<Vec<Sequence>> {
    check_generators(gens, dim)?;
    if dim == 0 {
        return Ok(vec![Sequence(vec![])]);
    }
    if let Some(i) = uncovered_coordinate(gens, dim) {
        return Err(Error::NotSpanning(i));
    }
    let d = dim + 1;
    let total = d + gens.len();
    let mut rays: Vec<Ray> = (0..d)
        .map(|j| {
            let mut v = vec![BigInt::zero(); d];
            v[j] = BigInt::one();
            let mut tight = BitSet::new(total);
            for k in (0..d).filter(|&k| k != j) {
                tight.set(k);
            }
            Ray { v, tight }
        })
        .collect();

    for (gi, g) in gens.iter().enumerate() {
        let c = d + gi;
        let (row, l) = integer_row(g);
        // constraint: l*t - row·x >= 0
        let eval = |v: &[BigInt]| -> BigInt {
            let mut s = &l * &v[dim];
            for (a, x) in row.iter().zip(v) {
                if !a.is_zero() && !x.is_zero() {
                    s -= a * x;
                }
            }
            s
        };
        let vals: Vec<BigInt> = rays.iter().map(|r| eval(&r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.tight.set(c);
                }
            }
            continue;
        }
        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let z = rays[p].tight.and(&rays[q].tight);
                if z.count() + 2 < d {
                    continue;
                }
                let blocked = rays.iter().enumerate().any(|(k, r)| k != p && k != q && z.subset_of(&r.tight));
                if blocked {
                    continue;
                }
                let (vp, vq) = (&vals[p], &vals[q]);
                let mut v: Vec<BigInt> = rays[q].v.iter().zip(&rays[p].v).map(|(xq, xp)| vp * xq - vq * xp).collect();
                primitive(&mut v);
                let mut tight = z;
                tight.set(c);
                fresh.push(Ray { v, tight });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(pos.len() + fresh.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i].is_negative() {
                continue;
            }
            if vals[i].is_zero() {
                r.tight.set(c);
            }
            next.push(r);
        }
        next.extend(fresh);
        if next.len() > cap {
            return Err(Error::SizeGuard {
                guard: "polar-vertices",
                size: next.len(),
                limit: cap,
            });
        }
        rays = next;
    }

    let mut out = Vec::new();
    for r in &rays {
        let t = &r.v[dim];
        if t.is_zero() {
            // the origin's recession directions; spanning G forbids these
            if r.v[..dim].iter().any(|x| !x.is_zero()) {
                return Err(Error::NotSpanning(0));
            }
            continue;
        }
        let maximal = (0..dim).all(|i| gens.iter().enumerate().any(|(gi, g)| g[i].is_positive() && r.tight.get(d + gi)));
        if maximal {
            out.push(Sequence(r.v[..dim].iter().map(|x| Rat::new(x.clone(), t.clone())).collect()));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Whether `g` lies in the solid convex hull `{x >= 0 : x <= y, y in conv(set)}`.
pub fn in_solid_hull(g: &Sequence, set: &[Sequence]) -> Result<bool> {
    if g.is_zero() {
        return Ok(!set.is_empty());
    }
    if set.iter().any(|y| y.dominates(g)) {
        return Ok(true);
    }
    if set.is_empty() {
        return Ok(false);
    }
    // g in the solid hull iff max{<c,g> : c >= 0, <c,y> <= 1 for y in set} <= 1
    let rows: Vec<Vec<Rat>> = set.iter().map(|y| y.entries().to_vec()).collect();
    let b = vec![Rat::one(); set.len()];
    match maximize(g.entries(), &rows, &b)? {
        LpOutcome::Unbounded => Ok(false),
        LpOutcome::Optimal { value, .. } => Ok(value <= Rat::one()),
    }
}

/// Sorted antichain with the same solid hull as `gens`.
pub fn canonicalize(gens: &[Sequence]) -> Result<Vec<Sequence>> {
    let mut set: Vec<Sequence> = gens.to_vec();
    set.sort();
    set.dedup();
    if set.len() <= 1 {
        return Ok(set);
    }
    let mut i = 0;
    while i < set.len() {
        let others: Vec<Sequence> = set.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, s)| s.clone()).collect();
        if in_solid_hull(&set[i], &others)? {
            set.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(set)
}

/// The first generator of `set` that is dominated by the others, if any.
pub fn dominated_generator(set: &[Sequence]) -> Result<Option<Sequence>> {
    for (i, g) in set.iter().enumerate() {
        let others: Vec<Sequence> = set.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, s)| s.clone()).collect();
        if in_solid_hull(g, &others)? {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn s(v: &[i64]) -> Sequence {
        Sequence::from_ints(v)
    }

    #[test]
    fn simplex_polar_is_box_corner_set() {
        assert_eq!(polar_vertices(&[s(&[1, 1])], 2).unwrap(), vec![s(&[0, 1]), s(&[1, 0])]);
    }

    #[test]
    fn box_polar_is_simplex_generator() {
        assert_eq!(polar_vertices(&[s(&[1, 0]), s(&[0, 1])], 2).unwrap(), vec![s(&[1, 1])]);
    }

    #[test]
    fn mixed_constraints() {
        // x <= 1, x + y <= 1: vertices (0,0),(1,0),(0,1); maximal: (1,0),(0,1)
        let out = polar_vertices(&[s(&[1, 0]), s(&[1, 1])], 2).unwrap();
        assert_eq!(out, vec![s(&[0, 1]), s(&[1, 0])]);
    }

    #[test]
    fn brute_force_tight_pairs_agree() {
        // G = {(2,1),(1,3)}: brute force over pairs of tight constraints.
        let g = vec![s(&[2, 1]), s(&[1, 3])];
        let out = polar_vertices(&g, 2).unwrap();
        // intersection of 2x+y=1 and x+3y=1 is (2/5, 1/5); axis points (1/2,0),(0,1/3)
        let expect = vec![
            Sequence(vec![ratio(0, 1), ratio(1, 3)]),
            Sequence(vec![ratio(2, 5), ratio(1, 5)]),
            Sequence(vec![ratio(1, 2), ratio(0, 1)]),
        ];
        assert_eq!(out, expect);
    }

    #[test]
    fn not_spanning_rejected() {
        assert_eq!(polar_vertices(&[s(&[1, 0])], 2), Err(Error::NotSpanning(1)));
        assert_eq!(polar_vertices(&[], 1), Err(Error::NotSpanning(0)));
    }

    #[test]
    fn zero_dimension() {
        assert_eq!(polar_vertices(&[], 0).unwrap(), vec![Sequence(vec![])]);
    }

    #[test]
    fn cap_is_enforced() {
        let gens: Vec<Sequence> = (0..4).map(|i| Sequence::basis(4, i)).collect();
        let err = polar_vertices_capped(&gens, 4, 3).unwrap_err();
        assert!(matches!(err, Error::SizeGuard { .. }));
    }

    #[test]
    fn canonicalize_drops_midpoint() {
        let set = vec![s(&[1, 0]), s(&[0, 1]), Sequence(vec![ratio(1, 2), ratio(1, 2)])];
        assert_eq!(canonicalize(&set).unwrap(), vec![s(&[0, 1]), s(&[1, 0])]);
        assert_eq!(dominated_generator(&set).unwrap(), Some(Sequence(vec![ratio(1, 2), ratio(1, 2)])));
    }

    #[test]
    fn solid_hull_membership() {
        let set = vec![s(&[2, 0]), s(&[0, 2])];
        assert!(in_solid_hull(&s(&[1, 1]), &set).unwrap());
        assert!(!in_solid_hull(&Sequence(vec![ratio(3, 2), ratio(3, 4)]), &set).unwrap());
        assert!(!in_solid_hull(&s(&[0, 0, 1]), &[s(&[1, 1, 0])]).unwrap());
    }

    #[test]
    fn bipolar_is_canonicalization() {
        let g = vec![
            s(&[1, 2, 0]),
            s(&[0, 1, 1]),
            s(&[1, 0, 1]),
            Sequence(vec![ratio(1, 2), ratio(1, 2), ratio(1, 4)]),
        ];
        let p = polar_vertices(&g, 3).unwrap();
        let pp = polar_vertices(&p, 3).unwrap();
        assert_eq!(pp, canonicalize(&g).unwrap());
    }
}
