//! Bounds on the norm of `!A = (?A*)*` by linear programming over
//! nonnegative series.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::guard::Guards;
use crate::lp::{maximize, LpOutcome};
use crate::rational::{binomial, falling, one, Rat};
use crate::seq::Sequence;
use crate::space::PolytopeSpace;

use super::level::compositions;
use super::series::{all_multisets, lift, monomial, GradedCoeffs, MultiIndex, Series};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BangBounds {
    pub lower: Rat,
    pub upper: Rat,
}

/// Row of the level-`n` form of each monomial `x^μ` at a composition of
/// `n` over the generators `gens`.
pub(crate) fn level_rows(vars: &[MultiIndex], gens: &[Sequence], dim: usize, n: usize, guards: &Guards) -> Result<Vec<Vec<Rat>>> {
    let r = gens.len();
    let count = binomial(n + r - 1, n);
    if count > BigInt::from(guards.level_multisets) {
        return Err(Error::SizeGuard {
            guard: "level_multisets",
            size: usize::try_from(count).unwrap_or(usize::MAX),
            limit: guards.level_multisets,
        });
    }
    let cap = vars.iter().map(Vec::len).max().unwrap_or(0);
    let per_var: Vec<Vec<(Vec<usize>, Rat)>> = vars
        .iter()
        .map(|mu| {
            let mono = Series::from_terms(dim, cap, [(mu.clone(), one())]).expect("within cap");
            let in_t = lift(&mono, r, |&i| {
                (0..r).filter(|&j| !gens[j][i].is_zero()).map(|j| (j, gens[j][i].clone())).collect()
            });
            in_t.terms()
                .map(|(kappa, c)| {
                    let mut counts = vec![0usize; r];
                    kappa.iter().for_each(|&j| counts[j] += 1);
                    (counts, c / Rat::from(falling(n, kappa.len())))
                })
                .collect()
        })
        .collect();
    Ok(compositions(n, r)
        .into_iter()
        .map(|comp| {
            per_var
                .iter()
                .map(|terms| {
                    terms
                        .iter()
                        .map(|(counts, c)| {
                            let w: BigInt = counts.iter().zip(&comp).map(|(&k, &nj)| falling(nj, k)).product();
                            c * Rat::from(w)
                        })
                        .sum()
                })
                .collect()
        })
        .collect())
}

/// Points of the ball of `A` used by the relaxation: `P_A`, pairwise
/// midpoints and the centroid.
pub(crate) fn ball_points(a: &PolytopeSpace) -> Vec<Sequence> {
    let p = a.p();
    let half = Rat::new(BigInt::from(1), BigInt::from(2));
    let mut pts = p.to_vec();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            pts.push((&p[i] + &p[j]).scale(&half));
        }
    }
    if !p.is_empty() {
        let mut c = Sequence::zeros(a.dim());
        for x in p {
            c = &c + x;
        }
        pts.push(c.scale(&Rat::new(BigInt::from(1), BigInt::from(p.len()))));
    }
    pts
}

fn solve(obj: &[Rat], rows: Vec<Vec<Rat>>) -> Result<Rat> {
    let b = vec![one(); rows.len()];
    match maximize(obj, &rows, &b)? {
        LpOutcome::Optimal { value, .. } => Ok(value),
        LpOutcome::Unbounded => Err(Error::Unsupported(
            "norm bound LP is unbounded; the generators do not cover the support".into(),
        )),
    }
}

/// `lower ≤ ‖v‖_{!A} ≤ upper`. The lower bound maximizes `⟨|v|, f⟩` over
/// nonnegative `f` whose level-`n` norm in `?A*` is at most one; the upper
/// bound only asks `f(x) ≤ 1` at finitely many points `x` of the ball of `A`.
pub fn bang_space_norms(a: &PolytopeSpace, v: &GradedCoeffs, n: usize, guards: &Guards) -> Result<BangBounds> {
    if v.dim() != a.dim() {
        return Err(Error::IndexMismatch {
            expected: a.dim(),
            found: v.dim(),
        });
    }
    if n < v.cap() {
        return Err(Error::LevelBelowCap { level: n, cap: v.cap() });
    }
    if v.is_empty() {
        return Ok(BangBounds {
            lower: Rat::zero(),
            upper: Rat::zero(),
        });
    }
    let vars = all_multisets(a.dim(), v.cap());
    let obj: Vec<Rat> = vars.iter().map(|mu| v.coeff(mu).abs()).collect();
    let lower = solve(&obj, level_rows(&vars, a.p(), a.dim(), n, guards)?)?;
    let sample_rows = ball_points(a)
        .iter()
        .map(|x| vars.iter().map(|mu| monomial(x, mu)).collect())
        .collect();
    let upper = solve(&obj, sample_rows)?;
    Ok(BangBounds { lower, upper })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expo::series::delta;
    use crate::index::IndexSet;
    use crate::rational::{rat, ratio};

    fn skew() -> PolytopeSpace {
        PolytopeSpace::from_q(
            IndexSet::numbered("s", 2),
            vec![Sequence::from_ints(&[2, 1]), Sequence::from_ints(&[1, 3])],
            "skew",
        )
        .unwrap()
    }

    #[test]
    fn delta_at_generators_brackets_one() {
        for a in [skew(), PolytopeSpace::sup_norm(IndexSet::numbered("x", 2))] {
            for p in a.p() {
                let b = bang_space_norms(&a, &delta(p, 3), 4, &Guards::default()).unwrap();
                assert!(b.lower >= rat(1), "{b:?}");
                assert_eq!(b.upper, rat(1));
            }
        }
    }

    #[test]
    fn zero_and_homogeneity() {
        let a = skew();
        let z = Series::zero(2, 2);
        assert_eq!(
            bang_space_norms(&a, &z, 2, &Guards::default()).unwrap(),
            BangBounds {
                lower: rat(0),
                upper: rat(0)
            }
        );
        let d = delta(&a.p()[0], 2);
        let b1 = bang_space_norms(&a, &d, 3, &Guards::default()).unwrap();
        let b3 = bang_space_norms(&a, &d.scale(&ratio(-3, 2)), 3, &Guards::default()).unwrap();
        assert_eq!(b3.lower, &b1.lower * ratio(3, 2));
        assert_eq!(b3.upper, &b1.upper * ratio(3, 2));
    }
}
