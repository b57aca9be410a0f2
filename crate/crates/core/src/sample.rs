//! Seeded random instances for randomized checks and law suites.

use num_bigint::BigInt;
use num_traits::Signed;
use rand::Rng;

use crate::expo::series::{Key, MultiIndex, Series};
use crate::index::IndexSet;
use crate::rational::Rat;
use crate::regmap::MatrixRep;
use crate::seq::Sequence;
use crate::space::PolytopeSpace;

pub use rand_chacha::ChaCha8Rng as SampleRng;

pub fn rng(seed: u64) -> SampleRng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// `p/q` with `|p| ≤ num`, `1 ≤ q ≤ den`.
pub fn rational<R: Rng>(rng: &mut R, num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(rng.gen_range(-num..=num)), BigInt::from(rng.gen_range(1..=den)))
}

pub fn sequence<R: Rng>(rng: &mut R, dim: usize) -> Sequence {
    Sequence((0..dim).map(|_| rational(rng, 6, 4)).collect())
}

pub fn nonnegative<R: Rng>(rng: &mut R, dim: usize) -> Sequence {
    Sequence((0..dim).map(|_| rational(rng, 6, 4).abs()).collect())
}

/// A space whose dual ball is generated by 1–3 random nonnegative integer
/// vectors covering every coordinate.
pub fn space<R: Rng>(rng: &mut R, dim: usize, prefix: &str) -> PolytopeSpace {
    loop {
        let k = rng.gen_range(1..=3);
        let q: Vec<Sequence> = (0..k)
            .map(|_| Sequence((0..dim).map(|_| Rat::from_integer(BigInt::from(rng.gen_range(0..=3)))).collect()))
            .collect();
        if crate::polar::uncovered_coordinate(&q, dim).is_some() {
            continue;
        }
        if let Ok(s) = PolytopeSpace::from_q(IndexSet::numbered(prefix, dim), q, format!("rand{dim}")) {
            return s;
        }
    }
}

pub fn matrix<R: Rng>(rng: &mut R, rows: &IndexSet, cols: &IndexSet) -> MatrixRep {
    let entries = (0..rows.len() * cols.len()).map(|_| rational(rng, 4, 3)).collect();
    MatrixRep::new(rows.clone(), cols.clone(), entries).expect("shape")
}

pub fn multi_index<R: Rng>(rng: &mut R, dim: usize, max_len: usize) -> MultiIndex {
    let len = rng.gen_range(0..=max_len);
    let mut m: Vec<usize> = (0..len).map(|_| rng.gen_range(0..dim)).collect();
    m.sort_unstable();
    m
}

/// Up to `terms` random terms built by `key`, keeping those within the cap.
pub fn series_with<R: Rng, K: Key>(rng: &mut R, dim: usize, cap: usize, terms: usize, mut key: impl FnMut(&mut R) -> Vec<K>) -> Series<K> {
    let mut s = Series::zero(dim, cap);
    for _ in 0..terms {
        let k = key(rng);
        let c = rational(rng, 5, 3);
        s.accumulate(k, c);
    }
    s
}

pub fn series<R: Rng>(rng: &mut R, dim: usize, cap: usize, terms: usize) -> Series<usize> {
    series_with(rng, dim, cap, terms, |r| multi_index(r, dim, cap))
}

/// Random element of `??A`.
pub fn series2<R: Rng>(rng: &mut R, dim: usize, cap: usize, terms: usize) -> Series<MultiIndex> {
    series_with(rng, dim, cap, terms, |r| {
        let outer = r.gen_range(0..=3);
        (0..outer).map(|_| multi_index(r, dim, 2)).collect()
    })
}

/// Random element of `???A`.
pub fn series3<R: Rng>(rng: &mut R, dim: usize, cap: usize, terms: usize) -> Series<Vec<MultiIndex>> {
    series_with(rng, dim, cap, terms, |r| {
        let outer = r.gen_range(0..=2);
        (0..outer)
            .map(|_| {
                let mid = r.gen_range(0..=2);
                let mut m: Vec<MultiIndex> = (0..mid).map(|_| multi_index(r, dim, 2)).collect();
                m.sort();
                m
            })
            .collect()
    })
}
