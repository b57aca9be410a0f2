//! Equational laws of the exponential, checked on random truncated series.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;

use crate::error::Result;
use crate::guard::Guards;
use crate::index::IndexSet;
use crate::rational::{fmt_rat, Rat};
use crate::regmap::apply;
use crate::sample;
use crate::space::PolytopeSpace;

use super::level::{level_norm, lower_bound};
use super::series::{eta, eta_series, lift_eta, lift_lift_matrix, lift_matrix, lift_mu, unit_u, GradedCoeffs, Key, MultiSeries, Series};

/// The digging map under test.
pub trait Digging {
    fn mu<K: Key>(&self, h: &Series<Vec<K>>) -> Series<K>;
}

pub struct Standard;

impl Digging for Standard {
    fn mu<K: Key>(&self, h: &Series<Vec<K>>) -> Series<K> {
        super::series::mu(h)
    }
}

/// Doubles every term whose outer multiset has exactly two parts.
pub struct CorruptedMu;

impl Digging for CorruptedMu {
    fn mu<K: Key>(&self, h: &Series<Vec<K>>) -> Series<K> {
        let mut s = Series::zero(h.dim(), h.cap());
        for (m, v) in h.terms() {
            let c = if m.len() == 2 {
                v * Rat::from_integer(BigInt::from(2))
            } else {
                v.clone()
            };
            s.accumulate(m.iter().flatten().cloned().collect(), c);
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawResult {
    pub law: &'static str,
    pub passed: bool,
    pub checks: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub results: Vec<LawResult>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawResult> {
        self.results.iter().filter(|r| !r.passed)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "passed": self.passed(),
            "laws": self.results.iter().map(|r| serde_json::json!({
                "law": r.law, "passed": r.passed, "checks": r.checks, "witness": r.witness,
            })).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub cap: usize,
    pub level: usize,
    pub trials: usize,
    pub lifts: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            cap: 4,
            level: 4,
            trials: 10,
            lifts: 20,
            seed: 7,
        }
    }
}

struct Law {
    name: &'static str,
    checks: usize,
    witness: Option<String>,
}

impl Law {
    fn new(name: &'static str) -> Self {
        Law {
            name,
            checks: 0,
            witness: None,
        }
    }

    fn equal<K: Key>(&mut self, lhs: &Series<K>, rhs: &Series<K>) {
        self.checks += 1;
        if self.witness.is_none() {
            if let Some((k, a, b)) = lhs.first_difference(rhs) {
                self.witness = Some(format!("at {k:?}: {} != {}", fmt_rat(&a), fmt_rat(&b)));
            }
        }
    }

    fn holds(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn done(self) -> LawResult {
        LawResult {
            law: self.name,
            passed: self.witness.is_none(),
            checks: self.checks,
            witness: self.witness,
        }
    }
}

fn random_multi<R: Rng>(rng: &mut R, dim: usize, cap: usize, arity: usize) -> MultiSeries {
    let terms: Vec<_> = (0..12)
        .map(|_| {
            (
                (0..arity).map(|_| sample::multi_index(rng, dim, cap)).collect(),
                sample::rational(rng, 5, 3),
            )
        })
        .collect();
    MultiSeries::from_terms(dim, cap, arity, terms).expect("slots within cap")
}

pub fn law_suite(a: &PolytopeSpace, cfg: &SuiteConfig, guards: &Guards) -> Result<LawReport> {
    law_suite_with(&Standard, a, cfg, guards)
}

pub fn law_suite_with<D: Digging>(dig: &D, a: &PolytopeSpace, cfg: &SuiteConfig, guards: &Guards) -> Result<LawReport> {
    let dim = a.dim();
    let d = cfg.cap;
    let mut rng = sample::rng(cfg.seed);
    let mut laws = Vec::new();

    let mut assoc = Law::new("m associativity");
    let mut comm = Law::new("m commutativity");
    let mut unit_l = Law::new("m left unit (contraction of weakening)");
    let mut unit_r = Law::new("m right unit (contraction of weakening)");
    let mut eta_l = Law::new("mu . eta = id");
    let mut eta_r = Law::new("mu . ?eta = id");
    let mut mu_assoc = Law::new("mu . mu = mu . ?mu");
    let mut exact = Law::new("degree exactness");
    let u = unit_u(Rat::one(), dim, d);
    for _ in 0..cfg.trials {
        let g3 = random_multi(&mut rng, dim, d, 3);
        assoc.equal(&g3.merge(0)?.merge(0)?.into_series()?, &g3.merge(1)?.merge(0)?.into_series()?);
        let g2 = random_multi(&mut rng, dim, d, 2);
        comm.equal(&g2.swap(0)?.merge(0)?.into_series()?, &g2.merge(0)?.into_series()?);
        let f = sample::series(&mut rng, dim, d, 10);
        unit_l.equal(&MultiSeries::tensor(&[&u, &f])?.merge(0)?.into_series()?, &f);
        unit_r.equal(&MultiSeries::tensor(&[&f, &u])?.merge(0)?.into_series()?, &f);
        eta_l.equal(&dig.mu(&eta_series(&f)), &f);
        eta_r.equal(&dig.mu(&lift_eta(&f)), &f);
        let h3 = sample::series3(&mut rng, dim, d, 10);
        mu_assoc.equal(&dig.mu(&dig.mu(&h3)), &dig.mu(&lift_mu(&h3)));
        let h2 = sample::series2(&mut rng, dim, d, 10);
        if d > 0 {
            exact.equal(&dig.mu(&h2).truncate(d - 1), &dig.mu(&h2.truncate(d - 1)));
            exact.equal(&g3.merge(0)?.merge(0)?.into_series()?.truncate(d - 1), &{
                let cut = MultiSeries::from_terms(
                    dim,
                    d - 1,
                    3,
                    g3.terms()
                        .filter(|(k, _)| k.iter().all(|m| m.len() < d))
                        .map(|(k, v)| (k.clone(), v.clone())),
                )?;
                cut.merge(0)?.merge(0)?.into_series()?
            });
        }
    }
    laws.extend([assoc, comm, unit_l, unit_r, eta_l, eta_r, mu_assoc, exact].map(Law::done));

    let mut eta_nat = Law::new("eta naturality");
    let mut mu_nat = Law::new("mu naturality");
    let mut lift_contract = Law::new("lift evaluates through the adjoint");
    for t in 0..cfg.lifts {
        let dim_b = 1 + t % 3;
        let l = sample::matrix(&mut rng, a.index(), &IndexSet::numbered("b", dim_b));
        let x = sample::sequence(&mut rng, dim);
        eta_nat.equal(&lift_matrix(&l, &eta(&x, d))?, &eta(&apply(&l, &x)?, d));
        let h = sample::series2(&mut rng, dim, d, 8);
        mu_nat.equal(&lift_matrix(&l, &dig.mu(&h))?, &dig.mu(&lift_lift_matrix(&l, &h)?));
        let f = sample::series(&mut rng, dim, d, 8);
        let y = sample::sequence(&mut rng, dim_b);
        let lhs = lift_matrix(&l, &f)?.eval(&y)?;
        let rhs = f.eval(&apply(&crate::regmap::adjoint(&l), &y)?)?;
        lift_contract.holds(lhs == rhs, || format!("{} != {}", fmt_rat(&lhs), fmt_rat(&rhs)));
    }
    laws.extend([eta_nat, mu_nat, lift_contract].map(Law::done));

    let n = cfg.level.max(d);
    let mut u_norm = Law::new("u has norm at most 1");
    let un = level_norm(a, &u, n, guards)?;
    u_norm.holds(un <= Rat::one(), || format!("level norm {}", fmt_rat(&un)));
    let mut eta_norm = Law::new("eta has norm at most 1");
    for p in a.p() {
        let v = level_norm(a, &eta(p, d), n, guards)?;
        eta_norm.holds(v <= Rat::one(), || format!("eta({p:?}) has level norm {}", fmt_rat(&v)));
    }
    let mut m_norm = Law::new("m has norm at most 1 (sampled)");
    let half = d / 2;
    for _ in 0..cfg.trials {
        let f = sample::series(&mut rng, dim, half, 4).truncate(d);
        let g = sample::series(&mut rng, dim, half, 4).truncate(d);
        let fg = MultiSeries::tensor(&[&f, &g])?.merge(0)?.into_series()?;
        let (lo, x) = lower_bound(a, &fg, 8, rng.gen())?;
        let hi = level_norm(a, &f, n, guards)? * level_norm(a, &g, n, guards)?;
        m_norm.holds(lo <= hi, || format!("|fg|({x:?}) = {} above {}", fmt_rat(&lo), fmt_rat(&hi)));
    }
    laws.extend([u_norm, eta_norm, m_norm].map(Law::done));
    Ok(LawReport { results: laws })
}

/// `(μ h)(x) = h(δ_x)` evaluated without truncating `δ_x`.
pub fn digging_matches_delta(h: &Series<Vec<usize>>, x: &crate::seq::Sequence) -> Result<bool> {
    let lhs = super::series::mu(h).eval(x)?;
    let rhs = h.eval_with(|m| super::series::monomial(x, m));
    Ok(lhs == rhs)
}

/// `⟨f, δ_x⟩` with `δ_x` truncated at the cap of `f`.
pub fn pair_with_delta(f: &GradedCoeffs, x: &crate::seq::Sequence) -> Result<Rat> {
    f.pair(&super::series::delta(x, f.cap()))
}
