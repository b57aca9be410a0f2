//! Acceptance suite. Runs without the libtest harness so every criterion
//! prints one line; exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use rss_core::connectives::{coproduct, cotensor, dual, hom, product, tensor, unit, zero};
use rss_core::counterexample;
use rss_core::expo::level::non_increasing;
use rss_core::expo::series::{all_multisets, delta, mu, GradedCoeffs, MultiIndex, Series};
use rss_core::expo::{convergence, law_suite, law_suite_with, CorruptedMu, SuiteConfig};
use rss_core::ll::{interpret, morphism_bound, parse_proof, Bindings, Env};
use rss_core::{map_norm, pairing, sample, Guards, IndexSet, PolytopeSpace, Rat, Sequence};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

fn ints(v: &[i64]) -> Sequence {
    Sequence::from_ints(v)
}

fn space_q(prefix: &str, q: &[&[i64]]) -> PolytopeSpace {
    let dim = q[0].len();
    PolytopeSpace::from_q(IndexSet::numbered(prefix, dim), q.iter().map(|r| ints(r)).collect(), prefix).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn to_f64(r: &Rat) -> f64 {
    let s = rss_core::rational::fmt_decimal(r, 15);
    s.parse().unwrap()
}

// 1. Pairing bound.
fn pairing_bound() -> Outcome {
    let mut rng = sample::rng(101);
    for k in 0..200 {
        let dim = 2 + k % 3;
        let s = sample::space(&mut rng, dim, "x");
        let a = sample::sequence(&mut rng, dim);
        let b = sample::sequence(&mut rng, dim);
        let lhs = pairing(&a, &b).unwrap().abs();
        let rhs = s.norm(&a).unwrap() * s.dual_norm(&b).unwrap();
        ensure(lhs <= rhs, || format!("pair {k}: |<a,b>| = {lhs} > {rhs}"))?;
    }
    Ok("200 pairs in dims 2-4".into())
}

// 2. Duality involution and generator max versus LP.
fn duality() -> Outcome {
    let mut rng = sample::rng(202);
    let mut lps = 0;
    for k in 0..50 {
        let dim = 2 + k % 3;
        let s = sample::space(&mut rng, dim, "x");
        let dd = dual(&dual(&s));
        ensure(dd.p() == s.p() && dd.q() == s.q(), || format!("space {k}: dual(dual(A)) != A"))?;
        for _ in 0..100 {
            let c = sample::nonnegative(&mut rng, dim);
            // Max of <c, .> over the ball is the dual norm, over the dual ball the norm.
            let ball = s.ball_support_lp(&c).unwrap().ok_or("ball LP unbounded")?;
            ensure(ball == s.dual_norm(&c).unwrap(), || {
                format!("space {k}: ball LP {ball} != generator max")
            })?;
            let dball = s.dual().ball_support_lp(&c).unwrap().ok_or("dual ball LP unbounded")?;
            ensure(dball == s.norm(&c).unwrap(), || {
                format!("space {k}: dual LP {dball} != generator max")
            })?;
            lps += 2;
        }
    }
    Ok(format!("50 spaces, {lps} LPs"))
}

/// Solves a square system exactly; `None` if singular.
fn solve(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                let pivot = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot).skip(col) {
                    *x -= &f * p;
                }
                let d = &f * &b[col];
                b[r] -= d;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Vertices of `{x >= 0 : <x, q> <= 1}` by brute force over active constraint sets.
fn nonnegative_ball_vertices(q: &[Sequence], dim: usize) -> Vec<Vec<Rat>> {
    let mut rows: Vec<(Vec<Rat>, Rat)> = q.iter().map(|g| (g.entries().to_vec(), Rat::one())).collect();
    for i in 0..dim {
        rows.push((
            (0..dim).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect(),
            Rat::zero(),
        ));
    }
    let mut out = Vec::new();
    for set in subsets(rows.len(), dim) {
        let a = set.iter().map(|&r| rows[r].0.clone()).collect();
        let b = set.iter().map(|&r| rows[r].1.clone()).collect();
        if let Some(x) = solve(a, b) {
            let feasible = x.iter().all(|v| !v.is_negative())
                && q.iter()
                    .all(|g| g.entries().iter().zip(&x).map(|(a, b)| a * b).sum::<Rat>() <= Rat::one());
            if feasible && !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out
}

// 3. Map norm against brute force and a grid of the defining sup.
fn map_norm_oracles() -> Outcome {
    let mut rng = sample::rng(303);
    let mut worst_gap = 0.0f64;
    for k in 0..30 {
        let (n, m) = (2 + k % 2, 2 + (k / 2) % 2);
        let a = sample::space(&mut rng, n, "a");
        let b = sample::space(&mut rng, m, "b");
        let mat = sample::matrix(&mut rng, a.index(), b.index());
        let exact = map_norm(&a, &b, &mat).unwrap();
        let abs = |i: usize, j: usize| mat.get(i, j).abs();
        // sup over the nonnegative ball of A and the solid hull of Q_B.
        let value = |x: &[Rat]| -> Rat {
            let image: Vec<Rat> = (0..m).map(|j| (0..n).map(|i| abs(i, j) * &x[i]).sum()).collect();
            b.q()
                .iter()
                .map(|q| q.entries().iter().zip(&image).map(|(u, v)| u * v).sum::<Rat>())
                .max()
                .unwrap()
        };
        let brute = nonnegative_ball_vertices(a.q(), n).iter().map(|x| value(x)).max().unwrap();
        ensure(brute == exact, || {
            format!("matrix {k}: map_norm {exact} != vertex brute force {brute}")
        })?;

        let qa: Vec<Vec<f64>> = a.q().iter().map(|q| q.entries().iter().map(to_f64).collect()).collect();
        let qb: Vec<Vec<f64>> = b.q().iter().map(|q| q.entries().iter().map(to_f64).collect()).collect();
        let mf: Vec<Vec<f64>> = (0..n).map(|i| (0..m).map(|j| to_f64(&abs(i, j))).collect()).collect();
        let feasible = |x: &[f64]| qa.iter().all(|q| q.iter().zip(x).map(|(u, v)| u * v).sum::<f64>() <= 1.0 + 1e-12);
        let eval = |x: &[f64]| {
            let image: Vec<f64> = (0..m).map(|j| (0..n).map(|i| mf[i][j] * x[i]).sum()).collect();
            qb.iter()
                .map(|q| q.iter().zip(&image).map(|(u, v)| u * v).sum::<f64>())
                .fold(0.0, f64::max)
        };
        let mut grid = 0.0f64;
        let steps: Vec<f64> = (0..=100).map(|s| s as f64 / 100.0).collect();
        let mut x = vec![0.0; n];
        // The objective is monotone, so for each prefix only the largest feasible last coordinate matters.
        let prefixes: Vec<Vec<f64>> = if n == 2 {
            steps.iter().map(|&u| vec![u]).collect()
        } else {
            steps.iter().flat_map(|&u| steps.iter().map(move |&v| vec![u, v])).collect()
        };
        for p in prefixes {
            x[..n - 1].copy_from_slice(&p);
            x[n - 1] = 0.0;
            if !feasible(&x) {
                continue;
            }
            for &t in steps.iter().rev() {
                x[n - 1] = t;
                if feasible(&x) {
                    grid = grid.max(eval(&x));
                    break;
                }
            }
        }
        let e = to_f64(&exact);
        ensure(e >= grid - 1e-3, || format!("matrix {k}: grid sample {grid} exceeds map_norm {e}"))?;
        worst_gap = worst_gap.max(e - grid);
    }
    Ok(format!("30 matrices; largest map_norm - grid gap {worst_gap:.4}"))
}

fn same(x: &PolytopeSpace, y: &PolytopeSpace) -> bool {
    x.same_up_to_relabel(y)
}

// 4. *-autonomy identities on a fixed family.
fn star_autonomy() -> Outcome {
    let g = Guards::default();
    let family = vec![
        space_q("l", &[&[2]]),
        PolytopeSpace::sup_norm(IndexSet::numbered("u", 2)),
        PolytopeSpace::sum_norm(IndexSet::numbered("s", 2)),
        space_q("k", &[&[2, 1], &[1, 3]]),
        space_q("m", &[&[1, 1, 0], &[0, 1, 2]]),
    ];
    let mut checks = 0;
    let (one, nil) = (unit(), zero());
    for a in &family {
        let name = a.name.to_string();
        let mut law = |ok: bool, what: &str| -> Result<(), String> {
            checks += 1;
            ensure(ok, || format!("{what} fails for {name}"))
        };
        law(same(&dual(&dual(a)), a), "A** = A")?;
        law(same(&tensor(a, &one, &g).unwrap(), a), "A (x) 1 = A")?;
        law(same(&cotensor(a, &dual(&one), &g).unwrap(), a), "A par bot = A")?;
        law(same(&product(a, &nil, &g).unwrap(), a), "A & T = A")?;
        law(same(&coproduct(a, &dual(&nil), &g).unwrap(), a), "A + 0 = A")?;
        law(same(&hom(&one, a, &g).unwrap(), a), "1 -o A = A")?;
        law(same(&hom(a, &dual(&one), &g).unwrap(), &dual(a)), "A -o bot = A*")?;
    }
    for a in &family {
        for b in &family {
            let names = format!("({}, {})", a.name, b.name);
            let mut law = |ok: bool, what: &str| -> Result<(), String> {
                checks += 1;
                ensure(ok, || format!("{what} fails for {names}"))
            };
            let t = tensor(a, b, &g).unwrap();
            let h = hom(a, b, &g).unwrap();
            law(same(&t, &dual(&hom(a, &dual(b), &g).unwrap())), "A (x) B = (A -o B*)*")?;
            law(same(&h, &dual(&tensor(a, &dual(b), &g).unwrap())), "A -o B = (A (x) B*)*")?;
            law(same(&h, &cotensor(&dual(a), b, &g).unwrap()), "A -o B = A* par B")?;
            law(
                same(&dual(&t), &cotensor(&dual(a), &dual(b), &g).unwrap()),
                "(A (x) B)* = A* par B*",
            )?;
            law(
                same(&dual(&product(a, b, &g).unwrap()), &coproduct(&dual(a), &dual(b), &g).unwrap()),
                "(A & B)* = A* + B*",
            )?;
            // Symmetry: swap the two tensor factors.
            let (n, m) = (a.dim(), b.dim());
            let perm: Vec<usize> = (0..m * n).map(|k| (k % n) * m + k / n).collect();
            let swapped = tensor(b, a, &g).unwrap().permute(&perm, t.index().clone()).unwrap();
            law(same(&swapped, &t), "A (x) B = B (x) A")?;
            // The coproduct ball is the convex hull of the two balls, so Q is all concatenations.
            let q: Vec<Sequence> = a
                .q()
                .iter()
                .flat_map(|x| {
                    b.q()
                        .iter()
                        .map(move |y| Sequence(x.entries().iter().chain(y.entries()).cloned().collect()))
                })
                .collect();
            let expect = PolytopeSpace::from_q(IndexSet::numbered("c", n + m), q, "c").unwrap();
            law(same(&coproduct(a, b, &g).unwrap(), &expect), "Q(A + B) = Q(A) x Q(B)")?;
        }
    }
    let small = &family[..4];
    for a in small {
        for b in small {
            for c in small {
                checks += 1;
                let left = tensor(&tensor(a, b, &g).unwrap(), c, &g).unwrap();
                let right = tensor(a, &tensor(b, c, &g).unwrap(), &g).unwrap();
                ensure(same(&left, &right), || {
                    format!("(A (x) B) (x) C fails for ({}, {}, {})", a.name, b.name, c.name)
                })?;
            }
        }
    }
    Ok(format!("{checks} exact generator-set identities on a 5-space family"))
}

// 5. Counterexample.
fn counterexample() -> Outcome {
    let report = counterexample::report(8).map_err(|e| e.to_string())?;
    let mut harmonic = Rat::zero();
    let mut partial = Rat::zero();
    let mut prev_total: Option<Rat> = None;
    for (row, n) in report.levels.iter().zip(1usize..) {
        harmonic += rat(1, n as i64);
        partial += &row.abs_omega;
        let half_h = &harmonic / rat(2, 1);
        ensure(partial == half_h, || {
            format!("N = {n}: truncated norm {partial} != H_N/2 = {half_h}")
        })?;
        if let Some(p) = &prev_total {
            ensure(&partial > p, || format!("N = {n}: truncated norm did not increase"))?;
        }
        prev_total = Some(partial.clone());

        // Independent enumeration of D(w) = |#1 - #0| over words of length 2n.
        let t_binom = &row.t_binomial;
        if n <= 6 {
            let len = 2 * n;
            let t: u64 = (0u64..1 << len)
                .map(|w| (2 * w.count_ones() as i64 - len as i64).unsigned_abs())
                .sum();
            let t = BigInt::from(t);
            ensure(row.t_enumerated.as_ref() == Some(&t), || {
                format!("n = {n}: enumerated T {:?} != oracle {t}", row.t_enumerated)
            })?;
            ensure(t_binom == &t, || format!("n = {n}: binomial T {t_binom} != oracle {t}"))?;
        }
        let expect_bound = Rat::new(t_binom.clone(), BigInt::from(4 * n * n) << (2 * n));
        ensure(row.level_bound == expect_bound, || {
            format!("n = {n}: level bound {} != T/(4n^2 4^n)", row.level_bound)
        })?;
    }
    ensure(report.abs_omega_norm == partial, || "report total disagrees with level sum".into())?;
    ensure(report.t_mismatches().is_empty(), || "report flags T mismatches".into())?;
    ensure(report.bounds_decreasing(), || "level bounds are not decreasing".into())?;
    let total: Rat = report.levels.iter().map(|r| r.level_bound.clone()).sum();
    ensure(total < Rat::one(), || format!("cumulative level bound {total} is not below 1"))?;

    // Matrix oracle for small N: |L| applied to the all-ones vector, summed over the codomain.
    for n in 1..=5 {
        let inst = counterexample::build(n, &Guards::default()).map_err(|e| e.to_string())?;
        let cols = inst.l.n_cols();
        let rows = inst.l.n_rows();
        let s: Rat = (0..cols)
            .flat_map(|j| (0..rows).map(move |i| (i, j)))
            .map(|(i, j)| inst.l.get(i, j).abs())
            .sum();
        ensure(s == report.levels[..n].iter().map(|r| r.abs_omega.clone()).sum::<Rat>(), || {
            format!("N = {n}: matrix sum {s} disagrees")
        })?;
    }
    Ok(format!(
        "H_N/2 for N = 1..8 (N = 8: {}), T_n for n <= 6, cumulative bound {} ~ {:.6}",
        report.abs_omega_norm,
        total,
        to_f64(&total)
    ))
}

// 6. Exponential law suite.
fn exponential_laws() -> Outcome {
    let g = Guards::default();
    let bases = [space_q("l", &[&[2]]), space_q("k", &[&[2, 1], &[1, 3]])];
    let cfg = SuiteConfig {
        cap: 4,
        level: 4,
        trials: 10,
        lifts: 20,
        seed: 606,
    };
    let required = [
        "m associativity",
        "m commutativity",
        "mu . eta = id",
        "mu . ?eta = id",
        "mu . mu = mu . ?mu",
    ];
    let mut checks = 0;
    for a in &bases {
        let rep = law_suite(a, &cfg, &g).map_err(|e| e.to_string())?;
        for r in &rep.results {
            ensure(r.passed, || {
                format!("dim {}: {} fails: {}", a.dim(), r.law, r.witness.clone().unwrap_or_default())
            })?;
            checks += r.checks;
        }
        for law in required {
            ensure(rep.results.iter().any(|r| r.law == law), || {
                format!("law `{law}` missing from the suite")
            })?;
        }
        for kind in ["unit", "naturality"] {
            ensure(rep.results.iter().any(|r| r.law.contains(kind)), || {
                format!("no {kind} law in the suite")
            })?;
        }
        // A corrupted digging must be caught.
        let bad = law_suite_with(&CorruptedMu, a, &cfg, &g).map_err(|e| e.to_string())?;
        ensure(!bad.passed(), || format!("dim {}: corrupted digging passed", a.dim()))?;
    }
    Ok(format!("dims 1 and 2, cap 4, 20 lifts, {checks} exact checks"))
}

// 7. Level-norm convergence.
fn level_convergence() -> Outcome {
    let g = Guards::default();
    let mut rng = sample::rng(707);
    for k in 0..8 {
        let dim = 1 + k % 2;
        let cap = 1 + k % 3;
        let a = sample::space(&mut rng, dim, "x");
        let f = sample::series(&mut rng, dim, cap, 5);
        let rows = convergence(&a, &f, cap + 8, 16, 7, &g).map_err(|e| e.to_string())?;
        ensure(non_increasing(&rows), || format!("random series {k}: level norms increase"))?;
    }
    let start = Instant::now();
    let a = PolytopeSpace::sup_norm(IndexSet::numbered("b", 2));
    let f = GradedCoeffs::from_terms(2, 2, [(vec![0, 1], Rat::one())]).unwrap();
    let rows = convergence(&a, &f, 40, 64, 7, &g).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    ensure(non_increasing(&rows), || "x1 x2: level norms increase".into())?;
    let at = |n: usize| {
        rows.iter()
            .find(|r| r.n == n)
            .map(|r| r.width())
            .ok_or(format!("no row for n = {n}"))
    };
    let (w20, w40) = (at(20)?, at(40)?);
    ensure(&w40 * rat(2, 1) < w20, || {
        format!("width {w40} at n = 40 is not below half of {w20} at n = 20")
    })?;
    ensure(w40 < rat(1, 20), || format!("width {w40} at n = 40 is not below 0.05"))?;
    ensure(secs < 60.0, || format!("took {secs:.1} s"))?;
    Ok(format!("width {w20} at n = 20, {w40} at n = 40, {secs:.2} s"))
}

fn power(x: &Sequence, mu: &[usize]) -> Rat {
    let mut r = Rat::one();
    for &i in mu {
        r *= &x.entries()[i];
    }
    r
}

// 8. Delta pairing and digging.
fn delta_and_digging() -> Outcome {
    let mut rng = sample::rng(808);
    let (dim, d) = (2, 4);
    let basis = all_multisets(dim, d);
    for k in 0..50 {
        let x = sample::sequence(&mut rng, dim);
        let dx = delta(&x, d);
        // Pairing is linear in f, so the monomial basis covers every f of degree <= d.
        for m in &basis {
            let e: GradedCoeffs = Series::from_terms(dim, d, [(m.clone(), Rat::one())]).unwrap();
            ensure(e.pair(&dx).unwrap() == power(&x, m), || {
                format!("x {k}: <y^{m:?}, delta_x> != x^{m:?}")
            })?;
        }
        let f = sample::series(&mut rng, dim, d, 8);
        let fx: Rat = f.terms().map(|(m, c)| c * power(&x, m)).sum();
        ensure(f.pair(&dx).unwrap() == fx, || format!("x {k}: <f, delta_x> != f(x)"))?;

        let h: Series<MultiIndex> = sample::series2(&mut rng, dim, d, 8);
        let h_at_delta: Rat = h
            .terms()
            .map(|(ms, c)| ms.iter().fold(c.clone(), |acc, m| acc * power(&x, m)))
            .sum();
        let muh = mu(&h);
        let muh_x: Rat = muh.terms().map(|(m, c)| c * power(&x, m)).sum();
        ensure(muh_x == h_at_delta, || format!("x {k}: (mu h)(x) != h(delta_x)"))?;
        for t in 0..d {
            ensure(mu(&h.truncate(t)) == muh.truncate(t), || {
                format!("x {k}: digging does not commute with truncation at {t}")
            })?;
        }
    }
    Ok(format!("50 points, {} basis monomials, degree <= {d}", basis.len()))
}

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

// 9. Interpreter sanity.
fn interpreter() -> Outcome {
    let dir = corpus();
    let text = std::fs::read_to_string(dir.join("bindings.json")).map_err(|e| e.to_string())?;
    let b = Bindings::from_json(&serde_json::from_str(&text).unwrap(), Some(&dir)).map_err(|e| e.to_string())?;
    let low = Env::new(&b, 3, Guards::default());
    let high = Env::new(&b, 5, Guards::default());
    for name in ["ax", "cut_ax"] {
        let src = std::fs::read_to_string(dir.join("proofs").join(format!("{name}.proof"))).unwrap();
        let t = interpret(&parse_proof(&src).unwrap(), &low).map_err(|e| e.to_string())?;
        let m = t.to_matrix().map_err(|e| e.to_string())?;
        let n = m.n_rows();
        ensure(m.n_cols() == n, || format!("{name}: not square"))?;
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { Rat::one() } else { Rat::zero() };
                ensure(m.get(i, j) == &want, || format!("{name}: entry ({i},{j}) is {}", m.get(i, j)))?;
            }
        }
    }
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir.join("proofs")).unwrap().map(|e| e.unwrap().path()).collect();
    paths.sort();
    let mut worst = Rat::zero();
    for path in &paths {
        let name = path.file_stem().unwrap().to_string_lossy().into_owned();
        let p = parse_proof(&std::fs::read_to_string(path).unwrap()).map_err(|e| format!("{name}: {e}"))?;
        let t3 = interpret(&p, &low).map_err(|e| format!("{name}: {e}"))?;
        let t5 = interpret(&p, &high).map_err(|e| format!("{name}: {e}"))?;
        for (t, env) in [(&t3, &low), (&t5, &high)] {
            let bound = morphism_bound(t, env, 6).map_err(|e| format!("{name}: {e}"))?;
            ensure(bound.upper <= Rat::one(), || format!("{name}: norm bound {}", bound.upper))?;
            worst = worst.max(bound.upper);
        }
        ensure(t5.restricted_to(&t3) == t3.labeled(), || format!("{name}: caps 3 and 5 disagree"))?;
    }
    Ok(format!("{} corpus proofs, largest bound {worst}", paths.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("pairing bound", pairing_bound),
        ("duality involution and LP", duality),
        ("map norm oracles", map_norm_oracles),
        ("*-autonomy identities", star_autonomy),
        ("counterexample", counterexample),
        ("exponential laws", exponential_laws),
        ("level-norm convergence", level_convergence),
        ("delta and digging", delta_and_digging),
        ("interpreter", interpreter),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}) [{secs:.1}s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why} [{secs:.1}s]", k + 1);
            }
        }
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
