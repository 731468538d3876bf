//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, Stdio};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use weylhom::carterpayne::{example64_family, verify_cor62, verify_prop61};
use weylhom::dpa::bounded_monomials;
use weylhom::homspace::{theorem31_conditions, verify_theorem31, Verdict};
use weylhom::modarith::p_divides_r;
use weylhom::tableaux::{partitions, two_row_shapes};
use weylhom::weyl2::{straighten_first_column, Straightened};
use weylhom::{Bideterminant, HomSolver, Partition, PrimeField, Straightener, TwoRowShape, TwoRowTableau, WeylElement};

type Outcome = Result<String, String>;

fn gf(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pascal(rows: usize) -> Vec<Vec<BigUint>> {
    let mut out = vec![vec![BigUint::one()]];
    for n in 1..=rows {
        let prev = &out[n - 1];
        let mut row = vec![BigUint::one(); n + 1];
        for k in 1..n {
            row[k] = &prev[k - 1] + &prev[k];
        }
        out.push(row);
    }
    out
}

struct Binomials(Vec<Vec<BigUint>>);

impl Binomials {
    fn new(rows: usize) -> Self {
        Binomials(pascal(rows))
    }

    fn get(&self, a: i64, b: i64) -> BigInt {
        if a < 0 || b < 0 || b > a {
            return BigInt::zero();
        }
        BigInt::from(self.0[a as usize][b as usize].clone())
    }

    /// `gcd{C(x, 1), C(x+1, 2), ..., C(x+y-1, y)}`, zero for `y = 0`.
    fn r(&self, x: u64, y: u64) -> BigUint {
        (1..=y).fold(BigUint::zero(), |g, j| g.gcd(&self.0[(x + j - 1) as usize][j as usize]))
    }

    fn p_divides_r(&self, x: u64, y: u64, p: u32) -> bool {
        (self.r(x, y) % BigUint::from(p)).is_zero()
    }
}

/// Partial sums of `mu` bound those of `lambda`.
fn dominates(mu: &[u32], lambda: &[u32]) -> bool {
    let len = mu.len().max(lambda.len());
    let (mut sm, mut sl) = (0u32, 0u32);
    for i in 0..len {
        sm += mu.get(i).copied().unwrap_or(0);
        sl += lambda.get(i).copied().unwrap_or(0);
        if sm < sl {
            return false;
        }
    }
    true
}

/// Weakly increasing sequences of `len` letters from `1..=n`.
fn sorted_rows(len: u32, n: u32) -> Vec<Vec<u32>> {
    fn go(len: u32, min: u32, n: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() as u32 == len {
            out.push(cur.clone());
            return;
        }
        for v in min..=n {
            cur.push(v);
            go(len, v, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, 1, n, &mut Vec::new(), &mut out);
    out
}

/// Standard fillings of `shape` with letters `1..=n`, counted by weight.
fn standard_counts(shape: TwoRowShape, n: u32) -> std::collections::HashMap<Vec<u32>, usize> {
    let mut counts = std::collections::HashMap::new();
    for top in sorted_rows(shape.first, n) {
        for bottom in sorted_rows(shape.second, n) {
            if bottom.iter().zip(&top).all(|(b, t)| t < b) {
                let mut w = vec![0u32; n as usize];
                for &c in top.iter().chain(&bottom) {
                    w[(c - 1) as usize] += 1;
                }
                *counts.entry(w).or_insert(0) += 1;
            }
        }
    }
    counts
}

fn two_part(r: u32) -> Vec<Partition> {
    partitions(r, 2)
}

fn c1_divisibility_criterion() -> Outcome {
    let table = Binomials::new(320);
    let mut checked = 0;
    for p in [2u32, 3, 5, 7] {
        for x in 1..=300u64 {
            for y in 1..=x.min(12) {
                let exact = table.p_divides_r(x, y, p);
                ensure(p_divides_r(x, y, gf(p)) == exact, || format!("p={p}, x={x}, y={y}: gcd says {exact}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} triples"))
}

fn c2_binomial_identities() -> Outcome {
    let b = Binomials::new(40);
    let mut instances = 0usize;
    // (1a) and (1b): every (m_1..m_s) with m_i <= 6, s <= 4.
    for s in 1..=4usize {
        let total = 7usize.pow(s as u32);
        for code in 0..total {
            let ms: Vec<i64> = (0..s).map(|i| ((code / 7usize.pow(i as u32)) % 7) as i64).collect();
            let m: i64 = ms.iter().sum();
            let mut by_a = vec![BigInt::zero(); m as usize + 1];
            let mut alternating = BigInt::zero();
            let mut js = vec![0i64; s];
            loop {
                let prod: BigInt = ms.iter().zip(&js).map(|(&mi, &ji)| b.get(mi, ji)).product();
                let a: i64 = js.iter().sum();
                // j_0 = m - a
                if (m - a) % 2 == 0 {
                    alternating += &prod;
                } else {
                    alternating -= &prod;
                }
                by_a[a as usize] += prod;
                let mut k = 0;
                while k < s && js[k] == ms[k] {
                    js[k] = 0;
                    k += 1;
                }
                if k == s {
                    break;
                }
                js[k] += 1;
            }
            for (a, v) in by_a.iter().enumerate() {
                ensure(*v == b.get(m, a as i64), || format!("(1a) fails for m={ms:?}, a={a}"))?;
                instances += 1;
            }
            if m > 0 {
                ensure(alternating.is_zero(), || format!("(1b) fails for m={ms:?}"))?;
                instances += 1;
            }
        }
    }
    // (2): both alternating sums equal C(a - b + c, c).
    for a in 0..=10i64 {
        for bb in 0..=a {
            for c in 0..=10i64 {
                let target = b.get(a - bb + c, c);
                let sgn = |k: i64| if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                let first: BigInt = (0..=c).map(|j| sgn(c - j) * b.get(a + j, j) * b.get(bb, c - j)).sum();
                let second: BigInt = (0..=c).map(|j| sgn(j) * b.get(a + c - j, c - j) * b.get(bb, j)).sum();
                ensure(first == target && second == target, || format!("(2) fails for a={a}, b={bb}, c={c}"))?;
                instances += 2;
            }
        }
    }
    Ok(format!("{instances} instances"))
}

fn c3_standard_basis() -> Outcome {
    let mut spaces = 0;
    for p in [2u32, 3, 5] {
        let st = Straightener::new(gf(p));
        for r in 1..=8u32 {
            for shape in two_row_shapes(r) {
                let counts = standard_counts(shape, 4);
                for weight in bounded_monomials(&[r; 4], r) {
                    let w = weight.exps();
                    let expected = counts.get(w).copied().unwrap_or(0);
                    let got = st.weight_space_dimension(shape, w);
                    ensure(got == expected, || format!("p={p}, mu={shape}, weight={w:?}: {got} != {expected}"))?;
                    spaces += 1;
                }
            }
        }
    }
    Ok(format!("{spaces} weight spaces"))
}

fn c4_straightening_oracle() -> Outcome {
    let mut checked = 0;
    for p in [2u32, 3, 5] {
        let f = gf(p);
        let st = Straightener::new(f);
        for r in 1..=7u32 {
            for shape in two_row_shapes(r).into_iter().filter(|s| s.second > 0) {
                for a in bounded_monomials(&[shape.first; 4], shape.first) {
                    for b in bounded_monomials(&[shape.second; 4], shape.second) {
                        if b.exps()[0] == 0 {
                            continue;
                        }
                        let bd = Bideterminant::new(shape, a.exps().to_vec(), b.exps().to_vec()).unwrap();
                        let oracle = st.express_bideterminant(&bd).map_err(|e| e.to_string())?;
                        let closed = match straighten_first_column(&bd, f) {
                            Straightened::Done(e) => e,
                            Straightened::NonStandard(terms) => {
                                let mut e = WeylElement::zero(shape, f);
                                for (t, c) in terms {
                                    e.add_scaled(&st.express_bideterminant(&t).map_err(|e| e.to_string())?, c);
                                }
                                e
                            }
                        };
                        ensure(closed == oracle, || format!("p={p}, {bd}: closed form {closed} vs quotient {oracle}"))?;
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checked} bideterminants"))
}

fn c5_cyclicity() -> Outcome {
    let mut pairs = 0;
    for p in [2u32, 3] {
        for r in 1..=6u32 {
            for lambda in partitions(r, r as usize) {
                for mu in two_part(r) {
                    let solver = HomSolver::new(&lambda, &mu, gf(p)).map_err(|e| e.to_string())?;
                    let gen = solver.constraint_matrix().map_err(|e| e.to_string())?.matrix.rref().nullspace();
                    let full = solver.full_constraint_matrix().map_err(|e| e.to_string())?.matrix.rref().nullspace();
                    ensure(gen == full, || format!("p={p}, {lambda} -> {mu}: {gen:?} vs {full:?}"))?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn c6_sum_of_maps_sweep() -> Outcome {
    let oracle = Binomials::new(40);
    let (mut passed, mut examined) = (0, 0);
    for p in [2u32, 3] {
        for r in 2..=12u32 {
            for lambda in partitions(r, 4).into_iter().filter(|l| l.len() >= 2) {
                for mu in two_part(r) {
                    let l1 = lambda.part(0);
                    if !(mu.part(1) <= l1 && l1 <= mu.part(0)) {
                        continue;
                    }
                    examined += 1;
                    let conds = theorem31_conditions(&lambda, &mu, gf(p)).map_err(|e| e.to_string())?;
                    let hold_by_gcd = conds.iter().all(|c| c.y == 0 || oracle.p_divides_r(c.x, c.y, p));
                    ensure(conds.iter().all(|c| c.divisible) == hold_by_gcd, || {
                        format!("p={p}, {lambda} -> {mu}: condition mismatch")
                    })?;
                    if !hold_by_gcd {
                        continue;
                    }
                    let report = verify_theorem31(&lambda, &mu, gf(p)).map_err(|e| e.to_string())?;
                    ensure(report.verdict == Verdict::Pass, || {
                        format!("p={p}, {lambda} -> {mu}: {:?}", report.verdict)
                    })?;
                    passed += 1;
                }
            }
        }
    }
    Ok(format!("{passed} of {examined} instances satisfy the conditions, zero failures"))
}

fn c7_beyond_hypothesis_instance() -> Outcome {
    let (lambda, mu) = (part("2,2,2"), part("3,3"));
    let res = HomSolver::new(&lambda, &mu, gf(2)).and_then(|s| s.solve()).map_err(|e| e.to_string())?;
    ensure(res.dimension == 1, || format!("dim = {}", res.dimension))?;
    let t = TwoRowTableau::new(TwoRowShape::new(3, 3).unwrap(), vec![2, 1, 0], vec![0, 1, 2]).unwrap();
    let idx = res.tableaux.iter().position(|x| *x == t).ok_or("T is not in ST_lambda(mu)")?;
    let v = &res.basis[0].coeffs;
    ensure(v.iter().enumerate().all(|(i, &c)| c == u32::from(i == idx)), || format!("basis {v:?} is not phi_T"))?;
    // Same answer when every straightening goes through the quotient.
    let st = Arc::new(Straightener::quotient_only(gf(2)));
    let oracle = HomSolver::with_straightener(&lambda, &mu, Arc::clone(&st))
        .and_then(|s| s.solve())
        .map_err(|e| e.to_string())?;
    ensure(oracle.basis == res.basis, || format!("quotient-only basis {:?}", oracle.basis))?;
    ensure(st.cached_weight_spaces() > 0, || "quotient engine was not used".into())?;
    Ok(format!("dim 1, basis phi_T for T = {t}, confirmed by the quotient engine"))
}

fn c8_row_removal() -> Outcome {
    let mut checked = 0;
    for p in [2u32, 3] {
        for r in 2..=10u32 {
            for lambda in partitions(r, r as usize).into_iter().filter(|l| l.len() >= 2) {
                for mu in two_part(r).into_iter().filter(|m| m.part(0) == lambda.part(0)) {
                    let full =
                        HomSolver::new(&lambda, &mu, gf(p)).and_then(|s| s.solve()).map_err(|e| e.to_string())?;
                    let rest = lambda.remove_first_row().unwrap();
                    let second = Partition::new(vec![mu.part(1)]).unwrap();
                    let small =
                        HomSolver::new(&rest, &second, gf(p)).and_then(|s| s.solve()).map_err(|e| e.to_string())?;
                    ensure(full.dimension == small.dimension, || {
                        format!("p={p}, {lambda} -> {mu}: {} vs {}", full.dimension, small.dimension)
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} instances"))
}

fn c9_dominance() -> Outcome {
    let mut checked = 0;
    for p in [2u32, 3] {
        for r in 1..=10u32 {
            for lambda in partitions(r, r as usize) {
                for mu in two_part(r) {
                    if dominates(mu.parts(), lambda.parts()) {
                        continue;
                    }
                    let res = HomSolver::new(&lambda, &mu, gf(p)).and_then(|s| s.solve()).map_err(|e| e.to_string())?;
                    ensure(res.dimension == 0, || format!("p={p}, {lambda} -> {mu}: dim {}", res.dimension))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} non-dominated pairs, all zero"))
}

fn check_family(p: u32, lambda: &str, mu: &str, expect_dim: Option<usize>) -> Outcome {
    let (lambda, mu) = (part(lambda), part(mu));
    let fam = example64_family(gf(p));
    ensure(fam.lambda == lambda && fam.mu == mu, || format!("family gives {} / {}", fam.lambda, fam.mu))?;
    let report = verify_cor62(&lambda, &mu, gf(p)).map_err(|e| e.to_string())?;
    let oracle = Binomials::new(200);
    let c = &report.conditions;
    let mut all = vec![&c.first, &c.raising, &c.collapse];
    all.extend(c.rows.iter());
    ensure(all.iter().all(|d| oracle.p_divides_r(d.x, d.y, p)), || "a condition fails under the gcd oracle".into())?;
    ensure(c.all_hold(), || format!("conditions {:?}", c.flags()))?;
    ensure(report.psi1_is_hom && report.psi2_is_hom, || "psi_1 or psi_2 is not a homomorphism".into())?;
    ensure(report.rank == 2, || format!("rank {}", report.rank))?;
    let dim = report.dimension.ok_or("no dimension")?;
    ensure(dim >= 2, || format!("dim {dim}"))?;
    if let Some(d) = expect_dim {
        ensure(dim == d, || format!("dim {dim}, expected {d}"))?;
    }
    Ok(format!("|ST| = {}, conditions hold, rank 2, dim = {dim}", report.tableau_count))
}

fn c10_example_p2() -> Outcome {
    let n = HomSolver::new(&part("8,3,1,1,1,1"), &part("10,5"), gf(2)).map_err(|e| e.to_string())?.tableaux().len();
    ensure(n == 11, || format!("|ST| = {n}"))?;
    check_family(2, "8,3,1,1,1,1", "10,5", None)
}

fn c11_raising_map() -> Outcome {
    let small = verify_prop61(&part("2,2"), 1, gf(2)).map_err(|e| e.to_string())?;
    ensure(small.target == part("3,1"), || format!("target {}", small.target))?;
    ensure(small.is_hom && small.nonzero, || "Delta(2,2) -> Delta(3,1) is not a nonzero hom".into())?;
    let oracle = Binomials::new(40);
    let (mut held, mut total) = (0, 0);
    for p in [2u32, 3] {
        for r in 2..=12u32 {
            for lambda in partitions(r, 2).into_iter().filter(|l| l.len() == 2) {
                for d in 1..=lambda.part(1) {
                    total += 1;
                    let x = (lambda.part(0) - lambda.part(1) + d + 1) as u64;
                    if !oracle.p_divides_r(x, d as u64, p) {
                        continue;
                    }
                    let rep = verify_prop61(&lambda, d, gf(p)).map_err(|e| e.to_string())?;
                    ensure(rep.is_hom && rep.nonzero, || format!("p={p}, lambda={lambda}, d={d}"))?;
                    held += 1;
                }
            }
        }
    }
    Ok(format!("(2,2) -> (3,1) nonzero; {held} of {total} raisings satisfy the condition, zero failures"))
}

fn c12_example_p3() -> Outcome {
    check_family(3, "28,5,2,2,2,2,2,2,2,2,2", "31,20", Some(2))
}

fn c13_cli_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |threads: &str, name: &str| -> Result<Vec<u8>, String> {
        let out = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_weylhom"))
            .args(["search", "--p", "2,3", "--r-max", "11", "--m-max", "5", "--threads", threads, "--output"])
            .arg(&out)
            .stderr(Stdio::null())
            .status()
            .map_err(|e| e.to_string())?;
        ensure(status.success(), || format!("search exited with {status}"))?;
        std::fs::read(&out).map_err(|e| e.to_string())
    };
    let one = run("1", "one.jsonl")?;
    let many = run("4", "many.jsonl")?;
    ensure(!one.is_empty(), || "empty output".into())?;
    ensure(one == many, || "outputs differ".into())?;
    let lines = one.iter().filter(|&&b| b == b'\n').count();
    Ok(format!("{lines} records byte-identical with 1 and 4 workers"))
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            id: 1,
            name: "divisibility criterion vs exact gcd",
            budget: Some(secs(30)),
            run: c1_divisibility_criterion,
        },
        Criterion { id: 2, name: "binomial identity suite", budget: Some(secs(30)), run: c2_binomial_identities },
        Criterion { id: 3, name: "standard basis of weight spaces", budget: Some(secs(120)), run: c3_standard_basis },
        Criterion {
            id: 4,
            name: "closed-form straightening vs quotient",
            budget: Some(secs(120)),
            run: c4_straightening_oracle,
        },
        Criterion { id: 5, name: "generator constraints vs full-module constraints", budget: None, run: c5_cyclicity },
        Criterion {
            id: 6,
            name: "sum of all phi_T is a nonzero hom",
            budget: Some(secs(300)),
            run: c6_sum_of_maps_sweep,
        },
        Criterion { id: 7, name: "(2,2,2) -> (3,3) over GF(2)", budget: None, run: c7_beyond_hypothesis_instance },
        Criterion { id: 8, name: "row removal", budget: None, run: c8_row_removal },
        Criterion { id: 9, name: "dominance necessity", budget: None, run: c9_dominance },
        Criterion { id: 10, name: "family instance p=2", budget: Some(secs(10)), run: c10_example_p2 },
        Criterion { id: 11, name: "raising map", budget: None, run: c11_raising_map },
        Criterion { id: 12, name: "family instance p=3, r=51", budget: Some(secs(300)), run: c12_example_p3 },
        Criterion { id: 13, name: "search determinism across worker counts", budget: None, run: c13_cli_determinism },
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:.2?}, budget {b:?}")),
            (o, _) => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} [{:>2}] {}: {detail} ({elapsed:.2?})", c.id, c.name);
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
