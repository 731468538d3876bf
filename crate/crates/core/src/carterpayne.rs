//! A second homomorphism built from the one-box-raising map, and the check
//! that it is independent of `psi = sum_T phi_T`.
//!
//! `alpha` splits `d` boxes off the second factor and multiplies them into the
//! first; `beta` multiplies factors `2..m` together. On the canonical
//! generator `z`, `beta(alpha(z))` is the single standard tableau
//! `[1^(lambda_1) 2^(d) / 2^(lambda_2 - d) 3^(lambda_3) ... m^(lambda_m)]`, so
//! its coordinates in the `phi_T` basis form a unit vector.

use serde::Serialize;

use crate::dpa::{canonical_generator, diagonal_split, multiply, DElement, Monomial, MonomialTuple};
use crate::error::{Error, Result};
use crate::homspace::{all_hold, DivisibilityCondition, HomCandidate, HomSolver, Verdict};
use crate::linalg::GfMatrix;
use crate::modarith::PrimeField;
use crate::tableaux::{Partition, TwoRowShape};
use crate::weyl2::{Bideterminant, Straightener, WeylElement};

/// `alpha`: split factor 2 into `(d, deg - d)` and multiply the degree-`d`
/// piece into factor 1.
pub fn alpha_apply(x: &MonomialTuple, d: u32, field: PrimeField) -> DElement {
    let fs = x.factors();
    assert!(fs.len() >= 2, "alpha needs at least two factors");
    let deg = fs[1].degree();
    assert!(d <= deg, "cannot raise {d} boxes from degree {deg}");
    let mut out = DElement::zero(field);
    for (raised, kept) in diagonal_split(&fs[1], d, deg - d) {
        let (c, merged) = multiply(&fs[0], &raised, field);
        if c == 0 {
            continue;
        }
        let mut v = fs.to_vec();
        v[0] = merged;
        v[1] = kept;
        out.add_term(MonomialTuple::new(v), c);
    }
    out
}

/// `beta`: multiply factors `2..` together, leaving a pair.
pub fn beta_apply(x: &MonomialTuple, field: PrimeField) -> (u32, MonomialTuple) {
    let fs = x.factors();
    let n = fs[0].letters();
    let mut coeff = 1 % field.p();
    let mut tail = Monomial::one(n);
    for m in &fs[1..] {
        let (c, next) = multiply(&tail, m, field);
        coeff = field.mul(coeff, c);
        tail = next;
    }
    (coeff, MonomialTuple::new(vec![fs[0].clone(), tail]))
}

/// `alpha(z)` for the canonical generator `z` of `D(lambda)`.
pub fn alpha_on_generator(lambda: &Partition, d: u32, field: PrimeField) -> Result<DElement> {
    if lambda.len() < 2 || d == 0 || d > lambda.part(1) {
        return Err(Error::Precondition(format!("alpha needs 0 < d <= lambda_2, got d={d}, lambda={lambda}")));
    }
    Ok(alpha_apply(&canonical_generator(lambda.parts()), d, field))
}

/// Target shape `(lambda_1 + d, r - lambda_1 - d)` of `psi_2`.
fn psi2_shape(lambda: &Partition, d: u32) -> Result<TwoRowShape> {
    let first = lambda.part(0) + d;
    TwoRowShape::new(first, lambda.degree() - first)
}

/// Shape checks for `psi_2`: `m >= 3`, `0 < d <= lambda_2`, `mu_2 <= lambda_1`.
/// Independence of `psi_1` and `psi_2` additionally needs `d <= lambda_2 - lambda_3`,
/// which [`cor62_conditions`] enforces.
fn check_psi2_shape(lambda: &Partition, d: u32) -> Result<TwoRowShape> {
    if lambda.len() < 3 || d == 0 || d > lambda.part(1) {
        return Err(Error::Precondition(format!("need m >= 3 and 0 < d <= lambda_2, got d={d}, lambda={lambda}")));
    }
    let shape = psi2_shape(lambda, d)?;
    if shape.second > lambda.part(0) {
        return Err(Error::Precondition(format!("need mu_2 <= lambda_1, got mu={shape}, lambda={lambda}")));
    }
    Ok(shape)
}

/// `psi_2(z) = beta(alpha(z))` in the standard basis of `Delta(lambda_1 + d, mu_2)`.
pub fn psi2_on_generator(lambda: &Partition, d: u32, straightener: &Straightener) -> Result<WeylElement> {
    let shape = check_psi2_shape(lambda, d)?;
    let field = straightener.field();
    let mut out = WeylElement::zero(shape, field);
    for (tuple, c) in alpha_on_generator(lambda, d, field)?.terms() {
        let (cb, pair) = beta_apply(tuple, field);
        let coeff = field.mul(c, cb);
        if coeff == 0 {
            continue;
        }
        let fs = pair.factors();
        let b = Bideterminant::new(shape, fs[0].exps().to_vec(), fs[1].exps().to_vec())?;
        out.add_scaled(&straightener.straighten(&b)?, coeff);
    }
    Ok(out)
}

/// Coordinates of a map in the `phi_T` basis, read off from its value at the
/// canonical generator.
pub fn coordinates_from_generator(solver: &HomSolver, image: &WeylElement) -> Result<HomCandidate> {
    let coeffs: Vec<u32> = solver.tableaux().iter().map(|t| image.coefficient(t)).collect();
    let accounted = coeffs.iter().filter(|&&c| c != 0).count();
    if accounted != image.num_terms() {
        return Err(Error::Precondition("generator image has terms outside ST_lambda(mu)".into()));
    }
    Ok(HomCandidate { coeffs })
}

#[derive(Clone, Debug, Serialize)]
pub struct Cor62Conditions {
    /// `R(lambda_1 - mu_2 + 1, d)`
    pub first: DivisibilityCondition,
    /// `R(lambda_i + 1, lambda_{i+1})`, `i = 2..m-1`
    pub rows: Vec<DivisibilityCondition>,
    /// `R(lambda_1 - lambda_2 + d + 1, d)`
    pub raising: DivisibilityCondition,
    /// `R(lambda_2 - d + 1, lambda_3)`
    pub collapse: DivisibilityCondition,
}

impl Cor62Conditions {
    pub fn flags(&self) -> [bool; 4] {
        [self.first.divisible, all_hold(&self.rows), self.raising.divisible, self.collapse.divisible]
    }

    pub fn all_hold(&self) -> bool {
        self.flags().iter().all(|&b| b)
    }
}

pub fn cor62_conditions(lambda: &Partition, mu: &Partition, field: PrimeField) -> Result<Cor62Conditions> {
    let shape = TwoRowShape::try_from(mu)?;
    if lambda.degree() != mu.degree() {
        return Err(Error::DegreeMismatch { left: lambda.degree(), right: mu.degree() });
    }
    let l = lambda.parts();
    if shape.first <= l[0] {
        return Err(Error::Precondition(format!("need mu_1 > lambda_1, got lambda={lambda}, mu={mu}")));
    }
    let d = shape.first - l[0];
    check_psi2_shape(lambda, d)?;
    if d > l[1] - l[2] {
        return Err(Error::Precondition(format!("need d <= lambda_2 - lambda_3, got d={d}, lambda={lambda}")));
    }
    let rows = (1..l.len() - 1)
        .map(|i| {
            DivisibilityCondition::new(
                format!("R(lambda_{}+1, lambda_{})", i + 1, i + 2),
                (l[i] + 1) as u64,
                l[i + 1] as u64,
                field,
            )
        })
        .collect();
    Ok(Cor62Conditions {
        first: DivisibilityCondition::new("R(lambda_1-mu_2+1, d)", (l[0] - shape.second + 1) as u64, d as u64, field),
        rows,
        raising: DivisibilityCondition::new(
            "R(lambda_1-lambda_2+d+1, d)",
            (l[0] - l[1] + d + 1) as u64,
            d as u64,
            field,
        ),
        collapse: DivisibilityCondition::new("R(lambda_2-d+1, lambda_3)", (l[1] - d + 1) as u64, l[2] as u64, field),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Cor62Report {
    pub lambda: Partition,
    pub mu: Partition,
    pub p: u32,
    pub d: u32,
    pub conditions: Cor62Conditions,
    pub tableau_count: usize,
    pub psi1_is_hom: bool,
    pub psi2_is_hom: bool,
    pub psi2: Vec<u32>,
    /// Rank of the 2 x |ST| matrix with rows psi1, psi2.
    pub rank: usize,
    pub dimension: Option<usize>,
    pub verdict: Verdict,
}

/// Build `psi_1` (all ones) and `psi_2`, check both are homomorphisms and
/// independent, and compute the full hom dimension.
pub fn verify_cor62(lambda: &Partition, mu: &Partition, field: PrimeField) -> Result<Cor62Report> {
    let conditions = cor62_conditions(lambda, mu, field)?;
    let d = mu.part(0) - lambda.part(0);
    let solver = HomSolver::new(lambda, mu, field)?;
    let n = solver.tableaux().len();
    let mut report = Cor62Report {
        lambda: lambda.clone(),
        mu: mu.clone(),
        p: field.p(),
        d,
        conditions,
        tableau_count: n,
        psi1_is_hom: false,
        psi2_is_hom: false,
        psi2: Vec::new(),
        rank: 0,
        dimension: None,
        verdict: Verdict::ConditionsFailed,
    };
    if !report.conditions.all_hold() {
        return Ok(report);
    }
    let cm = solver.constraint_matrix()?;
    let kills = |c: &HomCandidate| cm.matrix.mul_vec(&c.coeffs).iter().all(|&v| v == 0);

    let psi1 = HomCandidate::all_ones(n);
    let psi2 = coordinates_from_generator(&solver, &psi2_on_generator(lambda, d, solver.straightener())?)?;
    report.psi1_is_hom = kills(&psi1);
    report.psi2_is_hom = kills(&psi2);
    report.rank = GfMatrix::from_rows(field, n, &[psi1.coeffs.clone(), psi2.coeffs.clone()]).rank();
    report.psi2 = psi2.coeffs;
    let red = cm.matrix.rref();
    report.dimension = Some(n - red.rank);
    report.verdict = if report.psi1_is_hom && report.psi2_is_hom && report.rank == 2 && n - red.rank >= 2 {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct Prop61Report {
    pub lambda: Partition,
    pub target: Partition,
    pub d: u32,
    pub condition: DivisibilityCondition,
    pub coordinates: Vec<u32>,
    pub is_hom: bool,
    pub nonzero: bool,
}

/// The raising map `Delta(lambda_1, lambda_2) -> Delta(lambda_1 + d, lambda_2 - d)`
/// evaluated as a candidate in the `phi_T` basis.
pub fn verify_prop61(lambda: &Partition, d: u32, field: PrimeField) -> Result<Prop61Report> {
    if lambda.len() != 2 {
        return Err(Error::Precondition(format!("raising check is for two-part lambda, got {lambda}")));
    }
    let target = psi2_shape(lambda, d)?.to_partition();
    let shape = TwoRowShape::try_from(&target)?;
    let solver = HomSolver::new(lambda, &target, field)?;
    let mut image = WeylElement::zero(shape, field);
    for (tuple, c) in alpha_on_generator(lambda, d, field)?.terms() {
        let fs = tuple.factors();
        let b = Bideterminant::new(shape, fs[0].exps().to_vec(), fs[1].exps().to_vec())?;
        image.add_scaled(&solver.straightener().straighten(&b)?, c);
    }
    let candidate = coordinates_from_generator(&solver, &image)?;
    let (l1, l2) = (lambda.part(0), lambda.part(1));
    Ok(Prop61Report {
        lambda: lambda.clone(),
        target,
        d,
        condition: DivisibilityCondition::new("R(lambda_1-lambda_2+d+1, d)", (l1 - l2 + d + 1) as u64, d as u64, field),
        is_hom: solver.is_homomorphism(&candidate)?,
        nonzero: !candidate.is_zero(),
        coordinates: candidate.coeffs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Example64 {
    pub a: u32,
    pub lambda: Partition,
    pub mu: Partition,
}

/// Smallest `a >= (p^2 + 1)(p - 1)` with `a = p - 2 (mod p^2)`, and
/// `lambda = (a, 2p - 1, (p - 1)^{p^2})`, `mu = (a + p, (p^2 + 1)(p - 1))`.
pub fn example64_family(field: PrimeField) -> Example64 {
    let p = field.p();
    let p2 = p * p;
    let floor = (p2 + 1) * (p - 1);
    let residue = (p + p2 - 2) % p2;
    let a = floor + (residue + p2 - floor % p2) % p2;
    let mut parts = vec![a, 2 * p - 1];
    parts.extend(std::iter::repeat_n(p - 1, p2 as usize));
    Example64 {
        a,
        lambda: Partition::new(parts).expect("family shape is a partition"),
        mu: Partition::new(vec![a + p, floor]).expect("family shape is a partition"),
    }
}
