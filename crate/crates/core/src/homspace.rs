//! `Hom(Delta(lambda), Delta(mu))` for a two-part `mu`.
//!
//! A homomorphism `D(lambda) -> Delta(mu)` is a combination `sum c_T phi_T`
//! over standard tableaux `T` of shape `mu` and weight `lambda`. It factors
//! through `Delta(lambda)` exactly when it kills the image of the box map.
//! Each summand of the box map's source is cyclic on its canonical generator,
//! so it is enough to impose `sum c_T phi_T(box(gen)) = 0` for each summand;
//! [`HomSolver::full_constraint_matrix`] imposes the relations on every tuple
//! instead, as a cross-check.
//!
//! Letters are `1..=m` where `m` is the number of parts of `lambda`.

use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::dpa::{
    all_tuples, box_generator_image, box_image, canonical_generator, diagonal_split, multiply, summand_multidegree,
    DElement, Monomial, MonomialTuple,
};
use crate::error::{Error, Result};
use crate::linalg::GfMatrix;
use crate::modarith::{p_divides_r, PrimeField};
use crate::tableaux::{enumerate_standard, Partition, TwoRowShape, TwoRowTableau};
use crate::weyl2::{Bideterminant, Straightener, WeylElement};

/// Coordinates of a map `D(lambda) -> Delta(mu)` in the `phi_T` basis,
/// indexed like [`HomSolver::tableaux`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct HomCandidate {
    pub coeffs: Vec<u32>,
}

impl HomCandidate {
    pub fn all_ones(len: usize) -> Self {
        HomCandidate { coeffs: vec![1; len] }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut coeffs = vec![0; len];
        coeffs[index] = 1;
        HomCandidate { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// `sum c_T phi_T(z) = sum c_T [T]` for the canonical generator `z`.
    pub fn generator_image(&self, tableaux: &[TwoRowTableau], shape: TwoRowShape, field: PrimeField) -> WeylElement {
        let mut out = WeylElement::zero(shape, field);
        for (t, &c) in tableaux.iter().zip(&self.coeffs) {
            out.add_term(t.clone(), c);
        }
        out
    }
}

/// Why a dimension was decided without building constraints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroReason {
    /// `mu` does not dominate `lambda`.
    Dominance,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomSpaceResult {
    pub lambda: Partition,
    pub mu: Partition,
    pub p: u32,
    pub dimension: usize,
    pub tableaux: Vec<TwoRowTableau>,
    pub basis: Vec<HomCandidate>,
    pub constraint_rows: usize,
    pub constraint_cols: usize,
    pub rank: usize,
    pub reason: Option<ZeroReason>,
}

/// Row label of a constraint matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintRow {
    /// Upper row of the relation (0-based).
    pub row: usize,
    pub t: u32,
    /// Index into the summand's tuples; `None` for the canonical generator.
    pub tuple: Option<usize>,
    pub tableau: TwoRowTableau,
}

#[derive(Clone, Debug)]
pub struct ConstraintMatrix {
    pub matrix: GfMatrix,
    pub rows: Vec<ConstraintRow>,
}

/// Hom computation for one `(lambda, mu, p)`.
#[derive(Debug)]
pub struct HomSolver {
    lambda: Partition,
    mu: Partition,
    shape: TwoRowShape,
    straightener: Arc<Straightener>,
    tableaux: Vec<TwoRowTableau>,
}

impl HomSolver {
    pub fn new(lambda: &Partition, mu: &Partition, field: PrimeField) -> Result<Self> {
        Self::with_straightener(lambda, mu, Arc::new(Straightener::new(field)))
    }

    /// Share a quotient engine (and its weight-space cache) across solvers.
    pub fn with_straightener(lambda: &Partition, mu: &Partition, straightener: Arc<Straightener>) -> Result<Self> {
        let shape = TwoRowShape::try_from(mu)?;
        if lambda.degree() != mu.degree() {
            return Err(Error::DegreeMismatch { left: lambda.degree(), right: mu.degree() });
        }
        let tableaux = enumerate_standard(shape, lambda.parts());
        Ok(HomSolver { lambda: lambda.clone(), mu: mu.clone(), shape, straightener, tableaux })
    }

    pub fn field(&self) -> PrimeField {
        self.straightener.field()
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn shape(&self) -> TwoRowShape {
        self.shape
    }

    pub fn letters(&self) -> usize {
        self.lambda.len()
    }

    /// `ST_lambda(mu)` in canonical order; the column index set.
    pub fn tableaux(&self) -> &[TwoRowTableau] {
        &self.tableaux
    }

    pub fn straightener(&self) -> &Arc<Straightener> {
        &self.straightener
    }

    /// `phi_T(x)`.
    pub fn phi_eval(&self, t: &TwoRowTableau, x: &MonomialTuple) -> Result<WeylElement> {
        phi_eval(t, x, &self.straightener)
    }

    pub fn phi_eval_element(&self, t: &TwoRowTableau, x: &DElement) -> Result<WeylElement> {
        let f = self.field();
        let mut out = WeylElement::zero(self.shape, f);
        for (tuple, c) in x.terms() {
            out.add_scaled(&self.phi_eval(t, tuple)?, c);
        }
        Ok(out)
    }

    fn relation_pairs(&self) -> Vec<(usize, u32)> {
        let parts = self.lambda.parts();
        (0..parts.len().saturating_sub(1)).flat_map(|row| (1..=parts[row + 1]).map(move |t| (row, t))).collect()
    }

    /// Append one block: rows are the standard tableaux of the image's
    /// weight, columns the `phi_T`.
    fn push_block(
        &self,
        image: &DElement,
        weight: &[u32],
        row: usize,
        t: u32,
        tuple: Option<usize>,
        out: &mut ConstraintMatrix,
    ) -> Result<()> {
        let targets = enumerate_standard(self.shape, weight);
        if targets.is_empty() {
            return Ok(());
        }
        let index: HashMap<&TwoRowTableau, usize> = targets.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut block = vec![vec![0u32; self.tableaux.len()]; targets.len()];
        for (j, tab) in self.tableaux.iter().enumerate() {
            let value = self.phi_eval_element(tab, image)?;
            for (s, c) in value.terms() {
                let i = *index
                    .get(s)
                    .ok_or_else(|| Error::Precondition(format!("phi_T produced {s} outside weight {weight:?}")))?;
                block[i][j] = c;
            }
        }
        for (tableau, r) in targets.into_iter().zip(block) {
            out.matrix.push_row(&r);
            out.rows.push(ConstraintRow { row, t, tuple, tableau });
        }
        Ok(())
    }

    /// Relations imposed at the canonical generator of each summand.
    pub fn constraint_matrix(&self) -> Result<ConstraintMatrix> {
        let f = self.field();
        let mut out = ConstraintMatrix { matrix: GfMatrix::zeros(f, 0, self.tableaux.len()), rows: Vec::new() };
        for (row, t) in self.relation_pairs() {
            let image = box_generator_image(&self.lambda, row, t, f)?;
            let weight = summand_multidegree(self.lambda.parts(), row, t);
            self.push_block(&image, &weight, row, t, None, &mut out)?;
        }
        Ok(out)
    }

    /// Relations imposed at every tuple of every summand.
    pub fn full_constraint_matrix(&self) -> Result<ConstraintMatrix> {
        let f = self.field();
        let n = self.letters();
        let mut out = ConstraintMatrix { matrix: GfMatrix::zeros(f, 0, self.tableaux.len()), rows: Vec::new() };
        for (row, t) in self.relation_pairs() {
            let multidegree = summand_multidegree(self.lambda.parts(), row, t);
            for (k, tuple) in all_tuples(n, &multidegree).into_iter().enumerate() {
                let image = box_image(&tuple, row, t, f);
                if image.is_zero() {
                    continue;
                }
                self.push_block(&image, &tuple.weight(), row, t, Some(k), &mut out)?;
            }
        }
        Ok(out)
    }

    /// Nullspace of the generator constraints; no dominance shortcut.
    pub fn solve(&self) -> Result<HomSpaceResult> {
        let cm = self.constraint_matrix()?;
        let red = cm.matrix.rref();
        let basis: Vec<HomCandidate> = red.nullspace().into_iter().map(|coeffs| HomCandidate { coeffs }).collect();
        Ok(HomSpaceResult {
            lambda: self.lambda.clone(),
            mu: self.mu.clone(),
            p: self.field().p(),
            dimension: basis.len(),
            tableaux: self.tableaux.clone(),
            basis,
            constraint_rows: cm.matrix.rows(),
            constraint_cols: cm.matrix.cols(),
            rank: red.rank,
            reason: None,
        })
    }

    /// Like [`HomSolver::solve`], but answers zero without building any
    /// constraints when `mu` does not dominate `lambda`.
    pub fn hom_space(&self) -> Result<HomSpaceResult> {
        if !self.mu.dominates(&self.lambda)? {
            return Ok(HomSpaceResult {
                lambda: self.lambda.clone(),
                mu: self.mu.clone(),
                p: self.field().p(),
                dimension: 0,
                tableaux: self.tableaux.clone(),
                basis: Vec::new(),
                constraint_rows: 0,
                constraint_cols: self.tableaux.len(),
                rank: 0,
                reason: Some(ZeroReason::Dominance),
            });
        }
        self.solve()
    }

    /// Whether a candidate kills every generator relation.
    pub fn is_homomorphism(&self, candidate: &HomCandidate) -> Result<bool> {
        let cm = self.constraint_matrix()?;
        Ok(cm.matrix.mul_vec(&candidate.coeffs).iter().all(|&v| v == 0))
    }
}

/// `phi_T(x_1 (x) ... (x) x_n)`: split each `x_s` into bidegree `(a_s, b_s)`,
/// multiply the first pieces into row A and the second pieces into row B,
/// then straighten.
pub fn phi_eval(t: &TwoRowTableau, x: &MonomialTuple, straightener: &Straightener) -> Result<WeylElement> {
    let field = straightener.field();
    if x.multidegree() != t.weight() {
        return Err(Error::Precondition(format!(
            "tuple {x} has multidegree {:?}, tableau {t} has weight {:?}",
            x.multidegree(),
            t.weight()
        )));
    }
    let n = t.letters();
    let mut acc: BTreeMap<(Monomial, Monomial), u32> = BTreeMap::new();
    acc.insert((Monomial::one(n), Monomial::one(n)), 1 % field.p());
    for (s, xs) in x.factors().iter().enumerate() {
        let splits = diagonal_split(xs, t.row_a[s], t.row_b[s]);
        let mut next: BTreeMap<(Monomial, Monomial), u32> = BTreeMap::new();
        for ((ra, rb), c) in &acc {
            for (left, right) in &splits {
                let (ca, na) = multiply(ra, left, field);
                if ca == 0 {
                    continue;
                }
                let (cb, nb) = multiply(rb, right, field);
                let coeff = field.mul(*c, field.mul(ca, cb));
                if coeff == 0 {
                    continue;
                }
                let slot = next.entry((na, nb)).or_insert(0);
                *slot = field.add(*slot, coeff);
            }
        }
        next.retain(|_, c| *c != 0);
        acc = next;
    }
    let mut out = WeylElement::zero(t.shape, field);
    for ((ra, rb), c) in acc {
        let b = Bideterminant::new(t.shape, ra.into_exps(), rb.into_exps())?;
        out.add_scaled(&straightener.straighten(&b)?, c);
    }
    Ok(out)
}

/// Constraint matrix at the canonical generators.
pub fn constraint_matrix(lambda: &Partition, mu: &Partition, field: PrimeField) -> Result<GfMatrix> {
    Ok(HomSolver::new(lambda, mu, field)?.constraint_matrix()?.matrix)
}

/// `dim Hom(Delta(lambda), Delta(mu))` with a canonical basis; returns zero
/// immediately when `mu` does not dominate `lambda`.
pub fn hom_dimension(lambda: &Partition, mu: &Partition, field: PrimeField) -> Result<HomSpaceResult> {
    HomSolver::new(lambda, mu, field)?.hom_space()
}

/// One "p divides R(x, y)" hypothesis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityCondition {
    pub label: String,
    pub x: u64,
    pub y: u64,
    pub divisible: bool,
}

impl DivisibilityCondition {
    pub fn new(label: impl Into<String>, x: u64, y: u64, field: PrimeField) -> Self {
        DivisibilityCondition { label: label.into(), x, y, divisible: p_divides_r(x, y, field) }
    }
}

pub fn all_hold(conditions: &[DivisibilityCondition]) -> bool {
    conditions.iter().all(|c| c.divisible)
}

/// The divisibility hypotheses for `psi = sum_T phi_T` to be a homomorphism:
/// `p | R(lambda_1 - mu_2 + 1, l)` with `l = min(lambda_2, mu_1 - lambda_1)`
/// and `p | R(lambda_i + 1, lambda_{i+1})` for `i = 2..m-1`.
pub fn theorem31_conditions(
    lambda: &Partition,
    mu: &Partition,
    field: PrimeField,
) -> Result<Vec<DivisibilityCondition>> {
    let shape = TwoRowShape::try_from(mu)?;
    if lambda.degree() != mu.degree() {
        return Err(Error::DegreeMismatch { left: lambda.degree(), right: mu.degree() });
    }
    let parts = lambda.parts();
    let l1 = parts[0];
    if parts.len() < 2 || !(shape.second <= l1 && l1 <= shape.first) {
        return Err(Error::Precondition(format!(
            "need m >= 2 and mu_2 <= lambda_1 <= mu_1, got lambda={lambda}, mu={mu}"
        )));
    }
    let l = parts[1].min(shape.first - l1);
    let mut out = vec![DivisibilityCondition::new(
        "R(lambda_1-mu_2+1, min(lambda_2, mu_1-lambda_1))",
        (l1 - shape.second + 1) as u64,
        l as u64,
        field,
    )];
    for i in 1..parts.len() - 1 {
        out.push(DivisibilityCondition::new(
            format!("R(lambda_{}+1, lambda_{})", i + 1, i + 2),
            (parts[i] + 1) as u64,
            parts[i + 1] as u64,
            field,
        ));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    ConditionsFailed,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem31Report {
    pub lambda: Partition,
    pub mu: Partition,
    pub p: u32,
    pub conditions: Vec<DivisibilityCondition>,
    pub tableau_count: usize,
    /// The all-ones vector kills every generator relation.
    pub all_ones_in_kernel: bool,
    /// `psi(z)` equals `sum_T [T]` and is nonzero.
    pub generator_image_ok: bool,
    pub verdict: Verdict,
}

/// Check that `psi = sum_T phi_T` induces a nonzero homomorphism. The
/// matrix checks only run when all hypotheses hold.
pub fn verify_theorem31(lambda: &Partition, mu: &Partition, field: PrimeField) -> Result<Theorem31Report> {
    let conditions = theorem31_conditions(lambda, mu, field)?;
    let solver = HomSolver::new(lambda, mu, field)?;
    let mut report = Theorem31Report {
        lambda: lambda.clone(),
        mu: mu.clone(),
        p: field.p(),
        conditions,
        tableau_count: solver.tableaux().len(),
        all_ones_in_kernel: false,
        generator_image_ok: false,
        verdict: Verdict::ConditionsFailed,
    };
    if !all_hold(&report.conditions) {
        return Ok(report);
    }
    let psi = HomCandidate::all_ones(solver.tableaux().len());
    report.all_ones_in_kernel = solver.is_homomorphism(&psi)?;

    let z = canonical_generator(lambda.parts());
    let mut image = WeylElement::zero(solver.shape(), field);
    for t in solver.tableaux() {
        image.add_scaled(&solver.phi_eval(t, &z)?, 1);
    }
    let expected = psi.generator_image(solver.tableaux(), solver.shape(), field);
    report.generator_image_ok = !image.is_zero() && image == expected;
    report.verdict = if report.all_ones_in_kernel && report.generator_image_ok { Verdict::Pass } else { Verdict::Fail };
    Ok(report)
}
