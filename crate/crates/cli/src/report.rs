//! JSON reports for the single-query subcommands.

use serde::Serialize;

use weylhom::carterpayne::{example64_family, verify_cor62, Cor62Report};
use weylhom::homspace::{
    theorem31_conditions, verify_theorem31, DivisibilityCondition, Theorem31Report, Verdict, ZeroReason,
};
use weylhom::tableaux::{enumerate_standard, lemma23_basis};
use weylhom::weyl2::{straighten_first_column, Straightened};
use weylhom::{Bideterminant, HomSolver, Partition, PrimeField, Straightener, TwoRowShape, TwoRowTableau, WeylElement};

use crate::error::CliError;

#[derive(Clone, Debug, Serialize)]
pub struct TableauJson {
    pub display: String,
    pub row_a: Vec<u32>,
    pub row_b: Vec<u32>,
}

impl From<&TwoRowTableau> for TableauJson {
    fn from(t: &TwoRowTableau) -> Self {
        TableauJson { display: t.to_string(), row_a: t.row_a.clone(), row_b: t.row_b.clone() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionsJson {
    /// `None` when the hypotheses `m >= 2`, `mu_2 <= lambda_1 <= mu_1` fail.
    pub thm31: Option<Vec<DivisibilityCondition>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomdimReport {
    pub lambda: Partition,
    pub mu: Partition,
    pub p: u32,
    pub dim: usize,
    pub tableau_count: usize,
    pub tableaux: Vec<String>,
    pub conditions: ConditionsJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<u32>>>,
    pub reason: Option<ZeroReason>,
}

pub fn homdim(
    lambda: &Partition,
    mu: &Partition,
    field: PrimeField,
    with_basis: bool,
) -> Result<HomdimReport, CliError> {
    let solver = HomSolver::new(lambda, mu, field)?;
    let res = solver.hom_space()?;
    Ok(HomdimReport {
        lambda: lambda.clone(),
        mu: mu.clone(),
        p: field.p(),
        dim: res.dimension,
        tableau_count: res.tableaux.len(),
        tableaux: res.tableaux.iter().map(|t| t.to_string()).collect(),
        conditions: ConditionsJson { thm31: theorem31_conditions(lambda, mu, field).ok() },
        basis: with_basis.then(|| res.basis.iter().map(|b| b.coeffs.clone()).collect()),
        reason: res.reason,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TermJson {
    pub tableau: TableauJson,
    pub coeff: u32,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    Standard,
    ClosedForm,
    Quotient,
}

#[derive(Clone, Debug, Serialize)]
pub struct StraightenReport {
    pub p: u32,
    pub shape: TwoRowShape,
    pub input: String,
    pub engine: Engine,
    pub terms: Vec<TermJson>,
}

fn terms_json(e: &WeylElement) -> Vec<TermJson> {
    e.terms().map(|(t, c)| TermJson { tableau: t.into(), coeff: c }).collect()
}

/// Standard-basis expansion of `[row_a / row_b]`; `force_quotient` skips the closed form.
pub fn straighten(
    mu: &Partition,
    row_a: Vec<u32>,
    row_b: Vec<u32>,
    field: PrimeField,
    force_quotient: bool,
) -> Result<StraightenReport, CliError> {
    let shape = TwoRowShape::try_from(mu)?;
    let n = row_a.len().max(row_b.len());
    let pad = |mut v: Vec<u32>| {
        v.resize(n, 0);
        v
    };
    let b = Bideterminant::new(shape, pad(row_a), pad(row_b))?;
    let st = Straightener::new(field);
    let (engine, e) = if force_quotient {
        (Engine::Quotient, st.express_bideterminant(&b)?)
    } else if b.is_standard() {
        (Engine::Standard, st.straighten(&b)?)
    } else {
        match straighten_first_column(&b, field) {
            Straightened::Done(e) => (Engine::ClosedForm, e),
            Straightened::NonStandard(_) => (Engine::Quotient, st.express_bideterminant(&b)?),
        }
    };
    Ok(StraightenReport { p: field.p(), shape, input: b.to_string(), engine, terms: terms_json(&e) })
}

#[derive(Clone, Debug, Serialize)]
pub struct TableauxReport {
    pub lambda: Partition,
    pub mu: Partition,
    pub count: usize,
    pub tableaux: Vec<TableauJson>,
}

pub fn tableaux(lambda: &Partition, mu: &Partition) -> Result<TableauxReport, CliError> {
    let shape = TwoRowShape::try_from(mu)?;
    if lambda.degree() != mu.degree() {
        return Err(weylhom::Error::DegreeMismatch { left: lambda.degree(), right: mu.degree() }.into());
    }
    let l1 = lambda.part(0);
    let list = if shape.second <= l1 && l1 <= shape.first {
        lemma23_basis(lambda, shape)?
    } else {
        enumerate_standard(shape, lambda.parts())
    };
    Ok(TableauxReport {
        lambda: lambda.clone(),
        mu: mu.clone(),
        count: list.len(),
        tableaux: list.iter().map(TableauJson::from).collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum CheckReport {
    Thm31(Theorem31Report),
    Cor62(Cor62Report),
    Example64 { a: u32, report: Cor62Report },
}

impl CheckReport {
    pub fn verdict(&self) -> Verdict {
        match self {
            CheckReport::Thm31(r) => r.verdict,
            CheckReport::Cor62(r) | CheckReport::Example64 { report: r, .. } => r.verdict,
        }
    }
}

pub fn check_thm31(lambda: &Partition, mu: &Partition, field: PrimeField) -> Result<CheckReport, CliError> {
    Ok(CheckReport::Thm31(verify_theorem31(lambda, mu, field)?))
}

pub fn check_cor62(lambda: &Partition, mu: &Partition, field: PrimeField) -> Result<CheckReport, CliError> {
    Ok(CheckReport::Cor62(verify_cor62(lambda, mu, field)?))
}

pub fn check_example64(field: PrimeField) -> Result<CheckReport, CliError> {
    let family = example64_family(field);
    let report = verify_cor62(&family.lambda, &family.mu, field)?;
    Ok(CheckReport::Example64 { a: family.a, report })
}
