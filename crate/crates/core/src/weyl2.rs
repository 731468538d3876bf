//! The two-row Weyl module `Delta(mu)` as the quotient of `D(mu_1, mu_2)` by
//! the image of the box map, with its standard-tableau basis.
//!
//! Two engines express a bideterminant `[row_a / row_b]` in the standard
//! basis:
//!
//! * [`straighten_first_column`] is the closed form that moves every `1` out
//!   of the second row. Its output is standard whenever
//!   `a_1 + b_1 >= mu_2`.
//! * [`Straightener`] builds each weight space of the quotient explicitly
//!   (all monomial pairs modulo the span of the box-map relations) and reads
//!   off coordinates. It is the ground truth; the closed form is checked
//!   against it in the test suites.
//!
//! [`Straightener::straighten`] uses the closed form when it lands in the
//! standard basis and falls back to the quotient otherwise.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::dpa::{bounded_monomials, box_image, DElement, Monomial, MonomialTuple};
use crate::error::{Error, Result};
use crate::linalg::GfMatrix;
use crate::modarith::PrimeField;
use crate::tableaux::{enumerate_standard, exp_notation, is_standard_rows, TwoRowShape, TwoRowTableau};

/// The class `[row_a / row_b]` of a monomial pair in `Delta(mu)`; not
/// necessarily standard.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bideterminant {
    pub shape: TwoRowShape,
    pub row_a: Vec<u32>,
    pub row_b: Vec<u32>,
}

impl Bideterminant {
    pub fn new(shape: TwoRowShape, row_a: Vec<u32>, row_b: Vec<u32>) -> Result<Self> {
        // same validation as tableaux
        let t = TwoRowTableau::new(shape, row_a, row_b)?;
        Ok(Bideterminant { shape, row_a: t.row_a, row_b: t.row_b })
    }

    pub fn is_standard(&self) -> bool {
        is_standard_rows(&self.row_a, &self.row_b)
    }

    pub fn weight(&self) -> Vec<u32> {
        self.row_a.iter().zip(&self.row_b).map(|(a, b)| a + b).collect()
    }

    /// The tableau with these rows; only meaningful as a basis label when
    /// [`Self::is_standard`] holds.
    pub fn to_tableau(&self) -> TwoRowTableau {
        TwoRowTableau { shape: self.shape, row_a: self.row_a.clone(), row_b: self.row_b.clone() }
    }

    pub fn to_tuple(&self) -> MonomialTuple {
        MonomialTuple::new(vec![Monomial::new(self.row_a.clone()), Monomial::new(self.row_b.clone())])
    }

    fn from_tuple(shape: TwoRowShape, tuple: &MonomialTuple) -> Result<Self> {
        match tuple.factors() {
            [a, b] => Bideterminant::new(shape, a.exps().to_vec(), b.exps().to_vec()),
            _ => Err(Error::Precondition(format!("{tuple} is not a pair of monomials"))),
        }
    }
}

impl From<&TwoRowTableau> for Bideterminant {
    fn from(t: &TwoRowTableau) -> Self {
        Bideterminant { shape: t.shape, row_a: t.row_a.clone(), row_b: t.row_b.clone() }
    }
}

impl fmt::Display for Bideterminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} / {}]", exp_notation(&self.row_a), exp_notation(&self.row_b))
    }
}

/// An element of `Delta(mu)` in the standard basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    shape: TwoRowShape,
    field: PrimeField,
    coeffs: BTreeMap<TwoRowTableau, u32>,
}

impl WeylElement {
    pub fn zero(shape: TwoRowShape, field: PrimeField) -> Self {
        WeylElement { shape, field, coeffs: BTreeMap::new() }
    }

    pub fn basis(t: TwoRowTableau, field: PrimeField) -> Self {
        let mut e = Self::zero(t.shape, field);
        e.add_term(t, 1);
        e
    }

    pub fn shape(&self) -> TwoRowShape {
        self.shape
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Panics if `t` is not standard or has the wrong shape.
    pub fn add_term(&mut self, t: TwoRowTableau, coeff: u32) {
        assert!(t.is_standard(), "{t} is not standard");
        assert_eq!(t.shape, self.shape);
        let coeff = coeff % self.field.p();
        if coeff == 0 {
            return;
        }
        self.accumulate(t, coeff);
    }

    fn accumulate(&mut self, t: TwoRowTableau, coeff: u32) {
        match self.coeffs.entry(t) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = self.field.add(*o.get(), coeff);
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &WeylElement, scale: u32) {
        let f = self.field;
        for (t, &c) in &other.coeffs {
            let v = f.mul(c, scale);
            if v != 0 {
                self.accumulate(t.clone(), v);
            }
        }
    }

    pub fn coefficient(&self, t: &TwoRowTableau) -> u32 {
        self.coeffs.get(t).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TwoRowTableau, u32)> {
        self.coeffs.iter().map(|(t, &c)| (t, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> =
            self.coeffs.iter().map(|(t, &c)| if c == 1 { format!("[{t}]") } else { format!("{c}·[{t}]") }).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Outcome of the first-column closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Straightened {
    /// Every term landed in the standard basis (possibly zero).
    Done(WeylElement),
    /// The expansion still contains nonstandard terms, listed with their
    /// coefficients; only the quotient engine can finish these.
    NonStandard(Vec<(Bideterminant, u32)>),
}

/// Move every `1` out of the second row.
///
/// If `a_1 + b_1 > mu_1` the class is zero. Otherwise
/// `[a / b] = (-1)^{b_1} sum prod_s C(b_s + i_s, b_s) [1^(a_1+b_1) ... s^(a_s - i_s) ... / ... s^(b_s + i_s) ...]`
/// over `i_2 + ... + i_n = b_1`, `i_s <= a_s`.
pub fn straighten_first_column(b: &Bideterminant, field: PrimeField) -> Straightened {
    let n = b.row_a.len();
    let (a1, b1) = (b.row_a.first().copied().unwrap_or(0), b.row_b.first().copied().unwrap_or(0));
    if a1 + b1 > b.shape.first {
        return Straightened::Done(WeylElement::zero(b.shape, field));
    }
    let sign = field.sign(b1 as u64);
    let mut terms: Vec<(Bideterminant, u32)> = Vec::new();
    let mut moved = vec![0u32; n];
    fn go(
        s: usize,
        left: u32,
        coeff: u32,
        b: &Bideterminant,
        field: PrimeField,
        moved: &mut Vec<u32>,
        terms: &mut Vec<(Bideterminant, u32)>,
    ) {
        let n = b.row_a.len();
        if s == n {
            if left == 0 && coeff != 0 {
                let mut row_a: Vec<u32> = b.row_a.iter().zip(moved.iter()).map(|(a, i)| a - i).collect();
                let mut row_b: Vec<u32> = b.row_b.iter().zip(moved.iter()).map(|(x, i)| x + i).collect();
                row_a[0] = b.row_a[0] + b.row_b[0];
                row_b[0] = 0;
                terms.push((Bideterminant { shape: b.shape, row_a, row_b }, coeff));
            }
            return;
        }
        let cap: u32 = b.row_a[s..].iter().sum();
        if cap < left {
            return;
        }
        for i in 0..=b.row_a[s].min(left) {
            let c = field.mul(coeff, field.binomial((b.row_b[s] + i) as u64, b.row_b[s] as i64));
            moved[s] = i;
            go(s + 1, left - i, c, b, field, moved, terms);
        }
        moved[s] = 0;
    }
    if n > 0 {
        go(1, b1, sign, b, field, &mut moved, &mut terms);
    }
    if terms.iter().all(|(t, _)| t.is_standard()) {
        let mut out = WeylElement::zero(b.shape, field);
        for (t, c) in terms {
            out.add_term(t.to_tableau(), c);
        }
        Straightened::Done(out)
    } else {
        Straightened::NonStandard(terms)
    }
}

/// One weight space of `D(mu_1, mu_2)` modulo the box-map relations.
#[derive(Debug)]
struct WeightSpace {
    monomials: usize,
    rank: usize,
    basis_ok: bool,
    /// Standard tableaux, in column order.
    standard: Vec<TwoRowTableau>,
    /// First-row exponents -> column. The first row determines the pair.
    column_of: HashMap<Vec<u32>, usize>,
    nonstandard: usize,
    /// For nonstandard column `i`, its class as `(standard index, coeff)`.
    reductions: Vec<Vec<(usize, u32)>>,
}

impl WeightSpace {
    fn build(shape: TwoRowShape, weight: &[u32], field: PrimeField) -> Self {
        let firsts = bounded_monomials(weight, shape.first);
        let (mut nonstd, mut std): (Vec<Vec<u32>>, Vec<Vec<u32>>) = (Vec::new(), Vec::new());
        for a in firsts {
            let a = a.into_exps();
            let b: Vec<u32> = weight.iter().zip(&a).map(|(w, x)| w - x).collect();
            if is_standard_rows(&a, &b) {
                std.push(a);
            } else {
                nonstd.push(a);
            }
        }
        let standard: Vec<TwoRowTableau> = {
            let mut ts: Vec<TwoRowTableau> = std
                .iter()
                .map(|a| TwoRowTableau {
                    shape,
                    row_a: a.clone(),
                    row_b: weight.iter().zip(a).map(|(w, x)| w - x).collect(),
                })
                .collect();
            ts.sort();
            ts
        };
        debug_assert_eq!(standard, enumerate_standard(shape, weight));
        let nonstandard = nonstd.len();
        let mut column_of: HashMap<Vec<u32>, usize> = HashMap::new();
        for (i, a) in nonstd.into_iter().enumerate() {
            column_of.insert(a, i);
        }
        for (j, t) in standard.iter().enumerate() {
            column_of.insert(t.row_a.clone(), nonstandard + j);
        }
        let cols = column_of.len();

        let mut relations = GfMatrix::zeros(field, 0, cols);
        for t in 1..=shape.second {
            for c in bounded_monomials(weight, shape.first + t) {
                let e: Vec<u32> = weight.iter().zip(c.exps()).map(|(w, x)| w - x).collect();
                let tuple = MonomialTuple::new(vec![c, Monomial::new(e)]);
                let image = box_image(&tuple, 0, t, field);
                if image.is_zero() {
                    continue;
                }
                let mut row = vec![0u32; cols];
                for (term, coeff) in image.terms() {
                    row[column_of[term.factors()[0].exps()]] = coeff;
                }
                relations.push_row(&row);
            }
        }
        let red = relations.rref();
        let basis_ok = red.rank == nonstandard && red.pivots.iter().enumerate().all(|(i, &c)| i == c);
        let reductions = if basis_ok {
            (0..nonstandard)
                .map(|i| {
                    (nonstandard..cols)
                        .filter_map(|c| {
                            let v = red.matrix.get(i, c);
                            (v != 0).then(|| (c - nonstandard, field.neg(v)))
                        })
                        .collect()
                })
                .collect()
        } else {
            Vec::new()
        };
        WeightSpace { monomials: cols, rank: red.rank, basis_ok, standard, column_of, nonstandard, reductions }
    }

    fn quotient_dimension(&self) -> usize {
        self.monomials - self.rank
    }
}

type CacheKey = (TwoRowShape, Vec<u32>);

/// Quotient engine for two-row Weyl modules over a fixed prime field.
///
/// Weight spaces are built on demand and memoized; the cache is shared safely
/// between threads.
#[derive(Debug)]
pub struct Straightener {
    field: PrimeField,
    closed_form: bool,
    cache: RwLock<HashMap<CacheKey, Arc<WeightSpace>>>,
}

impl Straightener {
    pub fn new(field: PrimeField) -> Self {
        Straightener { field, closed_form: true, cache: RwLock::new(HashMap::new()) }
    }

    /// An engine whose [`Straightener::straighten`] never uses the
    /// first-column closed form.
    pub fn quotient_only(field: PrimeField) -> Self {
        Straightener { field, closed_form: false, cache: RwLock::new(HashMap::new()) }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Number of weight spaces built so far.
    pub fn cached_weight_spaces(&self) -> usize {
        self.cache.read().expect("cache poisoned").len()
    }

    fn weight_space(&self, shape: TwoRowShape, weight: &[u32]) -> Arc<WeightSpace> {
        let key = (shape, weight.to_vec());
        if let Some(ws) = self.cache.read().expect("cache poisoned").get(&key) {
            return Arc::clone(ws);
        }
        let ws = Arc::new(WeightSpace::build(shape, weight, self.field));
        let mut cache = self.cache.write().expect("cache poisoned");
        Arc::clone(cache.entry(key).or_insert(ws))
    }

    /// Dimension of the `weight` space of `Delta(shape)`, computed as
    /// (number of monomial pairs) - (rank of the relations).
    pub fn weight_space_dimension(&self, shape: TwoRowShape, weight: &[u32]) -> usize {
        if weight.iter().sum::<u32>() != shape.degree() {
            return 0;
        }
        self.weight_space(shape, weight).quotient_dimension()
    }

    /// Class of a bideterminant, computed in the quotient.
    pub fn express_bideterminant(&self, b: &Bideterminant) -> Result<WeylElement> {
        let weight = b.weight();
        let ws = self.weight_space(b.shape, &weight);
        if !ws.basis_ok {
            return Err(Error::BasisMismatch {
                shape: b.shape.to_string(),
                weight,
                rank: ws.rank,
                nonstandard: ws.nonstandard,
            });
        }
        let col = ws.column_of[&b.row_a];
        let mut out = WeylElement::zero(b.shape, self.field);
        if col >= ws.nonstandard {
            out.add_term(ws.standard[col - ws.nonstandard].clone(), 1);
        } else {
            for &(j, c) in &ws.reductions[col] {
                out.add_term(ws.standard[j].clone(), c);
            }
        }
        Ok(out)
    }

    /// Class in `Delta(shape)` of an element of `D(shape_1, shape_2)`.
    pub fn express(&self, shape: TwoRowShape, e: &DElement) -> Result<WeylElement> {
        let mut out = WeylElement::zero(shape, self.field);
        for (tuple, c) in e.terms() {
            let b = Bideterminant::from_tuple(shape, tuple)?;
            out.add_scaled(&self.express_bideterminant(&b)?, c);
        }
        Ok(out)
    }

    /// Standard-basis expansion, preferring the first-column closed form.
    pub fn straighten(&self, b: &Bideterminant) -> Result<WeylElement> {
        if b.is_standard() {
            return Ok(WeylElement::basis(b.to_tableau(), self.field));
        }
        if !self.closed_form {
            return self.express_bideterminant(b);
        }
        match straighten_first_column(b, self.field) {
            Straightened::Done(e) => Ok(e),
            Straightened::NonStandard(_) => self.express_bideterminant(b),
        }
    }
}
