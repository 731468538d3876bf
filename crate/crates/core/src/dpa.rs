//! The divided power algebra on letters `1..=n` and tensor products of its
//! graded pieces.
//!
//! A monomial `1^(e_1) ... n^(e_n)` is an exponent vector. Multiplication adds
//! exponents with the divided-power coefficient `prod C(e_i + f_i, f_i)`;
//! comultiplication of a monomial into a fixed bidegree is the sum, with unit
//! coefficients, of all exponentwise splits.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::modarith::PrimeField;
use crate::tableaux::{exp_notation, Partition};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    /// The unit monomial on `n` letters.
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    /// `letter^(e)` on `n` letters; `letter` is 0-based.
    pub fn power(n: usize, letter: usize, e: u32) -> Self {
        let mut v = vec![0; n];
        v[letter] = e;
        Monomial(v)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn letters(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn into_exps(self) -> Vec<u32> {
        self.0
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&exp_notation(&self.0))
    }
}

/// Product in the divided power algebra: `(coefficient, monomial)`.
pub fn multiply(m1: &Monomial, m2: &Monomial, field: PrimeField) -> (u32, Monomial) {
    debug_assert_eq!(m1.letters(), m2.letters());
    let mut coeff = 1 % field.p();
    let exps =
        m1.0.iter()
            .zip(&m2.0)
            .map(|(&e, &f)| {
                if f > 0 && e > 0 {
                    coeff = field.mul(coeff, field.binomial((e + f) as u64, f as i64));
                }
                e + f
            })
            .collect();
    (coeff, Monomial(exps))
}

/// All monomials of `degree` bounded exponentwise by `bound`, in
/// lexicographic order of exponent vectors.
pub fn bounded_monomials(bound: &[u32], degree: u32) -> Vec<Monomial> {
    let n = bound.len();
    let mut suffix = vec![0u32; n + 1];
    for k in (0..n).rev() {
        suffix[k] = suffix[k + 1] + bound[k];
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn go(k: usize, left: u32, bound: &[u32], suffix: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if k == bound.len() {
            if left == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        if suffix[k] < left {
            return;
        }
        for e in 0..=bound[k].min(left) {
            cur[k] = e;
            go(k + 1, left - e, bound, suffix, cur, out);
        }
        cur[k] = 0;
    }
    if suffix[0] >= degree {
        go(0, degree, bound, &suffix, &mut cur, &mut out);
    }
    out
}

/// All monomials of `degree` on `n` letters.
pub fn monomials(n: usize, degree: u32) -> Vec<Monomial> {
    bounded_monomials(&vec![degree; n], degree)
}

/// Component `D(d1 + d2) -> D(d1) (x) D(d2)` of the comultiplication applied
/// to `m`: every split `m = m' + m''` with `deg m' = d1`, each with
/// coefficient 1.
pub fn diagonal_split(m: &Monomial, d1: u32, d2: u32) -> Vec<(Monomial, Monomial)> {
    assert_eq!(d1 + d2, m.degree(), "split degrees must add up to the degree of {m}");
    bounded_monomials(&m.0, d1)
        .into_iter()
        .map(|left| {
            let right = m.0.iter().zip(&left.0).map(|(e, l)| e - l).collect();
            (left, Monomial(right))
        })
        .collect()
}

/// An element of a tensor product `D(a_1) (x) ... (x) D(a_k)` given by one
/// monomial per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialTuple(Vec<Monomial>);

impl MonomialTuple {
    pub fn new(factors: Vec<Monomial>) -> Self {
        MonomialTuple(factors)
    }

    pub fn factors(&self) -> &[Monomial] {
        &self.0
    }

    pub fn multidegree(&self) -> Vec<u32> {
        self.0.iter().map(Monomial::degree).collect()
    }

    /// Total exponent vector.
    pub fn weight(&self) -> Vec<u32> {
        let n = self.0.first().map_or(0, Monomial::letters);
        let mut w = vec![0; n];
        for m in &self.0 {
            for (acc, e) in w.iter_mut().zip(&m.0) {
                *acc += e;
            }
        }
        w
    }
}

impl fmt::Display for MonomialTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|m| m.to_string()).collect();
        f.write_str(&parts.join(" ⊗ "))
    }
}

/// A finite linear combination of monomial tuples over `GF(p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DElement {
    field: PrimeField,
    terms: BTreeMap<MonomialTuple, u32>,
}

impl DElement {
    pub fn zero(field: PrimeField) -> Self {
        DElement { field, terms: BTreeMap::new() }
    }

    pub fn from_tuple(tuple: MonomialTuple, field: PrimeField) -> Self {
        let mut e = DElement::zero(field);
        e.add_term(tuple, 1);
        e
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn add_term(&mut self, tuple: MonomialTuple, coeff: u32) {
        let coeff = coeff % self.field.p();
        if coeff == 0 {
            return;
        }
        match self.terms.entry(tuple) {
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

    pub fn add_scaled(&mut self, other: &DElement, scale: u32) {
        for (t, &c) in &other.terms {
            self.add_term(t.clone(), self.field.mul(c, scale));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonomialTuple, u32)> {
        self.terms.iter().map(|(t, &c)| (t, c))
    }

    pub fn coefficient(&self, tuple: &MonomialTuple) -> u32 {
        self.terms.get(tuple).copied().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for DElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(t, c)| format!("{c}·({t})")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `1^(a_1) (x) 2^(a_2) (x) ... (x) k^(a_k)` on `k` letters.
pub fn canonical_generator(multidegree: &[u32]) -> MonomialTuple {
    let n = multidegree.len();
    MonomialTuple(multidegree.iter().enumerate().map(|(i, &a)| Monomial::power(n, i, a)).collect())
}

/// Multidegree of the relation summand `M(t)` for rows `row` and `row + 1`
/// (0-based): `(l_1, ..., l_row + t, l_{row+1} - t, ...)`.
pub fn summand_multidegree(lambda: &[u32], row: usize, t: u32) -> Vec<u32> {
    let mut a = lambda.to_vec();
    a[row] += t;
    a[row + 1] -= t;
    a
}

/// Restriction of the box map to the summand for rows `row`, `row + 1`,
/// applied to one tuple of that summand: split factor `row` into degrees
/// `(deg - t, t)` and multiply the degree-`t` piece into factor `row + 1`.
pub fn box_image(tuple: &MonomialTuple, row: usize, t: u32, field: PrimeField) -> DElement {
    let factors = tuple.factors();
    assert!(row + 1 < factors.len(), "row pair out of range");
    let upper = &factors[row];
    let deg = upper.degree();
    assert!(t <= deg, "cannot split off {t} from degree {deg}");
    let mut out = DElement::zero(field);
    for (keep, moved) in diagonal_split(upper, deg - t, t) {
        let (c, merged) = multiply(&moved, &factors[row + 1], field);
        if c == 0 {
            continue;
        }
        let mut fs = factors.to_vec();
        fs[row] = keep;
        fs[row + 1] = merged;
        out.add_term(MonomialTuple(fs), c);
    }
    out
}

/// Image under the box map of the canonical generator of the summand `M(t)`
/// for rows `row`, `row + 1` (0-based). Letters are `1..=m`.
pub fn box_generator_image(lambda: &Partition, row: usize, t: u32, field: PrimeField) -> Result<DElement> {
    let parts = lambda.parts();
    if row + 1 >= parts.len() || t == 0 || t > parts[row + 1] {
        return Err(Error::Precondition(format!(
            "box generator needs 0 <= row < m-1 and 1 <= t <= lambda_(row+2); got row={row}, t={t}, lambda={lambda}"
        )));
    }
    let gen = canonical_generator(&summand_multidegree(parts, row, t));
    Ok(box_image(&gen, row, t, field))
}

/// Full image of a tuple of `D(mu_1 + t, mu_2 - t)` under the two-row box map.
pub fn box_full_image(tuple: &MonomialTuple, t: u32, field: PrimeField) -> Result<DElement> {
    if tuple.factors().len() != 2 || t == 0 || t > tuple.factors()[0].degree() {
        return Err(Error::Precondition(format!("box_full_image needs a pair and 1 <= t, got {tuple}, t={t}")));
    }
    Ok(box_image(tuple, 0, t, field))
}

/// Every tuple of the given multidegree on `n` letters, in lexicographic order.
pub fn all_tuples(n: usize, multidegree: &[u32]) -> Vec<MonomialTuple> {
    let per_factor: Vec<Vec<Monomial>> = multidegree.iter().map(|&d| monomials(n, d)).collect();
    let mut out = vec![Vec::new()];
    for choices in &per_factor {
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for prefix in &out {
            for m in choices {
                let mut v: Vec<Monomial> = prefix.clone();
                v.push(m.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(MonomialTuple).collect()
}
