//! Partitions, two-row shapes and standard tableaux in exponential notation.
//!
//! A two-row tableau is stored by its row contents: `row_a[k]` (resp.
//! `row_b[k]`) counts the occurrences of letter `k + 1` in the first (resp.
//! second) row. Rows are weakly increasing by construction, so standardness
//! reduces to the column condition
//! `sum_{i<=k} row_b[i] <= sum_{i<k} row_a[i]` for every letter `k`.

use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A partition `lambda_1 >= lambda_2 >= ... >= lambda_m > 0` of `r >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Trailing zero parts are dropped.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.is_empty() {
            return Err(Error::InvalidPartition("empty partition".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has an interior zero")));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `i`-th part (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn transpose(&self) -> Partition {
        let cols = self.0[0];
        let parts = (1..=cols).map(|j| self.0.iter().filter(|&&l| l >= j).count() as u32).collect();
        Partition(parts)
    }

    /// Dominance: `self` dominates `other` iff every partial sum of `other` is
    /// at most the matching partial sum of `self`.
    pub fn dominates(&self, other: &Partition) -> Result<bool> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        let len = self.len().max(other.len());
        let (mut s, mut o) = (0, 0);
        for k in 0..len {
            s += self.part(k);
            o += other.part(k);
            if o > s {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The partition with the first part removed, if anything remains.
    pub fn remove_first_row(&self) -> Option<Partition> {
        (self.len() > 1).then(|| Partition(self.0[1..].to_vec()))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim().parse::<u32>().map_err(|_| Error::InvalidPartition(format!("cannot parse {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&strs.join(","))
    }
}

/// Serialized as the comma-separated parts, e.g. `"8,3,1"`.
impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A shape `(first, second)` with `first >= second >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TwoRowShape {
    pub first: u32,
    pub second: u32,
}

impl TwoRowShape {
    pub fn new(first: u32, second: u32) -> Result<Self> {
        if second > first || first == 0 {
            return Err(Error::InvalidPartition(format!("({first},{second}) is not a partition")));
        }
        Ok(TwoRowShape { first, second })
    }

    pub fn degree(self) -> u32 {
        self.first + self.second
    }

    pub fn to_partition(self) -> Partition {
        Partition::new(vec![self.first, self.second]).expect("valid two-row shape")
    }
}

impl TryFrom<&Partition> for TwoRowShape {
    type Error = Error;

    fn try_from(p: &Partition) -> Result<Self> {
        if p.len() > 2 {
            return Err(Error::NotTwoRow(p.to_string()));
        }
        TwoRowShape::new(p.part(0), p.part(1))
    }
}

impl fmt::Display for TwoRowShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.first, self.second)
    }
}

/// Render an exponent vector as `1^(3)2^(2)4`, writing a space between two
/// consecutive bare letters so multi-digit letters stay readable.
pub fn exp_notation(row: &[u32]) -> String {
    let mut out = String::new();
    let mut prev_bare = false;
    for (k, &e) in row.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if prev_bare {
            out.push(' ');
        }
        out.push_str(&(k + 1).to_string());
        if e > 1 {
            out.push_str(&format!("^({e})"));
            prev_bare = false;
        } else {
            prev_bare = true;
        }
    }
    if out.is_empty() {
        out.push('∅');
    }
    out
}

/// A two-row tableau in exponential form. Not necessarily standard; use
/// [`TwoRowTableau::is_standard`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TwoRowTableau {
    pub shape: TwoRowShape,
    pub row_a: Vec<u32>,
    pub row_b: Vec<u32>,
}

impl TwoRowTableau {
    pub fn new(shape: TwoRowShape, row_a: Vec<u32>, row_b: Vec<u32>) -> Result<Self> {
        if row_a.len() != row_b.len() {
            return Err(Error::Precondition("rows use different alphabets".into()));
        }
        let (da, db) = (row_a.iter().sum::<u32>(), row_b.iter().sum::<u32>());
        if da != shape.first || db != shape.second {
            return Err(Error::Precondition(format!("row degrees ({da},{db}) do not match shape {shape}")));
        }
        Ok(TwoRowTableau { shape, row_a, row_b })
    }

    pub fn letters(&self) -> usize {
        self.row_a.len()
    }

    pub fn weight(&self) -> Vec<u32> {
        self.row_a.iter().zip(&self.row_b).map(|(a, b)| a + b).collect()
    }

    pub fn is_standard(&self) -> bool {
        is_standard_rows(&self.row_a, &self.row_b)
    }
}

/// Column-strictness in exponential form.
pub fn is_standard_rows(row_a: &[u32], row_b: &[u32]) -> bool {
    let mut a_before = 0u32;
    let mut b_upto = 0u32;
    for (a, b) in row_a.iter().zip(row_b) {
        b_upto += b;
        if b_upto > a_before {
            return false;
        }
        a_before += a;
    }
    true
}

// Lexicographic on the second row; the first row is implied within a weight.
impl Ord for TwoRowTableau {
    fn cmp(&self, other: &Self) -> Ordering {
        self.row_b
            .cmp(&other.row_b)
            .then_with(|| self.row_a.cmp(&other.row_a))
            .then_with(|| self.shape.cmp(&other.shape))
    }
}

impl PartialOrd for TwoRowTableau {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TwoRowTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", exp_notation(&self.row_a), exp_notation(&self.row_b))
    }
}

/// All standard tableaux of `shape` and `weight`, ordered lexicographically by
/// the second row.
pub fn enumerate_standard(shape: TwoRowShape, weight: &[u32]) -> Vec<TwoRowTableau> {
    let mut out = Vec::new();
    if weight.iter().sum::<u32>() != shape.degree() {
        return out;
    }
    let n = weight.len();
    // suffix capacities let the search stop early when the second row cannot fill
    let mut suffix = vec![0u32; n + 1];
    for k in (0..n).rev() {
        suffix[k] = suffix[k + 1] + weight[k];
    }
    let mut row_b = vec![0u32; n];
    #[allow(clippy::too_many_arguments)]
    fn go(
        k: usize,
        b_upto: u32,
        a_before: u32,
        shape: TwoRowShape,
        weight: &[u32],
        suffix: &[u32],
        row_b: &mut Vec<u32>,
        out: &mut Vec<TwoRowTableau>,
    ) {
        let n = weight.len();
        if k == n {
            if b_upto == shape.second {
                let row_a = weight.iter().zip(row_b.iter()).map(|(w, b)| w - b).collect();
                out.push(TwoRowTableau { shape, row_a, row_b: row_b.clone() });
            }
            return;
        }
        let remaining = shape.second - b_upto;
        if suffix[k] < remaining {
            return;
        }
        let max_b = weight[k].min(remaining).min(a_before - b_upto.min(a_before));
        for b in 0..=max_b {
            // rows are never longer than the shape allows
            let a_total = a_before + weight[k] - b;
            if a_total > shape.first {
                continue;
            }
            row_b[k] = b;
            go(k + 1, b_upto + b, a_total, shape, weight, suffix, row_b, out);
        }
        row_b[k] = 0;
    }
    go(0, 0, 0, shape, weight, &suffix, &mut row_b, &mut out);
    out
}

/// Basis labels `T` of `Hom(D(lambda), Delta(mu))` when `mu_2 <= lambda_1 <= mu_1`:
/// the first row starts with `1^(lambda_1)`, and `a_i + b_i = lambda_i`.
pub fn lemma23_basis(lambda: &Partition, shape: TwoRowShape) -> Result<Vec<TwoRowTableau>> {
    if lambda.degree() != shape.degree() {
        return Err(Error::DegreeMismatch { left: lambda.degree(), right: shape.degree() });
    }
    let l1 = lambda.part(0);
    if !(shape.second <= l1 && l1 <= shape.first) {
        return Err(Error::Precondition(format!("need mu_2 <= lambda_1 <= mu_1, got lambda={lambda}, mu={shape}")));
    }
    let m = lambda.len();
    let parts = lambda.parts();
    let mut out = Vec::new();
    let mut row_b = vec![0u32; m];
    // b_2, ..., b_m with b_i <= lambda_i and sum mu_2; every choice is standard
    fn go(i: usize, left: u32, parts: &[u32], row_b: &mut Vec<u32>, acc: &mut Vec<Vec<u32>>) {
        if i == parts.len() {
            if left == 0 {
                acc.push(row_b.clone());
            }
            return;
        }
        let cap: u32 = parts[i..].iter().sum();
        if cap < left {
            return;
        }
        for b in 0..=parts[i].min(left) {
            row_b[i] = b;
            go(i + 1, left - b, parts, row_b, acc);
        }
        row_b[i] = 0;
    }
    let mut rows = Vec::new();
    go(1, shape.second, parts, &mut row_b, &mut rows);
    for row_b in rows {
        let row_a: Vec<u32> = parts.iter().zip(&row_b).map(|(l, b)| l - b).collect();
        out.push(TwoRowTableau { shape, row_a, row_b });
    }
    out.sort();
    Ok(out)
}

/// Partitions of `r` with at most `max_parts` parts, in reverse lexicographic
/// order (`(r)` first).
pub fn partitions(r: u32, max_parts: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(left: u32, max_part: u32, max_parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if cur.len() == max_parts {
            return;
        }
        for part in (1..=left.min(max_part)).rev() {
            cur.push(part);
            go(left - part, part, max_parts, cur, out);
            cur.pop();
        }
    }
    if r > 0 {
        go(r, r, max_parts, &mut cur, &mut out);
    }
    out
}

/// Two-row shapes of degree `r`, `(r,0)` first.
pub fn two_row_shapes(r: u32) -> Vec<TwoRowShape> {
    (0..=r / 2).map(|s| TwoRowShape { first: r - s, second: s }).collect()
}
