//! Dense matrices over `GF(p)` with exact Gauss-Jordan elimination.
//!
//! Pivoting is deterministic: the pivot for each column is the first row at
//! or below the current rank with a nonzero entry.

use std::fmt;

use crate::modarith::PrimeField;

#[derive(Clone, PartialEq, Eq)]
pub struct GfMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: GfMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl GfMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        GfMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Entries are reduced mod `p`. Panics on ragged input.
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r.iter().map(|&v| v % field.p()));
        }
        GfMatrix { field, rows: rows.len(), cols, data }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.p();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Append a row; its length must equal `cols`.
    pub fn push_row(&mut self, row: &[u32]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend(row.iter().map(|&v| v % self.field.p()));
        self.rows += 1;
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows).map(|r| self.row(r).iter().zip(v).fold(0u32, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * self.cols);
        head[lo * self.cols..(lo + 1) * self.cols].swap_with_slice(&mut tail[..self.cols]);
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let f = m.field;
        let p = f.p() as u64;
        let cols = m.cols;
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..cols {
            if rank == m.rows {
                break;
            }
            let Some(pr) = (rank..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            m.swap_rows(rank, pr);
            let inv = f.inv(m.get(rank, c));
            for v in &mut m.data[rank * cols..(rank + 1) * cols] {
                *v = ((*v as u64 * inv as u64) % p) as u32;
            }
            let pivot_row: Vec<u32> = m.row(rank)[c..].to_vec();
            for r in 0..m.rows {
                if r == rank {
                    continue;
                }
                let factor = m.get(r, c);
                if factor == 0 {
                    continue;
                }
                let neg = (p - factor as u64) % p;
                let row = &mut m.data[r * cols + c..(r + 1) * cols];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    if y != 0 {
                        *x = ((*x as u64 + neg * y as u64) % p) as u32;
                    }
                }
            }
            pivots.push(c);
            rank += 1;
        }
        Rref { matrix: m, rank, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right kernel. One vector per free column `f`, with a 1 in
    /// position `f`, zeros in the other free positions, ordered by `f`.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        self.rref().nullspace()
    }

    /// A solution of `self * x = rhs`, or `None` when the system is
    /// inconsistent. Free variables are set to zero.
    pub fn solve(&self, rhs: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = GfMatrix::zeros(self.field, self.rows, self.cols + 1);
        for (r, &v) in rhs.iter().enumerate() {
            aug.data[r * (self.cols + 1)..r * (self.cols + 1) + self.cols].copy_from_slice(self.row(r));
            aug.set(r, self.cols, v);
        }
        let red = aug.rref();
        if red.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (i, &pc) in red.pivots.iter().enumerate() {
            x[pc] = red.matrix.get(i, self.cols);
        }
        Some(x)
    }
}

impl Rref {
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let m = &self.matrix;
        let f = m.field;
        let mut is_pivot = vec![false; m.cols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..m.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0u32; m.cols];
                v[free] = 1 % f.p();
                for (i, &pc) in self.pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(i, free));
                }
                v
            })
            .collect()
    }
}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GfMatrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn identity_has_full_rank() {
        for p in [2, 3, 7] {
            let m = GfMatrix::identity(gf(p), 3);
            assert_eq!(m.rank(), 3);
            assert!(m.nullspace().is_empty());
        }
    }

    #[test]
    fn all_ones_over_gf2() {
        let m = GfMatrix::from_rows(gf(2), 2, &[vec![1, 1], vec![1, 1]]);
        let red = m.rref();
        assert_eq!(red.rank, 1);
        assert_eq!(red.pivots, vec![0]);
        assert_eq!(m.nullspace(), vec![vec![1, 1]]);
    }

    #[test]
    fn solve_distinguishes_inconsistent_from_zero() {
        let f = gf(3);
        let m = GfMatrix::from_rows(f, 2, &[vec![1, 1], vec![2, 2]]);
        assert_eq!(m.solve(&[0, 0]), Some(vec![0, 0]));
        assert_eq!(m.solve(&[1, 0]), None);
        let x = m.solve(&[1, 2]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![1, 2]);
    }

    #[test]
    fn empty_shapes() {
        let f = gf(5);
        let m = GfMatrix::zeros(f, 0, 3);
        assert_eq!(m.nullspace().len(), 3);
        let m = GfMatrix::zeros(f, 4, 0);
        assert_eq!(m.rank(), 0);
        assert!(m.nullspace().is_empty());
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in proptest::collection::vec(0u32..5, 48)) {
            let f = gf(5);
            let rows: Vec<Vec<u32>> = entries.chunks(8).map(|c| c.to_vec()).collect();
            let m = GfMatrix::from_rows(f, 8, &rows);
            let red = m.rref();
            let null = red.nullspace();
            prop_assert_eq!(red.rank + null.len(), 8);
            for v in &null {
                prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn solve_recovers_consistent_rhs(
            entries in proptest::collection::vec(0u32..7, 30),
            x in proptest::collection::vec(0u32..7, 6),
        ) {
            let f = gf(7);
            let rows: Vec<Vec<u32>> = entries.chunks(6).map(|c| c.to_vec()).collect();
            let m = GfMatrix::from_rows(f, 6, &rows);
            let b = m.mul_vec(&x);
            let y = m.solve(&b).expect("consistent by construction");
            prop_assert_eq!(m.mul_vec(&y), b);
        }
    }
}
