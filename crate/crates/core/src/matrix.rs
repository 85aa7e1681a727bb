//! Dense matrices over a prime field.
//!
//! Vectors are plain `Vec<u32>`; matrices act on column vectors
//! (`mul_vec`) but subspaces keep their bases as matrix rows.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::field::PrimeField;
use crate::subspace::Subspace;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatrixFp {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for MatrixFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixFp[F_{}; {}x{}]", self.field.p(), self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl MatrixFp {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.p();
        }
        m
    }

    /// Builds a matrix from rows, reducing every entry mod p.
    pub fn from_rows<T: Copy + Into<i64>>(field: PrimeField, rows: &[Vec<T>], cols: usize) -> Self {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix row {i}");
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = field.from_i64(x.into());
            }
        }
        m
    }

    pub fn from_flat(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        let p = field.p();
        let data = data.into_iter().map(|x| x % p).collect();
        Self { field, rows, cols, data }
    }

    /// Matrix whose rows are the given vectors.
    pub fn from_vectors(field: PrimeField, cols: usize, vecs: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(vecs.len() * cols);
        for v in vecs {
            assert_eq!(v.len(), cols);
            data.extend_from_slice(v);
        }
        Self { field, rows: vecs.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: PrimeField, rows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..rows {
                m.data[i * cols.len() + j] = c[i];
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x % self.field.p();
    }
    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }
    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
    pub fn row_vectors(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
    pub fn to_nested(&self) -> Vec<Vec<u32>> {
        self.row_vectors()
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let p = self.field.p() as u64;
        let (n, m, k) = (self.rows, other.cols, self.cols);
        let mut out = vec![0u32; n * m];
        let mut acc = vec![0u64; m];
        // Lazy reduction: three products of residues below 2^31 fit in a u64.
        for i in 0..n {
            acc.iter_mut().for_each(|a| *a = 0);
            let mut pending = 0;
            for t in 0..k {
                let a = self.data[i * k + t] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &other.data[t * m..(t + 1) * m];
                for (x, &b) in acc.iter_mut().zip(orow) {
                    *x += a * b as u64;
                }
                pending += 1;
                if pending == 3 {
                    acc.iter_mut().for_each(|x| *x %= p);
                    pending = 0;
                }
            }
            for (o, x) in out[i * m..(i + 1) * m].iter_mut().zip(&acc) {
                *o = (x % p) as u32;
            }
        }
        Self { field: self.field, rows: n, cols: m, data: out }
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = self.field.p() as u64;
        (0..self.rows)
            .map(|i| {
                let mut s = 0u64;
                for (j, &x) in self.row(i).iter().enumerate() {
                    s = (s + x as u64 * v[j] as u64) % p;
                }
                s as u32
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.rows, v.len());
        let f = self.field;
        let mut out = vec![0u32; self.cols];
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(self.row(i)) {
                *o = f.add(*o, f.mul(c, x));
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Self { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Self { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Self { field: f, rows: self.rows, cols: self.cols, data }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &Self, c: u32) -> Self {
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, f.mul(c, b))).collect();
        Self { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut r = Self::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        r
    }

    pub fn trace(&self) -> u32 {
        (0..self.rows.min(self.cols)).fold(0, |s, i| self.field.add(s, self.get(i, i)))
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Self { field: self.field, rows: self.rows, cols, data }
    }

    pub fn block_diag(blocks: &[&MatrixFp], field: PrimeField) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.data[(r0 + i) * m + c0 + j] = b.get(i, j);
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let mut out = Self::zeros(self.field, rows.len(), cols.len());
        for (oi, i) in rows.clone().enumerate() {
            for (oj, j) in cols.clone().enumerate() {
                out.data[oi * out.cols + oj] = self.get(i, j);
            }
        }
        out
    }

    /// Reduced row echelon form, pivot columns and rank.
    pub fn rref(&self) -> (MatrixFp, Vec<usize>, usize) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(None);
        let rank = pivots.len();
        m.data.truncate(rank * m.cols);
        m.rows = rank;
        (m, pivots, rank)
    }

    pub fn rank(&self) -> usize {
        self.rref().2
    }

    /// Row-reduces in place, optionally mirroring row operations on `track`.
    /// Zero rows end up at the bottom; returns pivot columns.
    pub(crate) fn rref_in_place(&mut self, mut track: Option<&mut MatrixFp>) -> Vec<usize> {
        let f = self.field;
        let p = f.p() as u64;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                self.swap_rows(piv, r);
                if let Some(t) = track.as_deref_mut() {
                    t.swap_rows(piv, r);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            if inv != 1 {
                for x in &mut self.data[r * cols..(r + 1) * cols] {
                    *x = ((*x as u64 * inv as u64) % p) as u32;
                }
                if let Some(t) = track.as_deref_mut() {
                    let tc = t.cols;
                    for x in &mut t.data[r * tc..(r + 1) * tc] {
                        *x = ((*x as u64 * inv as u64) % p) as u32;
                    }
                }
            }
            let pivot_row: Vec<u32> = self.data[r * cols..(r + 1) * cols].to_vec();
            let track_row: Option<Vec<u32>> =
                track.as_deref().map(|t| t.data[r * t.cols..(r + 1) * t.cols].to_vec());
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c];
                if factor == 0 {
                    continue;
                }
                let neg = p - factor as u64;
                for (x, &y) in self.data[i * cols..(i + 1) * cols].iter_mut().zip(&pivot_row).skip(c) {
                    if y != 0 {
                        *x = ((*x as u64 + neg * y as u64) % p) as u32;
                    }
                }
                if let (Some(t), Some(tr)) = (track.as_deref_mut(), track_row.as_ref()) {
                    let tc = t.cols;
                    for (x, &y) in t.data[i * tc..(i + 1) * tc].iter_mut().zip(tr) {
                        if y != 0 {
                            *x = ((*x as u64 + neg * y as u64) % p) as u32;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let c = self.cols;
        for j in 0..c {
            self.data.swap(a * c + j, b * c + j);
        }
    }

    /// Right null space `{x : self * x = 0}`.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots, rank) = self.rref();
        let n = self.cols;
        let f = self.field;
        let mut is_pivot = vec![usize::MAX; n];
        for (i, &c) in pivots.iter().enumerate() {
            is_pivot[c] = i;
        }
        let mut vecs = Vec::with_capacity(n - rank);
        for free in (0..n).filter(|&c| is_pivot[c] == usize::MAX) {
            let mut v = vec![0u32; n];
            v[free] = 1;
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = f.neg(r.get(i, free));
            }
            vecs.push(v);
        }
        Subspace::from_vectors(f, n, &vecs)
    }

    /// Left null space `{y : y * self = 0}`.
    pub fn left_kernel(&self) -> Subspace {
        self.transpose().kernel()
    }

    /// Column space as a subspace of `F_p^rows`.
    pub fn image(&self) -> Subspace {
        Subspace::from_vectors(self.field, self.rows, &self.transpose().row_vectors())
    }

    pub fn inverse(&self) -> Option<MatrixFp> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut t = MatrixFp::identity(self.field, n);
        let piv = m.rref_in_place(Some(&mut t));
        (piv.len() == n).then_some(t)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Solves `x * self = v` for a row vector `x`, if solvable.
    pub fn solve_left(&self, v: &[u32]) -> Option<Vec<u32>> {
        let coords = crate::subspace::Coordinates::new(self);
        coords.coords(v)
    }

    /// Some `x` with `self · x = b` (free variables set to zero), if one exists.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        let n = self.cols;
        let aug = self.hstack(&MatrixFp::from_columns(self.field, self.rows, &[b.to_vec()]));
        let (r, pivots, _) = aug.rref();
        if pivots.last() == Some(&n) {
            return None;
        }
        let mut x = vec![0u32; n];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = r.get(i, n);
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rref_duplicate_rows_f2() {
        let m = MatrixFp::from_rows(f(2), &[vec![1, 1], vec![1, 1]], 2);
        let (r, piv, rank) = m.rref();
        assert_eq!(r.to_nested(), vec![vec![1, 1]]);
        assert_eq!(piv, vec![0]);
        assert_eq!(rank, 1);
    }

    #[test]
    fn rref_identity_f3() {
        let id = MatrixFp::identity(f(3), 3);
        let (r, _, rank) = id.rref();
        assert_eq!(r, id);
        assert_eq!(rank, 3);
    }

    #[test]
    fn rref_f5_hand_elimination() {
        // [[2,4],[1,2]]: row1 = 2*(1,2), scaling by 2^{-1}=3 gives (1,2); row2 cancels.
        let m = MatrixFp::from_rows(f(5), &[vec![2, 4], vec![1, 2]], 2);
        let (r, _, rank) = m.rref();
        assert_eq!(r.to_nested(), vec![vec![1, 2]]);
        assert_eq!(rank, 1);
    }

    #[test]
    fn kernel_small_cases() {
        let z = MatrixFp::zeros(f(2), 2, 2);
        assert_eq!(z.kernel().dim(), 2);
        for p in [2, 3, 5, 7] {
            assert_eq!(MatrixFp::identity(f(p), 4).kernel().dim(), 0);
        }
        // [[1,1]] over F_2: of the four vectors only 00 and 11 are killed.
        let k = MatrixFp::from_rows(f(2), &[vec![1, 1]], 2).kernel();
        assert_eq!(k.basis().to_nested(), vec![vec![1, 1]]);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = MatrixFp::from_rows(f(7), &[vec![1, 2, 0], vec![0, 1, 3], vec![4, 0, 1]], 3);
        let inv = m.inverse().expect("invertible");
        assert_eq!(m.mul(&inv), MatrixFp::identity(f(7), 3));
        let s = MatrixFp::from_rows(f(7), &[vec![1, 2], vec![2, 4]], 2);
        assert!(s.inverse().is_none());
    }
}
