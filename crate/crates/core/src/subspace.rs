//! Canonical subspaces of `F_p^n`, stored by their RREF basis.
//!
//! Two subspaces are equal exactly when their RREF bases are identical,
//! which is what makes set-theoretic identification of sections decidable.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::MatrixFp;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    basis: MatrixFp,
    pivots: Vec<usize>,
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} in {}, {:?})", self.dim(), self.ambient, self.basis.to_nested())
    }
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Self { ambient, basis: MatrixFp::zeros(field, 0, ambient), pivots: vec![] }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        Self { ambient, basis: MatrixFp::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    /// Span of the rows of `m`.
    pub fn row_space(m: &MatrixFp) -> Self {
        let (basis, pivots, _) = m.rref();
        Self { ambient: m.cols(), basis, pivots }
    }

    pub fn from_vectors(field: PrimeField, ambient: usize, vecs: &[Vec<u32>]) -> Self {
        Self::row_space(&MatrixFp::from_vectors(field, ambient, vecs))
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }
    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    #[inline]
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }
    pub fn basis(&self) -> &MatrixFp {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn vectors(&self) -> Vec<Vec<u32>> {
        self.basis.row_vectors()
    }

    /// Remainder of `v` after eliminating against the RREF basis.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut w = v.to_vec();
        for (i, &c) in self.pivots.iter().enumerate() {
            let a = w[c];
            if a == 0 {
                continue;
            }
            for (x, &b) in w.iter_mut().zip(self.basis.row(i)) {
                *x = f.sub(*x, f.mul(a, b));
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        self.check(other)?;
        Ok(self.dim() <= other.dim() && (0..self.dim()).all(|i| other.contains(self.basis.row(i))))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::row_space(&self.basis.vstack(&other.basis)))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = self.field();
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(f, self.ambient));
        }
        // (x, y) with x*A + y*B = 0 gives x*A in both spaces.
        let stacked = self.basis.vstack(&other.basis);
        let lk = stacked.left_kernel();
        let k = self.dim();
        let vecs: Vec<Vec<u32>> = lk
            .vectors()
            .into_iter()
            .map(|z| self.basis.vec_mul(&z[..k]))
            .collect();
        Ok(Self::from_vectors(f, self.ambient, &vecs))
    }

    /// Complement of `self` inside `outer`, built by scanning `outer`'s RREF
    /// rows in order and keeping each one not already spanned.
    pub fn complement_in(&self, outer: &Self) -> Result<Self> {
        self.check(outer)?;
        if !self.is_subset(outer)? {
            return Err(Error::NotASubspace);
        }
        let f = self.field();
        let mut acc = self.clone();
        let mut chosen = Vec::new();
        for row in outer.vectors() {
            if acc.dim() == outer.dim() {
                break;
            }
            if !acc.contains(&row) {
                acc = Self::row_space(&acc.basis.vstack(&MatrixFp::from_vectors(f, self.ambient, std::slice::from_ref(&row))));
                chosen.push(row);
            }
        }
        Ok(Self::from_vectors(f, self.ambient, &chosen))
    }

    /// Image under a linear map given by a matrix acting on column vectors.
    pub fn image_under(&self, m: &MatrixFp) -> Self {
        let vecs: Vec<Vec<u32>> = self.vectors().iter().map(|v| m.mul_vec(v)).collect();
        Self::from_vectors(self.field(), m.rows(), &vecs)
    }

    /// Canonical total order: dimension first, then RREF entries.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.dim()
            .cmp(&other.dim())
            .then_with(|| self.basis.data().cmp(other.basis.data()))
    }
}

/// Writes `v = x + y` with `x ∈ a` and `y ∈ b`; `None` when `v ∉ a + b`.
pub fn split_sum(v: &[u32], a: &Subspace, b: &Subspace) -> Option<(Vec<u32>, Vec<u32>)> {
    let f = a.field();
    let extra = a.intersection(b).ok()?.complement_in(b).ok()?;
    let stacked = a.basis().vstack(extra.basis());
    let c = Coordinates::new(&stacked).coords(v)?;
    let x = a.basis().vec_mul(&c[..a.dim()]);
    let y = v.iter().zip(&x).map(|(&p, &q)| f.sub(p, q)).collect();
    Some((x, y))
}

/// Coordinates of vectors with respect to a fixed list of independent rows.
#[derive(Debug, Clone)]
pub struct Coordinates {
    rref: MatrixFp,
    pivots: Vec<usize>,
    transform: MatrixFp,
}

impl Coordinates {
    /// `rows` must be linearly independent.
    pub fn new(rows: &MatrixFp) -> Self {
        let f = rows.field();
        let mut m = rows.clone();
        let mut t = MatrixFp::identity(f, rows.rows());
        let pivots = m.rref_in_place(Some(&mut t));
        assert_eq!(pivots.len(), rows.rows(), "coordinate basis must be independent");
        Self { rref: m, pivots, transform: t }
    }

    pub fn len(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pivots.is_empty()
    }

    /// `Some(c)` with `c * rows = v`, or `None` if `v` is outside the span.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        let c: Vec<u32> = self.pivots.iter().map(|&j| v[j]).collect();
        if self.rref.vec_mul(&c) != v {
            return None;
        }
        Some(self.transform.vec_mul(&c))
    }
}

/// Splits a vector space presented as `bottom ⊆ top` into a transversal and
/// supplies quotient coordinates for vectors of `top`.
#[derive(Debug, Clone)]
pub struct QuotientCoords {
    transversal: Subspace,
    n_top: usize,
    coords: Coordinates,
}

impl QuotientCoords {
    pub fn new(top: &Subspace, bottom: &Subspace) -> Result<Self> {
        let transversal = bottom.complement_in(top)?;
        let stacked = transversal.basis().vstack(bottom.basis());
        Ok(Self { n_top: transversal.dim(), transversal, coords: Coordinates::new(&stacked) })
    }

    pub fn transversal(&self) -> &Subspace {
        &self.transversal
    }

    pub fn dim(&self) -> usize {
        self.n_top
    }

    /// Quotient coordinates of a vector of `top`.
    pub fn project(&self, v: &[u32]) -> Option<Vec<u32>> {
        self.coords.coords(v).map(|mut c| {
            c.truncate(self.n_top);
            c
        })
    }

    /// Representative in the transversal of quotient coordinates `c`.
    pub fn lift(&self, c: &[u32]) -> Vec<u32> {
        self.transversal.basis().vec_mul(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn transverse_lines() {
        let a = Subspace::from_vectors(f(2), 2, &[vec![1, 0]]);
        let b = Subspace::from_vectors(f(2), 2, &[vec![0, 1]]);
        assert!(a.sum(&b).unwrap().is_full());
        assert!(a.intersection(&b).unwrap().is_zero());
        assert_eq!(a.intersection(&a).unwrap(), a);
        assert_eq!(a.sum(&a).unwrap(), a);
    }

    #[test]
    fn complement_pivot_greedy_f3() {
        let a = Subspace::from_vectors(f(3), 3, &[vec![1, 1, 0]]);
        let b = Subspace::from_vectors(f(3), 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let c = a.complement_in(&b).unwrap();
        assert_eq!(c.basis().to_nested(), vec![vec![1, 0, 0]]);
        assert_eq!(b.complement_in(&a), Err(Error::NotASubspace));
    }

    #[test]
    fn ambient_mismatch() {
        let a = Subspace::zero(f(2), 2);
        let b = Subspace::zero(f(2), 3);
        assert_eq!(a.sum(&b), Err(Error::AmbientMismatch(2, 3)));
    }

    #[test]
    fn quotient_coords_roundtrip() {
        let top = Subspace::full(f(5), 3);
        let bottom = Subspace::from_vectors(f(5), 3, &[vec![1, 2, 3]]);
        let q = QuotientCoords::new(&top, &bottom).unwrap();
        assert_eq!(q.dim(), 2);
        let v = vec![4, 1, 0];
        let c = q.project(&v).unwrap();
        let back = q.lift(&c);
        let diff: Vec<u32> = v.iter().zip(&back).map(|(&a, &b)| f(5).sub(a, b)).collect();
        assert!(bottom.contains(&diff));
    }
}
