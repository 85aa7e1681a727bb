//! Univariate polynomials over `F_p`, just enough to split endomorphisms.

use crate::field::PrimeField;
use crate::matrix::MatrixFp;
use crate::subspace::Coordinates;

/// Coefficients from the constant term upward; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    pub coeffs: Vec<u32>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn x() -> Self {
        Self::new(vec![0, 1])
    }

    pub fn constant(c: u32) -> Self {
        Self::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, f: PrimeField, a: u32) -> u32 {
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, a), c))
    }

    pub fn add(&self, other: &Self, f: PrimeField) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| f.add(*self.coeffs.get(i).unwrap_or(&0), *other.coeffs.get(i).unwrap_or(&0)))
            .collect();
        Self::new(c)
    }

    pub fn sub(&self, other: &Self, f: PrimeField) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| f.sub(*self.coeffs.get(i).unwrap_or(&0), *other.coeffs.get(i).unwrap_or(&0)))
            .collect();
        Self::new(c)
    }

    pub fn mul(&self, other: &Self, f: PrimeField) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(vec![]);
        }
        let mut c = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Self::new(c)
    }

    pub fn monic(&self, f: PrimeField) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lead) => {
                let inv = f.inv(lead);
                Self::new(self.coeffs.iter().map(|&c| f.mul(c, inv)).collect())
            }
        }
    }

    pub fn divrem(&self, d: &Self, f: PrimeField) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = f.inv(d.coeffs[dd]);
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::new(vec![]), self.clone());
        }
        let mut q = vec![0u32; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = f.mul(r[k + dd], inv);
            q[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in d.coeffs.iter().enumerate() {
                r[k + j] = f.sub(r[k + j], f.mul(c, b));
            }
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self, f: PrimeField) -> Self {
        self.divrem(d, f).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self, f: PrimeField) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u128, m: &Self, f: PrimeField) -> Self {
        let mut base = self.rem(m, f);
        let mut r = Self::constant(1).rem(m, f);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base, f).rem(m, f);
            }
            base = base.mul(&base, f).rem(m, f);
            e >>= 1;
        }
        r
    }

    /// Evaluates the polynomial at a square matrix.
    pub fn eval_matrix(&self, m: &MatrixFp) -> MatrixFp {
        let f = m.field();
        let n = m.rows();
        let mut acc = MatrixFp::zeros(f, n, n);
        let id = MatrixFp::identity(f, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(m).add_scaled(&id, c);
        }
        acc
    }

    /// Distinct roots in `F_p`, ascending.
    pub fn roots(&self, f: PrimeField) -> Vec<u32> {
        if self.degree().is_none_or(|d| d == 0) {
            return vec![];
        }
        let p = f.p();
        if p <= 4096 {
            return (0..p).filter(|&a| self.eval(f, a) == 0).collect();
        }
        // Product of the distinct linear factors, then equal-degree splitting.
        let x = Self::x();
        let xp = x.powmod(p as u128, self, f);
        let g = self.gcd(&xp.sub(&x, f), f);
        let mut out = Vec::new();
        split_linear(&g, f, 1, &mut out);
        out.sort_unstable();
        out
    }
}

fn split_linear(g: &Poly, f: PrimeField, mut shift: u32, out: &mut Vec<u32>) {
    match g.degree() {
        None | Some(0) => {}
        Some(1) => out.push(f.neg(f.mul(g.coeffs[0], f.inv(g.coeffs[1])))),
        Some(_) => {
            let p = f.p();
            loop {
                let t = Poly::new(vec![shift % p, 1]);
                shift += 1;
                let h = t.powmod(((p - 1) / 2) as u128, g, f).sub(&Poly::constant(1), f);
                let d = g.gcd(&h, f);
                let dd = d.degree().unwrap_or(0);
                if dd > 0 && dd < g.degree().unwrap() {
                    let (q, _) = g.divrem(&d, f);
                    split_linear(&d, f, shift, out);
                    split_linear(&q, f, shift, out);
                    return;
                }
            }
        }
    }
}

/// Minimal polynomial of a square matrix via the Krylov sequence of its powers.
pub fn minimal_polynomial(m: &MatrixFp) -> Poly {
    let f = m.field();
    let n = m.rows();
    let mut powers: Vec<Vec<u32>> = vec![MatrixFp::identity(f, n).data().to_vec()];
    let mut cur = MatrixFp::identity(f, n);
    loop {
        cur = cur.mul(m);
        let rows = MatrixFp::from_vectors(f, n * n, &powers);
        let coords = Coordinates::new(&rows);
        if let Some(c) = coords.coords(cur.data()) {
            let mut coeffs: Vec<u32> = c.iter().map(|&x| f.neg(x)).collect();
            coeffs.push(1);
            return Poly::new(coeffs);
        }
        powers.push(cur.data().to_vec());
    }
}

/// Distinct-degree factorization of a squarefree monic polynomial: pairs of
/// (degree, product of all irreducible factors of that degree).
pub fn distinct_degree(g: &Poly, f: PrimeField) -> Vec<(usize, Poly)> {
    let mut out = Vec::new();
    let mut rest = g.monic(f);
    let x = Poly::x();
    let mut xq = x.clone();
    let mut d = 0;
    while rest.degree().unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > rest.degree().unwrap() {
            out.push((rest.degree().unwrap(), rest.clone()));
            break;
        }
        xq = xq.powmod(f.p() as u128, &rest, f);
        let h = rest.gcd(&xq.sub(&x, f), f);
        if h.degree().unwrap_or(0) > 0 {
            rest = rest.divrem(&h, f).0;
            xq = xq.rem(&rest, f);
            out.push((d, h));
        }
    }
    out
}

/// Squarefree part `rad(g)` of a nonzero polynomial.
pub fn squarefree_part(g: &Poly, f: PrimeField) -> Poly {
    let p = f.p() as usize;
    let deriv = Poly::new(
        g.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, (i % p) as u32))
            .collect(),
    );
    if deriv.is_zero() {
        // g(x) = h(x^p); over F_p the p-th root just drops to h.
        let h = Poly::new(g.coeffs.iter().step_by(p).copied().collect());
        return squarefree_part(&h, f);
    }
    let common = g.gcd(&deriv, f);
    let (q, _) = g.monic(f).divrem(&common, f);
    let rest = squarefree_part_common(&common, &q, f);
    q.mul(&rest, f).monic(f)
}

// Irreducible factors of `common` not already dividing `q`.
fn squarefree_part_common(common: &Poly, q: &Poly, f: PrimeField) -> Poly {
    if common.degree().unwrap_or(0) == 0 {
        return Poly::constant(1);
    }
    let mut c = common.clone();
    loop {
        let g = c.gcd(q, f);
        if g.degree().unwrap_or(0) == 0 {
            break;
        }
        c = c.divrem(&g, f).0;
    }
    if c.degree().unwrap_or(0) == 0 {
        Poly::constant(1)
    } else {
        squarefree_part(&c, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn roots_small_and_large() {
        // (x-1)(x-3) over F_7
        let g = Poly::new(vec![3, 3, 1]);
        assert_eq!(g.roots(f(7)), vec![1, 3]);
        let big = f(1_000_003);
        let a = 12345u32;
        let b = 999_000u32;
        let g = Poly::new(vec![big.neg(a), 1]).mul(&Poly::new(vec![big.neg(b), 1]), big);
        assert_eq!(g.roots(big), vec![a, b]);
    }

    #[test]
    fn minpoly_of_nilpotent_jordan_block() {
        let m = MatrixFp::from_rows(f(3), &[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]], 3);
        assert_eq!(minimal_polynomial(&m), Poly::new(vec![0, 0, 0, 1]));
        assert!(minimal_polynomial(&m).eval_matrix(&m).is_zero());
    }

    #[test]
    fn ddf_and_squarefree() {
        let fl = f(2);
        // (x^2+x+1)^2 * x
        let q = Poly::new(vec![1, 1, 1]);
        let g = q.mul(&q, fl).mul(&Poly::x(), fl);
        let r = squarefree_part(&g, fl);
        assert_eq!(r, q.mul(&Poly::x(), fl));
        let parts = distinct_degree(&r, fl);
        assert_eq!(parts, vec![(1, Poly::x()), (2, q)]);
    }
}
