//! Jacobson radical of a matrix algebra over `F_p` by iterated trace forms.
//!
//! For `A ≤ M_n(F_p)` put `I_{-1} = A` and
//! `I_i = { a ∈ I_{i-1} : g_i(ab) = 0 for all b ∈ A }`, where
//! `g_i(x) = (Tr(x̃^{p^i}) mod p^{i+1}) / p^i` for an integer lift `x̃`.
//! Each `g_i` is additive on `I_{i-1}`, so every step is a linear solve, and
//! `I_l = J(A)` for `l = ⌊log_p n⌋`.

use crate::field::PrimeField;
use crate::matrix::MatrixFp;

/// Radical of the algebra spanned by `basis` (independent, closed under
/// products, containing the identity), as coefficient vectors over `basis`.
pub fn radical_coefficients(field: PrimeField, basis: &[MatrixFp]) -> Vec<Vec<u32>> {
    let dim = basis.len();
    if dim == 0 {
        return vec![];
    }
    let n = basis[0].rows();
    let p = field.p() as u64;
    let mut levels = 0u32;
    let mut pw = p;
    while pw <= n as u64 {
        levels += 1;
        pw = pw.saturating_mul(p);
    }
    // Current ideal as coefficient rows.
    let mut ideal: Vec<Vec<u32>> = (0..dim)
        .map(|i| {
            let mut v = vec![0; dim];
            v[i] = 1;
            v
        })
        .collect();
    for i in 0..=levels {
        if ideal.is_empty() {
            break;
        }
        let elems: Vec<MatrixFp> = ideal.iter().map(|c| combine(field, basis, c)).collect();
        let mut g = MatrixFp::zeros(field, ideal.len(), dim);
        for (t, a) in elems.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                g.set(t, j, trace_form(&a.mul(b), p, i));
            }
        }
        let kernel = g.left_kernel();
        let ideal_mat = MatrixFp::from_vectors(field, dim, &ideal);
        ideal = kernel.vectors().iter().map(|c| ideal_mat.vec_mul(c)).collect();
    }
    crate::subspace::Subspace::from_vectors(field, dim, &ideal).vectors()
}

pub(crate) fn combine(field: PrimeField, basis: &[MatrixFp], c: &[u32]) -> MatrixFp {
    let n = basis[0].rows();
    let mut acc = MatrixFp::zeros(field, n, basis[0].cols());
    for (m, &x) in basis.iter().zip(c) {
        if x != 0 {
            acc = acc.add_scaled(m, x);
        }
    }
    acc
}

/// `g_level(x)` as an element of `F_p`.
fn trace_form(x: &MatrixFp, p: u64, level: u32) -> u32 {
    if level == 0 {
        return x.trace();
    }
    let q = p.pow(level + 1) as u128;
    let n = x.rows();
    let lifted: Vec<u128> = x.data().iter().map(|&v| v as u128).collect();
    let powered = int_matpow(&lifted, n, p.pow(level), q);
    let tr = (0..n).fold(0u128, |s, i| (s + powered[i * n + i]) % q);
    let pl = p.pow(level) as u128;
    debug_assert_eq!(tr % pl, 0, "trace not divisible on the current ideal");
    ((tr / pl) % p as u128) as u32
}

fn int_matpow(m: &[u128], n: usize, mut e: u64, q: u128) -> Vec<u128> {
    let mut result: Vec<u128> = (0..n * n).map(|k| if k % (n + 1) == 0 { 1 % q } else { 0 }).collect();
    let mut base = m.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = int_matmul(&result, &base, n, q);
        }
        e >>= 1;
        if e > 0 {
            base = int_matmul(&base, &base, n, q);
        }
    }
    result
}

fn int_matmul(a: &[u128], b: &[u128], n: usize, q: u128) -> Vec<u128> {
    let mut out = vec![0u128; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = (out[i * n + j] + x * b[k * n + j]) % q;
            }
        }
    }
    out
}
