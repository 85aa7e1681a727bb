//! Brute-force submodule lattice for small modules.
//!
//! Everything here works on explicit element sets: every subspace of `F_p^n`
//! is enumerated from its reduced echelon form, invariant ones are kept, and
//! radical, socle, Loewy series and direct-sum decompositions are read off the
//! lattice by set operations only. Nothing is shared with the linear-algebra
//! code paths it is meant to check, apart from applying the action matrices.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::module::AModule;
use crate::par::Exec;

/// A subspace as the set of its elements, indexed by `Σ v_i p^i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    bits: Vec<u64>,
    dim: usize,
}

impl ElementSet {
    fn empty(size: usize) -> Self {
        Self { bits: vec![0; size.div_ceil(64)], dim: 0 }
    }

    fn insert(&mut self, i: usize) {
        self.bits[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    fn meet(&self, other: &Self, p: usize) -> Self {
        let bits: Vec<u64> = self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect();
        let mut out = Self { bits, dim: 0 };
        out.dim = log_p(out.count(), p);
        out
    }
}

fn log_p(mut size: usize, p: usize) -> usize {
    let mut d = 0;
    while size > 1 {
        size /= p;
        d += 1;
    }
    d
}

/// The full lattice of submodules of one module.
#[derive(Debug, Clone)]
pub struct Lattice {
    p: usize,
    n: usize,
    /// Sorted by dimension.
    pub members: Vec<ElementSet>,
}

/// What the oracle reports about a module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub dim: usize,
    /// Number of submodules of each dimension `0..=dim`.
    pub submodule_counts: Vec<usize>,
    pub radical_dim: usize,
    pub socle_dim: usize,
    /// Layer dimensions of the radical series, top first.
    pub radical_layers: Vec<usize>,
    /// Layer dimensions of the socle series, bottom first.
    pub socle_layers: Vec<usize>,
    /// Lattice signatures of the indecomposable summands, sorted.
    pub summands: Vec<Signature>,
}

/// Isomorphism invariants of an indecomposable module read off its lattice.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Signature {
    pub dim: usize,
    pub radical_layers: Vec<usize>,
    pub socle_layers: Vec<usize>,
    pub submodule_counts: Vec<usize>,
}

struct Space {
    p: usize,
    n: usize,
    /// `images[g][x]`: index of generator `g` applied to element `x`.
    images: Vec<Vec<usize>>,
}

impl Space {
    fn new(m: &AModule) -> Self {
        let p = m.field().p() as usize;
        let n = m.dim();
        let size = p.pow(n as u32);
        let images = m
            .actions()
            .iter()
            .map(|a| (0..size).map(|x| encode(&a.mul_vec(&decode(x, p, n)), p)).collect())
            .collect();
        Self { p, n, images }
    }

    fn size(&self) -> usize {
        self.p.pow(self.n as u32)
    }

    fn add(&self, x: usize, y: usize) -> usize {
        let (mut x, mut y, mut out, mut place) = (x, y, 0, 1);
        for _ in 0..self.n {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        out
    }

    fn scale(&self, c: usize, x: usize) -> usize {
        let (mut x, mut out, mut place) = (x, 0, 1);
        for _ in 0..self.n {
            out += (c * (x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        out
    }

    fn span(&self, gens: &[usize]) -> ElementSet {
        let mut elems = vec![0usize];
        let mut set = ElementSet::empty(self.size());
        set.insert(0);
        for &g in gens {
            if set.contains(g) {
                continue;
            }
            let mut fresh = Vec::new();
            for c in 1..self.p {
                let cg = self.scale(c, g);
                for &e in &elems {
                    let x = self.add(e, cg);
                    set.insert(x);
                    fresh.push(x);
                }
            }
            elems.extend(fresh);
        }
        set.dim = log_p(elems.len(), self.p);
        set
    }

    /// Invariant subspaces of dimension `k`, from every reduced echelon form.
    fn stratum(&self, k: usize) -> Vec<ElementSet> {
        let mut out = Vec::new();
        for pivots in combinations(self.n, k) {
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|r| ((pivots[r] + 1)..self.n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
                .collect();
            let total = self.p.pow(free.len() as u32);
            for code in 0..total {
                let mut rows = vec![vec![0usize; self.n]; k];
                for (r, &c) in pivots.iter().enumerate() {
                    rows[r][c] = 1;
                }
                let mut rest = code;
                for &(r, c) in &free {
                    rows[r][c] = rest % self.p;
                    rest /= self.p;
                }
                if self.invariant(&rows, &pivots) {
                    let gens: Vec<usize> = rows.iter().map(|r| encode_usize(r, self.p)).collect();
                    out.push(self.span(&gens));
                }
            }
        }
        out
    }

    /// Each generator maps each row back into the row space.
    fn invariant(&self, rows: &[Vec<usize>], pivots: &[usize]) -> bool {
        for img in &self.images {
            for r in rows {
                let mut x = decode_usize(img[encode_usize(r, self.p)], self.p, self.n);
                for (row, &c) in rows.iter().zip(pivots) {
                    let coef = x[c];
                    if coef != 0 {
                        for (xi, ri) in x.iter_mut().zip(row) {
                            *xi = (*xi + (self.p - coef) * ri) % self.p;
                        }
                    }
                }
                if x.iter().any(|&e| e != 0) {
                    return false;
                }
            }
        }
        true
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn encode(v: &[u32], p: usize) -> usize {
    v.iter().rev().fold(0, |acc, &x| acc * p + x as usize)
}

fn encode_usize(v: &[usize], p: usize) -> usize {
    v.iter().rev().fold(0, |acc, &x| acc * p + x)
}

fn decode_usize(mut x: usize, p: usize, n: usize) -> Vec<usize> {
    (0..n)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn decode(x: usize, p: usize, n: usize) -> Vec<u32> {
    decode_usize(x, p, n).into_iter().map(|d| d as u32).collect()
}

impl Lattice {
    /// Enumerates every invariant subspace, one rank stratum per task.
    pub fn of(m: &AModule, cap: usize, exec: Exec) -> Result<Self> {
        if m.dim() > cap {
            return Err(Error::DimCapExceeded { dim: m.dim(), cap });
        }
        let space = Space::new(m);
        let strata = exec.map_range(m.dim() + 1, |k| space.stratum(k));
        let members: Vec<ElementSet> = strata.into_iter().flatten().collect();
        Ok(Self { p: space.p, n: space.n, members })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The element set spanned by `vecs`, for comparing with other code paths.
    pub fn span_of(&self, vecs: &[Vec<u32>]) -> ElementSet {
        let space = Space { p: self.p, n: self.n, images: vec![] };
        let gens: Vec<usize> = vecs.iter().map(|v| encode(v, self.p)).collect();
        space.span(&gens)
    }

    /// The whole module.
    pub fn whole(&self) -> &ElementSet {
        self.members.last().expect("the whole module is a submodule")
    }

    fn bottom(&self) -> &ElementSet {
        &self.members[0]
    }

    fn below<'a>(&'a self, x: &'a ElementSet) -> impl Iterator<Item = &'a ElementSet> + 'a {
        self.members.iter().filter(move |y| y.is_subset(x))
    }

    /// Intersection of the maximal submodules of `x`.
    pub fn radical_of(&self, x: &ElementSet) -> ElementSet {
        let proper: Vec<&ElementSet> = self.below(x).filter(|y| y.dim < x.dim).collect();
        let maximal = proper.iter().filter(|y| !proper.iter().any(|z| z.dim > y.dim && y.is_subset(z)));
        maximal.fold(x.clone(), |acc, y| acc.meet(y, self.p))
    }

    /// Smallest submodule containing every member of `xs`.
    fn join(&self, xs: &[&ElementSet]) -> ElementSet {
        self.members
            .iter()
            .find(|y| xs.iter().all(|x| x.is_subset(y)))
            .expect("the whole module contains everything")
            .clone()
    }

    /// Sum of the submodules minimal among those strictly above `x`, inside `within`.
    pub fn socle_over(&self, x: &ElementSet, within: &ElementSet) -> ElementSet {
        let above: Vec<&ElementSet> =
            self.below(within).filter(|y| x.is_subset(y) && y.dim > x.dim).collect();
        let minimal: Vec<&ElementSet> =
            above.iter().copied().filter(|y| !above.iter().any(|z| z.dim < y.dim && z.is_subset(y))).collect();
        let mut all = minimal;
        all.push(x);
        self.join(&all)
    }

    pub fn radical(&self) -> ElementSet {
        self.radical_of(self.whole())
    }

    pub fn socle(&self) -> ElementSet {
        self.socle_over(self.bottom(), self.whole())
    }

    /// `x ⊇ rad x ⊇ … ⊇ 0`.
    pub fn radical_series_of(&self, x: &ElementSet) -> Vec<ElementSet> {
        let mut out = vec![x.clone()];
        while out.last().expect("nonempty").dim > 0 {
            let next = self.radical_of(out.last().expect("nonempty"));
            out.push(next);
        }
        out
    }

    /// `0 ⊆ soc x ⊆ … ⊆ x`.
    pub fn socle_series_of(&self, x: &ElementSet) -> Vec<ElementSet> {
        let mut out = vec![self.bottom().clone()];
        while out.last().expect("nonempty").dim < x.dim {
            let next = self.socle_over(out.last().expect("nonempty"), x);
            out.push(next);
        }
        out
    }

    /// Splits `x` into indecomposable submodules by searching for complements.
    pub fn summands_of(&self, x: &ElementSet) -> Vec<ElementSet> {
        let inside: Vec<&ElementSet> = self.below(x).collect();
        for a in inside.iter().filter(|a| a.dim > 0 && a.dim < x.dim) {
            let complement = inside
                .iter()
                .find(|b| b.dim + a.dim == x.dim && a.meet(b, self.p).dim == 0);
            if let Some(b) = complement {
                let mut out = self.summands_of(a);
                out.extend(self.summands_of(b));
                return out;
            }
        }
        vec![x.clone()]
    }

    pub fn signature_of(&self, x: &ElementSet) -> Signature {
        let layers = |series: &[ElementSet]| series.windows(2).map(|w| w[0].dim.abs_diff(w[1].dim)).collect();
        let mut counts = vec![0; x.dim + 1];
        for y in self.below(x) {
            counts[y.dim] += 1;
        }
        Signature {
            dim: x.dim,
            radical_layers: layers(&self.radical_series_of(x)),
            socle_layers: layers(&self.socle_series_of(x)),
            submodule_counts: counts,
        }
    }

    pub fn report(&self) -> OracleReport {
        let top = self.whole();
        let sig = self.signature_of(top);
        let mut summands: Vec<Signature> = if top.dim == 0 {
            vec![]
        } else {
            self.summands_of(top).iter().map(|s| self.signature_of(s)).collect()
        };
        summands.sort();
        OracleReport {
            dim: self.n,
            submodule_counts: sig.submodule_counts,
            radical_dim: self.radical().dim,
            socle_dim: self.socle().dim,
            radical_layers: sig.radical_layers,
            socle_layers: sig.socle_layers,
            summands,
        }
    }
}

/// Lattice data of `m`, refusing modules above `cap`.
pub fn lattice_oracle(m: &AModule, cap: usize, exec: Exec) -> Result<OracleReport> {
    Ok(Lattice::of(m, cap, exec)?.report())
}

/// The lattice signature of `m` viewed as a single summand.
pub fn signature(m: &AModule, cap: usize) -> Result<Signature> {
    let l = Lattice::of(m, cap, Exec::Sequential)?;
    Ok(l.signature_of(l.whole()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn c2_regular_has_three_submodules() {
        let m = AModule::regular(&corpus::algebra("f2_c2").unwrap());
        let r = lattice_oracle(&m, 6, Exec::Sequential).unwrap();
        assert_eq!(r.submodule_counts, vec![1, 1, 1]);
        assert_eq!(r.radical_dim, 1);
    }

    #[test]
    fn v4_regular_lattice() {
        let m = AModule::regular(&corpus::algebra("f2_v4").unwrap());
        let r = lattice_oracle(&m, 6, Exec::Parallel).unwrap();
        // Three planes between the socle and the radical.
        assert_eq!(r.submodule_counts, vec![1, 1, 3, 1, 1]);
        assert_eq!(r.socle_dim, 1);
        assert_eq!(r.radical_layers, vec![1, 2, 1]);
    }

    #[test]
    fn simple_has_two_submodules() {
        let m = AModule::simple(&corpus::algebra("f3_s3").unwrap(), 1);
        let r = lattice_oracle(&m, 6, Exec::Sequential).unwrap();
        assert_eq!(r.submodule_counts.iter().sum::<usize>(), 2);
    }

    #[test]
    fn refuses_large_modules() {
        let alg = corpus::algebra("f2_d8").unwrap();
        let m = AModule::regular(&alg);
        assert_eq!(
            lattice_oracle(&m, 6, Exec::Sequential).unwrap_err(),
            Error::DimCapExceeded { dim: 8, cap: 6 }
        );
    }
}
