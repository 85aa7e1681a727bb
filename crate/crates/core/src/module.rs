//! Modules given by generator actions, their sections, and Hom spaces.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::MatrixFp;
use crate::subspace::{QuotientCoords, Subspace};

/// Where a section lives: `top / bottom` inside a root module with no provenance.
#[derive(Debug, Clone)]
pub struct Provenance {
    pub root: Arc<AModule>,
    pub top: Subspace,
    pub bottom: Subspace,
}

impl PartialEq for Provenance {
    fn eq(&self, other: &Self) -> bool {
        self.root.id == other.root.id && self.top == other.top && self.bottom == other.bottom
    }
}

#[derive(Debug, Clone)]
pub struct AModule {
    algebra: Arc<Algebra>,
    dim: usize,
    action: Vec<MatrixFp>,
    provenance: Option<Provenance>,
    id: u64,
    basis_cache: OnceLock<Vec<MatrixFp>>,
}

impl PartialEq for AModule {
    /// Equal actions on equal bases over the same algebra. Provenance is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same(&other.algebra) && self.action == other.action
    }
}

fn module_id(alg: &Algebra, dim: usize, action: &[MatrixFp]) -> u64 {
    let mut h = DefaultHasher::new();
    alg.id().hash(&mut h);
    dim.hash(&mut h);
    for a in action {
        a.data().hash(&mut h);
    }
    h.finish()
}

/// A linear map between modules, stored as a matrix acting on columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Morphism {
    pub matrix: MatrixFp,
}

impl Morphism {
    pub fn new(source: &AModule, target: &AModule, matrix: MatrixFp) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::BadAction("morphism has the wrong shape".into()));
        }
        if !is_homomorphism(source, target, &matrix) {
            return Err(Error::BadAction("matrix does not intertwine the actions".into()));
        }
        Ok(Self { matrix })
    }

    pub fn kernel(&self) -> Subspace {
        self.matrix.kernel()
    }

    pub fn image(&self) -> Subspace {
        self.matrix.image()
    }
}

pub fn is_homomorphism(source: &AModule, target: &AModule, f: &MatrixFp) -> bool {
    source
        .action
        .iter()
        .zip(&target.action)
        .all(|(a, b)| f.mul(a) == b.mul(f))
}

impl AModule {
    /// Validates the action against the algebra's relations.
    pub fn new(algebra: Arc<Algebra>, action: Vec<MatrixFp>) -> Result<Self> {
        if action.len() != algebra.num_gens() {
            return Err(Error::BadAction(format!(
                "expected {} generator matrices, got {}",
                algebra.num_gens(),
                action.len()
            )));
        }
        let dim = action.first().map_or(0, |a| a.rows());
        if action.iter().any(|a| a.rows() != dim || a.cols() != dim) {
            return Err(Error::BadAction("action matrices must be square of equal size".into()));
        }
        if action.iter().any(|a| a.field() != algebra.field()) {
            return Err(Error::BadAction("action matrices over the wrong field".into()));
        }
        let m = Self::from_parts(algebra, dim, action, None);
        m.check_relations()?;
        Ok(m)
    }

    pub(crate) fn from_parts(
        algebra: Arc<Algebra>,
        dim: usize,
        action: Vec<MatrixFp>,
        provenance: Option<Provenance>,
    ) -> Self {
        let id = module_id(&algebra, dim, &action);
        Self { algebra, dim, action, provenance, id, basis_cache: OnceLock::new() }
    }

    /// Action of every word must agree with left multiplication by each generator.
    fn check_relations(&self) -> Result<()> {
        let alg = &self.algebra;
        let words = self.word_matrices();
        for (gi, g_on) in alg.gen_on_words.iter().enumerate() {
            for (k, w) in words.iter().enumerate() {
                let lhs = self.combine(&words, &g_on.column(k));
                if lhs != self.action[gi].mul(w) {
                    return Err(Error::BadAction(format!("relation fails for generator {gi} on word {k}")));
                }
            }
        }
        Ok(())
    }

    fn word_matrices(&self) -> Vec<MatrixFp> {
        let f = self.field();
        let mut out: Vec<MatrixFp> = Vec::with_capacity(self.algebra.words.len());
        for &(g, parent) in &self.algebra.words {
            if g == usize::MAX {
                out.push(MatrixFp::identity(f, self.dim));
            } else {
                let m = self.action[g].mul(&out[parent]);
                out.push(m);
            }
        }
        out
    }

    fn combine(&self, mats: &[MatrixFp], c: &[u32]) -> MatrixFp {
        let mut acc = MatrixFp::zeros(self.field(), self.dim, self.dim);
        for (m, &x) in mats.iter().zip(c) {
            if x != 0 {
                acc = acc.add_scaled(m, x);
            }
        }
        acc
    }

    pub fn regular(algebra: &Arc<Algebra>) -> Self {
        let action = algebra.gens.iter().map(|&g| algebra.left_mult[g].clone()).collect();
        Self::from_parts(algebra.clone(), algebra.dim, action, None)
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Self {
        let f = algebra.field();
        let action = algebra.gens.iter().map(|_| MatrixFp::zeros(f, 0, 0)).collect();
        Self::from_parts(algebra.clone(), 0, action, None)
    }

    /// The cached simple module with the given id.
    pub fn simple(algebra: &Arc<Algebra>, id: usize) -> Self {
        let s = algebra.simple_data(id);
        Self::from_parts(algebra.clone(), s.dim, s.action.clone(), None)
    }

    /// The principal indecomposable covering simple `id`, as a left ideal of the regular module.
    pub fn pim(algebra: &Arc<Algebra>, id: usize) -> Self {
        let p = algebra.pims().iter().find(|p| p.simple == id).expect("every simple has a pim");
        let reg = Self::regular(algebra);
        reg.submodule(&p.ideal).expect("left ideals are submodules")
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }
    pub fn field(&self) -> PrimeField {
        self.algebra.field()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn id(&self) -> u64 {
        self.id
    }
    pub fn action(&self, gen: usize) -> &MatrixFp {
        &self.action[gen]
    }
    pub fn actions(&self) -> &[MatrixFp] {
        &self.action
    }
    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    /// `(root id, top, bottom)`, treating a root module as the section `M / 0`.
    pub fn section_key(&self) -> (u64, Subspace, Subspace) {
        match &self.provenance {
            Some(p) => (p.root.id, p.top.clone(), p.bottom.clone()),
            None => (self.id, Subspace::full(self.field(), self.dim), Subspace::zero(self.field(), self.dim)),
        }
    }

    /// Action of each basis element `b_i` of the algebra.
    pub fn basis_matrices(&self) -> &[MatrixFp] {
        self.basis_cache.get_or_init(|| {
            let words = self.word_matrices();
            let c = &self.algebra.basis_in_words;
            (0..self.algebra.dim).map(|i| self.combine(&words, c.row(i))).collect()
        })
    }

    pub fn element_action(&self, x: &[u32]) -> MatrixFp {
        self.combine(self.basis_matrices(), x)
    }

    /// Actions of a basis of `J(A)`.
    pub fn radical_operators(&self) -> Vec<MatrixFp> {
        self.algebra.radical().vectors().iter().map(|j| self.element_action(j)).collect()
    }

    pub fn is_invariant(&self, s: &Subspace) -> bool {
        s.ambient_dim() == self.dim
            && self.action.iter().all(|a| s.vectors().iter().all(|v| s.contains(&a.mul_vec(v))))
    }

    /// Smallest submodule containing `vecs`.
    pub fn generate(&self, vecs: &[Vec<u32>]) -> Subspace {
        let f = self.field();
        let mut span = Subspace::from_vectors(f, self.dim, vecs);
        let mut queue = span.vectors();
        while let Some(v) = queue.pop() {
            for a in &self.action {
                let w = a.mul_vec(&v);
                if !span.contains(&w) {
                    span = span.sum(&Subspace::from_vectors(f, self.dim, std::slice::from_ref(&w))).expect("same ambient");
                    queue.push(w);
                }
            }
        }
        span
    }

    /// `J(A) · sub`.
    pub fn radical_of(&self, sub: &Subspace) -> Subspace {
        let vecs: Vec<Vec<u32>> = self
            .radical_operators()
            .iter()
            .flat_map(|j| sub.vectors().into_iter().map(move |v| j.mul_vec(&v)))
            .collect();
        Subspace::from_vectors(self.field(), self.dim, &vecs)
    }

    pub fn radical(&self) -> Subspace {
        self.radical_of(&Subspace::full(self.field(), self.dim))
    }

    /// `{ v : J(A) v ⊆ below }`.
    pub fn socle_over(&self, below: &Subspace) -> Subspace {
        let f = self.field();
        let n = self.dim;
        // Functionals vanishing exactly on `below`.
        let func = MatrixFp::from_vectors(f, n, &below.basis().kernel().vectors());
        let mut stacked = MatrixFp::zeros(f, 0, n);
        for j in self.radical_operators() {
            stacked = stacked.vstack(&func.mul(&j));
        }
        stacked.kernel()
    }

    pub fn socle(&self) -> Subspace {
        self.socle_over(&Subspace::zero(self.field(), self.dim))
    }

    /// `rad^0 M ⊇ rad^1 M ⊇ … ⊇ 0`, ending with the first zero term.
    pub fn radical_series(&self) -> Vec<Subspace> {
        let mut terms = vec![Subspace::full(self.field(), self.dim)];
        while !terms.last().unwrap().is_zero() {
            let next = self.radical_of(terms.last().unwrap());
            terms.push(next);
        }
        terms
    }

    /// `0 = soc_0 ⊆ soc_1 ⊆ … ⊆ M`, ending with the first full term.
    pub fn socle_series(&self) -> Vec<Subspace> {
        let mut terms = vec![Subspace::zero(self.field(), self.dim)];
        while !terms.last().unwrap().is_full() {
            let next = self.socle_over(terms.last().unwrap());
            terms.push(next);
        }
        terms
    }

    pub fn loewy_length(&self) -> usize {
        self.radical_series().len() - 1
    }

    /// The section `top / bottom`, with provenance normalized to the root module.
    pub fn section(&self, top: &Subspace, bottom: &Subspace) -> Result<AModule> {
        if top.ambient_dim() != self.dim || bottom.ambient_dim() != self.dim {
            return Err(Error::AmbientMismatch(self.dim, top.ambient_dim()));
        }
        if !bottom.is_subset(top)? {
            return Err(Error::NotNested);
        }
        if !self.is_invariant(top) || !self.is_invariant(bottom) {
            return Err(Error::NotInvariant);
        }
        let (root, rtop, rbottom) = match &self.provenance {
            Some(p) => {
                let q = QuotientCoords::new(&p.top, &p.bottom)?;
                let lift = |s: &Subspace| {
                    let vecs: Vec<Vec<u32>> = s.vectors().iter().map(|v| q.lift(v)).collect();
                    Subspace::from_vectors(self.field(), p.root.dim, &vecs).sum(&p.bottom).expect("same ambient")
                };
                (p.root.clone(), lift(top), lift(bottom))
            }
            None => {
                let mut plain = self.clone();
                plain.provenance = None;
                (Arc::new(plain), top.clone(), bottom.clone())
            }
        };
        Ok(Self::section_of_root(root, rtop, rbottom))
    }

    fn section_of_root(root: Arc<AModule>, top: Subspace, bottom: Subspace) -> AModule {
        let q = QuotientCoords::new(&top, &bottom).expect("checked nesting");
        let f = root.field();
        let t = q.transversal().vectors();
        let action = root
            .action
            .iter()
            .map(|a| {
                let cols: Vec<Vec<u32>> =
                    t.iter().map(|v| q.project(&a.mul_vec(v)).expect("invariant top")).collect();
                MatrixFp::from_columns(f, q.dim(), &cols)
            })
            .collect();
        let alg = root.algebra.clone();
        Self::from_parts(alg, q.dim(), action, Some(Provenance { root, top, bottom }))
    }

    /// `top / bottom` in this module's own transversal coordinates, without provenance.
    pub fn local_section(&self, top: &Subspace, bottom: &Subspace) -> Result<(AModule, QuotientCoords)> {
        if !bottom.is_subset(top)? {
            return Err(Error::NotNested);
        }
        if !self.is_invariant(top) || !self.is_invariant(bottom) {
            return Err(Error::NotInvariant);
        }
        let q = QuotientCoords::new(top, bottom)?;
        let t = q.transversal().vectors();
        let action = self
            .action
            .iter()
            .map(|a| {
                let cols: Vec<Vec<u32>> = t.iter().map(|v| q.project(&a.mul_vec(v)).expect("invariant")).collect();
                MatrixFp::from_columns(self.field(), q.dim(), &cols)
            })
            .collect();
        Ok((Self::from_parts(self.algebra.clone(), q.dim(), action, None), q))
    }

    pub fn submodule(&self, sub: &Subspace) -> Result<AModule> {
        self.section(sub, &Subspace::zero(self.field(), self.dim))
    }

    pub fn quotient(&self, sub: &Subspace) -> Result<AModule> {
        self.section(&Subspace::full(self.field(), self.dim), sub)
    }

    /// Coordinates of this section's basis vectors inside its root.
    pub fn lift_to_root(&self, v: &[u32]) -> Vec<u32> {
        match &self.provenance {
            Some(p) => QuotientCoords::new(&p.top, &p.bottom).expect("valid provenance").lift(v),
            None => v.to_vec(),
        }
    }

    pub fn direct_sum(parts: &[&AModule]) -> Result<AModule> {
        let alg = parts.first().ok_or_else(|| Error::Invalid("empty direct sum".into()))?.algebra.clone();
        if parts.iter().any(|m| !m.algebra.same(&alg)) {
            return Err(Error::AlgebraMismatch);
        }
        let f = alg.field();
        let action = (0..alg.num_gens())
            .map(|g| {
                let blocks: Vec<&MatrixFp> = parts.iter().map(|m| &m.action[g]).collect();
                MatrixFp::block_diag(&blocks, f)
            })
            .collect();
        let dim = parts.iter().map(|m| m.dim).sum();
        Ok(Self::from_parts(alg, dim, action, None))
    }

    /// Contragredient module through the algebra's anti-automorphism.
    pub fn dual(&self) -> Result<AModule> {
        let anti = self.algebra.anti.as_ref().ok_or(Error::NoDuality)?;
        let action = self
            .algebra
            .gens
            .iter()
            .map(|&g| self.element_action(&anti.column(g)).transpose())
            .collect();
        Ok(Self::from_parts(self.algebra.clone(), self.dim, action, None))
    }

    /// Annihilator of a subspace under the dual pairing.
    pub fn perp(s: &Subspace) -> Subspace {
        s.basis().kernel()
    }
}

/// Basis of `Hom_A(m, n)` as `n.dim × m.dim` matrices.
pub fn hom_space(m: &AModule, n: &AModule) -> Result<Vec<MatrixFp>> {
    if !m.algebra.same(&n.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field();
    let (dm, dn) = (m.dim, n.dim);
    let unknowns = dm * dn;
    if unknowns == 0 {
        return Ok(vec![]);
    }
    // X (dn×dm) flattened row-major; equations X·A_g − B_g·X = 0.
    let mut eqs = MatrixFp::zeros(f, m.action.len() * unknowns, unknowns);
    for (gi, (a, b)) in m.action.iter().zip(&n.action).enumerate() {
        for r in 0..dn {
            for c in 0..dm {
                let row = gi * unknowns + r * dm + c;
                for k in 0..dm {
                    let x = a.get(k, c);
                    if x != 0 {
                        let col = r * dm + k;
                        eqs.set(row, col, f.add(eqs.get(row, col), x));
                    }
                }
                for k in 0..dn {
                    let x = b.get(r, k);
                    if x != 0 {
                        let col = k * dm + c;
                        eqs.set(row, col, f.sub(eqs.get(row, col), x));
                    }
                }
            }
        }
    }
    Ok(eqs
        .kernel()
        .vectors()
        .into_iter()
        .map(|v| MatrixFp::from_flat(f, dn, dm, v))
        .collect())
}

/// `Σ c_k basis_k`.
pub fn combine_maps(f: PrimeField, basis: &[MatrixFp], c: &[u32], rows: usize, cols: usize) -> MatrixFp {
    let mut acc = MatrixFp::zeros(f, rows, cols);
    for (m, &x) in basis.iter().zip(c) {
        if x != 0 {
            acc = acc.add_scaled(m, x);
        }
    }
    acc
}
