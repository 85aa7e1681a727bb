//! Krull–Schmidt decomposition by Fitting splitting of endomorphisms, and
//! isomorphism testing.

use crate::config::Config;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::MatrixFp;
use crate::module::{combine_maps, hom_space, AModule};
use crate::poly::{distinct_degree, minimal_polynomial, squarefree_part, Poly};
use crate::radical::radical_coefficients;
use crate::rng::SeedStream;
use crate::subspace::{Coordinates, QuotientCoords, Subspace};

/// An indecomposable summand and the subspace of the parent it occupies.
#[derive(Debug, Clone)]
pub struct Summand {
    pub module: AModule,
    pub space: Subspace,
}

/// Indecomposable summands sorted by dimension (descending), then RREF basis.
pub fn decompose(m: &AModule, cfg: &Config, rng: &SeedStream) -> Result<Vec<Summand>> {
    let f = m.field();
    let mut done: Vec<Subspace> = Vec::new();
    let mut todo = vec![Subspace::full(f, m.dim())];
    let mut attempt = 0u64;
    while let Some(s) = todo.pop() {
        if s.is_zero() {
            continue;
        }
        let sub = m.submodule(&s)?;
        attempt += 1;
        match split_once(&sub, cfg, &mut rng.fork(attempt)) {
            Ok(None) => done.push(s),
            Ok(Some((a, b))) => {
                // Submodule coordinates are coordinates along the RREF rows of `s`.
                let lift = |t: &Subspace| {
                    let vecs: Vec<Vec<u32>> = t.vectors().iter().map(|v| s.basis().vec_mul(v)).collect();
                    Subspace::from_vectors(f, m.dim(), &vecs)
                };
                todo.push(lift(&a));
                todo.push(lift(&b));
            }
            Err(Error::Undecided { tries, .. }) => {
                let partial = done.iter().chain(todo.iter()).chain(std::iter::once(&s)).map(|x| x.dim()).collect::<Vec<_>>();
                return Err(Error::Undecided { tries, partial: format!("summand dims so far {partial:?}") });
            }
            Err(e) => return Err(e),
        }
    }
    done.sort_by(|a, b| b.dim().cmp(&a.dim()).then_with(|| a.basis().data().cmp(b.basis().data())));
    done.into_iter()
        .map(|space| Ok(Summand { module: m.submodule(&space)?, space }))
        .collect()
}

/// Structure of `End(m)`: basis, radical coefficients, and whether it is local.
pub struct EndInfo {
    pub basis: Vec<MatrixFp>,
    pub radical: Vec<Vec<u32>>,
    pub local: bool,
}

impl EndInfo {
    pub fn of(m: &AModule) -> Result<Self> {
        let basis = hom_space(m, m)?;
        if basis.is_empty() {
            return Ok(Self { basis, radical: vec![], local: false });
        }
        let radical = radical_coefficients(m.field(), &basis);
        let local = basis.len() - radical.len() == 1 || top_is_field(m.field(), &basis, &radical);
        Ok(Self { basis, radical, local })
    }

    /// `End(m)/J(End(m))` is `F_p` itself.
    pub fn split_local(&self) -> bool {
        self.basis.len() - self.radical.len() == 1
    }

    /// Whether `x` (a coefficient vector) lies in `J(End)`.
    pub fn in_radical(&self, f: PrimeField, x: &[u32]) -> bool {
        Subspace::from_vectors(f, self.basis.len(), &self.radical).contains(x)
    }
}

/// `E/J(E)` is commutative with a one-dimensional Frobenius-fixed subalgebra, i.e. a field.
fn top_is_field(f: PrimeField, basis: &[MatrixFp], radical: &[Vec<u32>]) -> bool {
    let k = basis.len();
    let n = basis[0].rows();
    let flat = MatrixFp::from_vectors(f, n * n, &basis.iter().map(|b| b.data().to_vec()).collect::<Vec<_>>());
    let coords = Coordinates::new(&flat);
    let jr = Subspace::from_vectors(f, k, radical);
    let q = QuotientCoords::new(&Subspace::full(f, k), &jr).expect("radical inside E");
    let to_coeffs = |m: &MatrixFp| coords.coords(m.data()).expect("closed under products");
    let reps: Vec<MatrixFp> = (0..q.dim())
        .map(|a| {
            let mut e = vec![0; q.dim()];
            e[a] = 1;
            combine_maps(f, basis, &q.lift(&e), n, n)
        })
        .collect();
    for a in 0..reps.len() {
        for b in a + 1..reps.len() {
            let comm = reps[a].mul(&reps[b]).sub(&reps[b].mul(&reps[a]));
            if !jr.contains(&to_coeffs(&comm)) {
                return false;
            }
        }
    }
    let cols: Vec<Vec<u32>> = reps
        .iter()
        .map(|r| q.project(&to_coeffs(&r.pow(f.p() as u64))).expect("in E"))
        .collect();
    let frob = MatrixFp::from_columns(f, q.dim(), &cols);
    frob.sub(&MatrixFp::identity(f, q.dim())).kernel().dim() == 1
}

/// One nontrivial splitting `m = a ⊕ b` (in `m`'s coordinates), or `None` if `m` is indecomposable.
fn split_once(m: &AModule, cfg: &Config, rng: &mut SeedStream) -> Result<Option<(Subspace, Subspace)>> {
    if m.dim() <= 1 {
        return Ok(None);
    }
    let end = EndInfo::of(m)?;
    if end.local {
        return Ok(None);
    }
    let f = m.field();
    let n = m.dim();
    for _ in 0..cfg.decompose_tries {
        let c = rng.vector(f, end.basis.len());
        let phi = combine_maps(f, &end.basis, &c, n, n);
        if let Some(split) = fitting_split(&phi) {
            return Ok(Some(split));
        }
    }
    Err(Error::Undecided { tries: cfg.decompose_tries, partial: String::new() })
}

/// Splits along a pair of coprime factors of the minimal polynomial, if there are two.
fn fitting_split(phi: &MatrixFp) -> Option<(Subspace, Subspace)> {
    let f = phi.field();
    let n = phi.rows();
    let r = squarefree_part(&minimal_polynomial(phi), f);
    if r.degree()? < 2 {
        return None;
    }
    let g = match r.roots(f).first() {
        Some(&l) => Poly::new(vec![f.neg(l), 1]),
        None => {
            let parts = distinct_degree(&r, f);
            if parts.len() < 2 {
                return None;
            }
            parts[0].1.clone()
        }
    };
    let h = g.eval_matrix(phi).pow(n as u64);
    let (k, im) = (h.kernel(), h.image());
    (!k.is_zero() && !im.is_zero()).then_some((k, im))
}

/// Multiplicity of each simple as a composition factor: `rank ρ(e_S)`.
pub fn composition_factors(m: &AModule) -> Vec<usize> {
    let alg = m.algebra();
    let mut out = vec![0; alg.num_simples()];
    for p in alg.pims() {
        out[p.simple] = m.element_action(&p.idempotent).rank();
    }
    out
}

/// An isomorphism `m → n`, or `None`.
pub fn iso_test(m: &AModule, n: &AModule, cfg: &Config, rng: &SeedStream) -> Result<Option<MatrixFp>> {
    if !m.algebra().same(n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let f = m.field();
    if m.dim() != n.dim() {
        return Ok(None);
    }
    if m.dim() == 0 {
        return Ok(Some(MatrixFp::zeros(f, 0, 0)));
    }
    if composition_factors(m) != composition_factors(n) {
        return Ok(None);
    }
    let homs = hom_space(m, n)?;
    if homs.is_empty() {
        return Ok(None);
    }
    let d = m.dim();
    let h = homs.len() as u32;
    let total = (f.p() as u64).checked_pow(h);
    if total.is_some_and(|t| t <= cfg.iso_exhaustive_limit) {
        let mut c = vec![0u32; homs.len()];
        // Odometer over all coefficient vectors, zero excluded.
        loop {
            let mut i = 0;
            while i < c.len() {
                c[i] += 1;
                if c[i] == f.p() {
                    c[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
            if i == c.len() {
                return Ok(None);
            }
            let x = combine_maps(f, &homs, &c, d, d);
            if x.is_invertible() {
                return Ok(Some(x));
            }
        }
    }
    // A local endomorphism ring decides the question exactly.
    let end = EndInfo::of(m)?;
    if end.local {
        let back = hom_space(n, m)?;
        let flat = MatrixFp::from_vectors(
            f,
            d * d,
            &end.basis.iter().map(|b| b.data().to_vec()).collect::<Vec<_>>(),
        );
        let coords = Coordinates::new(&flat);
        for a in &homs {
            for b in &back {
                let c = coords.coords(b.mul(a).data()).expect("endomorphism");
                if !end.in_radical(f, &c) {
                    return Ok(Some(a.clone()));
                }
            }
        }
        return Ok(None);
    }
    let mut stream = rng.fork(0x150);
    for _ in 0..cfg.iso_samples {
        let c = stream.vector(f, homs.len());
        let x = combine_maps(f, &homs, &c, d, d);
        if x.is_invertible() {
            return Ok(Some(x));
        }
    }
    // Fall back to comparing indecomposable summands one by one.
    let ms = decompose(m, cfg, rng)?;
    let ns = decompose(n, cfg, rng)?;
    if ms.len() == 1 && ns.len() == 1 {
        return Err(Error::Undecided { tries: cfg.iso_samples, partial: "iso_test sampling".into() });
    }
    match match_summands(&ms, &ns, cfg, rng)? {
        Some(perm) => Ok(Some(assemble_iso(m, n, &ms, &ns, &perm, cfg, rng)?)),
        None => Ok(None),
    }
}

/// Pairs each summand of `ms` with an isomorphic unused summand of `ns`.
pub fn match_summands(ms: &[Summand], ns: &[Summand], cfg: &Config, rng: &SeedStream) -> Result<Option<Vec<usize>>> {
    if ms.len() != ns.len() {
        return Ok(None);
    }
    let mut used = vec![false; ns.len()];
    let mut perm = Vec::with_capacity(ms.len());
    for a in ms {
        let mut found = None;
        for (j, b) in ns.iter().enumerate() {
            if !used[j] && iso_test(&a.module, &b.module, cfg, rng)?.is_some() {
                found = Some(j);
                break;
            }
        }
        match found {
            Some(j) => {
                used[j] = true;
                perm.push(j);
            }
            None => return Ok(None),
        }
    }
    Ok(Some(perm))
}

fn assemble_iso(
    m: &AModule,
    n: &AModule,
    ms: &[Summand],
    ns: &[Summand],
    perm: &[usize],
    cfg: &Config,
    rng: &SeedStream,
) -> Result<MatrixFp> {
    let f = m.field();
    let d = m.dim();
    // Change of basis to the summand bases on both sides.
    let src_basis: Vec<Vec<u32>> = ms.iter().flat_map(|s| s.space.vectors()).collect();
    let dst_basis: Vec<Vec<u32>> = perm.iter().flat_map(|&j| ns[j].space.vectors()).collect();
    let mut blocks = Vec::new();
    for (a, &j) in ms.iter().zip(perm) {
        blocks.push(iso_test(&a.module, &ns[j].module, cfg, rng)?.expect("matched"));
    }
    let block_refs: Vec<&MatrixFp> = blocks.iter().collect();
    let mid = MatrixFp::block_diag(&block_refs, f);
    let p = MatrixFp::from_columns(f, d, &src_basis);
    let q = MatrixFp::from_columns(f, d, &dst_basis);
    let iso = q.mul(&mid).mul(&p.inverse().expect("summands span"));
    debug_assert!(crate::module::is_homomorphism(m, n, &iso));
    Ok(iso)
}
