//! Projective covers, Heller shifts and the stable Hom quotient.

use crate::config::Config;
use crate::decompose::decompose;
use crate::error::{Error, Result};
use crate::matrix::MatrixFp;
use crate::module::{hom_space, AModule};
use crate::rng::SeedStream;
use crate::series::split_layer;
use crate::subspace::Subspace;

#[derive(Debug, Clone)]
pub struct CoverData {
    pub module: AModule,
    pub cover: AModule,
    /// `cover → module`, surjective.
    pub epi: MatrixFp,
    /// `Ker(epi)`, the first syzygy inside the cover.
    pub kernel: Subspace,
    /// Simple id of each principal indecomposable summand, in block order.
    pub tops: Vec<usize>,
}

impl CoverData {
    pub fn syzygy(&self) -> Result<AModule> {
        self.cover.submodule(&self.kernel)
    }
}

/// Minimal projective cover: one principal indecomposable per head slot.
pub fn projective_cover(m: &AModule) -> Result<CoverData> {
    let alg = m.algebra().clone();
    let f = m.field();
    let rad = m.radical();
    let head = split_layer(m, &Subspace::full(f, m.dim()), &rad, &[])?;
    let mut pims = Vec::new();
    let mut blocks = MatrixFp::zeros(f, m.dim(), 0);
    let mut tops = Vec::new();
    for slot in &head {
        let sid = slot.iso_class;
        let e = &alg.pims().iter().find(|p| p.simple == sid).expect("pim per simple").idempotent;
        let e_act = m.element_action(e);
        let gen = slot
            .basis
            .vectors()
            .iter()
            .map(|v| e_act.mul_vec(v))
            .find(|w| !rad.contains(w))
            .ok_or_else(|| Error::NotSplit(format!("e_S does not reach head slot of class {sid}")))?;
        let p = AModule::pim(&alg, sid);
        // x ↦ x·gen on the left ideal A e_S.
        let ideal = &alg.pims().iter().find(|q| q.simple == sid).unwrap().ideal;
        let cols: Vec<Vec<u32>> = ideal.vectors().iter().map(|x| m.element_action(x).mul_vec(&gen)).collect();
        blocks = blocks.hstack(&MatrixFp::from_columns(f, m.dim(), &cols));
        pims.push(p);
        tops.push(sid);
    }
    let cover = if pims.is_empty() {
        AModule::zero(&alg)
    } else {
        AModule::direct_sum(&pims.iter().collect::<Vec<_>>())?
    };
    let kernel = blocks.kernel();
    debug_assert_eq!(blocks.rank(), m.dim());
    debug_assert!(kernel.is_subset(&cover.radical()).unwrap_or(false));
    Ok(CoverData { module: m.clone(), cover, epi: blocks, kernel, tops })
}

pub fn is_projective(m: &AModule) -> Result<bool> {
    Ok(projective_cover(m)?.cover.dim() == m.dim())
}

/// The largest submodule with no projective summand, up to isomorphism.
pub fn strip_projectives(m: &AModule, cfg: &Config, rng: &SeedStream) -> Result<AModule> {
    let f = m.field();
    let mut keep = Subspace::zero(f, m.dim());
    let parts = decompose(m, cfg, rng)?;
    if parts.len() == 1 && !is_projective(m)? {
        return Ok(m.clone());
    }
    for s in parts {
        if !is_projective(&s.module)? {
            keep = keep.sum(&s.space)?;
        }
    }
    m.submodule(&keep)
}

/// `Ω^n m`; negative `n` goes through duals.
pub fn heller(m: &AModule, n: i32, cfg: &Config, rng: &SeedStream) -> Result<AModule> {
    match n.cmp(&0) {
        std::cmp::Ordering::Equal => strip_projectives(m, cfg, rng),
        std::cmp::Ordering::Greater => {
            let mut cur = m.clone();
            for _ in 0..n {
                cur = projective_cover(&cur)?.syzygy()?;
            }
            if !m.algebra().kind().is_selfinjective {
                cur = strip_projectives(&cur, cfg, rng)?;
            }
            Ok(cur)
        }
        std::cmp::Ordering::Less => {
            if !m.algebra().kind().is_selfinjective {
                return Err(Error::NotSelfInjective);
            }
            heller(&m.dual()?, -n, cfg, rng)?.dual()
        }
    }
}

/// Injective hull as the dual of the projective cover of the dual:
/// returns the hull and a monomorphism `m → hull`.
pub fn injective_hull(m: &AModule) -> Result<(AModule, MatrixFp)> {
    let d = m.dual()?;
    let cd = projective_cover(&d)?;
    let hull = cd.cover.dual()?;
    Ok((hull, cd.epi.transpose()))
}

#[derive(Debug, Clone)]
pub struct StableHom {
    pub hom_dim: usize,
    /// `dim PHom`: maps factoring through a projective.
    pub projective_dim: usize,
    pub dim: usize,
    /// Coset representatives of a basis of the quotient.
    pub representatives: Vec<MatrixFp>,
}

/// `Hom(m, n) / PHom(m, n)`, with `PHom` the image of `Hom(m, cover(n))`.
pub fn stable_hom(m: &AModule, n: &AModule) -> Result<StableHom> {
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let homs = hom_space(m, n)?;
    let flat = |x: &MatrixFp| x.data().to_vec();
    let all = Subspace::from_vectors(f, dm * dn, &homs.iter().map(flat).collect::<Vec<_>>());
    let cd = projective_cover(n)?;
    let through = hom_space(m, &cd.cover)?;
    let phom = Subspace::from_vectors(
        f,
        dm * dn,
        &through.iter().map(|g| flat(&cd.epi.mul(g))).collect::<Vec<_>>(),
    );
    let reps = phom.complement_in(&all)?;
    let representatives = reps
        .vectors()
        .into_iter()
        .map(|v| MatrixFp::from_flat(f, dn, dm, v))
        .collect();
    Ok(StableHom { hom_dim: all.dim(), projective_dim: phom.dim(), dim: reps.dim(), representatives })
}
