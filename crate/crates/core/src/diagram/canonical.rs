//! Set-theoretic operations on sections of one module: confined preimages,
//! canonical maps, splicing, and visible pullbacks and pushouts.

use crate::config::Config;
use crate::decompose::decompose;
use crate::error::{Error, Result};
use crate::matrix::MatrixFp;
use crate::module::{combine_maps, hom_space, AModule};
use crate::diagram::pillars::{dominates, Pillar};
use crate::rng::SeedStream;
use crate::subspace::{Coordinates, QuotientCoords, Subspace};

/// `top / bottom` for submodules `bottom ⊆ top` of a fixed module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub top: Subspace,
    pub bottom: Subspace,
}

impl Section {
    pub fn new(m: &AModule, top: Subspace, bottom: Subspace) -> Result<Self> {
        if !bottom.is_subset(&top)? {
            return Err(Error::NotNested);
        }
        if !m.is_invariant(&top) || !m.is_invariant(&bottom) {
            return Err(Error::NotInvariant);
        }
        Ok(Self { top, bottom })
    }

    pub fn dim(&self) -> usize {
        self.top.dim() - self.bottom.dim()
    }

    pub fn module(&self, m: &AModule) -> Result<AModule> {
        Ok(m.local_section(&self.top, &self.bottom)?.0)
    }

    /// `self` is `of / X` for some `X`.
    pub fn is_quotient_of(&self, of: &Section) -> Result<bool> {
        Ok(of.bottom.is_subset(&self.bottom)? && of.top.sum(&self.bottom)? == self.top)
    }

    /// `x ↦ x` embeds `self` into `of`.
    pub fn is_submodule_of(&self, of: &Section) -> Result<bool> {
        Ok(self.top.is_subset(&of.top)? && self.top.intersection(&of.bottom)? == self.bottom)
    }

    fn visible(&self, m: &AModule) -> bool {
        m.is_invariant(&self.top) && m.is_invariant(&self.bottom) && self.bottom.is_subset(&self.top).unwrap_or(false)
    }
}

/// For `M = ⊕ M_i` with submodules `S_i ⊆ M_i` and a submodule `N ⊇ ⊕ S_i`
/// (the preimage of a submodule of `M / ⊕ S_i`), the preimage of `N`
/// confined to the summands its image actually touches.
pub fn confined_preimage(m: &AModule, parts: &[(Subspace, Subspace)], n: &Subspace) -> Result<Subspace> {
    let f = m.field();
    let d = m.dim();
    let mut rows = MatrixFp::zeros(f, 0, d);
    let mut ranges = Vec::new();
    let mut s_all = Subspace::zero(f, d);
    for (mi, si) in parts {
        if !m.is_invariant(mi) || !m.is_invariant(si) || !si.is_subset(mi)? {
            return Err(Error::NotInvariant);
        }
        ranges.push((rows.rows(), rows.rows() + mi.dim()));
        rows = rows.vstack(mi.basis());
        s_all = s_all.sum(si)?;
    }
    if rows.rows() != d || rows.rank() != d {
        return Err(Error::Invalid("parts do not form a direct sum decomposition".into()));
    }
    if !m.is_invariant(n) || !s_all.is_subset(n)? {
        return Err(Error::NotSubmodule);
    }
    let coords = Coordinates::new(&rows);
    let project = |v: &[u32], k: usize| -> Vec<u32> {
        let c = coords.coords(v).expect("parts span the module");
        let (a, b) = ranges[k];
        parts[k].0.basis().vec_mul(&c[a..b])
    };
    // The image of `N` on the touched summands, plus their `S_i`.
    let touched: Vec<usize> = (0..parts.len())
        .filter(|&k| {
            let img: Vec<Vec<u32>> = n.vectors().iter().map(|v| project(v, k)).collect();
            !Subspace::from_vectors(f, d, &img).is_subset(&parts[k].1).unwrap_or(true)
        })
        .collect();
    let joint: Vec<Vec<u32>> = n
        .vectors()
        .iter()
        .map(|v| {
            let mut acc = vec![0; d];
            for &k in &touched {
                for (a, b) in acc.iter_mut().zip(project(v, k)) {
                    *a = f.add(*a, b);
                }
            }
            acc
        })
        .collect();
    let mut result = Subspace::from_vectors(f, d, &joint);
    for &k in &touched {
        result = result.sum(&parts[k].1)?;
    }
    Ok(result)
}

/// `N ↠ S ↪ M` between sections of one module.
#[derive(Debug, Clone)]
pub struct CanonicalHom {
    pub epi: MatrixFp,
    pub mono: MatrixFp,
    pub composite: MatrixFp,
}

pub fn canonical_hom(n: &Section, s: &Section, target: &Section) -> Result<CanonicalHom> {
    if !s.is_quotient_of(n)? {
        return Err(Error::NotQuotient);
    }
    if !s.is_submodule_of(target)? {
        return Err(Error::NotSubmodule);
    }
    let f = n.top.field();
    let qn = QuotientCoords::new(&n.top, &n.bottom)?;
    let qs = QuotientCoords::new(&s.top, &s.bottom)?;
    let qm = QuotientCoords::new(&target.top, &target.bottom)?;
    let epi_cols: Vec<Vec<u32>> =
        qn.transversal().vectors().iter().map(|x| qs.project(x).expect("N inside S's top")).collect();
    let mono_cols: Vec<Vec<u32>> =
        qs.transversal().vectors().iter().map(|y| qm.project(y).expect("S inside M's top")).collect();
    let epi = MatrixFp::from_columns(f, qs.dim(), &epi_cols);
    let mono = MatrixFp::from_columns(f, qm.dim(), &mono_cols);
    let composite = mono.mul(&epi);
    Ok(CanonicalHom { epi, mono, composite })
}

/// Glues `l` and `l2` over a common quotient `l0`.
pub fn splice(m: &AModule, l: &Section, l0: &Section, l2: &Section) -> Result<Section> {
    if !l0.is_quotient_of(l)? || !l0.is_quotient_of(l2)? {
        return Err(Error::NotQuotient);
    }
    Section::new(m, l.top.sum(&l2.top)?, l.bottom.intersection(&l2.bottom)?)
}

fn loewy_of(m: &AModule, s: &Section) -> Result<usize> {
    Ok(s.module(m)?.loewy_length())
}

/// `s` cut to its top `k` radical layers.
fn amputate(m: &AModule, s: &Section, k: usize) -> Result<Section> {
    let mut r = s.top.clone();
    for _ in 0..k {
        r = m.radical_of(&r);
    }
    Section::new(m, s.top.clone(), r.sum(&s.bottom)?)
}

/// The section precisely overcoating `l1` and `l2` as quotients, glued along
/// their common quotient `t`.
pub fn visible_pullback(m: &AModule, l1: &Section, l2: &Section, t: &Section) -> Result<Section> {
    if !l1.visible(m) || !l2.visible(m) || !t.visible(m) {
        return Err(Error::NotVisible);
    }
    if !t.is_quotient_of(l1)? || !t.is_quotient_of(l2)? {
        return Err(Error::NoCommonSection);
    }
    let (n1, n2) = (loewy_of(m, l1)?, loewy_of(m, l2)?);
    let glued = if n1 == n2 {
        Section::new(m, l1.top.sum(&l2.top)?, l1.bottom.intersection(&l2.bottom)?)?
    } else {
        let (short, long) = if n1 < n2 { (l1, l2) } else { (l2, l1) };
        let l0 = amputate(m, long, n1.min(n2))?;
        let p0 = Section::new(m, short.top.sum(&l0.top)?, short.bottom.intersection(&l0.bottom)?)?;
        splice(m, &p0, &l0, long)?
    };
    if !l1.is_quotient_of(&glued)? || !l2.is_quotient_of(&glued)? || glued.dim() + t.dim() != l1.dim() + l2.dim() {
        return Err(Error::NotVisible);
    }
    Ok(glued)
}

/// The section precisely overcoating `l1` and `l2` as submodules, glued
/// along their common submodule `t`.
pub fn visible_pushout(m: &AModule, l1: &Section, l2: &Section, t: &Section) -> Result<Section> {
    if !l1.visible(m) || !l2.visible(m) || !t.visible(m) {
        return Err(Error::NotVisible);
    }
    if !t.is_submodule_of(l1)? || !t.is_submodule_of(l2)? {
        return Err(Error::NoCommonSection);
    }
    let glued = Section::new(m, l1.top.sum(&l2.top)?, l1.bottom.sum(&l2.bottom)?)?;
    if !l1.is_submodule_of(&glued)? || !l2.is_submodule_of(&glued)? || glued.dim() + t.dim() != l1.dim() + l2.dim() {
        return Err(Error::NotVisible);
    }
    Ok(glued)
}

/// A configuration `M | K / rad^{i+s} K` and `N | rad^i K`, both of the
/// largest possible Loewy length, sharing `rad^i M = N / rad^s N`, with the
/// summand of `K` built over both.
/// How the overcoating summand of a gluing instance was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaRoute {
    /// The confined preimage of `M` along `K ↠ K / rad^{i+s} K`.
    ConfinedPreimage,
    /// A complement of `rad^{i+s} K / rad^s N` glued over `N`.
    Complement,
    /// An indecomposable summand of `K` found by search, used when neither
    /// construction gives a summand.
    Summand,
    NotFound,
}

#[derive(Debug, Clone)]
pub struct GluingInstance {
    pub i: usize,
    pub s: usize,
    /// Preimage of `M` in `K`.
    pub m_top: Subspace,
    pub n: Subspace,
    pub confined: Subspace,
    pub lambda: Subspace,
    pub route: LambdaRoute,
    pub indecomposable: bool,
    pub is_summand: bool,
    pub overcoats: bool,
    /// `Λ + rad^{i+s} K` is `M`'s preimage and `Λ ∩ rad^{i+s} K = rad^s N`.
    pub precise: bool,
    /// Some indecomposable summand of `K` dominates `M` (resp. `N`), so that
    /// pillar is not maximally dominating.
    pub m_dominated: bool,
    pub n_dominated: bool,
}

/// Every instance of the gluing configuration found in `k`.
pub fn gluing_instances(k: &AModule, cfg: &Config) -> Result<Vec<GluingInstance>> {
    let f = k.field();
    let rng = SeedStream::new(cfg.seed).fork(0x61ee);
    let rad = k.radical_series();
    let len = rad.len() - 1;
    let parts: Vec<(Subspace, Subspace)> = decompose(k, cfg, &rng.fork(0))?
        .into_iter()
        .map(|p| (p.space.clone(), p.space))
        .collect();
    let mut out = Vec::new();
    for i in 2..len {
        for s in 1..len - i {
            let cut = &rad[i + s];
            let local: Vec<(Subspace, Subspace)> =
                parts.iter().map(|(mi, _)| Ok((mi.clone(), mi.intersection(cut)?))).collect::<Result<_>>()?;
            let (q, qc) = k.local_section(&Subspace::full(f, k.dim()), cut)?;
            let tops: Vec<Subspace> = decompose(&q, cfg, &rng.fork((i * 64 + s) as u64))?
                .iter()
                .map(|x| {
                    let v: Vec<Vec<u32>> = x.space.vectors().iter().map(|c| qc.lift(c)).collect();
                    Subspace::from_vectors(f, k.dim(), &v).sum(cut)
                })
                .collect::<Result<_>>()?;
            let (r, rc) = k.local_section(&rad[i], &Subspace::zero(f, k.dim()))?;
            let ns: Vec<Subspace> = decompose(&r, cfg, &rng.fork((i * 64 + s) as u64 + 0x8000))?
                .iter()
                .map(|x| {
                    let v: Vec<Vec<u32>> = x.space.vectors().iter().map(|c| rc.lift(c)).collect();
                    Subspace::from_vectors(f, k.dim(), &v)
                })
                .collect();
            let n_lengths: std::collections::HashMap<&Subspace, usize> = ns
                .iter()
                .map(|n| Ok((n, k.local_section(n, &Subspace::zero(f, k.dim()))?.0.loewy_length())))
                .collect::<Result<_>>()?;
            for mt in &tops {
                if k.local_section(mt, cut)?.0.loewy_length() != i + s {
                    continue;
                }
                let mut radm = mt.clone();
                for _ in 0..i {
                    radm = k.radical_of(&radm);
                }
                let shared = radm.sum(cut)?;
                if shared == *cut {
                    continue;
                }
                for n in ns.iter().filter(|n| n_lengths[*n] == len - i) {
                    let mut radn = n.clone();
                    for _ in 0..s {
                        radn = k.radical_of(&radn);
                    }
                    if n.sum(cut)? != shared || n.intersection(cut)? != radn {
                        continue;
                    }
                    let confined = confined_preimage(k, &local, mt)?;
                    let overcoat = |x: &Subspace| -> Result<bool> { Ok(mt.is_subset(&x.sum(cut)?)? && n.is_subset(x)?) };
                    let judge = |x: &Subspace| -> Result<(bool, bool)> {
                        let (xm, _) = k.local_section(x, &Subspace::zero(f, k.dim()))?;
                        Ok((decompose(&xm, cfg, &rng.fork(0xdec))?.len() == 1, splits(k, x)?))
                    };
                    let (ind, summand) = judge(&confined)?;
                    let (route, lambda) = if ind && summand && overcoat(&confined)? {
                        (LambdaRoute::ConfinedPreimage, confined.clone())
                    } else if let Some(x) = glued_complement(k, mt, n, cut)?
                        .filter(|x| judge(x) == Ok((true, true)))
                    {
                        (LambdaRoute::Complement, x)
                    } else {
                        let mut found = (LambdaRoute::NotFound, confined.clone());
                        for (part, _) in &parts {
                            if overcoat(part)? {
                                found = (LambdaRoute::Summand, part.clone());
                                break;
                            }
                        }
                        found
                    };
                    let (indecomposable, is_summand) = judge(&lambda)?;
                    let overcoats = route != LambdaRoute::NotFound && overcoat(&lambda)?;
                    let precise = lambda.sum(cut)? == *mt && lambda.intersection(cut)? == radn;
                    let m_dominated = dominated(k, &parts, mt, (0, i + s), cfg)?;
                    let n_dominated = dominated(k, &parts, n, (i, len), cfg)?;
                    out.push(GluingInstance {
                        i,
                        s,
                        m_top: mt.clone(),
                        n: n.clone(),
                        confined,
                        lambda,
                        route,
                        indecomposable,
                        is_summand,
                        overcoats,
                        precise,
                        m_dominated,
                        n_dominated,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Whether some summand in `parts` dominates the pillar with top `top` over `section`.
fn dominated(
    k: &AModule,
    parts: &[(Subspace, Subspace)],
    top: &Subspace,
    section: (usize, usize),
    cfg: &Config,
) -> Result<bool> {
    let len = k.loewy_length();
    let pillar = |top: &Subspace, section: (usize, usize)| Pillar {
        section,
        height: section.1 - section.0,
        dim: 0,
        vertices: Vec::new(),
        visible: false,
        class: 0,
        top: top.vectors(),
    };
    let b = pillar(top, section);
    for (x, _) in parts {
        if dominates(&pillar(x, (0, len)), &b, k, cfg)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether the inclusion of the submodule `sub` has a left inverse.
fn splits(m: &AModule, sub: &Subspace) -> Result<bool> {
    Ok(retraction_kernel(m, sub)?.is_some())
}

/// The kernel of some retraction `m → sub`, i.e. a complement of `sub`, if
/// the inclusion splits.
fn retraction_kernel(m: &AModule, sub: &Subspace) -> Result<Option<Subspace>> {
    let f = m.field();
    let (sm, q) = m.local_section(sub, &Subspace::zero(f, m.dim()))?;
    let d = sm.dim();
    if d == 0 {
        return Ok(Some(Subspace::full(f, m.dim())));
    }
    let incl_cols: Vec<Vec<u32>> = q.transversal().vectors();
    let incl = MatrixFp::from_columns(f, m.dim(), &incl_cols);
    let homs = hom_space(m, &sm)?;
    if homs.is_empty() {
        return Ok(None);
    }
    // Σ c_k (h_k ∘ ι) = I is linear in c.
    let composed: Vec<MatrixFp> = homs.iter().map(|h| h.mul(&incl)).collect();
    let mut eqs = MatrixFp::zeros(f, d * d, homs.len() + 1);
    for (k, c) in composed.iter().enumerate() {
        for r in 0..d {
            for s in 0..d {
                eqs.set(r * d + s, k, c.get(r, s));
            }
        }
    }
    for r in 0..d {
        eqs.set(r * d + r, homs.len(), f.neg(1));
    }
    let Some(v) = eqs.kernel().vectors().into_iter().find(|v| v[homs.len()] != 0) else {
        return Ok(None);
    };
    let scale = f.inv(v[homs.len()]);
    let c: Vec<u32> = v[..homs.len()].iter().map(|&x| f.mul(x, scale)).collect();
    Ok(Some(combine_maps(f, &homs, &c, d, m.dim()).kernel()))
}

/// A submodule `Λ` with `Λ + cut = top` and `Λ ∩ cut = n ∩ cut`, containing
/// `n`, when one exists: a complement of `(cut + n) / n` inside `top / n`.
fn glued_complement(k: &AModule, top: &Subspace, n: &Subspace, cut: &Subspace) -> Result<Option<Subspace>> {
    let f = k.field();
    let (q, qc) = k.local_section(top, n)?;
    let image: Vec<Vec<u32>> = cut.vectors().iter().filter_map(|v| qc.project(v)).collect();
    let c = Subspace::from_vectors(f, q.dim(), &image);
    let Some(comp) = retraction_kernel(&q, &c)? else {
        return Ok(None);
    };
    let lifted: Vec<Vec<u32>> = comp.vectors().iter().map(|v| qc.lift(v)).collect();
    Ok(Some(Subspace::from_vectors(f, k.dim(), &lifted).sum(n)?))
}
