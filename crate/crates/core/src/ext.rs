//! Ext¹ between simples, read off the second radical layer of a principal
//! indecomposable, and the proportionality classes of extensions.

use serde::{Deserialize, Serialize};

use crate::decompose::composition_factors;
use crate::error::{Error, Result};
use crate::matrix::MatrixFp;
use crate::module::{hom_space, AModule};
use crate::projectives::projective_cover;
use crate::series::{split_layer, VirtualSimple};
use crate::subspace::{QuotientCoords, Subspace};

/// A projective point of `k^r`, or the zero class of a split extension.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProportionalityClass {
    pub coords: Vec<u32>,
}

impl ProportionalityClass {
    /// Scales so the first nonzero entry is 1.
    pub fn normalized(f: crate::field::PrimeField, mut coords: Vec<u32>) -> Self {
        if let Some(&lead) = coords.iter().find(|&&x| x != 0) {
            let inv = f.inv(lead);
            for x in coords.iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
        Self { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }
}

/// `Ext¹(S, N)` realized on `Hd(Ω¹S) = rad P_S / rad² P_S`.
#[derive(Debug, Clone)]
pub struct ExtProfile {
    pub top: usize,
    pub target: usize,
    pub r: usize,
    /// Layer-2 slots of `P_S` with class `N`, in slot order.
    pub witnesses: Vec<VirtualSimple>,
    /// `P_S`, in the coordinates the witnesses refer to.
    pub pim: AModule,
    /// `Ω¹S = rad P_S`, in its own coordinates.
    pub omega: AModule,
    omega_coords: QuotientCoords,
}

pub fn ext1(alg: &std::sync::Arc<crate::algebra::Algebra>, s: usize, n: usize) -> Result<ExtProfile> {
    let p = AModule::pim(alg, s);
    let f = p.field();
    let rad = p.radical();
    let rad2 = p.radical_of(&rad);
    let layer = split_layer(&p, &rad, &rad2, &[])?;
    let witnesses: Vec<VirtualSimple> = layer
        .into_iter()
        .enumerate()
        .filter(|(_, v)| v.iso_class == n)
        .map(|(slot, v)| VirtualSimple { layer: 2, slot, ..v })
        .collect();
    let (omega, omega_coords) = p.local_section(&rad, &Subspace::zero(f, p.dim()))?;
    let target = AModule::simple(alg, n);
    let r = hom_space(&omega, &target)?.len();
    if r != witnesses.len() {
        return Err(Error::Invalid(format!(
            "Hom(Ω¹S{s}, S{n}) has dim {r} but the second layer of P has {} copies",
            witnesses.len()
        )));
    }
    Ok(ExtProfile { top: s, target: n, r, witnesses, pim: p, omega, omega_coords })
}

/// Multiplicity of `N` in `rad P_S / rad² P_S` through idempotent ranks, independent of Hom solving.
pub fn second_layer_multiplicity(alg: &std::sync::Arc<crate::algebra::Algebra>, s: usize, n: usize) -> Result<usize> {
    let p = AModule::pim(alg, s);
    let rad = p.radical();
    let rad2 = p.radical_of(&rad);
    let (layer, _) = p.local_section(&rad, &rad2)?;
    Ok(composition_factors(&layer)[n])
}

impl ExtProfile {
    /// Schur scalars of `f: Ω¹S → N` on each witness, then normalized.
    pub fn classify_hom(&self, f: &MatrixFp) -> ProportionalityClass {
        let fl = self.omega.field();
        let coords = self
            .witnesses
            .iter()
            .map(|w| {
                let cols: Vec<Vec<u32>> = (0..w.embedding.cols())
                    .map(|c| self.omega_coords.project(&w.embedding.column(c)).expect("witness in rad P"))
                    .collect();
                let emb = MatrixFp::from_columns(fl, self.omega.dim(), &cols);
                // f ∘ ι is a scalar on N.
                f.mul(&emb).get(0, 0)
            })
            .collect();
        ProportionalityClass::normalized(fl, coords)
    }

    /// Un-normalized Schur scalars, for independence tests.
    pub fn scalars(&self, f: &MatrixFp) -> Vec<u32> {
        let fl = self.omega.field();
        self.witnesses
            .iter()
            .map(|w| {
                let cols: Vec<Vec<u32>> = (0..w.embedding.cols())
                    .map(|c| self.omega_coords.project(&w.embedding.column(c)).expect("witness in rad P"))
                    .collect();
                f.mul(&MatrixFp::from_columns(fl, self.omega.dim(), &cols)).get(0, 0)
            })
            .collect()
    }

    /// `Ker` of the head map induced by `f` on `⊕ witnesses`, in witness-scalar space.
    pub fn head_kernel(&self, f: &MatrixFp) -> Subspace {
        MatrixFp::from_vectors(self.omega.field(), self.r, &[self.scalars(f)]).kernel()
    }
}

/// `0 → N → B → S → 0` realized as a factor module of some `V`.
#[derive(Debug, Clone)]
pub struct Extension {
    pub top: usize,
    pub target: usize,
    pub middle: AModule,
    /// `rad B`, the image of `N`.
    pub sub: Subspace,
    /// Kernel of `V ↠ B`, in `V`'s coordinates.
    pub kernel_in_parent: Subspace,
    pub parent_id: u64,
    /// One class per `N`-summand of `rad B`.
    pub classes: Vec<ProportionalityClass>,
    /// Un-normalized scalars behind `classes`.
    pub scalars: Vec<Vec<u32>>,
}

impl Extension {
    pub fn class(&self) -> &ProportionalityClass {
        &self.classes[0]
    }
}

fn simple_head(v: &AModule) -> Result<usize> {
    let f = v.field();
    let head = split_layer(v, &Subspace::full(f, v.dim()), &v.radical(), &[])?;
    match head.as_slice() {
        [one] => Ok(one.iso_class),
        _ => Err(Error::HeadNotSimple),
    }
}

/// `B_κ = V / π⁻¹(R_κ)` for a layer-2 slot `κ` of a module with simple head.
pub fn extension_from_layer(v: &AModule, slot: &VirtualSimple) -> Result<Extension> {
    let f = v.field();
    let s = simple_head(v)?;
    let rad = v.radical();
    let rad2 = v.radical_of(&rad);
    if slot.layer != 2 || !slot.basis.is_subset(&rad)? || !slot.basis.intersection(&rad2)?.is_zero() {
        return Err(Error::SlotMismatch);
    }
    // R_κ: canonical complement of the slot inside the layer, pulled back.
    let q = QuotientCoords::new(&rad, &rad2)?;
    let layer_full = Subspace::full(f, q.dim());
    let slot_img = Subspace::from_vectors(
        f,
        q.dim(),
        &slot.basis.vectors().iter().map(|x| q.project(x).expect("slot in rad")).collect::<Vec<_>>(),
    );
    let comp = slot_img.complement_in(&layer_full)?;
    let lifted: Vec<Vec<u32>> = comp.vectors().iter().map(|c| q.lift(c)).collect();
    let r_kappa = Subspace::from_vectors(f, v.dim(), &lifted).sum(&rad2)?;
    let mut ext = extension_through(v, s, slot.iso_class, &r_kappa)?;
    ext.kernel_in_parent = r_kappa;
    Ok(ext)
}

/// Builds `V / kernel` (head `S`, `rad` a sum of copies of `N`) and classifies
/// each `N`-summand of its radical through the cover `P_S ↠ V`.
pub fn extension_through(v: &AModule, s: usize, n: usize, kernel: &Subspace) -> Result<Extension> {
    let alg = v.algebra().clone();
    let f = v.field();
    let (b, qb) = v.local_section(&Subspace::full(f, v.dim()), kernel)?;
    let profile = ext1(&alg, s, n)?;
    let cover = projective_cover(v)?;
    if cover.tops != [s] {
        return Err(Error::HeadNotSimple);
    }
    // P_S → V → B, then restricted to rad P_S.
    let to_b = |x: &[u32]| qb.project(x).expect("V maps onto B");
    let omega_basis = profile.omega_coords.transversal().vectors();
    let radb = b.radical();
    let (radb_mod, qr) = b.local_section(&radb, &Subspace::zero(f, b.dim()))?;
    let restricted: Vec<Vec<u32>> = omega_basis
        .iter()
        .map(|x| {
            let in_b = to_b(&cover.epi.mul_vec(x));
            qr.project(&in_b).expect("rad P lands in rad B")
        })
        .collect();
    let into_radb = MatrixFp::from_columns(f, radb_mod.dim(), &restricted);
    // rad B ≅ N^c: classify each summand through a projection onto N.
    let nmod = AModule::simple(&alg, n);
    let projections = hom_space(&radb_mod, &nmod)?;
    let mut classes = Vec::new();
    let mut scalars = Vec::new();
    for pr in &projections {
        let hom = pr.mul(&into_radb);
        scalars.push(profile.scalars(&hom));
        classes.push(profile.classify_hom(&hom));
    }
    if classes.is_empty() {
        classes.push(ProportionalityClass { coords: vec![0; profile.r] });
        scalars.push(vec![0; profile.r]);
    }
    Ok(Extension {
        top: s,
        target: n,
        middle: b,
        sub: radb,
        kernel_in_parent: kernel.clone(),
        parent_id: v.id(),
        classes,
        scalars,
    })
}

/// Linear independence of the extension classes over `F_p`.
pub fn independent(exts: &[Extension]) -> Result<bool> {
    let Some(first) = exts.first() else { return Ok(true) };
    if exts.iter().any(|e| e.top != first.top || e.target != first.target) {
        return Err(Error::MixedProfiles);
    }
    let f = first.middle.field();
    let vecs: Vec<Vec<u32>> = exts.iter().flat_map(|e| e.scalars.iter().cloned()).collect();
    let len = vecs[0].len();
    Ok(MatrixFp::from_vectors(f, len, &vecs).rank() == vecs.len())
}

/// Glues independent layer extensions of `v` into one factor module
/// `v / ∩ π⁻¹(R_κ)` whose radical is `⊕ N_κ`.
pub fn amalgamate(v: &AModule, exts: &[Extension]) -> Result<Extension> {
    if exts.is_empty() || !independent(exts)? {
        return Err(Error::NotIndependent);
    }
    if exts.iter().any(|e| e.parent_id != v.id()) {
        return Err(Error::NotQuotient);
    }
    let mut kernel = exts[0].kernel_in_parent.clone();
    for e in &exts[1..] {
        kernel = kernel.intersection(&e.kernel_in_parent)?;
    }
    extension_through(v, exts[0].top, exts[0].target, &kernel)
}
