//! Virtual radical and socle series: chains of submodules whose layers are
//! split into explicitly chosen simple summands.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::MatrixFp;
use crate::module::{combine_maps, hom_space, AModule};
use crate::subspace::Subspace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    Radical,
    Socle,
}

/// A simple summand of one layer, fixed by representatives in the module.
#[derive(Debug, Clone, PartialEq)]
pub struct VirtualSimple {
    /// 1-based; radical layer 1 is the head, socle layer 1 the socle.
    pub layer: usize,
    pub slot: usize,
    pub iso_class: usize,
    /// Representatives, independent modulo the next term of the series.
    pub basis: Subspace,
    /// Columns: images of the simple's basis vectors (a fixed `S ≅ slot`).
    pub embedding: MatrixFp,
}

#[derive(Debug, Clone)]
pub struct LoewySeries {
    pub kind: SeriesKind,
    /// Radical: `rad^0 ⊇ … ⊇ 0`. Socle: `0 ⊆ soc_1 ⊆ … ⊆ M`.
    pub terms: Vec<Subspace>,
    pub layers: Vec<Vec<VirtualSimple>>,
}

impl LoewySeries {
    pub fn length(&self) -> usize {
        self.layers.len()
    }

    pub fn layer_dims(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.iter().map(|v| v.basis.dim()).sum()).collect()
    }
}

pub fn loewy_series(m: &AModule, kind: SeriesKind) -> Result<LoewySeries> {
    let terms = match kind {
        SeriesKind::Radical => m.radical_series(),
        SeriesKind::Socle => m.socle_series(),
    };
    let mut layers = Vec::new();
    for w in terms.windows(2) {
        let (top, bottom) = match kind {
            SeriesKind::Radical => (&w[0], &w[1]),
            SeriesKind::Socle => (&w[1], &w[0]),
        };
        let layer = layers.len() + 1;
        let slots = split_layer(m, top, bottom, &[])?;
        layers.push(
            slots
                .into_iter()
                .enumerate()
                .map(|(slot, s)| VirtualSimple { layer, slot, ..s })
                .collect(),
        );
    }
    Ok(LoewySeries { kind, terms, layers })
}

/// Splits the semisimple section `top / bottom` into simple summands.
///
/// Isotypic components come in simple-id order. Inside one, slots are picked
/// greedily from the RREF basis of the Hom space, exhausting each level of
/// `filtration` (submodules of `m`, increasing) before the next.
pub fn split_layer(m: &AModule, top: &Subspace, bottom: &Subspace, filtration: &[Subspace]) -> Result<Vec<VirtualSimple>> {
    let alg = m.algebra().clone();
    let f = m.field();
    let (layer, q) = m.local_section(top, bottom)?;
    let d = layer.dim();
    // Filtration levels as subspaces of the layer, finishing with the whole layer.
    let mut levels: Vec<Subspace> = Vec::new();
    for lvl in filtration {
        let inside = lvl.intersection(top)?;
        let vecs: Vec<Vec<u32>> = inside.vectors().iter().map(|v| q.project(v).expect("inside top")).collect();
        levels.push(Subspace::from_vectors(f, d, &vecs));
    }
    levels.push(Subspace::full(f, d));

    let mut out = Vec::new();
    let mut covered = Subspace::zero(f, d);
    for sid in 0..alg.num_simples() {
        let s = AModule::simple(&alg, sid);
        let homs = hom_space(&s, &layer)?;
        if homs.is_empty() {
            continue;
        }
        let sd = s.dim();
        let mut chosen = Subspace::zero(f, d);
        let isotypic_dim = homs.len() * sd;
        for lvl in &levels {
            if chosen.dim() == isotypic_dim {
                break;
            }
            for c in homs_into(&homs, lvl, sd, d) {
                let h = combine_maps(f, &homs, &c, d, sd);
                let img = h.image();
                if img.dim() != sd {
                    return Err(Error::NotSplit(format!("layer is not semisimple over simple {sid}")));
                }
                if chosen.intersection(&img)?.is_zero() {
                    chosen = chosen.sum(&img)?;
                    let cols: Vec<Vec<u32>> = (0..sd).map(|k| q.lift(&h.column(k))).collect();
                    let embedding = MatrixFp::from_columns(f, m.dim(), &cols);
                    let basis = Subspace::from_vectors(f, m.dim(), &cols);
                    out.push(VirtualSimple { layer: 0, slot: out.len(), iso_class: sid, basis, embedding });
                    if chosen.dim() == isotypic_dim {
                        break;
                    }
                }
            }
        }
        covered = covered.sum(&chosen)?;
    }
    if covered.dim() != d {
        return Err(Error::NotSplit("layer is not a sum of absolutely simple modules".into()));
    }
    Ok(out)
}

/// RREF basis (coefficient vectors) of the homs whose image lies in `target`.
fn homs_into(homs: &[MatrixFp], target: &Subspace, sd: usize, d: usize) -> Vec<Vec<u32>> {
    let f = target.field();
    if target.is_full() {
        return Subspace::full(f, homs.len()).vectors();
    }
    let func = MatrixFp::from_vectors(f, d, &target.basis().kernel().vectors());
    // Row (w, c): functional w applied to Σ a_k h_k e_c.
    let mut eqs = MatrixFp::zeros(f, func.rows() * sd, homs.len());
    for (k, h) in homs.iter().enumerate() {
        let img = func.mul(h);
        for w in 0..func.rows() {
            for c in 0..sd {
                eqs.set(w * sd + c, k, img.get(w, c));
            }
        }
    }
    eqs.kernel().vectors()
}
