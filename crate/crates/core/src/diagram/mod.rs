//! Layered module diagrams: vertices are chosen simple summands of the
//! radical layers, edges record which ones the radical of the algebra links.

mod canonical;
mod dot;
mod frame;
mod pillars;
mod tuned;
mod verify;

use serde::{Deserialize, Serialize};

pub use canonical::{
    canonical_hom, confined_preimage, gluing_instances, splice, visible_pullback, visible_pushout, CanonicalHom,
    LambdaRoute, GluingInstance, Section,
};
pub use dot::to_dot;
pub use pillars::{colonnades, dominates, pillars_of_section, Colonnade, Pillar, PillarTable};
pub use tuned::{central_diagram, tuned_diagram};
pub use verify::{verify_diagram, Check, Report};

use crate::ext::ProportionalityClass;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeSide {
    Radical,
    Socle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: usize,
    pub iso_class: usize,
    /// 1-based, 1 = head.
    pub radical_layer: usize,
    /// 1-based from the top: `L + 1 − t` for the first socle layer `t` reaching the slot.
    pub socle_colayer: usize,
    /// Images of the simple's basis vectors in the module.
    pub basis: Vec<Vec<u32>>,
}

impl Vertex {
    pub fn fallen(&self) -> bool {
        self.socle_colayer > self.radical_layer
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub class: ProportionalityClass,
    pub side: EdgeSide,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagram {
    pub field: u32,
    pub module_dim: usize,
    pub loewy_length: usize,
    pub central: bool,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub pillars: Vec<Pillar>,
    pub colonnades: Vec<Colonnade>,
    /// Pillar indices of peaks.
    pub peaks: Vec<usize>,
    /// Pairs `(b, a)` of colonnade indices with `b ⊑ a`.
    pub order: Vec<(usize, usize)>,
    pub maximal_colonnades: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<Report>,
}

impl Diagram {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram serializes")
    }

    pub fn from_json(text: &str) -> crate::error::Result<Self> {
        serde_json::from_str(text).map_err(|e| crate::error::Error::Invalid(format!("diagram JSON: {e}")))
    }

    /// `(iso_class, radical_layer, socle_colayer)` of each vertex, sorted.
    pub fn vertex_signature(&self) -> Vec<(usize, usize, usize)> {
        let mut v: Vec<_> = self.vertices.iter().map(|x| (x.iso_class, x.radical_layer, x.socle_colayer)).collect();
        v.sort_unstable();
        v
    }

    /// Signature of the vertically mirrored diagram: layers flip, classes map through `dual_class`.
    pub fn mirrored_signature(&self, dual_class: &[usize]) -> Vec<(usize, usize, usize)> {
        let l = self.loewy_length;
        let mut v: Vec<_> = self
            .vertices
            .iter()
            .map(|x| (dual_class[x.iso_class], l + 1 - x.socle_colayer, l + 1 - x.radical_layer))
            .collect();
        v.sort_unstable();
        v
    }
}
