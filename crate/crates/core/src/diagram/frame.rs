//! Shared machinery: the radical and socle series of the module being drawn,
//! slots (lifted simple summands of radical layers) and their coordinates.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ext::{extension_through, ProportionalityClass};
use crate::matrix::MatrixFp;
use crate::module::AModule;
use crate::subspace::{Coordinates, Subspace};

pub(crate) struct Frame<'a> {
    pub m: &'a AModule,
    /// `rad[0] = M ⊇ … ⊇ rad[L] = 0`.
    pub rad: Vec<Subspace>,
    /// `soc[0] = 0 ⊆ … ⊆ soc[L] = M`.
    pub soc: Vec<Subspace>,
    pub length: usize,
    jops: Vec<MatrixFp>,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Slot {
    /// 1-based radical layer; the columns lie in `rad[layer − 1]`.
    pub layer: usize,
    pub iso_class: usize,
    pub cols: Vec<Vec<u32>>,
}

impl Slot {
    pub fn dim(&self) -> usize {
        self.cols.len()
    }
}

impl<'a> Frame<'a> {
    pub fn new(m: &'a AModule) -> Self {
        let rad = m.radical_series();
        let soc = m.socle_series();
        let length = rad.len() - 1;
        Self { m, rad, soc, length, jops: m.radical_operators() }
    }

    /// Actions of a basis of `J(A)`.
    pub fn jops(&self) -> &[MatrixFp] {
        &self.jops
    }

    pub fn span(&self, vecs: &[Vec<u32>]) -> Subspace {
        Subspace::from_vectors(self.m.field(), self.m.dim(), vecs)
    }

    /// `L + 1 − t` for the least `t` with the slot inside `(soc_t ∩ rad^{ℓ−1}) + rad^ℓ`.
    pub fn socle_colayer(&self, slot: &Slot) -> Result<usize> {
        let l = slot.layer;
        let here = self.span(&slot.cols);
        for t in 1..=self.length {
            let reach = self.soc[t].intersection(&self.rad[l - 1])?.sum(&self.rad[l])?;
            if here.is_subset(&reach)? {
                return Ok(self.length + 1 - t);
            }
        }
        Err(Error::Invalid("slot outside the socle series".into()))
    }
}

/// Coordinates of module vectors along the concatenated slot columns.
pub(crate) struct Layout {
    offsets: Vec<usize>,
    coords: Coordinates,
    /// `adj[u][w]`: `J · slot u` has a nonzero component on slot `w`.
    pub adj: Vec<Vec<bool>>,
    /// `sector[u][w]`: slot `w` shows up in `J V_u` but not in `J² V_u`, so it
    /// sits in the second radical layer of the submodule generated by `u`.
    pub sector: Vec<Vec<bool>>,
}

impl Layout {
    pub fn new(frame: &Frame, slots: &[Slot]) -> Result<Self> {
        let f = frame.m.field();
        let n = frame.m.dim();
        let mut offsets = vec![0];
        let mut rows = Vec::new();
        for s in slots {
            rows.extend(s.cols.iter().cloned());
            offsets.push(rows.len());
        }
        let stacked = MatrixFp::from_vectors(f, n, &rows);
        if rows.len() != n || stacked.rank() != n {
            return Err(Error::Invalid("vertex bases do not form a basis of the module".into()));
        }
        let coords = Coordinates::new(&stacked);
        let k = slots.len();
        let mut layout = Self { offsets, coords, adj: vec![vec![false; k]; k], sector: vec![vec![false; k]; k] };
        let touched = |layout: &Self, space: &Subspace| {
            let mut hit = vec![false; k];
            for v in space.vectors() {
                for (w, chunk) in layout.chunks(&v).iter().enumerate() {
                    hit[w] |= chunk.iter().any(|&x| x != 0);
                }
            }
            hit
        };
        for (u, s) in slots.iter().enumerate() {
            let jv = frame.m.radical_of(&frame.span(&s.cols));
            let j2v = frame.m.radical_of(&jv);
            let (once, twice) = (touched(&layout, &jv), touched(&layout, &j2v));
            for w in (0..k).filter(|&w| w != u) {
                layout.adj[u][w] = once[w];
                layout.sector[u][w] = once[w] && !twice[w];
            }
        }
        Ok(layout)
    }

    /// Per-slot coordinate chunks of `v`.
    pub fn chunks(&self, v: &[u32]) -> Vec<Vec<u32>> {
        let c = self.coords.coords(v).expect("slots span the module");
        self.offsets.windows(2).map(|w| c[w[0]..w[1]].to_vec()).collect()
    }

    /// The part of `v` carried by the slots in `keep`.
    pub fn restrict(&self, frame: &Frame, slots: &[Slot], v: &[u32], keep: &[usize]) -> Vec<u32> {
        let f = frame.m.field();
        let chunks = self.chunks(v);
        let mut out = vec![0; v.len()];
        for &k in keep {
            for (a, col) in chunks[k].iter().zip(&slots[k].cols) {
                for (o, &x) in out.iter_mut().zip(col) {
                    *o = f.add(*o, f.mul(*a, x));
                }
            }
        }
        out
    }
}

/// Connected components of the slots with layer in `(i, j]` under `linked`.
pub(crate) fn components(
    slots: &[Slot],
    i: usize,
    j: usize,
    linked: impl Fn(usize, usize) -> bool,
) -> Vec<Vec<usize>> {
    let inside: Vec<usize> = (0..slots.len()).filter(|&k| slots[k].layer > i && slots[k].layer <= j).collect();
    let mut seen = vec![false; slots.len()];
    let mut out = Vec::new();
    for &start in &inside {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in &inside {
                if !seen[w] && (linked(u, w) || linked(w, u)) {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Largest submodule of `m` inside `z`.
pub(crate) fn core(m: &AModule, z: &Subspace) -> Subspace {
    let f = m.field();
    let mut cur = z.clone();
    loop {
        let func = MatrixFp::from_vectors(f, m.dim(), &cur.basis().kernel().vectors());
        let mut eqs = func.clone();
        for a in m.actions() {
            eqs = eqs.vstack(&func.mul(a));
        }
        let next = eqs.kernel();
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Caches classes so repeated label computations stay cheap.
#[derive(Default)]
pub(crate) struct LabelCache {
    seen: HashMap<(usize, usize, Vec<Vec<u32>>), ProportionalityClass>,
}

/// The two-factor section carried by an edge `u → w`, classified in `Ext¹(S_u, S_w)`.
///
/// Edges between adjacent radical layers use `(A·V_u + R_w) / R_w` where
/// `R_w` is the rest of `w`'s layer plus everything below. Longer edges use
/// the largest submodule below `u`'s layer that misses `w`'s coordinates; an
/// empty class means that section is not a two-factor extension.
pub(crate) fn edge_class(
    frame: &Frame,
    slots: &[Slot],
    u: usize,
    w: usize,
    cache: &mut LabelCache,
) -> Result<ProportionalityClass> {
    let m = frame.m;
    let su = &slots[u];
    let sw = &slots[w];
    let bottom = match sw.layer == su.layer + 1 {
        true => {
            let others: Vec<Vec<u32>> = slots
                .iter()
                .enumerate()
                .filter(|(k, s)| *k != w && s.layer == su.layer + 1)
                .flat_map(|(_, s)| s.cols.iter().cloned())
                .collect();
            frame.span(&others).sum(&frame.rad[su.layer + 1])?
        }
        false => {
            let z: Vec<Vec<u32>> = slots
                .iter()
                .enumerate()
                .filter(|(k, s)| *k != w && s.layer > su.layer)
                .flat_map(|(_, s)| s.cols.iter().cloned())
                .collect();
            core(m, &frame.span(&z))
        }
    };
    let top = m.generate(&su.cols).sum(&bottom)?;
    let (b, _) = m.local_section(&top, &bottom)?;
    if b.dim() != su.dim() + sw.dim() {
        return Ok(ProportionalityClass { coords: vec![] });
    }
    let mut key_data = su.cols.clone();
    key_data.extend(bottom.vectors());
    let key = (su.iso_class, sw.iso_class, key_data);
    if let Some(c) = cache.seen.get(&key) {
        return Ok(c.clone());
    }
    let zero = Subspace::zero(m.field(), b.dim());
    let class = match extension_through(&b, su.iso_class, sw.iso_class, &zero) {
        Ok(ext) => ext.class().clone(),
        Err(Error::HeadNotSimple) => ProportionalityClass { coords: vec![] },
        Err(e) => return Err(e),
    };
    cache.seen.insert(key, class.clone());
    Ok(class)
}
