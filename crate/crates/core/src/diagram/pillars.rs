//! Pillars (indecomposable visible strip components), colonnades of
//! isomorphic pillars, the domination preorder and peaks.

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::decompose::{decompose, iso_test};
use crate::error::{Error, Result};
use crate::module::AModule;
use crate::rng::SeedStream;
use crate::subspace::Subspace;

use super::frame::{components, Frame, Slot};
use super::tuned::slots_of;
use super::Diagram;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pillar {
    /// `(i, j)`: the strip between `rad^i` and `rad^j`.
    pub section: (usize, usize),
    pub height: usize,
    pub dim: usize,
    /// Diagram vertices of the component; empty for non-visible pillars.
    pub vertices: Vec<usize>,
    pub visible: bool,
    /// Isomorphism class among the pillars of the same section.
    pub class: usize,
    /// RREF basis of the pillar's top, a submodule containing `rad^j`.
    pub top: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Colonnade {
    pub section: (usize, usize),
    pub class: usize,
    pub count: usize,
    /// Indices of the visible member pillars.
    pub pillars: Vec<usize>,
}

/// Pillars and colonnades of one diagram.
#[derive(Debug, Clone, Default)]
pub struct PillarTable {
    pub pillars: Vec<Pillar>,
    pub colonnades: Vec<Colonnade>,
}

/// A strip component: its vertices, its top, and its module when the top is a submodule.
pub(crate) struct Piece {
    pub vertices: Vec<usize>,
    pub top: Subspace,
    pub module: Option<AModule>,
    pub indecomposable: bool,
}

pub(crate) fn linked_by_edges(d: &Diagram) -> Vec<Vec<bool>> {
    let n = d.vertices.len();
    let mut adj = vec![vec![false; n]; n];
    for e in &d.edges {
        if e.from < n && e.to < n {
            adj[e.from][e.to] = true;
        }
    }
    adj
}

pub(crate) fn pieces(
    frame: &Frame,
    slots: &[Slot],
    adj: &[Vec<bool>],
    i: usize,
    j: usize,
    cfg: &Config,
    rng: &SeedStream,
) -> Result<Vec<Piece>> {
    let m = frame.m;
    let mut out = Vec::new();
    for (ci, comp) in components(slots, i, j, |u, w| adj[u][w]).into_iter().enumerate() {
        let cols: Vec<Vec<u32>> = comp.iter().flat_map(|&k| slots[k].cols.iter().cloned()).collect();
        let top = frame.span(&cols).sum(&frame.rad[j])?;
        let (module, indecomposable) = if m.is_invariant(&top) {
            let (y, _) = m.local_section(&top, &frame.rad[j])?;
            let single = decompose(&y, cfg, &rng.fork(ci as u64))?.len() == 1;
            (Some(y), single)
        } else {
            (None, false)
        };
        out.push(Piece { vertices: comp, top, module, indecomposable });
    }
    Ok(out)
}

/// Visible pillars of the section `(i, j)` of a diagram of `m`.
pub fn pillars_of_section(d: &Diagram, m: &AModule, i: usize, j: usize, cfg: &Config) -> Result<Vec<Pillar>> {
    let frame = Frame::new(m);
    if i >= j || j > frame.length {
        return Err(Error::Invalid(format!("no section ({i}, {j}) in Loewy length {}", frame.length)));
    }
    let table = section_table(&frame, d, i, j, cfg, &SeedStream::new(cfg.seed).fork(0x9111a))?;
    Ok(table.pillars.into_iter().filter(|p| p.visible).collect())
}

/// Colonnades of the section `(i, j)`.
pub fn colonnades(d: &Diagram, m: &AModule, i: usize, j: usize, cfg: &Config) -> Result<PillarTable> {
    let frame = Frame::new(m);
    if i >= j || j > frame.length {
        return Err(Error::Invalid(format!("no section ({i}, {j}) in Loewy length {}", frame.length)));
    }
    section_table(&frame, d, i, j, cfg, &SeedStream::new(cfg.seed).fork(0x9111a))
}

/// Visible pillars grouped by isomorphism; each colonnade also yields one
/// non-visible parallel pillar, the graph of an isomorphism between its
/// first two members.
fn section_table(frame: &Frame, d: &Diagram, i: usize, j: usize, cfg: &Config, rng: &SeedStream) -> Result<PillarTable> {
    let m = frame.m;
    let f = m.field();
    let slots = slots_of(d);
    let adj = linked_by_edges(d);
    let mut table = PillarTable::default();
    let mut reps: Vec<(AModule, Subspace)> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for piece in pieces(frame, &slots, &adj, i, j, cfg, rng)? {
        let (Some(y), true) = (&piece.module, piece.indecomposable) else { continue };
        let mut class = None;
        for (c, (r, _)) in reps.iter().enumerate() {
            if iso_test(r, y, cfg, &rng.fork(0xc1a55))?.is_some() {
                class = Some(c);
                break;
            }
        }
        let class = class.unwrap_or_else(|| {
            reps.push((y.clone(), piece.top.clone()));
            members.push(Vec::new());
            reps.len() - 1
        });
        members[class].push(table.pillars.len());
        table.pillars.push(Pillar {
            section: (i, j),
            height: y.loewy_length(),
            dim: y.dim(),
            vertices: piece.vertices.clone(),
            visible: true,
            class,
            top: piece.top.vectors(),
        });
    }
    for (class, mem) in members.iter().enumerate() {
        if mem.len() < 2 {
            continue;
        }
        table.colonnades.push(Colonnade { section: (i, j), class, count: mem.len(), pillars: mem.clone() });
        let a = Subspace::from_vectors(f, m.dim(), &table.pillars[mem[0]].top);
        let b = Subspace::from_vectors(f, m.dim(), &table.pillars[mem[1]].top);
        let (ya, qa) = m.local_section(&a, &frame.rad[j])?;
        let (yb, qb) = m.local_section(&b, &frame.rad[j])?;
        if let Some(phi) = iso_test(&ya, &yb, cfg, &rng.fork(0xd1a9))? {
            let graph: Vec<Vec<u32>> = (0..ya.dim())
                .map(|k| {
                    let mut e = vec![0; ya.dim()];
                    e[k] = 1;
                    let x = qa.lift(&e);
                    let y = qb.lift(&phi.column(k));
                    x.iter().zip(&y).map(|(&p, &q)| f.add(p, q)).collect()
                })
                .collect();
            let top = frame.span(&graph).sum(&frame.rad[j])?;
            table.pillars.push(Pillar {
                section: (i, j),
                height: ya.loewy_length(),
                dim: ya.dim(),
                vertices: vec![],
                visible: false,
                class,
                top: top.vectors(),
            });
        }
    }
    Ok(table)
}

fn nested(a: (usize, usize), b: (usize, usize)) -> bool {
    a.0 <= b.0 && b.1 <= a.1
}

/// Whether `b` is isomorphic to a summand of `a` cut down to `b`'s section.
///
/// Vertex containment of visible pillars settles it at once; otherwise the
/// cut is decomposed and its summands tested against `b`, which also finds
/// parallel copies.
pub fn dominates(a: &Pillar, b: &Pillar, m: &AModule, cfg: &Config) -> Result<bool> {
    if !nested(a.section, b.section) {
        return Err(Error::NotNestedSections);
    }
    if a.visible && b.visible && b.vertices.iter().all(|v| a.vertices.contains(v)) {
        return Ok(true);
    }
    let f = m.field();
    let rad = m.radical_series();
    let (bi, bj) = b.section;
    let at = Subspace::from_vectors(f, m.dim(), &a.top);
    let cut_top = at.intersection(&rad[bi])?.sum(&rad[bj])?;
    let (cut, _) = m.local_section(&cut_top, &rad[bj])?;
    let (yb, _) = m.local_section(&Subspace::from_vectors(f, m.dim(), &b.top), &rad[bj])?;
    let rng = SeedStream::new(cfg.seed).fork(0xd0e5);
    for s in decompose(&cut, cfg, &rng)? {
        if iso_test(&s.module, &yb, cfg, &rng.fork(1))?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Fills in pillars, colonnades, the `⊑` preorder, maximal colonnades and peaks.
pub(crate) fn annotate(frame: &Frame, d: &mut Diagram, cfg: &Config, rng: &SeedStream) -> Result<()> {
    let len = frame.length;
    let mut pillars: Vec<Pillar> = Vec::new();
    let mut cols: Vec<Colonnade> = Vec::new();
    for i in 0..len {
        for j in i + 1..=len {
            let t = section_table(frame, d, i, j, cfg, &rng.fork((i * 64 + j) as u64))?;
            let off = pillars.len();
            pillars.extend(t.pillars);
            cols.extend(t.colonnades.into_iter().map(|mut c| {
                c.pillars.iter_mut().for_each(|p| *p += off);
                c
            }));
        }
    }
    let dom = |a: &Pillar, b: &Pillar| {
        a.visible && b.visible && a.section != b.section && nested(a.section, b.section)
            && b.vertices.iter().all(|v| a.vertices.contains(v))
    };
    let mut order = Vec::new();
    for (bi, b) in cols.iter().enumerate() {
        for (ai, a) in cols.iter().enumerate() {
            if ai != bi && a.pillars.iter().any(|&pa| b.pillars.iter().any(|&pb| dom(&pillars[pa], &pillars[pb]))) {
                order.push((bi, ai));
            }
        }
    }
    let maximal = (0..cols.len())
        .filter(|&b| !order.iter().any(|&(x, a)| x == b && !order.contains(&(a, b))))
        .collect();
    let in_colonnade: Vec<usize> = cols.iter().flat_map(|c| c.pillars.iter().copied()).collect();
    let peaks = (0..pillars.len())
        .filter(|&p| {
            pillars[p].visible
                && !in_colonnade.contains(&p)
                && in_colonnade.iter().any(|&q| dom(&pillars[p], &pillars[q]))
        })
        .collect();
    d.pillars = pillars;
    d.colonnades = cols;
    d.order = order;
    d.maximal_colonnades = maximal;
    d.peaks = peaks;
    Ok(())
}
