//! Building tuned diagrams by refining slot choices until every strip
//! component is indecomposable.

use crate::config::Config;
use crate::decompose::decompose;
use crate::error::{Error, Result};
use crate::matrix::MatrixFp;
use crate::module::AModule;
use crate::rng::SeedStream;
use crate::series::split_layer;
use crate::subspace::{split_sum, Subspace};

use super::frame::{components, edge_class, Frame, LabelCache, Layout, Slot};
use super::{pillars, verify, Diagram, Edge, EdgeSide, Vertex};

/// A diagram whose strip components are pillars, built from the configured seed.
pub fn tuned_diagram(m: &AModule, cfg: &Config) -> Result<Diagram> {
    build(m, cfg, false)
}

/// The tuned diagram read against the socle series as well: every vertex
/// carries its socle colayer, and hanging vertices are marked as fallen.
pub fn central_diagram(m: &AModule, cfg: &Config) -> Result<Diagram> {
    build(m, cfg, true)
}

fn build(m: &AModule, cfg: &Config, central: bool) -> Result<Diagram> {
    let frame = Frame::new(m);
    let base = SeedStream::new(cfg.seed).fork(0xd1a6);
    let mut failed = Vec::new();
    for attempt in 0..cfg.tuning_attempts {
        let rng = base.fork(attempt as u64);
        let mut slots = initial_slots(&frame, cfg, &rng.fork(0))?;
        relift(&frame, &mut slots)?;
        for round in 0..cfg.tuning_rounds {
            let changed = refine_round(&frame, &mut slots, cfg, &rng.fork(100 + round as u64))?;
            relift(&frame, &mut slots)?;
            if !changed {
                break;
            }
        }
        let mut d = assemble(&frame, slots, central)?;
        let report = verify::check(&frame, &d, cfg, &rng.fork(1))?;
        if report.passed {
            pillars::annotate(&frame, &mut d, cfg, &rng.fork(2))?;
            return Ok(d);
        }
        failed = report.checks.into_iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.detail)).collect();
    }
    Err(Error::TuningConflict(format!(
        "no consistent slot choice after {} attempts; last failures: {}",
        cfg.tuning_attempts,
        failed.join("; ")
    )))
}

/// Slots of each indecomposable summand, layer by layer, lifted inside the summand.
fn initial_slots(frame: &Frame, cfg: &Config, rng: &SeedStream) -> Result<Vec<Slot>> {
    let m = frame.m;
    let mut slots = Vec::new();
    for k in decompose(m, cfg, rng)? {
        for l in 1..=frame.length {
            let kl = k.space.intersection(&frame.rad[l - 1])?;
            let top = kl.sum(&frame.rad[l])?;
            if top == frame.rad[l] {
                continue;
            }
            for v in split_layer(m, &top, &frame.rad[l], &frame.soc[1..])? {
                let cols = (0..v.embedding.cols())
                    .map(|c| split_sum(&v.embedding.column(c), &kl, &frame.rad[l]).map(|(x, _)| x))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::Invalid("slot outside its summand layer".into()))?;
                slots.push(Slot { layer: l, iso_class: v.iso_class, cols });
            }
        }
    }
    Ok(slots)
}

/// One sweep over sections, tallest first. Returns whether any slot changed.
fn refine_round(frame: &Frame, slots: &mut Vec<Slot>, cfg: &Config, rng: &SeedStream) -> Result<bool> {
    let m = frame.m;
    let len = frame.length;
    let mut changed = false;
    for h in (2..=len).rev() {
        for i in 0..=len - h {
            let j = i + h;
            let layout = Layout::new(frame, slots)?;
            let comps = components(slots, i, j, |u, w| layout.adj[u][w]);
            let mut replaced: Vec<(Vec<usize>, Vec<Slot>)> = Vec::new();
            for (ci, comp) in comps.iter().enumerate() {
                if comp.len() < 2 {
                    continue;
                }
                let cols: Vec<Vec<u32>> = comp.iter().flat_map(|&k| slots[k].cols.iter().cloned()).collect();
                let top = frame.span(&cols).sum(&frame.rad[j])?;
                let (y, q) = m.local_section(&top, &frame.rad[j])?;
                let parts = decompose(&y, cfg, &rng.fork(((i * 64 + j) * 1024 + ci) as u64))?;
                if parts.len() < 2 {
                    continue;
                }
                let mut fresh = Vec::new();
                for part in parts {
                    let lifted: Vec<Vec<u32>> = part.space.vectors().iter().map(|v| q.lift(v)).collect();
                    let ptop = frame.span(&lifted).sum(&frame.rad[j])?;
                    for l in i + 1..=j {
                        let pl = ptop.intersection(&frame.rad[l - 1])?;
                        let t = pl.sum(&frame.rad[l])?;
                        if t == frame.rad[l] {
                            continue;
                        }
                        for v in split_layer(m, &t, &frame.rad[l], &frame.soc[1..])? {
                            let mut new_cols = Vec::new();
                            for c in 0..v.embedding.cols() {
                                let (x, _) = split_sum(&v.embedding.column(c), &pl, &frame.rad[l])
                                    .ok_or_else(|| Error::Invalid("slot outside its part".into()))?;
                                new_cols.push(layout.restrict(frame, slots, &x, comp));
                            }
                            fresh.push(Slot { layer: l, iso_class: v.iso_class, cols: new_cols });
                        }
                    }
                }
                replaced.push((comp.clone(), fresh));
            }
            if replaced.is_empty() {
                continue;
            }
            changed = true;
            let gone: Vec<usize> = replaced.iter().flat_map(|(c, _)| c.iter().copied()).collect();
            let mut next: Vec<Slot> =
                slots.iter().enumerate().filter(|(k, _)| !gone.contains(k)).map(|(_, s)| s.clone()).collect();
            for (_, fresh) in replaced {
                next.extend(fresh);
            }
            *slots = next;
        }
    }
    Ok(changed)
}

/// Re-chooses lifts bottom-up so that `J · V_u` lies in the submodule
/// generated by the next-layer vertices `u` links to, whenever the linear
/// system for the correction in `rad^ℓ` is solvable. Slot images stay fixed.
fn relift(frame: &Frame, slots: &mut [Slot]) -> Result<()> {
    let m = frame.m;
    let f = m.field();
    let n = m.dim();
    for l in (1..frame.length).rev() {
        let layout = Layout::new(frame, slots)?;
        let below = frame.rad[l].basis().transpose();
        let here: Vec<usize> = (0..slots.len()).filter(|&u| slots[u].layer == l).collect();
        for u in here {
            let targets: Vec<Vec<u32>> = (0..slots.len())
                .filter(|&w| slots[w].layer == l + 1 && layout.adj[u][w])
                .flat_map(|w| slots[w].cols.iter().cloned())
                .collect();
            let func = MatrixFp::from_vectors(f, n, &m.generate(&targets).basis().kernel().vectors());
            if func.rows() == 0 {
                continue;
            }
            let blocks: Vec<MatrixFp> = frame.jops().iter().map(|j| func.mul(j)).collect();
            let mut system = MatrixFp::zeros(f, 0, below.cols());
            for b in &blocks {
                system = system.vstack(&b.mul(&below));
            }
            let mut fresh = Vec::new();
            for c in &slots[u].cols {
                let rhs: Vec<u32> = blocks.iter().flat_map(|b| b.mul_vec(c)).map(|x| f.neg(x)).collect();
                let Some(y) = system.solve(&rhs) else { break };
                fresh.push(c.iter().zip(below.mul_vec(&y)).map(|(&a, b)| f.add(a, b)).collect());
            }
            if fresh.len() == slots[u].cols.len() {
                slots[u].cols = fresh;
            }
        }
    }
    Ok(())
}

/// Orders slots canonically and reads off vertices and labelled edges.
pub(crate) fn assemble(frame: &Frame, mut slots: Vec<Slot>, central: bool) -> Result<Diagram> {
    let f = frame.m.field();
    let n = frame.m.dim();
    slots.sort_by(|a, b| {
        (a.layer, a.iso_class).cmp(&(b.layer, b.iso_class)).then_with(|| {
            Subspace::from_vectors(f, n, &a.cols).canonical_cmp(&Subspace::from_vectors(f, n, &b.cols))
        })
    });
    let layout = Layout::new(frame, &slots)?;
    let mut vertices = Vec::new();
    for (id, s) in slots.iter().enumerate() {
        vertices.push(Vertex {
            id,
            iso_class: s.iso_class,
            radical_layer: s.layer,
            socle_colayer: frame.socle_colayer(s)?,
            basis: s.cols.clone(),
        });
    }
    let mut cache = LabelCache::default();
    let mut edges = Vec::new();
    for u in 0..slots.len() {
        for w in 0..slots.len() {
            if !layout.adj[u][w] {
                continue;
            }
            let (lu, lw) = (slots[u].layer, slots[w].layer);
            let side = if lw == lu + 1 || layout.sector[u][w] {
                EdgeSide::Radical
            } else if lw > lu + 1 && vertices[w].socle_colayer == vertices[u].socle_colayer + 1 {
                EdgeSide::Socle
            } else {
                continue;
            };
            let class = edge_class(frame, &slots, u, w, &mut cache)?;
            edges.push(Edge { from: u, to: w, class, side });
        }
    }
    Ok(Diagram {
        field: f.p(),
        module_dim: n,
        loewy_length: frame.length,
        central,
        vertices,
        edges,
        pillars: vec![],
        colonnades: vec![],
        peaks: vec![],
        order: vec![],
        maximal_colonnades: vec![],
        report: None,
    })
}

pub(crate) fn slots_of(d: &Diagram) -> Vec<Slot> {
    d.vertices
        .iter()
        .map(|v| Slot { layer: v.radical_layer, iso_class: v.iso_class, cols: v.basis.clone() })
        .collect()
}
