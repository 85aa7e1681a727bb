//! Independent re-checking of a diagram against its module.

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::decompose::{composition_factors, decompose, iso_test};
use crate::error::Result;
use crate::module::AModule;
use crate::rng::SeedStream;

use super::frame::{edge_class, Frame, LabelCache, Layout};
use super::pillars::{linked_by_edges, pieces};
use super::tuned::slots_of;
use super::{Diagram, EdgeSide};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    fn push(&mut self, name: &str, problems: Vec<String>) {
        let passed = problems.is_empty();
        self.passed &= passed;
        let detail = if passed { "ok".to_string() } else { problems.join("; ") };
        self.checks.push(Check { name: name.into(), passed, detail });
    }
}

/// Re-derives layers, edges, labels and the tuned property of `d` from `m`.
pub fn verify_diagram(d: &Diagram, m: &AModule, cfg: &Config) -> Result<Report> {
    let frame = Frame::new(m);
    check(&frame, d, cfg, &SeedStream::new(cfg.seed).fork(0x7e51f))
}

pub(crate) fn check(frame: &Frame, d: &Diagram, cfg: &Config, rng: &SeedStream) -> Result<Report> {
    let m = frame.m;
    let mut report = Report { passed: true, checks: Vec::new() };

    let mut shape = Vec::new();
    if d.field != m.field().p() || d.module_dim != m.dim() || d.loewy_length != frame.length {
        shape.push(format!(
            "diagram is for F_{} dim {} length {}, module is F_{} dim {} length {}",
            d.field,
            d.module_dim,
            d.loewy_length,
            m.field().p(),
            m.dim(),
            frame.length
        ));
    }
    let n = d.vertices.len();
    for (k, v) in d.vertices.iter().enumerate() {
        if v.id != k || v.radical_layer == 0 || v.radical_layer > frame.length || v.basis.iter().any(|c| c.len() != m.dim()) {
            shape.push(format!("vertex {k} is malformed"));
        }
        if v.iso_class >= m.algebra().num_simples() {
            shape.push(format!("vertex {k} has unknown class {}", v.iso_class));
        }
    }
    for e in &d.edges {
        if e.from >= n || e.to >= n {
            shape.push(format!("edge {}→{} leaves the vertex set", e.from, e.to));
        }
    }
    let ok = shape.is_empty();
    report.push("shape", shape);
    if !ok {
        return Ok(report);
    }

    let slots = slots_of(d);
    let layout = match Layout::new(frame, &slots) {
        Ok(l) => l,
        Err(e) => {
            report.push("layers", vec![e.to_string()]);
            return Ok(report);
        }
    };

    let mut layers = Vec::new();
    for (k, (v, s)) in d.vertices.iter().zip(&slots).enumerate() {
        let l = v.radical_layer;
        let span = frame.span(&s.cols);
        if span.dim() != s.dim() || !span.is_subset(&frame.rad[l - 1])? {
            layers.push(format!("vertex {k} is not inside radical layer {l}"));
            continue;
        }
        let top = span.sum(&frame.rad[l])?;
        if !m.is_invariant(&top) {
            layers.push(format!("vertex {k} is not a summand of its layer"));
            continue;
        }
        let (q, _) = m.local_section(&top, &frame.rad[l])?;
        let cf = composition_factors(&q);
        let simple_dim = m.algebra().simple_data(v.iso_class).dim;
        if q.dim() != simple_dim || cf[v.iso_class] != 1 {
            layers.push(format!("vertex {k} is not a copy of simple {}", v.iso_class));
        }
        if frame.socle_colayer(s)? != v.socle_colayer {
            layers.push(format!("vertex {k} has socle colayer {} on record", v.socle_colayer));
        }
    }
    for l in 1..=frame.length {
        let cols: Vec<Vec<u32>> = slots.iter().filter(|s| s.layer == l).flat_map(|s| s.cols.iter().cloned()).collect();
        if frame.span(&cols).sum(&frame.rad[l])? != frame.rad[l - 1] {
            layers.push(format!("radical layer {l} is not covered by its vertices"));
        }
    }
    let ok = layers.is_empty();
    report.push("layers", layers);
    if !ok {
        return Ok(report);
    }

    let mut edges = Vec::new();
    for e in &d.edges {
        let (a, b) = (&d.vertices[e.from], &d.vertices[e.to]);
        let step = match e.side {
            EdgeSide::Radical => {
                b.radical_layer == a.radical_layer + 1 || layout.sector[e.from][e.to]
            }
            EdgeSide::Socle => b.socle_colayer == a.socle_colayer + 1 && b.radical_layer > a.radical_layer + 1,
        };
        if !step {
            edges.push(format!("edge {}→{} spans more than one {:?} step", e.from, e.to, e.side));
        }
        if !layout.adj[e.from][e.to] {
            edges.push(format!("edge {}→{} has no radical action behind it", e.from, e.to));
        }
    }
    for u in 0..n {
        for w in 0..n {
            if layout.adj[u][w]
                && (slots[w].layer == slots[u].layer + 1 || layout.sector[u][w])
                && !d.edges.iter().any(|e| e.from == u && e.to == w)
            {
                edges.push(format!("missing edge {u}→{w}"));
            }
        }
    }
    report.push("edges", edges);

    let mut labels = Vec::new();
    let mut cache = LabelCache::default();
    for e in &d.edges {
        if !layout.adj[e.from][e.to] {
            continue;
        }
        let c = edge_class(frame, &slots, e.from, e.to, &mut cache)?;
        if c != e.class {
            labels.push(format!("edge {}→{} is labelled {:?}, recomputed {:?}", e.from, e.to, e.class.coords, c.coords));
        }
    }
    report.push("labels", labels);

    // Every summand of every section must be a visible pillar.
    let adj = linked_by_edges(d);
    let mut tuned = Vec::new();
    let mut visible = Vec::new();
    for i in 0..frame.length {
        for j in i + 1..=frame.length {
            let key = (i * 64 + j) as u64;
            let ps = pieces(frame, &slots, &adj, i, j, cfg, &rng.fork(key))?;
            let (sec, _) = m.local_section(&frame.rad[i], &frame.rad[j])?;
            for (si, x) in decompose(&sec, cfg, &rng.fork(key + 0x10000))?.iter().enumerate() {
                let mut found = false;
                for p in ps.iter().filter(|p| p.indecomposable) {
                    let y = p.module.as_ref().expect("indecomposable pieces are modules");
                    if iso_test(&x.module, y, cfg, &rng.fork(key + 0x20000 + si as u64))?.is_some() {
                        found = true;
                        break;
                    }
                }
                if !found {
                    tuned.push(format!("section ({i}, {j}) has a summand of dim {} with no visible pillar", x.module.dim()));
                }
            }
            for p in ps {
                if p.indecomposable {
                    visible.push(((i, j), p));
                }
            }
        }
    }
    report.push("tuned", tuned);

    // Maximal pillars meet trivially once moved to a common section.
    let mut overlap = Vec::new();
    let maximal: Vec<usize> = (0..visible.len())
        .filter(|&b| {
            !visible.iter().enumerate().any(|(a, (wa, pa))| {
                let (wb, pb) = (&visible[b].0, &visible[b].1);
                a != b && wa.0 <= wb.0 && wb.1 <= wa.1 && wa != wb && pb.vertices.iter().all(|v| pa.vertices.contains(v))
            })
        })
        .collect();
    for (x, &a) in maximal.iter().enumerate() {
        for &b in &maximal[x + 1..] {
            let ((ai, aj), pa) = (&visible[a].0, &visible[a].1);
            let ((bi, bj), pb) = (&visible[b].0, &visible[b].1);
            let (i, j) = ((*ai).max(*bi), (*aj).min(*bj));
            if i >= j {
                continue;
            }
            let ta = pa.top.intersection(&frame.rad[i])?.sum(&frame.rad[j])?;
            let tb = pb.top.intersection(&frame.rad[i])?.sum(&frame.rad[j])?;
            if ta.intersection(&tb)? != frame.rad[j] {
                overlap.push(format!("pillars of ({ai}, {aj}) and ({bi}, {bj}) overlap in ({i}, {j})"));
            }
        }
    }
    report.push("maximal pillars", overlap);
    Ok(report)
}
