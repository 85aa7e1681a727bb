//! Graphviz output: one rank per radical layer, or per socle colayer for
//! fallen vertices of a central diagram.

use std::fmt::Write;

use super::{Diagram, EdgeSide};

pub fn to_dot(d: &Diagram) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph module {{");
    let _ = writeln!(s, "  rankdir=TB;");
    let _ = writeln!(s, "  node [shape=circle];");
    let rank_of = |k: usize| {
        let v = &d.vertices[k];
        if d.central && v.fallen() {
            v.socle_colayer
        } else {
            v.radical_layer
        }
    };
    for r in 1..=d.loewy_length {
        let ids: Vec<String> = (0..d.vertices.len()).filter(|&k| rank_of(k) == r).map(|k| format!("v{k}")).collect();
        if !ids.is_empty() {
            let _ = writeln!(s, "  {{ rank=same; {}; }}", ids.join("; "));
        }
    }
    for v in &d.vertices {
        let style = if d.central && v.fallen() { ", style=dashed" } else { "" };
        let _ = writeln!(s, "  v{} [label=\"S{}\"{}];", v.id, v.iso_class, style);
    }
    for e in &d.edges {
        let label: Vec<String> = e.class.coords.iter().map(|x| x.to_string()).collect();
        let style = match e.side {
            EdgeSide::Radical => "",
            EdgeSide::Socle => ", style=dotted",
        };
        let _ = writeln!(s, "  v{} -> v{} [label=\"({})\"{}];", e.from, e.to, label.join(","), style);
    }
    s.push_str("}\n");
    s
}
