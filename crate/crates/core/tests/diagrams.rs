mod common;

use std::sync::Arc;

use common::cfg;
use modiag::corpus;
use modiag::diagram::{
    canonical_hom, colonnades, confined_preimage, dominates, gluing_instances, pillars_of_section, to_dot, visible_pullback,
    visible_pushout, EdgeSide, Section,
};
use modiag::ext::ProportionalityClass;
use modiag::{central_diagram, tuned_diagram, verify_diagram, Algebra, AModule, Diagram, Error, MatrixFp, Subspace};

fn alg(name: &str) -> Arc<Algebra> {
    corpus::algebra(name).unwrap()
}

/// `U ⊕ U` for `U = F_2[C_2]`, with `U_1 = span{e0, e1}` and `U_2 = span{e2, e3}`.
fn u_plus_u() -> AModule {
    let u = AModule::regular(&alg("f2_c2"));
    AModule::direct_sum(&[&u, &u]).unwrap()
}

fn span(m: &AModule, vecs: &[&[u32]]) -> Subspace {
    Subspace::from_vectors(m.field(), m.dim(), &vecs.iter().map(|v| v.to_vec()).collect::<Vec<_>>())
}

fn class(c: &[u32]) -> ProportionalityClass {
    ProportionalityClass { coords: c.to_vec() }
}

fn failed(d: &Diagram, m: &AModule) -> Vec<String> {
    verify_diagram(d, m, &cfg()).unwrap().checks.into_iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.detail)).collect()
}

#[test]
fn confined_preimage_examples() {
    let m = u_plus_u();
    let u1 = span(&m, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
    let u2 = span(&m, &[&[0, 0, 1, 0], &[0, 0, 0, 1]]);
    let r1 = m.radical_of(&u1);
    let r2 = m.radical_of(&u2);
    let parts = vec![(u1.clone(), r1.clone()), (u2.clone(), r2.clone())];
    let s = r1.sum(&r2).unwrap();

    let zero = Subspace::zero(m.field(), 4);
    assert!(confined_preimage(&m, &[], &zero).is_err());
    assert_eq!(confined_preimage(&m, &parts, &s).unwrap(), zero);

    // Head line of the first summand: only U_1 is touched.
    let head1 = s.sum(&m.generate(&[vec![1, 0, 0, 0]])).unwrap();
    assert_eq!(confined_preimage(&m, &parts, &head1).unwrap(), u1);

    // The diagonal head line touches both summands.
    let diag = s.sum(&m.generate(&[vec![1, 0, 1, 0]])).unwrap();
    let c = confined_preimage(&m, &parts, &diag).unwrap();
    assert_eq!(c.dim(), 3);
    assert_eq!(c, diag);
}

#[test]
fn simple_module_diagram() {
    let k = AModule::simple(&alg("f2_v4"), 0);
    let d = tuned_diagram(&k, &cfg()).unwrap();
    assert_eq!((d.vertices.len(), d.edges.len()), (1, 0));
}

#[test]
fn regular_v4_diagram() {
    let m = AModule::regular(&alg("f2_v4"));
    let d = tuned_diagram(&m, &cfg()).unwrap();
    let layers: Vec<usize> = d.vertices.iter().map(|v| v.radical_layer).collect();
    let mut sorted = layers.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, vec![1, 2, 2, 3]);
    let top = d.vertices.iter().find(|v| v.radical_layer == 1).unwrap().id;
    let bottom = d.vertices.iter().find(|v| v.radical_layer == 3).unwrap().id;
    let mids: Vec<usize> = d.vertices.iter().filter(|v| v.radical_layer == 2).map(|v| v.id).collect();
    assert_eq!(d.edges.len(), 4);
    let mut top_classes = Vec::new();
    for &mid in &mids {
        let down = d.edges.iter().find(|e| e.from == top && e.to == mid).expect("top → mid edge");
        assert_eq!(down.side, EdgeSide::Radical);
        top_classes.push(down.class.clone());
        assert!(d.edges.iter().any(|e| e.from == mid && e.to == bottom));
    }
    top_classes.sort();
    assert_eq!(top_classes, vec![class(&[0, 1]), class(&[1, 0])]);
    assert!(verify_diagram(&d, &m, &cfg()).unwrap().passed);

    let c = central_diagram(&m, &cfg()).unwrap();
    assert!(c.vertices.iter().all(|v| !v.fallen()));
    assert_eq!(c.vertex_signature(), d.vertex_signature().iter().map(|&(a, r, _)| (a, r, r)).collect::<Vec<_>>());
}

#[test]
fn u_plus_u_diagram_and_colonnade() {
    let m = u_plus_u();
    let d = tuned_diagram(&m, &cfg()).unwrap();
    assert_eq!(d.vertices.len(), 4);
    assert_eq!(d.edges.len(), 2);
    // Two disjoint chains: every vertex has exactly one incident edge.
    for v in &d.vertices {
        assert_eq!(d.edges.iter().filter(|e| e.from == v.id || e.to == v.id).count(), 1);
    }
    let col = d.colonnades.iter().find(|c| c.section == (0, 2)).expect("the {0,2} colonnade");
    assert_eq!(col.count, 2);
    let hidden: Vec<_> = d.pillars.iter().filter(|p| p.section == (0, 2) && !p.visible).collect();
    assert_eq!(hidden.len(), 1);
    // The parallel pillar is a diagonal copy of U, dominated by the colonnade.
    let diag = Subspace::from_vectors(m.field(), 4, &hidden[0].top);
    assert_eq!(diag.dim(), 2);
    assert!(!diag.is_subset(&span(&m, &[&[1, 0, 0, 0], &[0, 1, 0, 0]])).unwrap());
    assert!(!diag.is_subset(&span(&m, &[&[0, 0, 1, 0], &[0, 0, 0, 1]])).unwrap());

    let table = colonnades(&d, &m, 0, 2, &cfg()).unwrap();
    assert_eq!(table.colonnades.len(), 1);
    assert_eq!(table.colonnades[0].count, 2);
}

#[test]
fn pillars_of_sections() {
    let u = AModule::regular(&alg("f2_c4"));
    let d = tuned_diagram(&u, &cfg()).unwrap();
    for i in 0..4 {
        for j in i + 1..=4 {
            assert_eq!(pillars_of_section(&d, &u, i, j, &cfg()).unwrap().len(), 1);
            assert!(colonnades(&d, &u, i, j, &cfg()).unwrap().colonnades.is_empty());
        }
    }
    let v4 = AModule::regular(&alg("f2_v4"));
    let d = tuned_diagram(&v4, &cfg()).unwrap();
    let mid = colonnades(&d, &v4, 1, 2, &cfg()).unwrap();
    assert_eq!(mid.colonnades.len(), 1);
    assert_eq!(mid.colonnades[0].count, 2);
    assert!(pillars_of_section(&d, &v4, 2, 1, &cfg()).is_err());
}

#[test]
fn dominance_examples() {
    let v4 = AModule::regular(&alg("f2_v4"));
    let d = tuned_diagram(&v4, &cfg()).unwrap();
    let whole = &pillars_of_section(&d, &v4, 0, 3, &cfg()).unwrap()[0];
    for p in pillars_of_section(&d, &v4, 1, 2, &cfg()).unwrap() {
        assert!(dominates(whole, &p, &v4, &cfg()).unwrap());
    }

    let m = u_plus_u();
    let d = tuned_diagram(&m, &cfg()).unwrap();
    let full = pillars_of_section(&d, &m, 0, 2, &cfg()).unwrap();
    let heads = pillars_of_section(&d, &m, 0, 1, &cfg()).unwrap();
    assert_eq!((full.len(), heads.len()), (2, 2));
    // U_1 dominates the head of U_2 through the parallel copy.
    let mut a = full[0].clone();
    let b = heads.iter().find(|h| !h.vertices.iter().any(|v| a.vertices.contains(v))).unwrap();
    assert!(dominates(&a, b, &m, &cfg()).unwrap());
    a.visible = false;
    assert!(dominates(&a, b, &m, &cfg()).unwrap());

    let lower = pillars_of_section(&d, &m, 1, 2, &cfg()).unwrap();
    assert_eq!(dominates(&heads[0], &lower[0], &m, &cfg()).unwrap_err(), Error::NotNestedSections);
}

#[test]
fn canonical_hom_examples() {
    let m = AModule::regular(&alg("f2_v4"));
    let f = m.field();
    let all = Section::new(&m, Subspace::full(f, 4), Subspace::zero(f, 4)).unwrap();
    let h = canonical_hom(&all, &all, &all).unwrap();
    assert_eq!(h.composite, MatrixFp::identity(f, 4));

    let zero = Section::new(&m, Subspace::zero(f, 4), Subspace::zero(f, 4)).unwrap();
    let top = Section::new(&m, Subspace::full(f, 4), Subspace::full(f, 4)).unwrap();
    // M / M is a quotient of M but not a submodule of it.
    assert_eq!(canonical_hom(&all, &top, &all).unwrap_err(), Error::NotSubmodule);
    let h = canonical_hom(&zero, &zero, &all).unwrap();
    assert!(h.composite.is_zero());
}

#[test]
fn canonical_hom_on_gluing_instances() {
    let mut seen = 0;
    for c in corpus::corpus(16).unwrap() {
        let k = &c.module;
        let rad = k.radical_series();
        for inst in gluing_instances(k, &cfg()).unwrap() {
            let cut = &rad[inst.i + inst.s];
            let mut rad_m = inst.m_top.clone();
            for _ in 0..inst.i {
                rad_m = k.radical_of(&rad_m);
            }
            // N ↠ S = N / rad^s N ≅ rad^i M ↪ M, seen in the section K / rad^{i+s} K.
            let n = Section::new(k, inst.n.sum(cut).unwrap(), cut.clone()).unwrap();
            let s = Section::new(k, rad_m.sum(cut).unwrap(), cut.clone()).unwrap();
            let mm = Section::new(k, inst.m_top.clone(), cut.clone()).unwrap();
            let h = canonical_hom(&n, &s, &mm).unwrap();
            assert_eq!(h.composite.rank(), s.dim());
            assert_eq!(h.epi.kernel().dim(), n.dim() - s.dim());
            seen += 1;
        }
    }
    assert!(seen > 0);
}

#[test]
fn pullback_and_pushout_examples() {
    let m = AModule::regular(&alg("f2_v4"));
    let f = m.field();
    let full = Subspace::full(f, 4);
    let rad = m.radical_series();
    // The two maximal proper submodules of rad containing rad² give B_1, B_2.
    let mut lines: Vec<Subspace> = rad[1]
        .vectors()
        .iter()
        .filter(|v| !rad[2].contains(v))
        .map(|v| m.generate(std::slice::from_ref(v)))
        .collect();
    lines.dedup();
    assert!(lines.len() >= 2 && lines[0] != lines[1]);
    let b1 = Section::new(&m, full.clone(), lines[0].clone()).unwrap();
    let b2 = Section::new(&m, full.clone(), lines[1].clone()).unwrap();
    let t = Section::new(&m, full.clone(), rad[1].clone()).unwrap();
    let pb = visible_pullback(&m, &b1, &b2, &t).unwrap();
    assert_eq!(pb.dim(), 3);
    assert_eq!(pb.bottom, rad[2]);
    assert_eq!(visible_pullback(&m, &b1, &b1, &b1).unwrap(), b1);

    let zero = Subspace::zero(f, 4);
    let l1 = Section::new(&m, lines[0].clone(), zero.clone()).unwrap();
    let l2 = Section::new(&m, lines[1].clone(), zero.clone()).unwrap();
    let soc = Section::new(&m, rad[2].clone(), zero).unwrap();
    let po = visible_pushout(&m, &l1, &l2, &soc).unwrap();
    assert_eq!(po.dim(), 3);
    assert_eq!(po.top, rad[1]);
}

#[test]
fn central_diagram_examples() {
    let u = AModule::regular(&alg("f2_c4"));
    let t = tuned_diagram(&u, &cfg()).unwrap();
    let c = central_diagram(&u, &cfg()).unwrap();
    assert!(c.vertices.iter().all(|v| !v.fallen()));
    assert_eq!(c.edges, t.edges);

    let a = alg("f2_c2");
    let (k, uu) = (AModule::simple(&a, 0), AModule::regular(&a));
    let m = AModule::direct_sum(&[&k, &uu]).unwrap();
    let c = central_diagram(&m, &cfg()).unwrap();
    let fallen: Vec<_> = c.vertices.iter().filter(|v| v.fallen()).collect();
    assert_eq!(fallen.len(), 1);
    let kv = fallen[0];
    assert_eq!((kv.radical_layer, kv.socle_colayer), (1, 2));
    assert!(!c.edges.iter().any(|e| e.from == kv.id || e.to == kv.id));
    assert!(verify_diagram(&c, &m, &cfg()).unwrap().passed);
}

#[test]
fn verify_catches_tampering() {
    let m = AModule::regular(&alg("f2_v4"));
    let d = tuned_diagram(&m, &cfg()).unwrap();
    assert!(failed(&d, &m).is_empty());

    let mut bad = d.clone();
    let e = bad.edges.iter_mut().find(|e| e.class.coords.len() == 2).unwrap();
    e.class.coords.reverse();
    let (from, to) = (e.from, e.to);
    let problems = failed(&bad, &m);
    assert!(!problems.is_empty());
    assert!(problems.iter().any(|p| p.contains(&format!("{from}")) && p.contains(&format!("{to}"))), "{problems:?}");

    // Dropping one chain of U ⊕ U hides a pillar of the colonnade.
    let m = u_plus_u();
    let d = tuned_diagram(&m, &cfg()).unwrap();
    let mut bad = d.clone();
    let gone = bad.edges.pop().unwrap();
    bad.vertices.retain(|v| v.id != gone.from && v.id != gone.to);
    assert!(!failed(&bad, &m).is_empty());
}

#[test]
fn dot_is_deterministic() {
    let m = AModule::regular(&alg("f2_v4"));
    let a = to_dot(&tuned_diagram(&m, &cfg()).unwrap());
    let b = to_dot(&tuned_diagram(&m, &cfg()).unwrap());
    assert_eq!(a, b);
    assert!(a.starts_with("digraph"));
}
