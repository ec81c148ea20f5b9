use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::fixtures;
use crate::hypergraph::{GeneralizedMorphism, Subhypergraph};
use crate::presentation::InvWord;
use crate::wagonwheel::{
    build_wagon_wheel, choose_labelling, retract_to_b, retract_to_c, standard_cycles, LabellingMode, WagonWheel,
};

fn words(p: &Picture) -> Vec<String> {
    p.boundary_word()
}

fn pic(
    closed: bool,
    vertices: &[(&str, &str, &[Dart])],
    edges: &[(&str, &str, [Dart; 2])],
    boundary: &[Dart],
) -> Picture {
    Picture {
        closed,
        vertices: vertices
            .iter()
            .map(|(id, l, r)| PVertex { id: id.to_string(), label: l.to_string(), rot: r.to_vec() })
            .collect(),
        edges: edges.iter().map(|(id, l, d)| PEdge { id: id.to_string(), label: l.to_string(), darts: *d }).collect(),
        boundary: boundary.to_vec(),
        free_loops: vec![],
        nesting: vec![],
    }
}

/// Glues a disc picture to its mirror image along the boundary.
pub(crate) fn double(p: &Picture) -> Picture {
    let shift = 1 + p.edges.iter().flat_map(|e| e.darts).max().unwrap_or(0);
    let on_boundary: std::collections::HashSet<Dart> = p.boundary.iter().copied().collect();
    let mut out = Picture::empty();
    for v in &p.vertices {
        out.vertices.push(v.clone());
        let mut rot: Vec<Dart> = v.rot.iter().map(|d| d + shift).collect();
        rot.reverse();
        out.vertices.push(PVertex { id: format!("{}'", v.id), label: v.label.clone(), rot });
    }
    for e in &p.edges {
        match e.darts.iter().position(|d| on_boundary.contains(d)) {
            Some(k) => {
                let inner = e.darts[1 - k];
                out.edges.push(PEdge { id: e.id.clone(), label: e.label.clone(), darts: [inner, inner + shift] });
            }
            None => {
                out.edges.push(e.clone());
                out.edges.push(PEdge {
                    id: format!("{}'", e.id),
                    label: e.label.clone(),
                    darts: [e.darts[0] + shift, e.darts[1] + shift],
                });
            }
        }
    }
    out
}

#[test]
fn coxeter_certifies_its_boundary() {
    let pres = fixtures::coxeter_presentation();
    let p = fixtures::coxeter_picture();
    validate(&p).unwrap();
    validate_g_labels(&p, &pres).unwrap();
    assert_eq!(words(&p).join(" "), "s1 s2 s3 s2 s1 s3 s2 s1 s2 s3");
    assert!(!sign(&p, &pres).unwrap());
    let w = crate::presentation::parse_inv_word("s1 s2 s3 s2 s1 s3 s2 s1 s2 s3", &pres.generators).unwrap();
    for k in 0..w.len() {
        let mut r = w.clone();
        r.letters.rotate_left(k);
        assert!(certifies_g(&p, &pres, &r).unwrap());
    }
    let mut odd = w.clone();
    odd.parity = true;
    assert!(!certifies_g(&p, &pres, &odd).unwrap());
    let mut wrong = w;
    wrong.letters.swap(0, 1);
    assert!(!certifies_g(&p, &pres, &wrong).unwrap());
}

#[test]
fn coxeter_mislabel_is_reported() {
    let pres = fixtures::coxeter_presentation();
    let mut p = fixtures::coxeter_picture();
    p.vertices[0].label = "r2".into();
    assert!(matches!(validate_g_labels(&p, &pres), Err(LabelError::Rotation { .. })));
    p.vertices[0].label = "r9".into();
    assert!(matches!(validate_g_labels(&p, &pres), Err(LabelError::UnknownVertexLabel { .. })));
}

#[test]
fn parallel_edges_certify_j() {
    let (h, b, p) = fixtures::parallel();
    validate(&p).unwrap();
    validate_h_labels(&p, &h).unwrap();
    assert!(p.boundary_word().is_empty());
    assert_eq!(character(&p, &h).unwrap(), VertexLabelling(vec![true, true]));
    assert!(certifies_h(&p, &h, &b, &InvWord::new(true, vec![])).unwrap());
    assert!(!certifies_h(&p, &h, &b, &InvWord::new(false, vec![])).unwrap());
    let zero = VertexLabelling::zeros(&h);
    assert!(certifies_h(&p, &h, &zero, &InvWord::new(false, vec![])).unwrap());
}

#[test]
fn empty_picture() {
    let p = Picture::empty();
    validate(&p).unwrap();
    let (h, _, _) = fixtures::parallel();
    assert_eq!(character(&p, &h).unwrap(), VertexLabelling::zeros(&h));
    assert!(!sign(&p, &fixtures::coxeter_presentation()).unwrap());
    assert!(p.boundary_word().is_empty());
}

#[test]
fn violations() {
    let looped = pic(true, &[("v", "", &[0, 1])], &[("e", "", [0, 1])], &[]);
    validate(&looped).unwrap();
    let shared = pic(true, &[("v", "", &[0, 1])], &[("e", "", [0, 1]), ("f", "", [1, 0])], &[]);
    assert!(matches!(validate(&shared), Err(Violation::DartReused { dart: 1 })));
    let orphan = pic(true, &[("v", "", &[0, 1, 2])], &[("e", "", [0, 1])], &[]);
    assert!(matches!(validate(&orphan), Err(Violation::OrphanDart { dart: 2 })));
    let torus = pic(true, &[("v", "", &[0, 2, 1, 3])], &[("e", "", [0, 1]), ("f", "", [2, 3])], &[]);
    assert!(matches!(validate(&torus), Err(Violation::Euler { v: 1, e: 2, f: 1, .. })));
    let open = pic(true, &[("v", "", &[0])], &[("e", "", [0, 1])], &[1]);
    assert_eq!(validate(&open), Err(Violation::ClosedMismatch));
    let two = pic(true, &[("u", "", &[]), ("v", "", &[])], &[], &[]);
    assert!(matches!(validate(&two), Err(Violation::MissingHost { .. })));
    let mut hosted = two.clone();
    hosted.nesting.push(Nesting { outer: FaceRef::Vertex("v".into()), host: FaceRef::Vertex("u".into()) });
    validate(&hosted).unwrap();
    hosted.nesting.push(Nesting { outer: FaceRef::Vertex("u".into()), host: FaceRef::Vertex("v".into()) });
    assert!(matches!(validate(&hosted), Err(Violation::DuplicateHost { .. }) | Err(Violation::NestingCycle { .. })));
}

#[test]
fn sample_picture_under_sample_morphism() {
    let phi = fixtures::sample_morphism();
    let p = fixtures::sample_picture();
    validate(&p).unwrap();
    validate_h_labels(&p, &phi.source).unwrap();
    let out = apply_morphism(&phi, &p).unwrap();
    validate(&out).unwrap();
    validate_h_labels(&out, &phi.target).unwrap();
    assert_eq!(out.size(), 7);
    assert_eq!(words(&p), ["k", "i", "e", "f"]);
    assert_eq!(words(&out), ["k'", "e'", "c'"]);
    assert!(out.vertex("2").is_none() && out.vertex("4").is_none());
    // At vertex 4 the darts c f h d pair as (f, h) and (d, c); the merged
    // edges keep the far darts 18/11 and 7/4.
    let has = |x: Dart, y: Dart| out.edges.iter().any(|e| e.darts == [x, y] || e.darts == [y, x]);
    assert!(has(18, 11));
    assert!(has(4, 7));
}

#[test]
fn identity_morphism_is_a_no_op() {
    let phi = fixtures::sample_morphism();
    let id = GeneralizedMorphism::identity(phi.source.clone());
    let p = fixtures::sample_picture();
    assert_eq!(apply_morphism(&id, &p).unwrap().normalized(), p.normalized());
    let (h, _, q) = fixtures::parallel();
    let id = GeneralizedMorphism::identity(Arc::new(h));
    assert_eq!(apply_morphism(&id, &q).unwrap(), q);
}

#[test]
fn all_epsilon_morphism_empties_the_picture() {
    let h = Arc::new(Hypergraph::graph(&["u", "v"], &[("x", "u", "v"), ("y", "u", "v")]).unwrap());
    let empty = Arc::new(Hypergraph::new());
    let phi = GeneralizedMorphism::new(h.clone(), empty, vec![None, None], vec![None, None]);
    phi.validate().unwrap();
    let p = pic(true, &[("U", "u", &[0, 2]), ("V", "v", &[3, 1])], &[("X", "x", [0, 1]), ("Y", "y", [2, 3])], &[]);
    validate(&p).unwrap();
    assert_eq!(apply_morphism(&phi, &p).unwrap(), Picture::empty());
}

#[test]
fn deleting_a_vertex_with_surviving_edges_leaves_a_loop() {
    let h = Arc::new(Hypergraph::graph(&["u", "v"], &[("x", "u", "v"), ("y", "u", "v")]).unwrap());
    let t = Arc::new(Hypergraph::from_parts(["u"], ["x"], [("u", "x", 2)]).unwrap());
    let phi = GeneralizedMorphism::new(h.clone(), t.clone(), vec![Some(0), None], vec![Some(0), Some(0)]);
    phi.validate().unwrap();
    let p = pic(true, &[("U", "u", &[0, 2]), ("V", "v", &[3, 1])], &[("X", "x", [0, 1]), ("Y", "y", [2, 3])], &[]);
    let out = apply_morphism(&phi, &p).unwrap();
    assert_eq!(out.size(), 1);
    assert_eq!(out.edges.len(), 1);
    assert_eq!(out.vertices[0].rot.len(), 2);
    validate_h_labels(&out, &t).unwrap();
}

#[test]
fn free_loops_are_deleted_and_contents_rehosted() {
    let mut p =
        pic(true, &[("A", "p", &[0, 1]), ("B", "p", &[2, 3])], &[("xa", "x", [0, 1]), ("xb", "x", [2, 3])], &[]);
    p.free_loops.push(FreeLoop { id: "L".into(), label: "e".into(), face: Some(FaceRef::Dart(0)) });
    p.nesting.push(Nesting { outer: FaceRef::Dart(2), host: FaceRef::Loop { id: "L".into(), side: Side::Inside } });
    validate(&p).unwrap();
    let h = Hypergraph::from_parts(["p"], ["x", "e"], [("p", "x", 2)]).unwrap();
    validate_h_labels(&p, &h).unwrap();
    let out = delete_free_loops(&p).unwrap();
    assert!(out.free_loops.is_empty());
    assert_eq!(out.nesting, vec![Nesting { outer: FaceRef::Dart(2), host: FaceRef::Dart(0) }]);
    assert_eq!(out.size(), p.size());
    assert_eq!(character(&out, &h).unwrap(), character(&p, &h).unwrap());
    validate(&out).unwrap();

    let plain = fixtures::sample_picture();
    assert_eq!(delete_free_loops(&plain).unwrap(), plain);

    let mut lone = Picture::empty();
    lone.free_loops.push(FreeLoop { id: "L".into(), label: "e".into(), face: None });
    validate(&lone).unwrap();
    assert_eq!(delete_free_loops(&lone).unwrap(), Picture::empty());
}

#[test]
fn cycle_classes() {
    let h =
        Arc::new(Hypergraph::graph(&["1", "2", "3"], &[("12", "1", "2"), ("23", "2", "3"), ("31", "3", "1")]).unwrap());
    let c = h.full();
    // Hexagon 1 2 3 1 2 3 on the sphere.
    let labels = ["1", "2", "3", "1", "2", "3"];
    let edge_labels = ["12", "23", "31", "12", "23", "31"];
    let ids: Vec<String> = (0..6).map(|k| format!("v{k}")).collect();
    let eids: Vec<String> = (0..6).map(|k| format!("e{k}")).collect();
    let verts: Vec<(&str, &str, Vec<Dart>)> =
        (0..6).map(|k| (ids[k].as_str(), labels[k], vec![2 * k as Dart, (2 * ((k + 5) % 6) + 1) as Dart])).collect();
    let mut p = Picture::empty();
    p.vertices =
        verts.iter().map(|(i, l, r)| PVertex { id: i.to_string(), label: l.to_string(), rot: r.clone() }).collect();
    p.edges = (0..6)
        .map(|k| PEdge { id: eids[k].clone(), label: edge_labels[k].into(), darts: [2 * k as Dart, 2 * k as Dart + 1] })
        .collect();
    validate(&p).unwrap();
    validate_h_labels(&p, &h).unwrap();
    let r = classify_cycles(&p, &h, &c).unwrap();
    assert_eq!(r.cycles.len(), 1);
    let k = &r.cycles[0];
    assert!(k.facial && k.cover && !k.copy);
    assert_eq!(k.vertices.len(), 6);

    p.free_loops.push(FreeLoop { id: "L".into(), label: "12".into(), face: Some(FaceRef::Dart(0)) });
    let r = classify_cycles(&p, &h, &c).unwrap();
    assert_eq!(r.cycles.len(), 2);
    let l = r.cycles.iter().find(|k| k.free_loop).unwrap();
    assert!(!l.cover && !l.copy && l.facial);
    // The hexagon now has the loop in one of its faces, but not both.
    assert!(r.cycles.iter().find(|k| !k.free_loop).unwrap().facial);
}

fn wheels() -> Vec<(WagonWheel, VertexLabelling)> {
    [fixtures::coxeter_presentation(), fixtures::xyxz_xuvu_presentation()]
        .iter()
        .map(|p| {
            let w = build_wagon_wheel(p).unwrap();
            let b = choose_labelling(&w, LabellingMode::Any).unwrap();
            (w, b)
        })
        .collect()
}

#[test]
fn wheel_pictures_certify_their_relations() {
    for (w, b) in wheels() {
        let h = &w.hypergraph;
        for i in 0..w.num_wheels() {
            let p = wagon_relation_picture(&w, i);
            validate(&p).unwrap();
            validate_h_labels(&p, h).unwrap();
            assert_eq!(p.size(), 3 * w.length(i));
            let ch = character(&p, h).unwrap();
            assert!(w.wheel_vertices(i).all(|v| ch.get(v)));
            assert_eq!(ch.ones().count(), 3 * w.length(i));
            let r = &w.source.relations[i];
            assert!(certifies_h(&p, h, &b, r).unwrap(), "wheel {i}");
            let names: Vec<&str> = r.letters.iter().map(|&s| w.source.generators.name(s)).collect();
            assert_eq!(p.boundary_word(), names);
        }
    }
}

#[test]
fn first_wheel_reads_xyxz() {
    let w = build_wagon_wheel(&fixtures::xyxz_xuvu_presentation()).unwrap();
    let b = choose_labelling(&w, LabellingMode::Any).unwrap();
    let p = wagon_relation_picture(&w, 0);
    assert_eq!(p.boundary_word(), ["x", "y", "x", "z"]);
    assert!(!dot(&character(&p, &w.hypergraph).unwrap(), &b));
}

#[test]
fn wheel_restrictions_and_cycles() {
    for (w, _) in wheels() {
        let h = &w.hypergraph;
        let cycles = standard_cycles(&w).unwrap();
        for i in 0..w.num_wheels() {
            let p = wagon_relation_picture(&w, i);
            let r = restrict_to_closed(&p, h, &cycles.b[i]).unwrap();
            assert_eq!(r.cycle_components, Some(1));
            assert_eq!(r.picture.size(), w.length(i));
            assert!(r.picture.closed);

            let whole = restrict_to_closed(&p, h, &h.full()).unwrap();
            assert_eq!(whole.picture, p);
            assert_eq!(whole.cycle_components, None);

            for (name, c) in cycles.phi() {
                let rep = classify_cycles(&p, h, &c).unwrap();
                for k in &rep.cycles {
                    assert!(k.facial && k.copy && k.cover, "{name}");
                }
                let in_wheel = c.edges.iter().all(|e| w.wheel_edges(i).contains(e));
                assert_eq!(rep.cycles.len(), usize::from(in_wheel), "{name}");
            }
            let a = classify_cycles(&p, h, &cycles.a[i]).unwrap();
            assert_eq!(a.cycles.len(), 1);
            assert!(a.cycles[0].copy && !a.cycles[0].facial);
        }
    }
}

#[test]
fn restriction_must_be_closed() {
    let (w, _) = wheels().remove(0);
    let p = wagon_relation_picture(&w, 0);
    let open = Subhypergraph::new([], [w.wheel_edges(0).start]);
    assert!(matches!(restrict_to_closed(&p, &w.hypergraph, &open), Err(PictureError::NotClosed(_))));
}

#[test]
fn parallel_restricted_to_one_edge() {
    let (h, _, p) = fixtures::parallel();
    let h = Arc::new(h);
    let sub = h.sub(&["u", "v"], &["x"]).unwrap();
    let r = restrict_to_closed(&p, &h, &sub).unwrap();
    let phi = GeneralizedMorphism::restriction(h.clone(), &sub).unwrap();
    assert_eq!(r.picture, apply_morphism(&phi, &p).unwrap());
    assert_eq!(r.picture.size(), 2);
    assert_eq!(r.picture.edges.len(), 1);
}

#[test]
fn wheel_pictures_collapse_to_one_vertex() {
    for (w, b) in wheels() {
        for i in 0..w.num_wheels() {
            let p = wagon_relation_picture(&w, i);
            let g = collapse_facial_components(&p, &w, &b).unwrap();
            assert_eq!(g.size(), 1);
            assert_eq!(g.vertices[0].label, format!("r{}", i + 1));
            assert_eq!(g.boundary_word(), p.boundary_word());
            validate_g_labels(&g, &w.source).unwrap();
            assert!(certifies_g(&g, &w.source, &w.source.relations[i]).unwrap());
        }
    }
}

#[test]
fn doubled_wheel_collapses_to_two_vertices() {
    for (w, b) in wheels() {
        for i in 0..w.num_wheels() {
            let p = double(&wagon_relation_picture(&w, i));
            validate(&p).unwrap();
            validate_h_labels(&p, &w.hypergraph).unwrap();
            let g = collapse_facial_components(&p, &w, &b).unwrap();
            assert!(g.closed);
            assert_eq!(g.size(), 2);
            assert_eq!(g.edges.len(), w.length(i));
            assert!(!sign(&g, &w.source).unwrap());
        }
    }
}

#[test]
fn collapse_rejects_a_non_facial_cycle() {
    let (w, b) = wheels().remove(0);
    let mut p = wagon_relation_picture(&w, 0);
    assert!(w.length(0) >= 2);
    p.free_loops.push(FreeLoop { id: "L".into(), label: "s1".into(), face: Some(FaceRef::Dart(16)) });
    validate(&p).unwrap();
    match collapse_facial_components(&p, &w, &b) {
        Err(PictureError::Collapse(CollapseError::NotFacialCopy { cycle, .. })) => assert_eq!(cycle, "B.1"),
        other => panic!("{other:?}"),
    }
}

fn morphisms(w: &WagonWheel) -> Vec<GeneralizedMorphism> {
    let h = w.hypergraph.clone();
    let mut out = vec![GeneralizedMorphism::identity(h.clone())];
    for i in 0..w.num_wheels() {
        out.extend(retract_to_b(w, i));
        for j in 0..w.length(i) {
            out.extend(retract_to_c(w, i, j));
        }
        out.extend(GeneralizedMorphism::restriction(h.clone(), &w.wheel(i)));
    }
    out
}

fn check_application(phi: &GeneralizedMorphism, p: &Picture) -> Result<Picture, TestCaseError> {
    let out = apply_morphism(phi, p).map_err(|e| TestCaseError::fail(e.to_string()))?;
    validate(&out).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(out.size() <= p.size());
    let predicted: Vec<String> = p
        .boundary_word()
        .iter()
        .filter_map(|l| phi.edge_image_name(phi.source.edge_index(l).unwrap()).map(str::to_string))
        .collect();
    let got = out.boundary_word();
    prop_assert!(crate::presentation::cyclic_eq(&got, &predicted), "{got:?} vs {predicted:?}");
    Ok(out)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn morphisms_shrink_pictures(
        rels in prop::collection::vec(prop::collection::vec(0usize..3, 2..6), 1..3),
        doubled in any::<bool>(),
        pick in any::<prop::sample::Index>(),
        then in any::<prop::sample::Index>(),
    ) {
        let gens = ["x", "y", "z"];
        let rels: Vec<String> = rels.iter().map(|r| r.iter().map(|&g| gens[g]).collect::<Vec<_>>().join(" ")).collect();
        let rels: Vec<&str> = rels.iter().map(String::as_str).collect();
        let w = build_wagon_wheel(&InvPresentation::from_strs(&gens, &rels)).unwrap();
        let mut p = wagon_relation_picture(&w, pick.index(w.num_wheels()));
        if doubled {
            p = double(&p);
        }
        let ms = morphisms(&w);
        let phi = pick.get(&ms);
        let out = check_application(phi, &p)?;
        // Follow with a restriction on the target to exercise pictures that
        // already went through surgery.
        let target = phi.target.clone();
        let vs: Vec<usize> = (0..target.num_vertices()).filter(|v| then.index(2 + v) == 0).collect();
        let sub = Subhypergraph::new(vs, []).closure(&target);
        let sub = Subhypergraph::new(sub.vertices.clone(), (0..target.num_edges()).filter(|e| target.edge_incidence(*e).iter().all(|(v, _)| sub.vertices.contains(v))));
        if let Ok(r) = GeneralizedMorphism::restriction(target, &sub) {
            check_application(&r, &out)?;
        }
    }
}
