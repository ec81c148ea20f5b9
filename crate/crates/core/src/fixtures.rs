//! Small worked examples shipped with the crate, both as raw file text and as
//! parsed values.

use std::sync::Arc;

use crate::hypergraph::{GeneralizedMorphism, Hypergraph, HypergraphJson, MorphismJson, VertexLabelling};
use crate::picture::Picture;
use crate::presentation::{parse, InvPresentation, ParsedPresentation};

/// Every fixture file as `(name, contents)`.
pub const FILES: &[(&str, &str)] = &[
    ("coxeter.grp", include_str!("../fixtures/coxeter.grp")),
    ("coxeter.json", include_str!("../fixtures/coxeter.json")),
    ("cube.json", include_str!("../fixtures/cube.json")),
    ("cube_with_tail.cycles.json", include_str!("../fixtures/cube_with_tail.cycles.json")),
    ("cube_with_tail.json", include_str!("../fixtures/cube_with_tail.json")),
    ("fig10.h1.json", include_str!("../fixtures/fig10.h1.json")),
    ("fig10.h2.json", include_str!("../fixtures/fig10.h2.json")),
    ("fig10.json", include_str!("../fixtures/fig10.json")),
    ("fig11.json", include_str!("../fixtures/fig11.json")),
    ("fig3.grp", include_str!("../fixtures/fig3.grp")),
    ("higman.grp", include_str!("../fixtures/higman.grp")),
    ("parallel.hg.json", include_str!("../fixtures/parallel.hg.json")),
    ("parallel.json", include_str!("../fixtures/parallel.json")),
    ("subdivided_cube.json", include_str!("../fixtures/subdivided_cube.json")),
];

pub fn file(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

fn text(name: &str) -> &'static str {
    file(name).expect("fixture exists")
}

fn inv(name: &str) -> InvPresentation {
    match parse(text(name)).expect("fixture parses") {
        ParsedPresentation::Inv(p) => p,
        ParsedPresentation::Free(_) => unreachable!("fixture is involutive"),
    }
}

fn picture(name: &str) -> Picture {
    serde_json::from_str(text(name)).expect("fixture picture")
}

pub fn hypergraph(name: &str) -> (Hypergraph, VertexLabelling) {
    let j: HypergraphJson = serde_json::from_str(text(name)).expect("fixture hypergraph");
    j.build().expect("fixture hypergraph builds")
}

/// `Inv⟨s1, s2, s3⟩` with the three Coxeter relations.
pub fn coxeter_presentation() -> InvPresentation {
    inv("coxeter.grp")
}

/// Four-vertex G-picture with boundary `s1 s2 s3 s2 s1 s3 s2 s1 s2 s3`.
pub fn coxeter_picture() -> Picture {
    picture("coxeter.json")
}

pub fn xyxz_xuvu_presentation() -> InvPresentation {
    inv("fig3.grp")
}

/// Two vertices `u` (`b = 1`) and `v` joined by three edges, with a closed
/// two-vertex picture over it.
pub fn parallel() -> (Hypergraph, VertexLabelling, Picture) {
    let (h, b) = hypergraph("parallel.hg.json");
    (h, b, picture("parallel.json"))
}

/// The morphism of the eight-vertex example onto the five-vertex one.
pub fn sample_morphism() -> GeneralizedMorphism {
    let h1 = Arc::new(hypergraph("fig10.h1.json").0);
    let h2 = Arc::new(hypergraph("fig10.h2.json").0);
    let m: MorphismJson = serde_json::from_str(text("fig10.json")).expect("fixture morphism");
    m.build(h1, h2).expect("fixture morphism builds")
}

/// An H-picture over the source of [`sample_morphism`].
pub fn sample_picture() -> Picture {
    picture("fig11.json")
}
