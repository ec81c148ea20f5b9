//! Planar pictures as rotation systems, labelled over a presentation
//! (G-pictures) or over a hypergraph (H-pictures).
//!
//! A picture lives in a disc (its boundary darts are listed counter-clockwise)
//! or on the sphere (`closed`). Connected components other than the root are
//! placed by `nesting` entries naming a face of the child that faces outward
//! and the host face it sits in; free loops carry their host face directly.

mod map;
mod ops;
mod wheel;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{Hypergraph, VertexLabelling};
use crate::presentation::{cyclic_eq, dihedral_eq, InvPresentation, InvWord};

pub use ops::{
    apply_morphism, classify_cycles, delete_free_loops, restrict_to_closed, CycleClass, CycleReport, Restriction,
};
pub use wheel::{collapse_facial_components, wagon_relation_picture, CollapseError};

pub type Dart = u32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PVertex {
    pub id: String,
    #[serde(default)]
    pub label: String,
    /// Darts in counter-clockwise order.
    pub rot: Vec<Dart>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PEdge {
    pub id: String,
    #[serde(default)]
    pub label: String,
    pub darts: [Dart; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Inside,
    Outside,
}

/// A face, named by a corner: the sector counter-clockwise after a dart, the
/// single face around an isolated vertex, or one side of a free loop.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceRef {
    Dart(Dart),
    Vertex(String),
    Loop { id: String, side: Side },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FreeLoop {
    pub id: String,
    #[serde(default)]
    pub label: String,
    /// Host face; absent only for the sole top-level loop of a closed picture.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub face: Option<FaceRef>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Nesting {
    pub outer: FaceRef,
    pub host: FaceRef,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Picture {
    pub closed: bool,
    #[serde(default)]
    pub vertices: Vec<PVertex>,
    #[serde(default)]
    pub edges: Vec<PEdge>,
    #[serde(default)]
    pub boundary: Vec<Dart>,
    #[serde(default)]
    pub free_loops: Vec<FreeLoop>,
    #[serde(default)]
    pub nesting: Vec<Nesting>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    #[error("duplicate id `{id}`")]
    DuplicateId { id: String },
    #[error("dart {dart} is used twice")]
    DartReused { dart: Dart },
    #[error("dart {dart} belongs to no edge or to no vertex")]
    OrphanDart { dart: Dart },
    #[error("edge `{edge}` uses one dart twice")]
    DegenerateEdge { edge: String },
    #[error("`closed` must hold exactly when the boundary is empty")]
    ClosedMismatch,
    #[error("component `{component}` is not planar: V - E + F = {v} - {e} + {f}")]
    Euler { component: String, v: usize, e: usize, f: usize },
    #[error("unknown face {face}")]
    UnknownFace { face: String },
    #[error("face reference to vertex `{vertex}`, which has darts")]
    NotIsolated { vertex: String },
    #[error("component `{component}` has no host face")]
    MissingHost { component: String },
    #[error("component `{component}` has two host faces")]
    DuplicateHost { component: String },
    #[error("component `{component}` is placed inside itself")]
    SelfHosted { component: String },
    #[error("component `{component}` contains the boundary and cannot be nested")]
    RootNested { component: String },
    #[error("nesting of `{component}` is cyclic")]
    NestingCycle { component: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "error", rename_all = "snake_case")]
pub enum LabelError {
    #[error("vertex `{vertex}` has unknown label `{label}`")]
    UnknownVertexLabel { vertex: String, label: String },
    #[error("edge `{edge}` has unknown label `{label}`")]
    UnknownEdgeLabel { edge: String, label: String },
    #[error("vertex `{vertex}` reads `{read}`, not a cyclic form of `{relation}`")]
    Rotation { vertex: String, read: String, relation: String },
    #[error("vertex `{vertex}` has {found} darts labelled `{edge_label}`, expected {expected}")]
    Incidence { vertex: String, edge_label: String, expected: u32, found: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PictureError {
    #[error(transparent)]
    Invalid(#[from] Violation),
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error("morphism source does not match the picture's hypergraph")]
    ContextMismatch,
    #[error("vertex `{0}` is deleted but has an odd number of surviving darts")]
    OddDegree(String),
    #[error("vertex `{0}` is deleted but its surviving edges have different labels")]
    MixedLabels(String),
    #[error("`{0}` is not closed")]
    NotClosed(String),
    #[error("restriction to the cycle has a component that is not a cycle")]
    NotACycle,
    #[error(transparent)]
    Collapse(#[from] CollapseError),
}

impl Picture {
    pub fn empty() -> Self {
        Picture { closed: true, vertices: vec![], edges: vec![], boundary: vec![], free_loops: vec![], nesting: vec![] }
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, id: &str) -> Option<&PVertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    pub fn edge(&self, id: &str) -> Option<&PEdge> {
        self.edges.iter().find(|e| e.id == id)
    }

    fn dart_labels(&self) -> std::collections::HashMap<Dart, &str> {
        self.edges.iter().flat_map(|e| e.darts.iter().map(move |&d| (d, e.label.as_str()))).collect()
    }

    /// Edge labels read counter-clockwise at a vertex.
    pub fn read_vertex(&self, v: &PVertex) -> Vec<String> {
        let labels = self.dart_labels();
        v.rot.iter().map(|d| labels.get(d).copied().unwrap_or("?").to_string()).collect()
    }

    /// Edge labels read counter-clockwise around the boundary.
    pub fn boundary_word(&self) -> Vec<String> {
        let labels = self.dart_labels();
        self.boundary.iter().map(|d| labels.get(d).copied().unwrap_or("?").to_string()).collect()
    }

    /// Sorts nesting entries and free loops so equal pictures compare equal.
    pub fn normalized(&self) -> Picture {
        let mut p = self.clone();
        p.nesting.sort();
        p.free_loops.sort();
        p
    }
}

/// Dart, edge and planarity checks.
pub fn validate(p: &Picture) -> Result<(), Violation> {
    map::Map::build(p).map(|_| ())
}

fn relation_index(label: &str, pres: &InvPresentation) -> Option<usize> {
    let k: usize = label.strip_prefix('r')?.parse().ok()?;
    (1..=pres.relations.len()).contains(&k).then(|| k - 1)
}

/// Vertex labels are `r1`, `r2`, … naming relations; edge labels are generators.
pub fn validate_g_labels(p: &Picture, pres: &InvPresentation) -> Result<(), LabelError> {
    let g = &pres.generators;
    for e in &p.edges {
        if !g.contains(&e.label) {
            return Err(LabelError::UnknownEdgeLabel { edge: e.id.clone(), label: e.label.clone() });
        }
    }
    for l in &p.free_loops {
        if !g.contains(&l.label) {
            return Err(LabelError::UnknownEdgeLabel { edge: l.id.clone(), label: l.label.clone() });
        }
    }
    for v in &p.vertices {
        let k = relation_index(&v.label, pres)
            .ok_or_else(|| LabelError::UnknownVertexLabel { vertex: v.id.clone(), label: v.label.clone() })?;
        let rel = &pres.relations[k];
        let read = p.read_vertex(v);
        let want: Vec<&str> = rel.letters.iter().map(|&s| g.name(s)).collect();
        let got: Vec<&str> = read.iter().map(String::as_str).collect();
        if !dihedral_eq(&got, &want) {
            return Err(LabelError::Rotation { vertex: v.id.clone(), read: read.join(" "), relation: rel.render(g) });
        }
    }
    Ok(())
}

/// `A_{h(v)e′}` darts labelled `e′` at every vertex `v`.
pub fn validate_h_labels(p: &Picture, h: &Hypergraph) -> Result<(), LabelError> {
    for e in &p.edges {
        if h.edge_index(&e.label).is_none() {
            return Err(LabelError::UnknownEdgeLabel { edge: e.id.clone(), label: e.label.clone() });
        }
    }
    for l in &p.free_loops {
        if h.edge_index(&l.label).is_none() {
            return Err(LabelError::UnknownEdgeLabel { edge: l.id.clone(), label: l.label.clone() });
        }
    }
    for v in &p.vertices {
        let hv = h
            .vertex_index(&v.label)
            .ok_or_else(|| LabelError::UnknownVertexLabel { vertex: v.id.clone(), label: v.label.clone() })?;
        let mut found = vec![0u32; h.num_edges()];
        for l in p.read_vertex(v) {
            match h.edge_index(&l) {
                Some(e) => found[e] += 1,
                None => return Err(LabelError::UnknownEdgeLabel { edge: v.id.clone(), label: l }),
            }
        }
        for (e, &f) in found.iter().enumerate() {
            let expected = h.a(hv, e);
            if f != expected {
                return Err(LabelError::Incidence {
                    vertex: v.id.clone(),
                    edge_label: h.edge_name(e).to_string(),
                    expected,
                    found: f,
                });
            }
        }
    }
    Ok(())
}

/// Number of vertices labelled by an odd relation, mod 2.
pub fn sign(p: &Picture, pres: &InvPresentation) -> Result<bool, LabelError> {
    let mut s = false;
    for v in &p.vertices {
        let k = relation_index(&v.label, pres)
            .ok_or_else(|| LabelError::UnknownVertexLabel { vertex: v.id.clone(), label: v.label.clone() })?;
        s ^= pres.relations[k].parity;
    }
    Ok(s)
}

/// `ch(P)_v = |h⁻¹(v)| mod 2`.
pub fn character(p: &Picture, h: &Hypergraph) -> Result<VertexLabelling, LabelError> {
    let mut ch = VertexLabelling::zeros(h);
    for v in &p.vertices {
        let hv = h
            .vertex_index(&v.label)
            .ok_or_else(|| LabelError::UnknownVertexLabel { vertex: v.id.clone(), label: v.label.clone() })?;
        ch.0[hv] ^= true;
    }
    Ok(ch)
}

pub fn dot(a: &VertexLabelling, b: &VertexLabelling) -> bool {
    a.0.iter().zip(&b.0).filter(|(x, y)| **x && **y).count() % 2 == 1
}

/// Whether `p` is a G-picture proving `w` in the presentation.
pub fn certifies_g(p: &Picture, pres: &InvPresentation, w: &InvWord) -> Result<bool, PictureError> {
    validate(p)?;
    validate_g_labels(p, pres)?;
    let want: Vec<&str> = w.letters.iter().map(|&s| pres.generators.name(s)).collect();
    let bd = p.boundary_word();
    let got: Vec<&str> = bd.iter().map(String::as_str).collect();
    Ok(cyclic_eq(&got, &want) && sign(p, pres)? == w.parity)
}

/// Whether `p` is an H-picture proving `w` (letters are edge indices of `h`)
/// in the solution group `Γ(H, b)`.
pub fn certifies_h(p: &Picture, h: &Hypergraph, b: &VertexLabelling, w: &InvWord) -> Result<bool, PictureError> {
    validate(p)?;
    validate_h_labels(p, h)?;
    let want: Vec<&str> = w.letters.iter().map(|&e| h.edge_name(e)).collect();
    let bd = p.boundary_word();
    let got: Vec<&str> = bd.iter().map(String::as_str).collect();
    Ok(cyclic_eq(&got, &want) && dot(&character(p, h)?, b) == w.parity)
}

#[cfg(test)]
pub(crate) mod tests;
