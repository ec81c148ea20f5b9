//! The wagon wheel hypergraph `W(Ι)` of a presentation by involutions.
//!
//! Wheel `i` (0-based here, printed 1-based in ids) has vertices `(i,j,k)` for
//! `j ∈ Z_{n_i}` (0-based) and layers `k = 1, 2, 3`. Layer 1 carries the
//! generator edges, layer 3 the central cycle.

mod constellation;
mod cycles;
mod labelling;
mod retract;

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{Hypergraph, HypergraphError, Subhypergraph};
use crate::presentation::{GenId, InvPresentation};

pub use constellation::{
    is_constellation, is_stellar, is_sun, sun, ConstellationReport, ConstellationViolation, RetractCheck,
    StellarReport, SunIsomorphism,
};
pub use cycles::{standard_cycles, StandardCycles};
pub use labelling::{choose_labelling, is_inv_labelling, labelling_path, toggle, wheel_toggle_path, LabellingMode};
pub use retract::{retract_to_b, retract_to_c, standard_witnesses};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WagonWheelError {
    #[error("relation {0} is empty")]
    EmptyRelation(usize),
    #[error("generator name `{0}` collides with a wagon wheel id")]
    NameCollision(String),
    #[error("relation {relation} is not cyclically reduced")]
    NotCyclicallyReduced { relation: usize },
    #[error("generator `{generator}` has odd multiplicity in relation {relation}")]
    OddMultiplicity { generator: String, relation: usize },
    #[error("wheel {wheel} position {position} out of range")]
    OutOfRange { wheel: usize, position: usize },
    #[error("`{0}` is not a cycle")]
    NotACycle(String),
    #[error("constructed map is not a retraction: {0}")]
    NotARetraction(String),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spoke {
    A,
    B,
    C,
    D,
}

impl Spoke {
    pub const ALL: [Spoke; 4] = [Spoke::A, Spoke::B, Spoke::C, Spoke::D];

    fn letter(self) -> char {
        match self {
            Spoke::A => 'a',
            Spoke::B => 'b',
            Spoke::C => 'c',
            Spoke::D => 'd',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WagonWheel {
    pub hypergraph: Arc<Hypergraph>,
    pub source: InvPresentation,
    lengths: Vec<usize>,
    vbase: Vec<usize>,
    ebase: Vec<usize>,
}

pub fn vertex_id(i: usize, j: usize, k: usize) -> String {
    format!("v.{}.{}.{}", i + 1, j, k)
}

pub fn spoke_id(kind: Spoke, i: usize, j: usize) -> String {
    format!("{}.{}.{}", kind.letter(), i + 1, j)
}

pub fn build_wagon_wheel(p: &InvPresentation) -> Result<WagonWheel, WagonWheelError> {
    if let Some(i) = p.relations.iter().position(|r| r.is_empty()) {
        return Err(WagonWheelError::EmptyRelation(i));
    }
    let lengths: Vec<usize> = p.relations.iter().map(|r| r.len()).collect();
    let mut h = Hypergraph::new();
    let mut vbase = Vec::with_capacity(lengths.len());
    for (i, &n) in lengths.iter().enumerate() {
        vbase.push(h.num_vertices());
        for j in 0..n {
            for k in 1..=3 {
                h.add_vertex(&vertex_id(i, j, k))?;
            }
        }
    }
    for name in p.generators.names() {
        h.add_edge(name)?;
    }
    let mut ebase = Vec::with_capacity(lengths.len());
    for (i, &n) in lengths.iter().enumerate() {
        ebase.push(h.num_edges());
        for j in 0..n {
            for kind in Spoke::ALL {
                let id = spoke_id(kind, i, j);
                if h.edge_index(&id).is_some() {
                    return Err(WagonWheelError::NameCollision(id));
                }
                h.add_edge(&id)?;
            }
        }
    }
    let mut w = WagonWheel { hypergraph: Arc::new(Hypergraph::new()), source: p.clone(), lengths, vbase, ebase };
    for (i, r) in p.relations.iter().enumerate() {
        let n = r.len() as isize;
        for j in 0..n {
            let ju = j as usize;
            h.set_incidence_idx(w.vertex(i, j, 1), r.letters[ju], 1);
            h.set_incidence_idx(w.vertex(i, j - 1, 2), w.spoke(Spoke::A, i, j), 1);
            h.set_incidence_idx(w.vertex(i, j, 1), w.spoke(Spoke::A, i, j), 1);
            h.set_incidence_idx(w.vertex(i, j, 1), w.spoke(Spoke::B, i, j), 1);
            h.set_incidence_idx(w.vertex(i, j, 2), w.spoke(Spoke::B, i, j), 1);
            h.set_incidence_idx(w.vertex(i, j, 2), w.spoke(Spoke::C, i, j), 1);
            h.set_incidence_idx(w.vertex(i, j, 3), w.spoke(Spoke::C, i, j), 1);
            let (d, prev, here) = (w.spoke(Spoke::D, i, j), w.vertex(i, j - 1, 3), w.vertex(i, j, 3));
            if prev == here {
                h.set_incidence_idx(here, d, 2);
            } else {
                h.set_incidence_idx(prev, d, 1);
                h.set_incidence_idx(here, d, 1);
            }
        }
    }
    w.hypergraph = Arc::new(h);
    Ok(w)
}

impl WagonWheel {
    pub fn num_wheels(&self) -> usize {
        self.lengths.len()
    }

    /// `n_i`.
    pub fn length(&self, i: usize) -> usize {
        self.lengths[i]
    }

    /// `M`.
    pub fn total_length(&self) -> usize {
        self.lengths.iter().sum()
    }

    fn wrap(&self, i: usize, j: isize) -> usize {
        j.rem_euclid(self.lengths[i] as isize) as usize
    }

    /// Vertex index of `(i, j mod n_i, k)`.
    pub fn vertex(&self, i: usize, j: isize, k: usize) -> usize {
        debug_assert!((1..=3).contains(&k));
        self.vbase[i] + 3 * self.wrap(i, j) + (k - 1)
    }

    /// Edge index of the spoke of the given kind at `(i, j mod n_i)`.
    pub fn spoke(&self, kind: Spoke, i: usize, j: isize) -> usize {
        let slot = match kind {
            Spoke::A => 0,
            Spoke::B => 1,
            Spoke::C => 2,
            Spoke::D => 3,
        };
        self.ebase[i] + 4 * self.wrap(i, j) + slot
    }

    /// Edge index of generator `s`.
    pub fn generator_edge(&self, s: GenId) -> usize {
        s
    }

    /// `s_ij`.
    pub fn letter(&self, i: usize, j: isize) -> GenId {
        self.source.relations[i].letters[self.wrap(i, j)]
    }

    /// `a_i`, the parity of relation `i`.
    pub fn parity(&self, i: usize) -> bool {
        self.source.relations[i].parity
    }

    /// Inverse of [`WagonWheel::vertex`].
    pub fn vertex_coords(&self, v: usize) -> (usize, usize, usize) {
        let i = self.vbase.partition_point(|&b| b <= v) - 1;
        let off = v - self.vbase[i];
        (i, off / 3, off % 3 + 1)
    }

    /// `None` for generator edges.
    pub fn spoke_coords(&self, e: usize) -> Option<(Spoke, usize, usize)> {
        if e < self.source.generators.len() {
            return None;
        }
        let i = self.ebase.partition_point(|&b| b <= e) - 1;
        let off = e - self.ebase[i];
        Some((Spoke::ALL[off % 4], i, off / 4))
    }

    /// `V_i`.
    pub fn wheel_vertices(&self, i: usize) -> std::ops::Range<usize> {
        self.vbase[i]..self.vbase[i] + 3 * self.lengths[i]
    }

    /// `E_i`.
    pub fn wheel_edges(&self, i: usize) -> std::ops::Range<usize> {
        self.ebase[i]..self.ebase[i] + 4 * self.lengths[i]
    }

    /// The closed subhypergraph `W_i`.
    pub fn wheel(&self, i: usize) -> Subhypergraph {
        Subhypergraph::new(self.wheel_vertices(i), self.wheel_edges(i))
    }

    pub fn index(&self) -> WagonWheelIndex {
        let h = &self.hypergraph;
        let g = &self.source.generators;
        WagonWheelIndex {
            wheels: (0..self.num_wheels())
                .map(|i| WheelEntry {
                    relation: self.source.relations[i].render(g),
                    length: self.lengths[i],
                    parity: u8::from(self.parity(i)),
                })
                .collect(),
            vertices: (0..h.num_vertices())
                .map(|v| {
                    let (i, j, k) = self.vertex_coords(v);
                    VertexEntry { id: h.vertex_name(v).to_string(), i: i + 1, j, k }
                })
                .collect(),
            edges: (0..h.num_edges())
                .map(|e| match self.spoke_coords(e) {
                    None => EdgeEntry::Generator { id: h.edge_name(e).to_string() },
                    Some((kind, i, j)) => EdgeEntry::Spoke { id: h.edge_name(e).to_string(), kind, i: i + 1, j },
                })
                .collect(),
        }
    }
}

/// Structured names for every id of a wagon wheel; `i` is 1-based, `j` 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WagonWheelIndex {
    pub wheels: Vec<WheelEntry>,
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<EdgeEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WheelEntry {
    pub relation: String,
    pub length: usize,
    pub parity: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexEntry {
    pub id: String,
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum EdgeEntry {
    Generator { id: String },
    Spoke { id: String, kind: Spoke, i: usize, j: usize },
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::presentation::InvWord;
    use proptest::prelude::*;

    pub(crate) fn xyxz_xuvu() -> InvPresentation {
        InvPresentation::from_strs(&["x", "y", "z", "u", "v"], &["x y x z", "x u v u"])
    }

    #[test]
    fn two_relator_counts_and_generator_incidence() {
        let w = build_wagon_wheel(&xyxz_xuvu()).unwrap();
        let h = &w.hypergraph;
        assert_eq!((h.num_vertices(), h.num_edges()), (24, 37));
        assert!(h.is_simple());
        let x = h.edge_index("x").unwrap();
        let xs: Vec<&str> = h.edge_incidence(x).iter().map(|&(v, _)| h.vertex_name(v)).collect();
        assert_eq!(xs, ["v.1.0.1", "v.1.2.1", "v.2.0.1"]);
        assert_eq!(h.a(h.vertex_index("v.2.0.1").unwrap(), x), 1);
    }

    #[test]
    fn incidence_bullets() {
        let w = build_wagon_wheel(&xyxz_xuvu()).unwrap();
        let h = &w.hypergraph;
        let ends = |e: &str| -> Vec<String> {
            let e = h.edge_index(e).unwrap();
            h.edge_incidence(e).iter().map(|&(v, _)| h.vertex_name(v).to_string()).collect()
        };
        assert_eq!(ends("a.1.0"), ["v.1.0.1", "v.1.3.2"]);
        assert_eq!(ends("b.1.2"), ["v.1.2.1", "v.1.2.2"]);
        assert_eq!(ends("c.2.1"), ["v.2.1.2", "v.2.1.3"]);
        assert_eq!(ends("d.2.0"), ["v.2.0.3", "v.2.3.3"]);
    }

    #[test]
    fn coordinates_round_trip() {
        let w = build_wagon_wheel(&xyxz_xuvu()).unwrap();
        for v in 0..w.hypergraph.num_vertices() {
            let (i, j, k) = w.vertex_coords(v);
            assert_eq!(w.vertex(i, j as isize, k), v);
            assert_eq!(w.hypergraph.vertex_name(v), vertex_id(i, j, k));
        }
        for e in 0..w.hypergraph.num_edges() {
            if let Some((kind, i, j)) = w.spoke_coords(e) {
                assert_eq!(w.spoke(kind, i, j as isize), e);
            }
        }
        let idx = w.index();
        assert_eq!(idx.vertices.len(), 24);
        assert!(matches!(&idx.edges[0], EdgeEntry::Generator { id } if id == "x"));
    }

    #[test]
    fn single_relation_of_length_four() {
        let p = InvPresentation::from_strs(&["x", "y"], &["x y x y"]);
        let h = build_wagon_wheel(&p).unwrap().hypergraph;
        assert_eq!((h.num_vertices(), h.num_edges()), (12, 18));
    }

    #[test]
    fn rejects_colliding_names_and_empty_relations() {
        let p = InvPresentation::from_strs(&["a.1.0", "y"], &["a.1.0 y a.1.0 y"]);
        assert_eq!(build_wagon_wheel(&p), Err(WagonWheelError::NameCollision("a.1.0".into())));
        let mut p = xyxz_xuvu();
        p.relations.push(InvWord::new(true, vec![]));
        assert_eq!(build_wagon_wheel(&p), Err(WagonWheelError::EmptyRelation(2)));
    }

    pub(crate) fn random_presentation() -> impl Strategy<Value = InvPresentation> {
        (2usize..6).prop_flat_map(|ngens| {
            prop::collection::vec((any::<bool>(), prop::collection::vec(0..ngens, 4..=8)), 1..=4).prop_map(
                move |rels| {
                    let gens: Vec<String> = (0..ngens).map(|g| format!("g{g}")).collect();
                    InvPresentation::new(
                        gens.into(),
                        rels.into_iter().map(|(p, letters)| InvWord::new(p, letters)).collect(),
                    )
                },
            )
        })
    }

    proptest! {
        #[test]
        fn counts_follow_total_length(p in random_presentation()) {
            let w = build_wagon_wheel(&p).unwrap();
            let m: usize = p.relations.iter().map(|r| r.letters.len()).sum();
            prop_assert_eq!(w.hypergraph.num_vertices(), 3 * m);
            prop_assert_eq!(w.hypergraph.num_edges(), 4 * m + p.generators.len());
            for e in p.generators.len()..w.hypergraph.num_edges() {
                prop_assert_eq!(w.hypergraph.edge_size(e), 2);
            }
        }
    }
}
