//! Hypergraphs with multiplicity incidence, the open/closed topology on
//! subhypergraphs, generalized morphisms, and solution-group presentations.

mod json;
mod morphism;
mod retract;
mod solution;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

pub use json::{HypergraphJson, MorphismJson};
pub use morphism::{GeneralizedMorphism, MorphismError, Violation};
pub use retract::{find_retraction, RetractionOutcome};
pub use solution::{solution_group_presentation, LinearRelation, SolutionGroupPresentation};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("vertex `{0}` declared twice")]
    DuplicateVertex(String),
    #[error("edge `{0}` declared twice")]
    DuplicateEdge(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("incidence ({0}, {1}) given twice")]
    DuplicateIncidence(String, String),
    #[error("vertex `{0}` has label {1}; labels are 0 or 1")]
    InvalidLabel(String, u8),
}

/// `H = (V, E, A)` with `A_ve ≥ 0`. Vertices and edges keep declaration order.
#[derive(Clone, Default)]
pub struct Hypergraph {
    vertices: Vec<String>,
    edges: Vec<String>,
    vindex: HashMap<String, usize>,
    eindex: HashMap<String, usize>,
    vinc: Vec<Vec<(usize, u32)>>,
    einc: Vec<Vec<(usize, u32)>>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges && self.vinc == other.vinc
    }
}

impl Eq for Hypergraph {}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergraph({} vertices, {} edges)", self.vertices.len(), self.edges.len())
    }
}

impl Hypergraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from names and `(vertex, edge, multiplicity)` triples.
    pub fn from_parts<V, E>(
        vertices: impl IntoIterator<Item = V>,
        edges: impl IntoIterator<Item = E>,
        incidence: impl IntoIterator<Item = (V, E, u32)>,
    ) -> Result<Self, HypergraphError>
    where
        V: AsRef<str>,
        E: AsRef<str>,
    {
        let mut h = Hypergraph::new();
        for v in vertices {
            h.add_vertex(v.as_ref())?;
        }
        for e in edges {
            h.add_edge(e.as_ref())?;
        }
        for (v, e, m) in incidence {
            h.set_incidence(v.as_ref(), e.as_ref(), m)?;
        }
        Ok(h)
    }

    /// A graph: every listed pair becomes an edge `e` joining its endpoints.
    pub fn graph<'a>(vertices: &[&'a str], edges: &[(&'a str, &'a str, &'a str)]) -> Result<Self, HypergraphError> {
        let mut h = Hypergraph::new();
        for v in vertices {
            h.add_vertex(v)?;
        }
        for (e, a, b) in edges {
            h.add_edge(e)?;
            if a == b {
                h.set_incidence(a, e, 2)?;
            } else {
                h.set_incidence(a, e, 1)?;
                h.set_incidence(b, e, 1)?;
            }
        }
        Ok(h)
    }

    pub fn add_vertex(&mut self, id: &str) -> Result<usize, HypergraphError> {
        if self.vindex.contains_key(id) {
            return Err(HypergraphError::DuplicateVertex(id.to_string()));
        }
        let i = self.vertices.len();
        self.vertices.push(id.to_string());
        self.vindex.insert(id.to_string(), i);
        self.vinc.push(Vec::new());
        Ok(i)
    }

    pub fn add_edge(&mut self, id: &str) -> Result<usize, HypergraphError> {
        if self.eindex.contains_key(id) {
            return Err(HypergraphError::DuplicateEdge(id.to_string()));
        }
        let i = self.edges.len();
        self.edges.push(id.to_string());
        self.eindex.insert(id.to_string(), i);
        self.einc.push(Vec::new());
        Ok(i)
    }

    /// Sets `A_ve`; zero multiplicities are not stored.
    pub fn set_incidence(&mut self, v: &str, e: &str, mult: u32) -> Result<(), HypergraphError> {
        let vi = self.vertex_index(v).ok_or_else(|| HypergraphError::UnknownVertex(v.to_string()))?;
        let ei = self.edge_index(e).ok_or_else(|| HypergraphError::UnknownEdge(e.to_string()))?;
        if self.a(vi, ei) != 0 {
            return Err(HypergraphError::DuplicateIncidence(v.to_string(), e.to_string()));
        }
        self.set_incidence_idx(vi, ei, mult);
        Ok(())
    }

    pub(crate) fn set_incidence_idx(&mut self, v: usize, e: usize, mult: u32) {
        let row = &mut self.vinc[v];
        match row.binary_search_by_key(&e, |&(x, _)| x) {
            Ok(p) if mult == 0 => {
                row.remove(p);
            }
            Ok(p) => row[p].1 = mult,
            Err(p) if mult > 0 => row.insert(p, (e, mult)),
            Err(_) => {}
        }
        let col = &mut self.einc[e];
        match col.binary_search_by_key(&v, |&(x, _)| x) {
            Ok(p) if mult == 0 => {
                col.remove(p);
            }
            Ok(p) => col[p].1 = mult,
            Err(p) if mult > 0 => col.insert(p, (v, mult)),
            Err(_) => {}
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[String] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vindex.get(id).copied()
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.eindex.get(id).copied()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn edge_name(&self, e: usize) -> &str {
        &self.edges[e]
    }

    /// `A_ve`.
    pub fn a(&self, v: usize, e: usize) -> u32 {
        let row = &self.vinc[v];
        match row.binary_search_by_key(&e, |&(x, _)| x) {
            Ok(p) => row[p].1,
            Err(_) => 0,
        }
    }

    /// Edges incident to `v` with multiplicities, in edge order.
    pub fn vertex_incidence(&self, v: usize) -> &[(usize, u32)] {
        &self.vinc[v]
    }

    /// Vertices incident to `e` with multiplicities, in vertex order.
    pub fn edge_incidence(&self, e: usize) -> &[(usize, u32)] {
        &self.einc[e]
    }

    /// `|v| = Σ_e A_ve`.
    pub fn degree(&self, v: usize) -> u32 {
        self.vinc[v].iter().map(|&(_, m)| m).sum()
    }

    /// `|e| = Σ_v A_ve`.
    pub fn edge_size(&self, e: usize) -> u32 {
        self.einc[e].iter().map(|&(_, m)| m).sum()
    }

    pub fn incidences(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.vinc.iter().enumerate().flat_map(|(v, row)| row.iter().map(move |&(e, m)| (v, e, m)))
    }

    pub fn is_simple(&self) -> bool {
        self.incidences().all(|(_, _, m)| m <= 1)
    }

    pub fn is_k_regular(&self, k: u32) -> bool {
        (0..self.num_vertices()).all(|v| self.degree(v) == k)
    }

    pub fn is_graph(&self) -> bool {
        (0..self.num_edges()).all(|e| self.edge_size(e) == 2)
    }

    pub fn full(&self) -> Subhypergraph {
        Subhypergraph { vertices: (0..self.num_vertices()).collect(), edges: (0..self.num_edges()).collect() }
    }

    /// Subhypergraph from names; unknown names are errors.
    pub fn sub(&self, vertices: &[&str], edges: &[&str]) -> Result<Subhypergraph, HypergraphError> {
        let mut s = Subhypergraph::default();
        for v in vertices {
            s.vertices.insert(self.vertex_index(v).ok_or_else(|| HypergraphError::UnknownVertex(v.to_string()))?);
        }
        for e in edges {
            s.edges.insert(self.edge_index(e).ok_or_else(|| HypergraphError::UnknownEdge(e.to_string()))?);
        }
        Ok(s)
    }

    /// Same names, incidence, and order, with identical index assignment.
    pub fn same_shape(&self, other: &Hypergraph) -> bool {
        self == other
    }
}

/// `b : V → Z₂`, indexed like the hypergraph's vertices.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VertexLabelling(pub Vec<bool>);

impl VertexLabelling {
    pub fn zeros(h: &Hypergraph) -> Self {
        VertexLabelling(vec![false; h.num_vertices()])
    }

    pub fn get(&self, v: usize) -> bool {
        self.0[v]
    }

    pub fn set(&mut self, v: usize, value: bool) {
        self.0[v] = value;
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v)
    }

    /// `b'_v = b_v + A_ve`.
    pub fn toggle(&self, h: &Hypergraph, e: usize) -> VertexLabelling {
        let mut out = self.clone();
        for &(v, m) in h.edge_incidence(e) {
            if m % 2 == 1 {
                out.0[v] = !out.0[v];
            }
        }
        out
    }
}

/// Vertex and edge subsets of a parent hypergraph passed alongside.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subhypergraph {
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<usize>,
}

impl Subhypergraph {
    pub fn new(vertices: impl IntoIterator<Item = usize>, edges: impl IntoIterator<Item = usize>) -> Self {
        Subhypergraph { vertices: vertices.into_iter().collect(), edges: edges.into_iter().collect() }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty()
    }

    /// `N(S)`: adds every edge incident to a vertex of `S`.
    pub fn neighbourhood(&self, h: &Hypergraph) -> Subhypergraph {
        let mut out = self.clone();
        for &v in &self.vertices {
            out.edges.extend(h.vertex_incidence(v).iter().map(|&(e, _)| e));
        }
        out
    }

    pub fn is_open(&self, h: &Hypergraph) -> bool {
        self.vertices.iter().all(|&v| h.vertex_incidence(v).iter().all(|(e, _)| self.edges.contains(e)))
    }

    pub fn is_closed(&self, h: &Hypergraph) -> bool {
        self.edges.iter().all(|&e| h.edge_incidence(e).iter().all(|(v, _)| self.vertices.contains(v)))
    }

    /// Adds every vertex incident to an edge of `S`.
    pub fn closure(&self, h: &Hypergraph) -> Subhypergraph {
        let mut out = self.clone();
        for &e in &self.edges {
            out.vertices.extend(h.edge_incidence(e).iter().map(|&(v, _)| v));
        }
        out
    }

    pub fn union(&self, other: &Subhypergraph) -> Subhypergraph {
        Subhypergraph {
            vertices: self.vertices.union(&other.vertices).copied().collect(),
            edges: self.edges.union(&other.edges).copied().collect(),
        }
    }

    pub fn intersection(&self, other: &Subhypergraph) -> Subhypergraph {
        Subhypergraph {
            vertices: self.vertices.intersection(&other.vertices).copied().collect(),
            edges: self.edges.intersection(&other.edges).copied().collect(),
        }
    }

    pub fn is_subset(&self, other: &Subhypergraph) -> bool {
        self.vertices.is_subset(&other.vertices) && self.edges.is_subset(&other.edges)
    }

    /// The subhypergraph as a standalone hypergraph with the parent's names and order.
    pub fn to_hypergraph(&self, h: &Hypergraph) -> Hypergraph {
        let mut out = Hypergraph::new();
        for &v in &self.vertices {
            out.add_vertex(h.vertex_name(v)).expect("distinct parent names");
        }
        for &e in &self.edges {
            out.add_edge(h.edge_name(e)).expect("distinct parent names");
        }
        for &v in &self.vertices {
            let nv = out.vertex_index(h.vertex_name(v)).unwrap();
            for &(e, m) in h.vertex_incidence(v) {
                if let Some(ne) = self.edges.contains(&e).then(|| out.edge_index(h.edge_name(e)).unwrap()) {
                    out.set_incidence_idx(nv, ne, m);
                }
            }
        }
        out
    }

    /// A closed subhypergraph that is a simple connected 2-regular graph.
    pub fn is_cycle(&self, h: &Hypergraph) -> bool {
        if self.vertices.is_empty() || !self.is_closed(h) {
            return false;
        }
        for &e in &self.edges {
            let inc = h.edge_incidence(e);
            if inc.len() != 2 || inc.iter().any(|&(_, m)| m != 1) {
                return false;
            }
        }
        for &v in &self.vertices {
            let mut deg = 0;
            for &(e, m) in h.vertex_incidence(v) {
                if self.edges.contains(&e) {
                    deg += m;
                }
            }
            if deg != 2 {
                return false;
            }
        }
        self.cycle_order(h).is_some_and(|(vs, _)| vs.len() == self.vertices.len())
    }

    /// Walks the 2-regular graph from its first vertex: vertices `v_0 … v_{n−1}` and
    /// edges `e_0 … e_{n−1}` with `e_i` joining `v_i` and `v_{i+1}`.
    pub fn cycle_order(&self, h: &Hypergraph) -> Option<(Vec<usize>, Vec<usize>)> {
        let start = *self.vertices.iter().next()?;
        let inner = |v: usize| -> Vec<usize> {
            h.vertex_incidence(v).iter().filter(|(e, _)| self.edges.contains(e)).map(|&(e, _)| e).collect()
        };
        let other_end =
            |e: usize, v: usize| -> Option<usize> { h.edge_incidence(e).iter().map(|&(u, _)| u).find(|&u| u != v) };
        let mut vs = vec![start];
        let mut es = Vec::new();
        let first = *inner(start).first()?;
        let mut e = first;
        let mut v = start;
        loop {
            es.push(e);
            let next = other_end(e, v)?;
            if next == start {
                break;
            }
            if vs.len() > self.vertices.len() {
                return None;
            }
            vs.push(next);
            let cands = inner(next);
            e = *cands.iter().find(|&&x| x != e)?;
            v = next;
        }
        (es.len() == self.edges.len()).then_some((vs, es))
    }
}
