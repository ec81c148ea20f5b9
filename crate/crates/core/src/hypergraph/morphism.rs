use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Hypergraph, Subhypergraph};

/// Partial vertex and edge maps `H₁ → H₂ ∪ {ε}`; `None` is `ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedMorphism {
    pub source: Arc<Hypergraph>,
    pub target: Arc<Hypergraph>,
    pub vmap: Vec<Option<usize>>,
    pub emap: Vec<Option<usize>>,
}

/// Why a candidate map is not a generalized morphism.
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    #[error("map sizes do not match the source hypergraph")]
    Shape,
    #[error("vertex `{vertex}`: incidence with target edge `{edge}` is {got}, expected {expected}")]
    Incidence { vertex: String, edge: String, expected: u32, got: u32 },
    #[error("vertex `{vertex}` is deleted but keeps odd degree {degree}")]
    OddSurvivingDegree { vertex: String, degree: u32 },
    #[error("vertex `{vertex}` is deleted but its edges map to both `{first}` and `{second}`")]
    SplitImage { vertex: String, first: String, second: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("target of the first morphism differs from the source of the second")]
    HypergraphMismatch,
    #[error("subhypergraph is not closed: edge `{0}` has a vertex outside it")]
    NotClosed(String),
    #[error("subhypergraph is not open: vertex `{0}` has an edge outside it")]
    NotOpen(String),
    #[error("pieces do not cover `{0}`")]
    CoverGap(String),
    #[error("pieces disagree on `{0}`")]
    Disagreement(String),
    #[error("piece source does not match its subhypergraph")]
    PieceShape,
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("no image given for `{0}`")]
    Missing(String),
    #[error("result is not a generalized morphism: {0}")]
    Invalid(#[from] Violation),
}

impl GeneralizedMorphism {
    pub fn new(
        source: Arc<Hypergraph>,
        target: Arc<Hypergraph>,
        vmap: Vec<Option<usize>>,
        emap: Vec<Option<usize>>,
    ) -> Self {
        GeneralizedMorphism { source, target, vmap, emap }
    }

    pub fn identity(h: Arc<Hypergraph>) -> Self {
        let vmap = (0..h.num_vertices()).map(Some).collect();
        let emap = (0..h.num_edges()).map(Some).collect();
        GeneralizedMorphism { source: h.clone(), target: h, vmap, emap }
    }

    /// Builds from name pairs; every source element must be listed, `None` meaning `ε`.
    pub fn from_names(
        source: Arc<Hypergraph>,
        target: Arc<Hypergraph>,
        vpairs: &[(&str, Option<&str>)],
        epairs: &[(&str, Option<&str>)],
    ) -> Result<Self, MorphismError> {
        let unknown = |s: &str| MorphismError::UnknownName(s.to_string());
        let mut vmap = vec![None; source.num_vertices()];
        let mut vseen = vec![false; source.num_vertices()];
        for &(a, b) in vpairs {
            let i = source.vertex_index(a).ok_or_else(|| unknown(a))?;
            vmap[i] = match b {
                Some(b) => Some(target.vertex_index(b).ok_or_else(|| unknown(b))?),
                None => None,
            };
            vseen[i] = true;
        }
        let mut emap = vec![None; source.num_edges()];
        let mut eseen = vec![false; source.num_edges()];
        for &(a, b) in epairs {
            let i = source.edge_index(a).ok_or_else(|| unknown(a))?;
            emap[i] = match b {
                Some(b) => Some(target.edge_index(b).ok_or_else(|| unknown(b))?),
                None => None,
            };
            eseen[i] = true;
        }
        if let Some(v) = vseen.iter().position(|s| !s) {
            return Err(MorphismError::Missing(source.vertex_name(v).to_string()));
        }
        if let Some(e) = eseen.iter().position(|s| !s) {
            return Err(MorphismError::Missing(source.edge_name(e).to_string()));
        }
        Ok(GeneralizedMorphism { source, target, vmap, emap })
    }

    /// Checks both conditions of the definition; the first failure is returned.
    pub fn validate(&self) -> Result<(), Violation> {
        let (src, dst) = (&*self.source, &*self.target);
        if self.vmap.len() != src.num_vertices()
            || self.emap.len() != src.num_edges()
            || self.vmap.iter().flatten().any(|&w| w >= dst.num_vertices())
            || self.emap.iter().flatten().any(|&f| f >= dst.num_edges())
        {
            return Err(Violation::Shape);
        }
        let mut sums: BTreeMap<usize, u32> = BTreeMap::new();
        for v in 0..src.num_vertices() {
            sums.clear();
            for &(e, m) in src.vertex_incidence(v) {
                if let Some(f) = self.emap[e] {
                    *sums.entry(f).or_default() += m;
                }
            }
            match self.vmap[v] {
                Some(w) => {
                    for &(f, m) in dst.vertex_incidence(w) {
                        let got = sums.get(&f).copied().unwrap_or(0);
                        if got != m {
                            return Err(Violation::Incidence {
                                vertex: src.vertex_name(v).to_string(),
                                edge: dst.edge_name(f).to_string(),
                                expected: m,
                                got,
                            });
                        }
                    }
                    for (&f, &got) in &sums {
                        if dst.a(w, f) == 0 {
                            return Err(Violation::Incidence {
                                vertex: src.vertex_name(v).to_string(),
                                edge: dst.edge_name(f).to_string(),
                                expected: 0,
                                got,
                            });
                        }
                    }
                }
                None => {
                    let degree: u32 = sums.values().sum();
                    if degree % 2 == 1 {
                        return Err(Violation::OddSurvivingDegree { vertex: src.vertex_name(v).to_string(), degree });
                    }
                    let mut keys = sums.keys();
                    if let (Some(&a), Some(&b)) = (keys.next(), keys.next()) {
                        return Err(Violation::SplitImage {
                            vertex: src.vertex_name(v).to_string(),
                            first: dst.edge_name(a).to_string(),
                            second: dst.edge_name(b).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// If `v` and `e` are incident and neither is deleted, their images are incident.
    pub fn preserves_incidence(&self) -> bool {
        self.source.incidences().all(|(v, e, _)| match (self.vmap[v], self.emap[e]) {
            (Some(w), Some(f)) => self.target.a(w, f) > 0,
            _ => true,
        })
    }

    /// `self ∘ first`, with `ε` sent to `ε`.
    pub fn compose(&self, first: &GeneralizedMorphism) -> Result<GeneralizedMorphism, MorphismError> {
        if !(Arc::ptr_eq(&first.target, &self.source) || *first.target == *self.source) {
            return Err(MorphismError::HypergraphMismatch);
        }
        Ok(GeneralizedMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            vmap: first.vmap.iter().map(|v| v.and_then(|w| self.vmap[w])).collect(),
            emap: first.emap.iter().map(|e| e.and_then(|f| self.emap[f])).collect(),
        })
    }

    /// `r : H → H′` for closed `H′`: identity on `H′`, `ε` elsewhere.
    pub fn restriction(h: Arc<Hypergraph>, sub: &Subhypergraph) -> Result<GeneralizedMorphism, MorphismError> {
        if let Some(&e) =
            sub.edges.iter().find(|&&e| h.edge_incidence(e).iter().any(|(v, _)| !sub.vertices.contains(v)))
        {
            return Err(MorphismError::NotClosed(h.edge_name(e).to_string()));
        }
        let target = Arc::new(sub.to_hypergraph(&h));
        let vmap = (0..h.num_vertices())
            .map(|v| sub.vertices.contains(&v).then(|| target.vertex_index(h.vertex_name(v)).unwrap()))
            .collect();
        let emap = (0..h.num_edges())
            .map(|e| sub.edges.contains(&e).then(|| target.edge_index(h.edge_name(e)).unwrap()))
            .collect();
        Ok(GeneralizedMorphism { source: h, target, vmap, emap })
    }

    /// `ι : H′ → H` for open `H′`.
    pub fn inclusion(h: Arc<Hypergraph>, sub: &Subhypergraph) -> Result<GeneralizedMorphism, MorphismError> {
        if let Some(&v) =
            sub.vertices.iter().find(|&&v| h.vertex_incidence(v).iter().any(|(e, _)| !sub.edges.contains(e)))
        {
            return Err(MorphismError::NotOpen(h.vertex_name(v).to_string()));
        }
        let source = Arc::new(sub.to_hypergraph(&h));
        let vmap = source.vertices().iter().map(|n| h.vertex_index(n)).collect();
        let emap = source.edges().iter().map(|n| h.edge_index(n)).collect();
        Ok(GeneralizedMorphism { source, target: h, vmap, emap })
    }

    /// The unique morphism on `h` agreeing with each piece. Each piece's source is
    /// its open subhypergraph as a standalone hypergraph (same names).
    pub fn glue(
        h: Arc<Hypergraph>,
        target: Arc<Hypergraph>,
        pieces: &[(Subhypergraph, GeneralizedMorphism)],
    ) -> Result<GeneralizedMorphism, MorphismError> {
        let mut vmap: Vec<Option<Option<usize>>> = vec![None; h.num_vertices()];
        let mut emap: Vec<Option<Option<usize>>> = vec![None; h.num_edges()];
        for (sub, phi) in pieces {
            if !sub.is_open(&h) {
                let v = sub
                    .vertices
                    .iter()
                    .find(|&&v| h.vertex_incidence(v).iter().any(|(e, _)| !sub.edges.contains(e)))
                    .unwrap();
                return Err(MorphismError::NotOpen(h.vertex_name(*v).to_string()));
            }
            if phi.source.num_vertices() != sub.vertices.len() || phi.source.num_edges() != sub.edges.len() {
                return Err(MorphismError::PieceShape);
            }
            if !(Arc::ptr_eq(&phi.target, &target) || *phi.target == *target) {
                return Err(MorphismError::HypergraphMismatch);
            }
            for &v in &sub.vertices {
                let name = h.vertex_name(v);
                let local = phi.source.vertex_index(name).ok_or(MorphismError::PieceShape)?;
                let img = phi.vmap[local];
                match vmap[v] {
                    Some(prev) if prev != img => return Err(MorphismError::Disagreement(name.to_string())),
                    _ => vmap[v] = Some(img),
                }
            }
            for &e in &sub.edges {
                let name = h.edge_name(e);
                let local = phi.source.edge_index(name).ok_or(MorphismError::PieceShape)?;
                let img = phi.emap[local];
                match emap[e] {
                    Some(prev) if prev != img => return Err(MorphismError::Disagreement(name.to_string())),
                    _ => emap[e] = Some(img),
                }
            }
        }
        if let Some(v) = vmap.iter().position(Option::is_none) {
            return Err(MorphismError::CoverGap(h.vertex_name(v).to_string()));
        }
        if let Some(e) = emap.iter().position(Option::is_none) {
            return Err(MorphismError::CoverGap(h.edge_name(e).to_string()));
        }
        let phi = GeneralizedMorphism {
            source: h,
            target,
            vmap: vmap.into_iter().map(Option::unwrap).collect(),
            emap: emap.into_iter().map(Option::unwrap).collect(),
        };
        phi.validate()?;
        Ok(phi)
    }

    /// True when every element of the target is the image of the same-named source element.
    pub fn restricts_to_identity(&self) -> bool {
        let t = &*self.target;
        t.vertices()
            .iter()
            .enumerate()
            .all(|(w, n)| self.source.vertex_index(n).is_some_and(|v| self.vmap[v] == Some(w)))
            && t.edges()
                .iter()
                .enumerate()
                .all(|(f, n)| self.source.edge_index(n).is_some_and(|e| self.emap[e] == Some(f)))
    }

    pub fn is_retraction(&self) -> bool {
        self.is_valid() && self.restricts_to_identity()
    }

    /// `x_e ↦ 1` (as `None`) or `x_{φ(e)}`, by edge name.
    pub fn induced_generator_map(&self) -> Vec<(String, Option<String>)> {
        self.emap
            .iter()
            .enumerate()
            .map(|(e, f)| (self.source.edge_name(e).to_string(), f.map(|f| self.target.edge_name(f).to_string())))
            .collect()
    }

    pub fn vertex_image_name(&self, v: usize) -> Option<&str> {
        self.vmap[v].map(|w| self.target.vertex_name(w))
    }

    pub fn edge_image_name(&self, e: usize) -> Option<&str> {
        self.emap[e].map(|f| self.target.edge_name(f))
    }
}
