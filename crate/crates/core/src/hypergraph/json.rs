use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{GeneralizedMorphism, Hypergraph, HypergraphError, MorphismError, VertexLabelling};

/// Marker for `ε` in morphism files.
pub const EPS: &str = "eps";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: String,
    #[serde(default)]
    pub b: u8,
}

/// `{"vertices":[{"id","b"}],"edges":[..],"incidence":[[v,e,m]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<String>,
    pub incidence: Vec<(String, String, u32)>,
}

impl HypergraphJson {
    pub fn new(h: &Hypergraph, b: &VertexLabelling) -> Self {
        HypergraphJson {
            vertices: h
                .vertices()
                .iter()
                .enumerate()
                .map(|(v, id)| VertexJson { id: id.clone(), b: u8::from(b.get(v)) })
                .collect(),
            edges: h.edges().to_vec(),
            incidence: h
                .incidences()
                .map(|(v, e, m)| (h.vertex_name(v).to_string(), h.edge_name(e).to_string(), m))
                .collect(),
        }
    }

    pub fn build(&self) -> Result<(Hypergraph, VertexLabelling), HypergraphError> {
        let mut h = Hypergraph::new();
        let mut b = Vec::with_capacity(self.vertices.len());
        for v in &self.vertices {
            if v.b > 1 {
                return Err(HypergraphError::InvalidLabel(v.id.clone(), v.b));
            }
            h.add_vertex(&v.id)?;
            b.push(v.b == 1);
        }
        for e in &self.edges {
            h.add_edge(e)?;
        }
        for (v, e, m) in &self.incidence {
            h.set_incidence(v, e, *m)?;
        }
        Ok((h, VertexLabelling(b)))
    }
}

/// `{"vmap":{v: w|"eps"},"emap":{e: f|"eps"}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub vmap: BTreeMap<String, String>,
    pub emap: BTreeMap<String, String>,
}

impl MorphismJson {
    pub fn new(phi: &GeneralizedMorphism) -> Self {
        let img = |x: Option<&str>| x.unwrap_or(EPS).to_string();
        MorphismJson {
            vmap: (0..phi.source.num_vertices())
                .map(|v| (phi.source.vertex_name(v).to_string(), img(phi.vertex_image_name(v))))
                .collect(),
            emap: (0..phi.source.num_edges())
                .map(|e| (phi.source.edge_name(e).to_string(), img(phi.edge_image_name(e))))
                .collect(),
        }
    }

    pub fn build(
        &self,
        source: Arc<Hypergraph>,
        target: Arc<Hypergraph>,
    ) -> Result<GeneralizedMorphism, MorphismError> {
        fn opt(s: &str) -> Option<&str> {
            (s != EPS).then_some(s)
        }
        let vpairs: Vec<(&str, Option<&str>)> = self.vmap.iter().map(|(k, v)| (k.as_str(), opt(v))).collect();
        let epairs: Vec<(&str, Option<&str>)> = self.emap.iter().map(|(k, v)| (k.as_str(), opt(v))).collect();
        GeneralizedMorphism::from_names(source, target, &vpairs, &epairs)
    }
}
