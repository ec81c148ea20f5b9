use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{Hypergraph, VertexLabelling};

/// `Π_e x_e^{A_ve} = J^{b_v}` for one vertex, edges in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearRelation {
    pub vertex: String,
    pub factors: Vec<(String, u32)>,
    pub parity: bool,
}

/// Generators `x_e`, one linear relation per vertex, and commuting pairs.
/// Involution relations `x_e² = 1` and centrality of `J` are implicit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionGroupPresentation {
    pub generators: Vec<String>,
    pub relations: Vec<LinearRelation>,
    pub commuting_pairs: Vec<(String, String)>,
}

pub fn solution_group_presentation(h: &Hypergraph, b: &VertexLabelling) -> SolutionGroupPresentation {
    let relations = (0..h.num_vertices())
        .map(|v| LinearRelation {
            vertex: h.vertex_name(v).to_string(),
            factors: h.vertex_incidence(v).iter().map(|&(e, m)| (h.edge_name(e).to_string(), m)).collect(),
            parity: b.get(v),
        })
        .collect();
    let mut pairs = BTreeSet::new();
    for v in 0..h.num_vertices() {
        let inc = h.vertex_incidence(v);
        for (i, &(e, _)) in inc.iter().enumerate() {
            for &(f, _) in &inc[i + 1..] {
                pairs.insert((e.min(f), e.max(f)));
            }
        }
    }
    SolutionGroupPresentation {
        generators: h.edges().to_vec(),
        relations,
        commuting_pairs: pairs
            .into_iter()
            .map(|(e, f)| (h.edge_name(e).to_string(), h.edge_name(f).to_string()))
            .collect(),
    }
}

impl SolutionGroupPresentation {
    /// Whether `J^parity · x_{e_1} ⋯ x_{e_n}` is one of the relations obtained from a
    /// vertex by listing its incident edges, with multiplicity, in some order.
    pub fn is_ordering_relation(&self, word: &[&str], parity: bool) -> bool {
        let mut counts: BTreeMap<&str, u32> = BTreeMap::new();
        for &e in word {
            *counts.entry(e).or_default() += 1;
        }
        self.relations.iter().any(|r| {
            r.parity == parity
                && r.factors.len() == counts.len()
                && r.factors.iter().all(|(e, m)| counts.get(e.as_str()) == Some(m))
        })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("generators: {}\n", self.generators.join(" ")));
        for r in &self.relations {
            let mut lhs: Vec<String> = Vec::new();
            for (e, m) in &r.factors {
                for _ in 0..*m {
                    lhs.push(format!("x[{e}]"));
                }
            }
            let lhs = if lhs.is_empty() { "1".to_string() } else { lhs.join(" ") };
            let rhs = if r.parity { "J" } else { "1" };
            out.push_str(&format!("{}: {} = {}\n", r.vertex, lhs, rhs));
        }
        for (e, f) in &self.commuting_pairs {
            out.push_str(&format!("commute: x[{e}] x[{f}]\n"));
        }
        out
    }
}
