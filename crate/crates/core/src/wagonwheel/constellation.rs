//! Suns, stellar cycles and constellations.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::hypergraph::{
    find_retraction, GeneralizedMorphism, Hypergraph, RetractionOutcome, Subhypergraph, VertexLabelling,
};

/// An identification of a hypergraph with the sun of size `n`: vertex `i` is
/// `vertices[i]`, `e_i` joins `vertices[i]` and `vertices[i+1]`, and `f_i` is the
/// pendant edge at `vertices[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SunIsomorphism {
    pub vertices: Vec<usize>,
    pub e: Vec<usize>,
    pub f: Vec<usize>,
}

impl SunIsomorphism {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    /// The isomorphism as a morphism onto [`sun`]`(n)`.
    pub fn morphism(&self, h: Arc<Hypergraph>) -> GeneralizedMorphism {
        let n = self.size();
        let target = Arc::new(sun(n));
        let mut vmap = vec![None; h.num_vertices()];
        let mut emap = vec![None; h.num_edges()];
        for i in 0..n {
            vmap[self.vertices[i]] = Some(i);
            emap[self.e[i]] = Some(i);
            emap[self.f[i]] = Some(n + i);
        }
        GeneralizedMorphism::new(h, target, vmap, emap)
    }
}

/// The sun of size `n`: vertices `1..n`, cycle edges `e1..en`, pendants `f1..fn`.
pub fn sun(n: usize) -> Hypergraph {
    let mut h = Hypergraph::new();
    for i in 1..=n {
        h.add_vertex(&i.to_string()).unwrap();
    }
    for i in 1..=n {
        h.add_edge(&format!("e{i}")).unwrap();
    }
    for i in 1..=n {
        h.add_edge(&format!("f{i}")).unwrap();
    }
    for i in 0..n {
        h.set_incidence_idx(i, i, 1);
        h.set_incidence_idx((i + 1) % n, i, 1);
        h.set_incidence_idx(i, n + i, 1);
    }
    h
}

/// Recognizes a sun. Vertex 0 of the result is the hypergraph's first vertex and
/// the walk leaves it along its lower-numbered cycle edge.
pub fn is_sun(h: &Hypergraph) -> Option<SunIsomorphism> {
    let n = h.num_vertices();
    if n < 3 || h.num_edges() != 2 * n || !h.is_simple() {
        return None;
    }
    let mut pendant = vec![None; n];
    let mut ring: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in 0..h.num_edges() {
        match h.edge_incidence(e) {
            [(v, _)] => {
                if pendant[*v].replace(e).is_some() {
                    return None;
                }
            }
            [(u, _), (v, _)] => {
                ring[*u].push(e);
                ring[*v].push(e);
            }
            _ => return None,
        }
    }
    if pendant.iter().any(Option::is_none) || ring.iter().any(|r| r.len() != 2) {
        return None;
    }
    let other = |e: usize, v: usize| h.edge_incidence(e).iter().map(|&(u, _)| u).find(|&u| u != v).unwrap();
    let mut vertices = vec![0];
    let mut e = Vec::new();
    let mut edge = ring[0][0];
    let mut v = 0;
    loop {
        e.push(edge);
        let next = other(edge, v);
        if next == 0 {
            break;
        }
        if vertices.len() == n {
            return None;
        }
        vertices.push(next);
        edge = if ring[next][0] == edge { ring[next][1] } else { ring[next][0] };
        v = next;
    }
    if vertices.len() != n {
        return None;
    }
    let f = vertices.iter().map(|&v| pendant[v].unwrap()).collect();
    Some(SunIsomorphism { vertices, e, f })
}

/// How condition (b) of stellarity was settled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RetractCheck {
    /// A supplied witness validated.
    Witness,
    /// A supplied witness failed; no search was run.
    BadWitness,
    Found,
    None,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StellarReport {
    pub cycle: bool,
    pub sun: bool,
    pub retract: RetractCheck,
    pub zero_labels: bool,
    pub stellar: bool,
}

/// Checks that `c` is a cycle whose neighbourhood is a sun and a retract, with
/// `b = 0` on its vertices. The retract condition uses `witness` when given and
/// a budgeted search otherwise.
pub fn is_stellar(
    h: &Arc<Hypergraph>,
    b: &VertexLabelling,
    c: &Subhypergraph,
    witness: Option<&GeneralizedMorphism>,
    budget: u64,
) -> StellarReport {
    let cycle = c.is_cycle(h);
    let n = c.neighbourhood(h);
    let nh = n.to_hypergraph(h);
    let sun = cycle && is_sun(&nh).is_some();
    let zero_labels = c.vertices.iter().all(|&v| !b.get(v));
    let retract = match witness {
        Some(phi) => {
            let same_source = Arc::ptr_eq(&phi.source, h) || *phi.source == **h;
            if same_source && *phi.target == nh && phi.is_retraction() {
                RetractCheck::Witness
            } else {
                RetractCheck::BadWitness
            }
        }
        None if !cycle || !sun => RetractCheck::None,
        None => match find_retraction(h, &n, budget) {
            RetractionOutcome::Found(_) => RetractCheck::Found,
            RetractionOutcome::None => RetractCheck::None,
            RetractionOutcome::BudgetExhausted => RetractCheck::BudgetExhausted,
        },
    };
    let stellar = cycle && sun && zero_labels && matches!(retract, RetractCheck::Witness | RetractCheck::Found);
    StellarReport { cycle, sun, retract, zero_labels, stellar }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum ConstellationViolation {
    /// Not a cycle, or its neighbourhood is not a sun.
    NotSunCycle { cycle: String },
    /// Neither stellar nor covered by stellar cycles away from two consecutive edges.
    A { cycle: String, uncovered: Vec<String> },
    /// No private edge on the cycle or on any cycle sharing an edge with it.
    B { cycle: String },
    /// Two cycles share more than one edge, or two non-stellar cycles share one.
    C { first: String, second: String, shared: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstellationReport {
    pub constellation: bool,
    pub stellar: BTreeMap<String, StellarReport>,
    /// The first entry of `violations`.
    pub violation: Option<ConstellationViolation>,
    pub violations: Vec<ConstellationViolation>,
}

/// Checks the three constellation conditions for the named cycles and lists
/// every failure. Retraction witnesses are looked up by cycle name; cycles
/// without one are searched.
pub fn is_constellation(
    h: &Arc<Hypergraph>,
    b: &VertexLabelling,
    phi: &[(String, Subhypergraph)],
    witnesses: &BTreeMap<String, GeneralizedMorphism>,
    budget: u64,
) -> ConstellationReport {
    let reports: Vec<StellarReport> =
        phi.iter().map(|(name, c)| is_stellar(h, b, c, witnesses.get(name), budget)).collect();
    let stellar: BTreeMap<String, StellarReport> =
        phi.iter().map(|(n, _)| n.clone()).zip(reports.iter().cloned()).collect();
    let mut violations = Vec::new();

    let mut owners: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (k, (_, c)) in phi.iter().enumerate() {
        for &e in &c.edges {
            owners.entry(e).or_default().push(k);
        }
    }

    for (k, (name, c)) in phi.iter().enumerate() {
        let r = &reports[k];
        if !r.cycle || !r.sun {
            violations.push(ConstellationViolation::NotSunCycle { cycle: name.clone() });
            continue;
        }
        if r.stellar {
            continue;
        }
        let (_, order) = c.cycle_order(h).expect("cycle");
        let covered: Vec<bool> =
            order.iter().map(|e| owners[e].iter().any(|&o| o != k && reports[o].stellar)).collect();
        let n = order.len();
        let ok = n >= 3 && (0..n).any(|t| (0..n).all(|x| covered[x] || x == t || x == (t + 1) % n));
        if !ok {
            let uncovered =
                order.iter().zip(&covered).filter(|(_, &c)| !c).map(|(&e, _)| h.edge_name(e).to_string()).collect();
            violations.push(ConstellationViolation::A { cycle: name.clone(), uncovered });
        }
    }

    let private = |k: usize| phi[k].1.edges.iter().any(|e| owners[e].len() == 1);
    for (k, (name, c)) in phi.iter().enumerate() {
        if private(k) {
            continue;
        }
        let neighbour_ok = c.edges.iter().flat_map(|e| owners[e].iter()).any(|&o| o != k && private(o));
        if !neighbour_ok {
            violations.push(ConstellationViolation::B { cycle: name.clone() });
        }
    }

    let mut shared: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (&e, os) in &owners {
        for (x, &p) in os.iter().enumerate() {
            for &q in &os[x + 1..] {
                shared.entry((p, q)).or_default().push(e);
            }
        }
    }
    for (&(p, q), edges) in &shared {
        if edges.len() > 1 || (!reports[p].stellar && !reports[q].stellar) {
            violations.push(ConstellationViolation::C {
                first: phi[p].0.clone(),
                second: phi[q].0.clone(),
                shared: edges.iter().map(|&e| h.edge_name(e).to_string()).collect(),
            });
        }
    }
    ConstellationReport {
        constellation: violations.is_empty(),
        stellar,
        violation: violations.first().cloned(),
        violations,
    }
}
