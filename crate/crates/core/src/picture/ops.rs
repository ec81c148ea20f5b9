use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::map::{Map, VKind};
use super::{validate, validate_h_labels, Picture, PictureError};
use crate::hypergraph::{GeneralizedMorphism, Hypergraph, Subhypergraph};

/// Applies a generalized morphism to an H-picture over its source: delete
/// edges sent to `ε`, relabel edges, delete vertices sent to `ε` while
/// joining their remaining darts without crossings, relabel vertices.
pub fn apply_morphism(phi: &GeneralizedMorphism, p: &Picture) -> Result<Picture, PictureError> {
    let (src, tgt) = (&phi.source, &phi.target);
    validate_h_labels(p, src)?;
    let mut m = Map::build(p)?;
    for e in 0..m.es.len() {
        if !(m.es[e].alive && m.es[e].real) {
            continue;
        }
        let le = src.edge_index(&m.es[e].label).ok_or(PictureError::ContextMismatch)?;
        match phi.emap[le] {
            None => m.virtualize(e),
            Some(t) => m.es[e].label = tgt.edge_name(t).to_string(),
        }
    }
    for v in 0..m.vs.len() {
        if !(m.vs[v].alive && m.vs[v].kind == VKind::Real) {
            continue;
        }
        let lv = src.vertex_index(&m.vs[v].label).ok_or(PictureError::ContextMismatch)?;
        match phi.vmap[lv] {
            Some(t) => m.vs[v].label = tgt.vertex_name(t).to_string(),
            None => {
                let labels: HashSet<&str> =
                    m.vs[v].rot.iter().filter(|&&d| m.is_real(d)).map(|&d| m.es[m.edge_of(d)].label.as_str()).collect();
                if labels.len() > 1 {
                    return Err(PictureError::MixedLabels(m.vs[v].id.clone()));
                }
                let id = m.vs[v].id.clone();
                m.delete_vertex(v).map_err(|_| PictureError::OddDegree(id))?;
            }
        }
    }
    drop_bare_loops(&mut m);
    let out = m.finish();
    validate(&out)?;
    validate_h_labels(&out, tgt)?;
    Ok(out)
}

fn drop_bare_loops(m: &mut Map) {
    for v in 0..m.vs.len() {
        if m.vs[v].alive && m.vs[v].kind == VKind::Loop && !m.vs[v].rot.iter().any(|&d| m.is_real(d)) {
            m.eliminate_star(v);
        }
    }
}

/// Removes every free loop; whatever a loop enclosed moves to the loop's host face.
pub fn delete_free_loops(p: &Picture) -> Result<Picture, PictureError> {
    let mut m = Map::build(p)?;
    for v in 0..m.vs.len() {
        if m.vs[v].alive && m.vs[v].kind == VKind::Loop {
            if let Some(d) = m.vs[v].rot.iter().copied().find(|&d| m.is_real(d)) {
                let e = m.edge_of(d);
                m.kill_edge(e);
            }
        }
    }
    drop_bare_loops(&mut m);
    Ok(m.finish())
}

#[derive(Clone, Debug)]
pub struct Restriction {
    pub picture: Picture,
    pub target: Arc<Hypergraph>,
    /// Set when the subhypergraph is a cycle absent from the boundary: every
    /// component of the result was checked to be a cycle.
    pub cycle_components: Option<usize>,
}

/// `P[H′]` for a closed subhypergraph `H′`.
pub fn restrict_to_closed(p: &Picture, h: &Arc<Hypergraph>, sub: &Subhypergraph) -> Result<Restriction, PictureError> {
    let phi = GeneralizedMorphism::restriction(h.clone(), sub).map_err(|e| PictureError::NotClosed(e.to_string()))?;
    let picture = apply_morphism(&phi, p)?;
    let on_boundary = p.boundary_word().iter().any(|l| h.edge_index(l).is_some_and(|e| sub.edges.contains(&e)));
    let cycle_components = if sub.is_cycle(h) && !on_boundary {
        if !picture.closed || picture.vertices.iter().any(|v| v.rot.len() != 2) {
            return Err(PictureError::NotACycle);
        }
        Some(count_components(&picture))
    } else {
        None
    };
    Ok(Restriction { picture, target: phi.target.clone(), cycle_components })
}

fn count_components(p: &Picture) -> usize {
    let index: HashMap<u32, usize> =
        p.vertices.iter().enumerate().flat_map(|(i, v)| v.rot.iter().map(move |&d| (d, i))).collect();
    let mut uf = super::map::UnionFind::new(p.vertices.len());
    let mut count = p.vertices.len();
    for e in &p.edges {
        if let (Some(&a), Some(&b)) = (index.get(&e.darts[0]), index.get(&e.darts[1])) {
            if uf.union(a, b) {
                count -= 1;
            }
        }
    }
    count + p.free_loops.len()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleClass {
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
    pub free_loop: bool,
    pub facial: bool,
    pub cover: bool,
    pub copy: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleReport {
    pub cycles: Vec<CycleClass>,
    /// Components of `P[C]` that run into the boundary.
    pub boundary_paths: usize,
}

/// Finds the `C`-cycles of an H-picture and classifies each as facial, a
/// cover, and a copy.
pub fn classify_cycles(p: &Picture, h: &Hypergraph, c: &Subhypergraph) -> Result<CycleReport, PictureError> {
    validate_h_labels(p, h)?;
    let m = Map::build(p)?;
    let in_c = |m: &Map, d: usize| {
        m.is_real(d) && h.edge_index(&m.es[m.edge_of(d)].label).is_some_and(|e| c.edges.contains(&e))
    };
    let faces: Vec<HashSet<usize>> = m
        .faces_by(|_| true)
        .into_iter()
        .map(|orbit| orbit.iter().map(|&d| m.edge_of(d)).collect::<HashSet<_>>())
        .zip(m.faces_by(|_| true).into_iter().map(|o| o.len()))
        .filter(|(edges, len)| edges.len() == *len)
        .map(|(edges, _)| edges)
        .collect();
    let facial = |edges: &HashSet<usize>| faces.iter().any(|f| f == edges);

    // The other C-dart at the vertex of `d`.
    let partner = |d: usize| -> Option<usize> {
        let v = m.vertex_of(d);
        if m.vs[v].kind != VKind::Real {
            return None;
        }
        m.vs[v].rot.iter().copied().find(|&x| x != d && in_c(&m, x))
    };

    let mut seen = HashSet::new();
    let mut cycles = Vec::new();
    let mut boundary_paths = 0;
    let mut order: Vec<usize> = (0..m.es.len()).filter(|&e| m.es[e].alive && m.es[e].real).collect();
    order.sort_by_key(|&e| m.es[e].order);
    for e0 in order {
        let d0 = m.es[e0].darts[0];
        if seen.contains(&e0) || !in_c(&m, d0) {
            continue;
        }
        if m.vs[m.vertex_of(d0)].kind == VKind::Loop {
            seen.insert(e0);
            let edges = HashSet::from([e0]);
            cycles.push(CycleClass {
                vertices: vec![],
                edges: vec![m.es[e0].id.clone()],
                free_loop: true,
                facial: facial(&edges),
                cover: false,
                copy: false,
            });
            continue;
        }
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        let mut d = d0;
        let mut closed = true;
        loop {
            let e = m.edge_of(d);
            seen.insert(e);
            edges.push(e);
            let arrive = m.alpha(d);
            let v = m.vertex_of(arrive);
            if m.vs[v].kind != VKind::Real {
                closed = false;
                break;
            }
            vertices.push(v);
            match partner(arrive) {
                Some(next) if m.edge_of(next) == e0 => break,
                Some(next) => d = next,
                None => {
                    closed = false;
                    break;
                }
            }
        }
        if !closed {
            // Mark the rest of the path through the other end of `e0`.
            let mut d = d0;
            while let Some(next) = partner(d) {
                let e = m.edge_of(next);
                if !seen.insert(e) {
                    break;
                }
                d = m.alpha(next);
            }
            boundary_paths += 1;
            continue;
        }
        let edge_set: HashSet<usize> = edges.iter().copied().collect();
        let k = vertices.len();
        let cover = (0..k).all(|t| {
            let (a, b) = (vertices[t], vertices[(t + 1) % k]);
            a != b && m.vs[a].label != m.vs[b].label
        });
        let labels: HashSet<&str> = vertices.iter().map(|&v| m.vs[v].label.as_str()).collect();
        let copy = cover && k == c.vertices.len() && labels.len() == k;
        cycles.push(CycleClass {
            vertices: vertices.iter().map(|&v| m.vs[v].id.clone()).collect(),
            edges: edges.iter().map(|&e| m.es[e].id.clone()).collect(),
            free_loop: false,
            facial: facial(&edge_set),
            cover,
            copy,
        });
    }
    Ok(CycleReport { cycles, boundary_paths })
}
