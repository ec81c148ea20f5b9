use std::collections::{BTreeMap, HashSet};

use thiserror::Error;

use super::map::{Map, UnionFind, VKind};
use super::{character, classify_cycles, dot, sign, validate, validate_g_labels, validate_h_labels};
use super::{Dart, PEdge, PVertex, Picture, PictureError};
use crate::hypergraph::VertexLabelling;
use crate::wagonwheel::{spoke_id, standard_cycles, Spoke, WagonWheel};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CollapseError {
    #[error("boundary edge labelled `{0}` is not a generator")]
    BoundarySpoke(String),
    #[error("{cycle}-cycle through {edges:?} is not a facial copy")]
    NotFacialCopy { cycle: String, edges: Vec<String> },
    #[error("component containing `{component}`: {reason}")]
    NotStandard { component: String, reason: String },
    #[error("collapsed picture has sign {sign}, but ch(P)·b = {expected}")]
    SignMismatch { sign: u8, expected: u8 },
    #[error("{0}")]
    Wheel(String),
}

/// The H-picture of wheel `i` on its own: every vertex of the wheel once, the
/// generator edges running out to the boundary, which reads relation `i`.
pub fn wagon_relation_picture(w: &WagonWheel, i: usize) -> Picture {
    let n = w.length(i);
    let h = &w.hypergraph;
    let g = &w.source.generators;
    let base = |j: usize| (10 * (j % n)) as Dart;
    let mut vertices = Vec::with_capacity(3 * n);
    let mut edges = Vec::with_capacity(5 * n);
    for j in 0..n {
        let (b, next) = (base(j), base(j + 1));
        let rots = [vec![b + 8, b + 2, b + 1], vec![next, b + 4, b + 3], vec![b + 5, next + 6, b + 7]];
        for (k, rot) in (1..=3).zip(rots) {
            let id = h.vertex_name(w.vertex(i, j as isize, k)).to_string();
            vertices.push(PVertex { label: id.clone(), id, rot });
        }
        for (t, kind) in Spoke::ALL.into_iter().enumerate() {
            let id = spoke_id(kind, i, j);
            let d = b + 2 * t as Dart;
            edges.push(PEdge { label: id.clone(), id, darts: [d, d + 1] });
        }
        edges.push(PEdge {
            id: format!("s.{}.{}", i + 1, j),
            label: g.name(w.letter(i, j as isize)).to_string(),
            darts: [b + 8, b + 9],
        });
    }
    let boundary = (0..n).map(|j| base(j) + 9).collect();
    Picture { closed: false, vertices, edges, boundary, free_loops: vec![], nesting: vec![] }
}

/// Collapses each wheel copy of an H-picture over `W` to one vertex, giving a
/// G-picture over the presentation with the same boundary. Requires the
/// boundary to carry only generator edges and every standard cycle to appear
/// as facial copies.
pub fn collapse_facial_components(p: &Picture, w: &WagonWheel, b: &VertexLabelling) -> Result<Picture, PictureError> {
    let h = &w.hypergraph;
    validate_h_labels(p, h)?;
    for l in p.boundary_word() {
        if h.edge_index(&l).is_some_and(|e| w.spoke_coords(e).is_some()) {
            return Err(CollapseError::BoundarySpoke(l).into());
        }
    }
    let cycles = standard_cycles(w).map_err(|e| CollapseError::Wheel(e.to_string()))?;
    for (name, c) in cycles.phi() {
        let report = classify_cycles(p, h, &c)?;
        if let Some(bad) = report.cycles.iter().find(|k| !(k.facial && k.copy)) {
            return Err(CollapseError::NotFacialCopy { cycle: name, edges: bad.edges.clone() }.into());
        }
    }

    let mut m = Map::build(p)?;
    let spoke = |m: &Map, e: usize| {
        m.es[e].alive && m.es[e].real && h.edge_index(&m.es[e].label).is_some_and(|x| w.spoke_coords(x).is_some())
    };
    let mut uf = UnionFind::new(m.vs.len());
    for e in 0..m.es.len() {
        if spoke(&m, e) {
            let [x, y] = m.es[e].darts;
            uf.union(m.vertex_of(x), m.vertex_of(y));
        }
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut real: Vec<usize> = (0..m.vs.len()).filter(|&v| m.vs[v].alive && m.vs[v].kind == VKind::Real).collect();
    real.sort_by_key(|&v| m.vs[v].order);
    for v in real {
        comps.entry(uf.find(v)).or_default().push(v);
    }
    let mut serial = vec![0usize; w.num_wheels()];
    for members in comps.into_values() {
        let first = m.vs[members[0]].id.clone();
        let not_standard =
            |reason: &str| CollapseError::NotStandard { component: first.clone(), reason: reason.to_string() };
        let labels: Vec<usize> =
            members.iter().map(|&v| h.vertex_index(&m.vs[v].label).expect("validated label")).collect();
        let i = w.vertex_coords(labels[0]).0;
        let distinct: HashSet<usize> = labels.iter().copied().collect();
        if labels.iter().any(|&x| w.vertex_coords(x).0 != i)
            || distinct.len() != labels.len()
            || labels.len() != 3 * w.length(i)
        {
            return Err(not_standard("labels are not a bijection onto one wheel").into());
        }
        let member_set: HashSet<usize> = members.iter().copied().collect();
        let mut internal_edges = Vec::new();
        let mut internal = HashSet::new();
        for &v in &members {
            for &d in &m.vs[v].rot {
                let e = m.edge_of(d);
                if spoke(&m, e) {
                    internal.insert(d);
                    if d == m.es[e].darts[0] {
                        internal_edges.push(e);
                    }
                }
            }
        }
        let rot = if internal.is_empty() {
            m.vs[members[0]].rot.clone()
        } else {
            let faces = m.faces_by(|d| internal.contains(&d));
            let mut with_external = Vec::new();
            for orbit in faces {
                if !member_set.contains(&m.vertex_of(orbit[0])) {
                    continue;
                }
                let mut ext = Vec::new();
                for &x in &orbit {
                    let r = &m.vs[m.vertex_of(x)].rot;
                    let p = r.iter().position(|&y| y == x).expect("dart in rotation");
                    let mut before = Vec::new();
                    for k in 1..r.len() {
                        let y = r[(p + r.len() - k) % r.len()];
                        if internal.contains(&y) {
                            break;
                        }
                        before.push(y);
                    }
                    before.reverse();
                    ext.extend(before);
                }
                if !ext.is_empty() {
                    with_external.push(ext);
                }
            }
            if with_external.len() > 1 {
                return Err(not_standard("outside edges meet more than one face").into());
            }
            with_external.pop().unwrap_or_default()
        };
        serial[i] += 1;
        let id = format!("r{}.{}", i + 1, serial[i]);
        m.contract(&members, &internal_edges, rot, &id, &format!("r{}", i + 1));
    }

    let out = m.finish();
    validate(&out)?;
    validate_g_labels(&out, &w.source)?;
    let s = sign(&out, &w.source)?;
    let expected = dot(&character(p, h)?, b);
    if s != expected {
        return Err(CollapseError::SignMismatch { sign: u8::from(s), expected: u8::from(expected) }.into());
    }
    Ok(out)
}
