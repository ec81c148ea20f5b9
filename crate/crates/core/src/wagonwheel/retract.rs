//! Explicit retractions of `W` onto `N(B_i)` and `N(C_ij)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::cycles::{b_cycle_of, c_cycle_of};
use super::{Spoke, WagonWheel, WagonWheelError};
use crate::hypergraph::{GeneralizedMorphism, Subhypergraph};

fn finish(phi: GeneralizedMorphism) -> Result<GeneralizedMorphism, WagonWheelError> {
    if let Err(v) = phi.validate() {
        return Err(WagonWheelError::NotARetraction(v.to_string()));
    }
    if !phi.restricts_to_identity() {
        return Err(WagonWheelError::NotARetraction("not the identity on the target".into()));
    }
    Ok(phi)
}

/// Retractions onto the neighbourhood of every cycle of `Φ` that the explicit
/// constructions cover, keyed by the names of [`super::StandardCycles::phi`].
pub fn standard_witnesses(w: &WagonWheel) -> BTreeMap<String, GeneralizedMorphism> {
    let mut out = BTreeMap::new();
    for i in 0..w.num_wheels() {
        for j in 0..w.length(i) {
            if let Ok(phi) = retract_to_c(w, i, j) {
                out.insert(format!("C.{}.{}", i + 1, j), phi);
            }
        }
        if let Ok(phi) = retract_to_b(w, i) {
            out.insert(format!("B.{}", i + 1), phi);
        }
    }
    out
}

/// Collapses wheel `i` onto its central cycle; everything else goes to `ε`.
pub fn retract_to_b(w: &WagonWheel, i: usize) -> Result<GeneralizedMorphism, WagonWheelError> {
    let h = &w.hypergraph;
    if i >= w.num_wheels() {
        return Err(WagonWheelError::OutOfRange { wheel: i, position: 0 });
    }
    let target = Arc::new(b_cycle_of(w, i).neighbourhood(h).to_hypergraph(h));
    let tv = |v: usize| target.vertex_index(h.vertex_name(v));
    let te = |e: usize| target.edge_index(h.edge_name(e));
    let mut vmap = vec![None; h.num_vertices()];
    let mut emap = vec![None; h.num_edges()];
    for j in 0..w.length(i) as isize {
        let centre = tv(w.vertex(i, j, 3));
        vmap[w.vertex(i, j, 2)] = centre;
        vmap[w.vertex(i, j, 3)] = centre;
        let d = te(w.spoke(Spoke::D, i, j));
        for kind in [Spoke::A, Spoke::B, Spoke::D] {
            emap[w.spoke(kind, i, j)] = d;
        }
        emap[w.spoke(Spoke::C, i, j)] = te(w.spoke(Spoke::C, i, j));
    }
    finish(GeneralizedMorphism::new(h.clone(), target, vmap, emap))
}

/// Position of a vertex or spoke image in the folded wheel: `rel` is 0, 1 or 2
/// for the target positions `j−1`, `j`, `j+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Slot {
    rel: isize,
    k_or_kind: SlotKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SlotKind {
    Vertex(usize),
    Spoke(Spoke),
    Generator,
}

/// The napkin fold of wheel `i` onto `C_{i,j0}`, as target slots for every
/// vertex and spoke of the wheel, and for the generator `s = s_{i,j0}`.
struct Fold {
    vertices: Vec<Option<Slot>>,
    spokes: Vec<[Option<Slot>; 4]>,
}

fn napkin_fold(w: &WagonWheel, i: usize, j0: usize) -> Fold {
    let n = w.length(i);
    let s = w.letter(i, j0 as isize);
    // 1-based positions relative to j0; position 1 is j0 itself.
    let abs = |p: usize| (j0 + p - 1) % n;
    let positions: Vec<usize> = (1..=n).filter(|&p| w.letter(i, abs(p) as isize) == s).collect();
    let mut jr_odd = vec![false; n + 1];
    let mut jr_even = vec![false; n + 1];
    let mut jl_odd = vec![false; n + 1];
    let mut jl_even = vec![false; n + 1];
    let mut bar_r = vec![false; n + 1];
    let mut bar_l = vec![false; n + 1];
    for (m, &p) in positions.iter().enumerate() {
        let odd = m % 2 == 0;
        if odd {
            jr_odd[p] = true;
            jl_odd[p - 1] = true;
        } else {
            jr_even[p] = true;
            jl_even[p - 1] = true;
        }
        let next = positions.get(m + 1).copied().unwrap_or(n + 1);
        for q in p + 1..next {
            if odd {
                bar_r[q] = true;
            } else {
                bar_l[q] = true;
            }
        }
    }
    let jr = |p: usize| jr_odd[p] || jr_even[p];
    // Vertex and `c` indices live in Z_n, where n is written 0.
    let q = |p: usize| p % n;
    let slot = |rel, k_or_kind| Some(Slot { rel, k_or_kind });

    let mut vertices = vec![None; 3 * n];
    let mut spokes = vec![[None; 4]; n];
    for p in 1..=n {
        let j = abs(p);
        let qp = q(p);
        vertices[3 * j] = jr(qp).then_some(Slot { rel: 1, k_or_kind: SlotKind::Vertex(1) });
        for k in 2..=3 {
            vertices[3 * j + k - 1] = if jl_odd[qp] || jr_even[qp] {
                slot(0, SlotKind::Vertex(k))
            } else if jr_odd[qp] || jl_even[qp] {
                slot(1, SlotKind::Vertex(k))
            } else {
                None
            };
        }
        let side = |on_r_odd: Spoke, on_r_even: Spoke| {
            if jr_odd[p] {
                slot(1, SlotKind::Spoke(on_r_odd))
            } else if jr_even[p] {
                slot(1, SlotKind::Spoke(on_r_even))
            } else if bar_l[p] {
                slot(0, SlotKind::Spoke(Spoke::B))
            } else if bar_r[p] {
                slot(2, SlotKind::Spoke(Spoke::A))
            } else {
                None
            }
        };
        let a = side(Spoke::A, Spoke::B);
        let b = side(Spoke::B, Spoke::A);
        let c = if jl_odd[qp] || jr_even[qp] {
            slot(0, SlotKind::Spoke(Spoke::C))
        } else if jr_odd[qp] || jl_even[qp] {
            slot(1, SlotKind::Spoke(Spoke::C))
        } else {
            None
        };
        let d = if jr(p) {
            slot(1, SlotKind::Spoke(Spoke::D))
        } else if bar_l[p] {
            slot(0, SlotKind::Spoke(Spoke::D))
        } else if bar_r[p] {
            slot(2, SlotKind::Spoke(Spoke::D))
        } else {
            None
        };
        spokes[j] = [a, b, c, d];
    }
    Fold { vertices, spokes }
}

/// Retraction of `W` onto `N(C_ij)`: a napkin fold of every wheel containing
/// `s = s_ij` onto one of its `s`-cycles, carried to `C_ij` by the sun
/// isomorphism fixing `s`, and glued.
pub fn retract_to_c(w: &WagonWheel, i: usize, j: usize) -> Result<GeneralizedMorphism, WagonWheelError> {
    let h = &w.hypergraph;
    if i >= w.num_wheels() || j >= w.length(i) {
        return Err(WagonWheelError::OutOfRange { wheel: i, position: j });
    }
    let rels = &w.source.relations;
    if let Some(r) = rels.iter().position(|r| !r.is_cyclically_reduced()) {
        return Err(WagonWheelError::NotCyclicallyReduced { relation: r });
    }
    let s = w.letter(i, j as isize);
    if let Some(r) = rels.iter().position(|r| r.multiplicity(s) % 2 == 1) {
        return Err(WagonWheelError::OddMultiplicity {
            generator: w.source.generators.name(s).to_string(),
            relation: r,
        });
    }
    let target = Arc::new(c_cycle_of(w, i, j).neighbourhood(h).to_hypergraph(h));
    let resolve = |slot: Option<Slot>| -> Option<usize> {
        let slot = slot?;
        let jt = j as isize + slot.rel - 1;
        match slot.k_or_kind {
            SlotKind::Vertex(k) => target.vertex_index(h.vertex_name(w.vertex(i, jt, k))),
            SlotKind::Spoke(kind) => target.edge_index(h.edge_name(w.spoke(kind, i, jt))),
            SlotKind::Generator => target.edge_index(h.edge_name(w.generator_edge(s))),
        }
    };

    let mut pieces: Vec<(Subhypergraph, GeneralizedMorphism)> = Vec::new();
    let mut covered = vec![false; w.source.generators.len()];
    for wi in 0..w.num_wheels() {
        let sub = w.wheel(wi).neighbourhood(h);
        for &e in &sub.edges {
            if e < covered.len() {
                covered[e] = true;
            }
        }
        let local = Arc::new(sub.to_hypergraph(h));
        let mut vmap = vec![None; local.num_vertices()];
        let mut emap = vec![None; local.num_edges()];
        let anchor = if wi == i { Some(j) } else { (0..w.length(wi)).find(|&jj| w.letter(wi, jj as isize) == s) };
        if let Some(j0) = anchor {
            let fold = napkin_fold(w, wi, j0);
            for jj in 0..w.length(wi) {
                for k in 1..=3 {
                    let v = w.vertex(wi, jj as isize, k);
                    let lv = local.vertex_index(h.vertex_name(v)).unwrap();
                    vmap[lv] = resolve(fold.vertices[3 * jj + k - 1]);
                }
                for (slot, kind) in Spoke::ALL.into_iter().enumerate() {
                    let e = w.spoke(kind, wi, jj as isize);
                    let le = local.edge_index(h.edge_name(e)).unwrap();
                    emap[le] = resolve(fold.spokes[jj][slot]);
                }
            }
            let ls = local.edge_index(h.edge_name(w.generator_edge(s))).unwrap();
            emap[ls] = resolve(Some(Slot { rel: 1, k_or_kind: SlotKind::Generator }));
        }
        pieces.push((sub, GeneralizedMorphism::new(local, target.clone(), vmap, emap)));
    }
    for (g, _) in covered.iter().enumerate().filter(|(_, &c)| !c) {
        let sub = Subhypergraph::new([], [w.generator_edge(g)]);
        let local = Arc::new(sub.to_hypergraph(h));
        pieces.push((sub, GeneralizedMorphism::new(local, target.clone(), vec![], vec![None])));
    }
    let phi = GeneralizedMorphism::glue(h.clone(), target, &pieces)
        .map_err(|e| WagonWheelError::NotARetraction(e.to_string()))?;
    finish(phi)
}

/// Used by tests that build a morphism by hand; keeps the target construction in one place.
#[cfg(test)]
pub(crate) fn c_target(w: &WagonWheel, i: usize, j: usize) -> crate::hypergraph::Hypergraph {
    c_cycle_of(w, i, j).neighbourhood(&w.hypergraph).to_hypergraph(&w.hypergraph)
}
