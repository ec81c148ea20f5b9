use serde::{Deserialize, Serialize};

use super::{WagonWheel, WagonWheelError};
use crate::gf2::{self, BitRow, Gf2Outcome};
use crate::hypergraph::VertexLabelling;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabellingMode {
    /// One `1` at `(i,0,1)` for every odd relation.
    Any,
    /// Also makes the standard cycles a constellation.
    #[default]
    Constellation,
}

/// `|b⁻¹(1) ∩ V_i| ≡ a_i` for every wheel.
pub fn is_inv_labelling(w: &WagonWheel, b: &VertexLabelling) -> bool {
    b.0.len() == w.hypergraph.num_vertices()
        && (0..w.num_wheels()).all(|i| w.wheel_vertices(i).filter(|&v| b.get(v)).count() % 2 == w.parity(i) as usize)
}

pub fn choose_labelling(w: &WagonWheel, mode: LabellingMode) -> Result<VertexLabelling, WagonWheelError> {
    let mut b = VertexLabelling::zeros(&w.hypergraph);
    let rels = &w.source.relations;
    let odd_somewhere = |s| rels.iter().any(|r| r.multiplicity(s) % 2 == 1);
    for i in 0..w.num_wheels() {
        if !w.parity(i) {
            continue;
        }
        let n = w.length(i);
        if n == 0 {
            return Err(WagonWheelError::EmptyRelation(i));
        }
        let j = match mode {
            LabellingMode::Any => 0,
            LabellingMode::Constellation => (0..n).find(|&j| odd_somewhere(w.letter(i, j as isize))).unwrap_or(0),
        };
        b.set(w.vertex(i, j as isize, 1), true);
    }
    debug_assert!(is_inv_labelling(w, &b));
    Ok(b)
}

pub fn toggle(w: &WagonWheel, b: &VertexLabelling, e: usize) -> VertexLabelling {
    b.toggle(&w.hypergraph, e)
}

/// Edges of `E_1 ∪ … ∪ E_m` whose toggles turn `b` into `target`, found by one
/// GF(2) solve per wheel. `None` when some wheel has no solution, which happens
/// exactly when the per-wheel parities of `b` and `target` differ.
pub fn wheel_toggle_path(w: &WagonWheel, b: &VertexLabelling, target: &VertexLabelling) -> Option<Vec<usize>> {
    let h = &w.hypergraph;
    let mut path = Vec::new();
    for i in 0..w.num_wheels() {
        let verts = w.wheel_vertices(i);
        let edges = w.wheel_edges(i);
        let rows: Vec<BitRow> = verts
            .clone()
            .map(|v| {
                BitRow::from_support(
                    edges.len(),
                    h.vertex_incidence(v)
                        .iter()
                        .filter(|&&(e, m)| edges.contains(&e) && m % 2 == 1)
                        .map(|&(e, _)| e - edges.start),
                )
            })
            .collect();
        let rhs: Vec<bool> = verts.map(|v| b.get(v) != target.get(v)).collect();
        match gf2::solve(edges.len(), &rows, &rhs) {
            Gf2Outcome::Solvable { x } => {
                path.extend(x.iter().enumerate().filter(|(_, &t)| t).map(|(k, _)| edges.start + k));
            }
            Gf2Outcome::Inconsistent { .. } => return None,
        }
    }
    Some(path)
}

/// A toggle sequence between two `Ι`-labellings, or `None` if either is not one.
pub fn labelling_path(w: &WagonWheel, b: &VertexLabelling, target: &VertexLabelling) -> Option<Vec<usize>> {
    if !is_inv_labelling(w, b) || !is_inv_labelling(w, target) {
        return None;
    }
    wheel_toggle_path(w, b, target)
}

#[cfg(test)]
mod tests {
    use std::collections::{HashSet, VecDeque};

    use super::super::{build_wagon_wheel, tests::xyxz_xuvu};
    use super::*;
    use crate::presentation::InvPresentation;
    use proptest::prelude::*;

    fn apply(w: &WagonWheel, b: &VertexLabelling, path: &[usize]) -> VertexLabelling {
        path.iter().fold(b.clone(), |acc, &e| toggle(w, &acc, e))
    }

    #[test]
    fn even_relations_give_zero_labelling() {
        let w = build_wagon_wheel(&xyxz_xuvu()).unwrap();
        for mode in [LabellingMode::Any, LabellingMode::Constellation] {
            let b = choose_labelling(&w, mode).unwrap();
            assert!(b.0.iter().all(|&x| !x));
            assert!(is_inv_labelling(&w, &b));
        }
    }

    #[test]
    fn odd_relation_gets_one_layer_one_vertex() {
        // z is even everywhere and y is odd in the first relation, so j = 1.
        let p = InvPresentation::from_strs(&["x", "y", "z"], &["x y x z x z", "J z y z y"]);
        let w = build_wagon_wheel(&p).unwrap();
        let b = choose_labelling(&w, LabellingMode::Constellation).unwrap();
        let ones: Vec<&str> = b.ones().map(|v| w.hypergraph.vertex_name(v)).collect();
        assert_eq!(ones, ["v.2.1.1"]);
        let p = InvPresentation::from_strs(&["x", "y", "z"], &["x y x y", "J x z y z"]);
        let w = build_wagon_wheel(&p).unwrap();
        let b = choose_labelling(&w, LabellingMode::Constellation).unwrap();
        let ones: Vec<&str> = b.ones().map(|v| w.hypergraph.vertex_name(v)).collect();
        assert_eq!(ones, ["v.2.0.1"]);
        let p = InvPresentation::from_strs(&["x", "y", "z"], &["x y x z", "J x x y y"]);
        let w = build_wagon_wheel(&p).unwrap();
        let b = choose_labelling(&w, LabellingMode::Constellation).unwrap();
        let ones: Vec<&str> = b.ones().map(|v| w.hypergraph.vertex_name(v)).collect();
        assert_eq!(ones, ["v.2.2.1"]);
    }

    #[test]
    fn toggle_is_an_involution() {
        let w = build_wagon_wheel(&xyxz_xuvu()).unwrap();
        let b = choose_labelling(&w, LabellingMode::Any).unwrap();
        for e in 0..w.hypergraph.num_edges() {
            assert_eq!(toggle(&w, &toggle(&w, &b, e), e), b);
        }
    }

    #[test]
    fn paths_connect_inv_labellings() {
        let w = build_wagon_wheel(&xyxz_xuvu()).unwrap();
        let b = choose_labelling(&w, LabellingMode::Any).unwrap();
        let mut other = b.clone();
        other.set(w.vertex(0, 1, 2), true);
        other.set(w.vertex(0, 3, 3), true);
        other.set(w.vertex(1, 2, 1), true);
        other.set(w.vertex(1, 0, 3), true);
        let path = labelling_path(&w, &b, &other).unwrap();
        assert!(path.iter().all(|&e| w.spoke_coords(e).is_some()));
        assert_eq!(apply(&w, &b, &path), other);
        other.set(w.vertex(1, 0, 3), false);
        assert_eq!(labelling_path(&w, &b, &other), None);
    }

    /// Breadth-first search over all labellings of a single 4-letter wheel,
    /// moving only by toggles of wheel edges.
    #[test]
    fn reachability_matches_parity_by_enumeration() {
        let w = build_wagon_wheel(&InvPresentation::from_strs(&["x", "y"], &["x y x y"])).unwrap();
        let n = w.hypergraph.num_vertices();
        let edges: Vec<usize> = w.wheel_edges(0).collect();
        let to_bits = |b: &VertexLabelling| (0..n).fold(0u32, |acc, v| acc | (u32::from(b.get(v)) << v));
        let start = VertexLabelling::zeros(&w.hypergraph);
        let mut seen = HashSet::from([to_bits(&start)]);
        let mut queue = VecDeque::from([start]);
        while let Some(b) = queue.pop_front() {
            for &e in &edges {
                let nb = toggle(&w, &b, e);
                if seen.insert(to_bits(&nb)) {
                    queue.push_back(nb);
                }
            }
        }
        assert_eq!(seen.len(), 1 << (n - 1));
        for mask in 0u32..1 << n {
            let target = VertexLabelling((0..n).map(|v| mask >> v & 1 == 1).collect());
            let zero = VertexLabelling::zeros(&w.hypergraph);
            assert_eq!(wheel_toggle_path(&w, &zero, &target).is_some(), seen.contains(&mask));
        }
    }

    proptest! {
        #[test]
        fn random_labellings(p in super::super::tests::random_presentation(), seed in any::<u64>()) {
            let w = build_wagon_wheel(&p).unwrap();
            let n = w.hypergraph.num_vertices();
            let b = choose_labelling(&w, LabellingMode::Constellation).unwrap();
            prop_assert!(is_inv_labelling(&w, &b));
            let other = VertexLabelling((0..n).map(|v| (seed >> (v % 64)) & 1 == 1).collect());
            match labelling_path(&w, &b, &other) {
                Some(path) => prop_assert_eq!(apply(&w, &b, &path), other),
                None => prop_assert!(!is_inv_labelling(&w, &other)),
            }
        }
    }
}
