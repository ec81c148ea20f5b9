use super::{Spoke, WagonWheel, WagonWheelError};
use crate::hypergraph::Subhypergraph;

/// `A_i`, `B_i` and `C_ij` as closed subhypergraphs of `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardCycles {
    pub a: Vec<Subhypergraph>,
    pub b: Vec<Subhypergraph>,
    pub c: Vec<Vec<Subhypergraph>>,
}

impl StandardCycles {
    /// `Φ`: every `C_ij` followed by every `B_i`, with printable names.
    pub fn phi(&self) -> Vec<(String, Subhypergraph)> {
        let mut out = Vec::new();
        for (i, row) in self.c.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                out.push((format!("C.{}.{}", i + 1, j), c.clone()));
            }
        }
        for (i, b) in self.b.iter().enumerate() {
            out.push((format!("B.{}", i + 1), b.clone()));
        }
        out
    }
}

fn c_cycle(w: &WagonWheel, i: usize, j: isize) -> Subhypergraph {
    Subhypergraph::new(
        [w.vertex(i, j - 1, 2), w.vertex(i, j, 1), w.vertex(i, j, 2), w.vertex(i, j, 3), w.vertex(i, j - 1, 3)],
        [
            w.spoke(Spoke::A, i, j),
            w.spoke(Spoke::B, i, j),
            w.spoke(Spoke::C, i, j),
            w.spoke(Spoke::D, i, j),
            w.spoke(Spoke::C, i, j - 1),
        ],
    )
}

pub(crate) fn c_cycle_of(w: &WagonWheel, i: usize, j: usize) -> Subhypergraph {
    c_cycle(w, i, j as isize)
}

pub(crate) fn b_cycle_of(w: &WagonWheel, i: usize) -> Subhypergraph {
    let n = w.length(i) as isize;
    Subhypergraph::new((0..n).map(|j| w.vertex(i, j, 3)), (0..n).map(|j| w.spoke(Spoke::D, i, j)))
}

/// Builds every standard cycle and checks each is a cycle.
pub fn standard_cycles(w: &WagonWheel) -> Result<StandardCycles, WagonWheelError> {
    let h = &w.hypergraph;
    let mut out = StandardCycles { a: Vec::new(), b: Vec::new(), c: Vec::new() };
    for i in 0..w.num_wheels() {
        let n = w.length(i) as isize;
        let a = Subhypergraph::new(
            (0..n).flat_map(|j| [w.vertex(i, j, 1), w.vertex(i, j, 2)]),
            (0..n).flat_map(|j| [w.spoke(Spoke::A, i, j), w.spoke(Spoke::B, i, j)]),
        );
        if !a.is_cycle(h) {
            return Err(WagonWheelError::NotACycle(format!("A.{}", i + 1)));
        }
        let b = b_cycle_of(w, i);
        if !b.is_cycle(h) {
            return Err(WagonWheelError::NotACycle(format!("B.{}", i + 1)));
        }
        let mut row = Vec::new();
        for j in 0..n {
            let c = c_cycle(w, i, j);
            if !c.is_cycle(h) {
                return Err(WagonWheelError::NotACycle(format!("C.{}.{}", i + 1, j)));
            }
            row.push(c);
        }
        out.a.push(a);
        out.b.push(b);
        out.c.push(row);
    }
    Ok(out)
}
