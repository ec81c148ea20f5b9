use num_complex::Complex64;

use super::operator::{CMatrix, OperatorSolution};
use super::GameError;
use crate::hypergraph::{Hypergraph, VertexLabelling};
use crate::presentation::{parse, ParsedPresentation};
use crate::presentation::{InvPresentation, Presentation};

pub enum Builtin {
    System(Hypergraph, VertexLabelling),
    Presentation(Presentation),
    InvPresentation(InvPresentation),
}

pub const BUILTIN_NAMES: [&str; 3] = ["magic_square", "higman_hnn_presentation", "figure3_invpresentation"];

pub fn builtin(name: &str) -> Result<Builtin, GameError> {
    match name {
        "magic_square" => {
            let (h, b) = magic_square();
            Ok(Builtin::System(h, b))
        }
        "higman_hnn_presentation" => Ok(Builtin::Presentation(higman_hnn_presentation())),
        "figure3_invpresentation" => Ok(Builtin::InvPresentation(figure3_invpresentation())),
        other => Err(GameError::UnknownBuiltin(other.to_string())),
    }
}

/// Rows `r1..r3` and columns `c1..c3` over cells `x11..x33`; only `c3` is odd.
pub fn magic_square() -> (Hypergraph, VertexLabelling) {
    let vertices = ["r1", "r2", "r3", "c1", "c2", "c3"];
    let mut edges = Vec::new();
    let mut inc = Vec::new();
    for r in 1..=3 {
        for c in 1..=3 {
            let e = format!("x{r}{c}");
            inc.push((format!("r{r}"), e.clone(), 1));
            inc.push((format!("c{c}"), e.clone(), 1));
            edges.push(e);
        }
    }
    let h = Hypergraph::from_parts(vertices.iter().map(|s| s.to_string()), edges, inc).expect("magic square");
    let mut b = VertexLabelling::zeros(&h);
    b.set(5, true);
    (h, b)
}

/// The Pauli-product operator solution of [`magic_square`] in dimension 4.
pub fn magic_square_pauli() -> OperatorSolution {
    let i = Complex64::new(0.0, 1.0);
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let id = CMatrix::identity(2);
    let x = CMatrix::from_rows(2, vec![zero, one, one, zero]);
    let z = CMatrix::from_rows(2, vec![one, zero, zero, -one]);
    let y = CMatrix::from_rows(2, vec![zero, -i, i, zero]);
    let cells = [[(&x, &id), (&id, &x), (&x, &x)], [(&id, &z), (&z, &id), (&z, &z)], [(&x, &z), (&z, &x), (&y, &y)]];
    let matrices = cells
        .iter()
        .enumerate()
        .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, (a, b))| (format!("x{}{}", r + 1, c + 1), a.kron(b))))
        .collect();
    OperatorSolution { dimension: 4, matrices, tolerance: super::operator::DEFAULT_TOLERANCE }
}

const HIGMAN_HNN: &str = include_str!("../../fixtures/higman.grp");

/// The HNN extension of Higman's group by `x` with `[x, J] = 1` and `[x, a] = J`.
pub fn higman_hnn_presentation() -> Presentation {
    match parse(HIGMAN_HNN).expect("builtin presentation") {
        ParsedPresentation::Free(p) => p,
        ParsedPresentation::Inv(_) => unreachable!(),
    }
}

pub fn figure3_invpresentation() -> InvPresentation {
    InvPresentation::from_strs(&["x", "y", "z", "u", "v"], &["x y x z", "x u v u"])
}
