use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{Hypergraph, VertexLabelling};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    pub d: usize,
    pub data: Vec<Complex64>,
}

impl CMatrix {
    pub fn identity(d: usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); d * d];
        for k in 0..d {
            data[k * d + k] = Complex64::new(1.0, 0.0);
        }
        CMatrix { d, data }
    }

    pub fn from_rows(d: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), d * d);
        CMatrix { d, data }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        CMatrix { d: self.d, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn mul(&self, o: &CMatrix) -> CMatrix {
        let d = self.d;
        let mut data = vec![Complex64::new(0.0, 0.0); d * d];
        for r in 0..d {
            for k in 0..d {
                let a = self.data[r * d + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..d {
                    data[r * d + c] += a * o.data[k * d + c];
                }
            }
        }
        CMatrix { d, data }
    }

    pub fn adjoint(&self) -> CMatrix {
        let d = self.d;
        let mut data = vec![Complex64::new(0.0, 0.0); d * d];
        for r in 0..d {
            for c in 0..d {
                data[c * d + r] = self.data[r * d + c].conj();
            }
        }
        CMatrix { d, data }
    }

    pub fn kron(&self, o: &CMatrix) -> CMatrix {
        let d = self.d * o.d;
        let mut data = vec![Complex64::new(0.0, 0.0); d * d];
        for (r1, c1) in (0..self.d).flat_map(|r| (0..self.d).map(move |c| (r, c))) {
            for (r2, c2) in (0..o.d).flat_map(|r| (0..o.d).map(move |c| (r, c))) {
                data[(r1 * o.d + r2) * d + c1 * o.d + c2] = self.data[r1 * self.d + c1] * o.data[r2 * o.d + c2];
            }
        }
        CMatrix { d, data }
    }

    /// Largest entrywise modulus of `self - o`.
    pub fn distance(&self, o: &CMatrix) -> f64 {
        self.data.iter().zip(&o.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OperatorSolution {
    pub dimension: usize,
    pub matrices: BTreeMap<String, CMatrix>,
    pub tolerance: f64,
}

/// `{"dimension": d, "tolerance": t, "matrices": {eid: [[re, im], …]}}` with
/// `d²` entries per matrix in row-major order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorSolutionJson {
    pub dimension: usize,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    pub matrices: BTreeMap<String, Vec<[f64; 2]>>,
}

fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error("matrix for `{edge}` has {entries} entries, expected {expected}")]
    DimensionMismatch { edge: String, entries: usize, expected: usize },
    #[error("no matrix for edge `{0}`")]
    MissingEdge(String),
    #[error("matrix given for unknown edge `{0}`")]
    UnknownEdge(String),
}

impl OperatorSolutionJson {
    pub fn build(&self) -> Result<OperatorSolution, OperatorError> {
        let d = self.dimension;
        let mut matrices = BTreeMap::new();
        for (e, entries) in &self.matrices {
            if entries.len() != d * d {
                return Err(OperatorError::DimensionMismatch {
                    edge: e.clone(),
                    entries: entries.len(),
                    expected: d * d,
                });
            }
            let data = entries.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
            matrices.insert(e.clone(), CMatrix { d, data });
        }
        Ok(OperatorSolution { dimension: d, matrices, tolerance: self.tolerance })
    }
}

impl From<&OperatorSolution> for OperatorSolutionJson {
    fn from(s: &OperatorSolution) -> Self {
        OperatorSolutionJson {
            dimension: s.dimension,
            tolerance: s.tolerance,
            matrices: s
                .matrices
                .iter()
                .map(|(e, m)| (e.clone(), m.data.iter().map(|z| [z.re, z.im]).collect()))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexCheck {
    pub v: String,
    pub b: u8,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorReport {
    pub pass: bool,
    pub dimension: usize,
    pub tolerance: f64,
    pub involution: f64,
    pub self_adjoint: f64,
    pub commutation: f64,
    pub relations: f64,
    pub vertices: Vec<VertexCheck>,
}

/// Checks `X_e² = I`, `X_e = X_e†`, `[X_e, X_f] = 0` for edges sharing a
/// vertex, and `Π_e X_e^{A_ve} = (−1)^{b_v} I` in edge order.
pub fn verify_operator_solution(
    h: &Hypergraph,
    b: &VertexLabelling,
    sol: &OperatorSolution,
) -> Result<OperatorReport, OperatorError> {
    let d = sol.dimension;
    for (e, m) in &sol.matrices {
        if h.edge_index(e).is_none() {
            return Err(OperatorError::UnknownEdge(e.clone()));
        }
        if m.d != d || m.data.len() != d * d {
            return Err(OperatorError::DimensionMismatch { edge: e.clone(), entries: m.data.len(), expected: d * d });
        }
    }
    let xs: Vec<&CMatrix> = h
        .edges()
        .iter()
        .map(|e| sol.matrices.get(e).ok_or_else(|| OperatorError::MissingEdge(e.clone())))
        .collect::<Result<_, _>>()?;
    let id = CMatrix::identity(d);
    let involution = xs.iter().map(|x| x.mul(x).distance(&id)).fold(0.0, f64::max);
    let self_adjoint = xs.iter().map(|x| x.adjoint().distance(x)).fold(0.0, f64::max);
    let mut commutation: f64 = 0.0;
    for v in 0..h.num_vertices() {
        let inc = h.vertex_incidence(v);
        for (k, &(e, _)) in inc.iter().enumerate() {
            for &(f, _) in &inc[k + 1..] {
                commutation = commutation.max(xs[e].mul(xs[f]).distance(&xs[f].mul(xs[e])));
            }
        }
    }
    let tol = sol.tolerance;
    let vertices: Vec<VertexCheck> = (0..h.num_vertices())
        .map(|v| {
            let mut p = id.clone();
            for &(e, m) in h.vertex_incidence(v) {
                for _ in 0..m {
                    p = p.mul(xs[e]);
                }
            }
            let sign = if b.get(v) { -1.0 } else { 1.0 };
            let residual = p.distance(&id.scale(Complex64::new(sign, 0.0)));
            VertexCheck { v: h.vertex_name(v).to_string(), b: u8::from(b.get(v)), residual, pass: residual <= tol }
        })
        .collect();
    let relations = vertices.iter().map(|c| c.residual).fold(0.0, f64::max);
    let pass = involution <= tol && self_adjoint <= tol && commutation <= tol && relations <= tol;
    Ok(OperatorReport {
        pass,
        dimension: d,
        tolerance: tol,
        involution,
        self_adjoint,
        commutation,
        relations,
        vertices,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{classical_perfect_strategy, magic_square, magic_square_pauli, to_linear_system};
    use super::*;
    use crate::gf2::Gf2Outcome;
    use proptest::prelude::*;

    fn scalar(h: &Hypergraph, signs: &[bool]) -> OperatorSolution {
        let matrices = h
            .edges()
            .iter()
            .zip(signs)
            .map(|(e, &s)| (e.clone(), CMatrix::from_rows(1, vec![Complex64::new(if s { -1.0 } else { 1.0 }, 0.0)])))
            .collect();
        OperatorSolution { dimension: 1, matrices, tolerance: DEFAULT_TOLERANCE }
    }

    #[test]
    fn pauli_square_passes() {
        let (h, b) = magic_square();
        let r = verify_operator_solution(&h, &b, &magic_square_pauli()).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.vertices.iter().all(|c| c.pass));
        // Independent check that the odd column multiplies to -I.
        let sol = magic_square_pauli();
        let p = sol.matrices["x13"].mul(&sol.matrices["x23"]).mul(&sol.matrices["x33"]);
        assert!(p.distance(&CMatrix::identity(4).scale(Complex64::new(-1.0, 0.0))) < 1e-12);
    }

    #[test]
    fn pauli_square_json_round_trip() {
        let sol = magic_square_pauli();
        let json = serde_json::to_string(&OperatorSolutionJson::from(&sol)).unwrap();
        let back: OperatorSolutionJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.build().unwrap(), sol);
    }

    #[test]
    fn one_dimensional_square_fails() {
        let (h, b) = magic_square();
        for mask in 0u32..1 << 9 {
            let signs: Vec<bool> = (0..9).map(|k| mask >> k & 1 == 1).collect();
            assert!(!verify_operator_solution(&h, &b, &scalar(&h, &signs)).unwrap().pass);
        }
    }

    #[test]
    fn identity_solves_even_systems() {
        let (h, _) = magic_square();
        let b = VertexLabelling::zeros(&h);
        let sol = OperatorSolution {
            dimension: 3,
            matrices: h.edges().iter().map(|e| (e.clone(), CMatrix::identity(3))).collect(),
            tolerance: DEFAULT_TOLERANCE,
        };
        assert!(verify_operator_solution(&h, &b, &sol).unwrap().pass);
    }

    #[test]
    fn dimension_mismatch() {
        let (h, b) = magic_square();
        let mut sol = magic_square_pauli();
        sol.matrices.insert("x11".into(), CMatrix::identity(2));
        assert!(matches!(verify_operator_solution(&h, &b, &sol), Err(OperatorError::DimensionMismatch { .. })));
        let json =
            OperatorSolutionJson { dimension: 2, tolerance: 1e-9, matrices: [("x11".into(), vec![[1.0, 0.0]])].into() };
        assert!(matches!(json.build(), Err(OperatorError::DimensionMismatch { .. })));
    }

    #[test]
    fn pauli_algebra() {
        let sol = magic_square_pauli();
        let y = &sol.matrices["x33"];
        assert!(y.mul(y).distance(&CMatrix::identity(4)) < 1e-12);
        assert!(y.adjoint().distance(y) < 1e-12);
    }

    proptest! {
        #[test]
        fn scalar_check_matches_gf2(h in crate::hypergraph::tests::small_hypergraph(), bits in prop::collection::vec(any::<bool>(), 16)) {
            prop_assume!(h.num_edges() <= 8);
            let b = VertexLabelling((0..h.num_vertices()).map(|v| bits[v % 16]).collect());
            let ls = to_linear_system(&h, &b);
            let solvable = matches!(classical_perfect_strategy(&ls).unwrap(), Gf2Outcome::Solvable { .. });
            let any_pass = (0u32..1 << h.num_edges()).any(|mask| {
                let signs: Vec<bool> = (0..h.num_edges()).map(|k| mask >> k & 1 == 1).collect();
                verify_operator_solution(&h, &b, &scalar(&h, &signs)).unwrap().pass
            });
            prop_assert_eq!(solvable, any_pass);
        }
    }
}
