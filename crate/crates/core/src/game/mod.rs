//! Linear systems over GF(2), the associated non-local game, and checks on
//! classical and operator solutions.
//!
//! Game convention: the referee picks a pair `(v, e)` uniformly among all
//! pairs with `e` in the support of constraint `v`. Alice answers `v` with a
//! satisfying assignment, Bob answers `e` with a bit, and they win when the
//! two agree on `e`. A constraint with empty support contributes one question
//! `(v, -)`, won exactly when its right-hand side is 0.

mod builtins;
mod operator;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{self, BitRow, Gf2Outcome};
use crate::hypergraph::{Hypergraph, VertexLabelling};

pub use builtins::{
    builtin, figure3_invpresentation, higman_hnn_presentation, magic_square, magic_square_pauli, Builtin, BUILTIN_NAMES,
};
pub use operator::{
    verify_operator_solution, CMatrix, OperatorError, OperatorReport, OperatorSolution, OperatorSolutionJson,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub v: String,
    pub support: Vec<String>,
    pub b: u8,
}

/// An incidence entry whose multiplicity was reduced mod 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    pub v: String,
    pub e: String,
    pub m: u32,
}

/// `{"vars":[…],"rows":[{"v","support","b"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearSystem {
    pub vars: Vec<String>,
    pub rows: Vec<Row>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reductions: Vec<Reduction>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("{strategies} deterministic strategy pairs exceed the cap of {cap}")]
    CapExceeded { strategies: String, cap: u64 },
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
}

pub fn to_linear_system(h: &Hypergraph, b: &VertexLabelling) -> LinearSystem {
    let mut reductions = Vec::new();
    let rows = (0..h.num_vertices())
        .map(|v| {
            let mut support = Vec::new();
            for &(e, m) in h.vertex_incidence(v) {
                if m > 1 {
                    reductions.push(Reduction { v: h.vertex_name(v).into(), e: h.edge_name(e).into(), m });
                }
                if m % 2 == 1 {
                    support.push(h.edge_name(e).to_string());
                }
            }
            Row { v: h.vertex_name(v).to_string(), support, b: u8::from(b.get(v)) }
        })
        .collect();
    LinearSystem { vars: h.edges().to_vec(), rows, reductions }
}

impl LinearSystem {
    /// Rows as bit vectors over `vars`.
    pub fn matrix(&self) -> Result<(Vec<BitRow>, Vec<bool>), GameError> {
        let index: std::collections::HashMap<&str, usize> =
            self.vars.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut rows = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            let mut row = BitRow::zeros(self.vars.len());
            for e in &r.support {
                row.flip(*index.get(e.as_str()).ok_or_else(|| GameError::UnknownVariable(e.clone()))?);
            }
            rows.push(row);
        }
        Ok((rows, self.rows.iter().map(|r| r.b == 1).collect()))
    }

    fn supports(&self) -> Result<Vec<Vec<usize>>, GameError> {
        let (rows, _) = self.matrix()?;
        Ok(rows.iter().map(|r| r.ones().collect()).collect())
    }
}

/// A solution of `A x = b`, or the rows whose sum is `0 = 1`.
pub fn classical_perfect_strategy(ls: &LinearSystem) -> Result<Gf2Outcome, GameError> {
    let (rows, rhs) = ls.matrix()?;
    Ok(gf2::solve(ls.vars.len(), &rows, &rhs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AliceQuestion {
    pub constraint: String,
    pub variables: Vec<String>,
    pub parity: u8,
    /// Every satisfying assignment, listed when the support has at most
    /// [`ANSWER_TABLE_LIMIT`] variables.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub answers: Option<Vec<Vec<u8>>>,
}

pub const ANSWER_TABLE_LIMIT: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonlocalGame {
    pub alice_questions: Vec<AliceQuestion>,
    pub bob_questions: Vec<String>,
    pub bob_answers: Vec<u8>,
    pub distribution: String,
    pub win: String,
}

pub fn to_game(ls: &LinearSystem) -> NonlocalGame {
    let alice_questions = ls
        .rows
        .iter()
        .map(|r| {
            let w = r.support.len();
            let answers = (w <= ANSWER_TABLE_LIMIT).then(|| {
                (0u32..1 << w)
                    .filter(|m| (m.count_ones() % 2) as u8 == r.b)
                    .map(|m| (0..w).map(|i| (m >> i & 1) as u8).collect())
                    .collect()
            });
            AliceQuestion { constraint: r.v.clone(), variables: r.support.clone(), parity: r.b, answers }
        })
        .collect();
    NonlocalGame {
        alice_questions,
        bob_questions: ls.vars.clone(),
        bob_answers: vec![0, 1],
        distribution: "uniform over (constraint, variable in its support); (constraint, -) for empty supports".into(),
        win: "Alice's value for the asked variable equals Bob's bit; empty constraints win iff parity is 0".into(),
    }
}

/// `log₂` of the number of deterministic strategy pairs.
pub fn strategy_bits(ls: &LinearSystem) -> Result<Option<u32>, GameError> {
    let supports = ls.supports()?;
    let mut bits = ls.vars.len() as u32;
    for (s, r) in supports.iter().zip(&ls.rows) {
        match s.len() {
            0 if r.b == 1 => return Ok(None),
            0 => {}
            w => bits += w as u32 - 1,
        }
    }
    Ok(Some(bits))
}

/// Best winning probability over deterministic strategies. Bob's strategies
/// are enumerated; Alice best-responds per constraint.
pub fn classical_value(ls: &LinearSystem, cap: u64) -> Result<Ratio<u64>, GameError> {
    let supports = ls.supports()?;
    if let Some(bits) = strategy_bits(ls)? {
        if bits >= 64 || (1u64 << bits) > cap {
            return Err(GameError::CapExceeded { strategies: format!("2^{bits}"), cap });
        }
    }
    let n = ls.vars.len();
    if ls.rows.is_empty() {
        return Ok(Ratio::from_integer(1));
    }
    let questions: u64 = supports.iter().map(|s| s.len().max(1) as u64).sum();
    let mut best = 0;
    for bob in 0u64..1 << n {
        let mut wins = 0;
        for (s, r) in supports.iter().zip(&ls.rows) {
            let w = s.len() as u64;
            let parity = s.iter().filter(|&&e| bob >> e & 1 == 1).count() % 2;
            wins += match (w, parity == r.b as usize) {
                (0, ok) => u64::from(ok),
                (w, true) => w,
                // Alice must disagree with Bob on at least one variable.
                (w, false) => w - 1,
            };
        }
        best = best.max(wins);
        if best == questions {
            break;
        }
    }
    Ok(Ratio::new(best, questions))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn three_parallel() -> (Hypergraph, VertexLabelling) {
        let h = Hypergraph::from_parts(
            ["u", "v"],
            ["x", "y", "z"],
            [("u", "x", 1), ("u", "y", 1), ("u", "z", 1), ("v", "x", 1), ("v", "y", 1), ("v", "z", 1)],
        )
        .unwrap();
        (h, VertexLabelling(vec![true, false]))
    }

    #[test]
    fn two_vertex_example() {
        let (h, b) = three_parallel();
        let ls = to_linear_system(&h, &b);
        let (rows, rhs) = ls.matrix().unwrap();
        assert!(rows.iter().all(|r| r.ones().collect::<Vec<_>>() == [0, 1, 2]));
        assert_eq!(rhs, [true, false]);
        assert!(matches!(classical_perfect_strategy(&ls).unwrap(), Gf2Outcome::Inconsistent { .. }));
        assert!(classical_value(&ls, 1 << 20).unwrap() < Ratio::from_integer(1));
    }

    #[test]
    fn trivial_systems() {
        let h = Hypergraph::from_parts(["u"], ["x", "y"], [("u", "x", 1), ("u", "y", 1)]).unwrap();
        let ls = to_linear_system(&h, &VertexLabelling(vec![false]));
        assert_eq!(classical_perfect_strategy(&ls).unwrap(), Gf2Outcome::Solvable { x: vec![false, false] });
        let h = Hypergraph::from_parts(["u"], Vec::<&str>::new(), Vec::<(&str, &str, u32)>::new()).unwrap();
        let ls = to_linear_system(&h, &VertexLabelling(vec![false]));
        assert!(ls.vars.is_empty());
        assert_eq!(classical_value(&ls, 16).unwrap(), Ratio::from_integer(1));
    }

    #[test]
    fn magic_square_classical() {
        let (h, b) = magic_square();
        let ls = to_linear_system(&h, &b);
        assert_eq!((ls.rows.len(), ls.vars.len()), (6, 9));
        assert!(ls.rows.iter().all(|r| r.support.len() == 3));
        assert_eq!(ls.rows.iter().map(|r| r.b as u32).sum::<u32>() % 2, 1);
        assert!(matches!(classical_perfect_strategy(&ls).unwrap(), Gf2Outcome::Inconsistent { .. }));
        assert_eq!(classical_value(&ls, 1 << 22).unwrap(), Ratio::new(17, 18));
        assert!(matches!(classical_value(&ls, 1000), Err(GameError::CapExceeded { .. })));
        let game = to_game(&ls);
        assert!(game.alice_questions.iter().all(|q| q.answers.as_ref().unwrap().len() == 4));
    }

    #[test]
    fn multiplicities_reduce_mod_two() {
        let h = Hypergraph::from_parts(["u"], ["x", "y"], [("u", "x", 2), ("u", "y", 3)]).unwrap();
        let ls = to_linear_system(&h, &VertexLabelling(vec![true]));
        assert_eq!(ls.rows[0].support, ["y"]);
        assert_eq!(ls.reductions.len(), 2);
    }

    /// Literal enumeration of every deterministic strategy pair.
    fn enumerate_value(ls: &LinearSystem) -> Ratio<u64> {
        let supports = ls.supports().unwrap();
        let n = ls.vars.len();
        let answer_sets: Vec<Vec<u32>> = supports
            .iter()
            .zip(&ls.rows)
            .map(|(s, r)| (0u32..1 << s.len()).filter(|m| (m.count_ones() % 2) as u8 == r.b).collect())
            .collect();
        let questions: u64 = supports.iter().map(|s| s.len().max(1) as u64).sum();
        if questions == 0 {
            return Ratio::from_integer(1);
        }
        let mut best = 0;
        for bob in 0u32..1 << n {
            let mut total = 0;
            for (k, s) in supports.iter().enumerate() {
                total += if s.is_empty() {
                    u64::from(ls.rows[k].b == 0)
                } else {
                    answer_sets[k]
                        .iter()
                        .map(|&a| s.iter().enumerate().filter(|&(i, &e)| (a >> i & 1) == (bob >> e & 1)).count())
                        .max()
                        .unwrap_or(0) as u64
                };
            }
            best = best.max(total);
        }
        Ratio::new(best, questions)
    }

    fn small_system() -> impl Strategy<Value = LinearSystem> {
        (0usize..=4).prop_flat_map(|n| {
            prop::collection::vec((prop::collection::vec(any::<bool>(), n), any::<bool>()), 0..=3).prop_map(
                move |rows| LinearSystem {
                    vars: (0..n).map(|i| format!("x{i}")).collect(),
                    rows: rows
                        .into_iter()
                        .enumerate()
                        .map(|(k, (mask, b))| Row {
                            v: format!("r{k}"),
                            support: (0..n).filter(|&i| mask[i]).map(|i| format!("x{i}")).collect(),
                            b: u8::from(b),
                        })
                        .collect(),
                    reductions: vec![],
                },
            )
        })
    }

    proptest! {
        #[test]
        fn perfect_iff_value_one(ls in small_system()) {
            let solvable = matches!(classical_perfect_strategy(&ls).unwrap(), Gf2Outcome::Solvable { .. });
            let value = classical_value(&ls, u64::MAX).unwrap();
            prop_assert_eq!(value, enumerate_value(&ls));
            prop_assert_eq!(solvable, value == Ratio::from_integer(1));
        }
    }
}
