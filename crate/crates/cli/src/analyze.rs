use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use wagon::game::{
    classical_perfect_strategy, classical_value, magic_square, strategy_bits, to_linear_system,
    verify_operator_solution, GameError, LinearSystem, OperatorSolutionJson,
};
use wagon::gf2::Gf2Outcome;
use wagon::hypergraph::HypergraphJson;
use wagon::{Hypergraph, VertexLabelling};

use crate::report::RunReport;
use crate::CliError;

#[derive(clap::Args)]
pub struct Args {
    /// Hypergraph JSON (with `b`) or linear-system JSON (`vars`/`rows`).
    #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
    system: Option<PathBuf>,
    #[arg(long, value_parser = ["magic_square"])]
    builtin: Option<String>,
    /// Compute the classical value by enumerating deterministic strategies.
    #[arg(long)]
    classical_value: bool,
    /// Largest number of deterministic strategy pairs to enumerate.
    #[arg(long, default_value_t = 1 << 24)]
    cap: u64,
    /// Operator solution to verify.
    #[arg(long)]
    verify_ops: Option<PathBuf>,
}

/// Reads a linear system as the hypergraph with one vertex per row.
fn from_linear_system(ls: &LinearSystem) -> Result<(Hypergraph, VertexLabelling), String> {
    let incidence = ls.rows.iter().flat_map(|r| r.support.iter().map(move |e| (r.v.clone(), e.clone(), 1)));
    let h = Hypergraph::from_parts(ls.rows.iter().map(|r| r.v.clone()), ls.vars.iter().cloned(), incidence)
        .map_err(|e| e.to_string())?;
    if let Some(r) = ls.rows.iter().find(|r| r.b > 1) {
        return Err(format!("row `{}` has b = {}", r.v, r.b));
    }
    Ok((h, VertexLabelling(ls.rows.iter().map(|r| r.b == 1).collect())))
}

fn load(report: &mut RunReport, path: &Path) -> Result<(Hypergraph, VertexLabelling), CliError> {
    let text = report.read(path)?;
    let bad = |e: String| CliError::Input(format!("{}: {e}", path.display()));
    let v: Value = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
    if v.get("vars").is_some() {
        let ls: LinearSystem = serde_json::from_value(v).map_err(|e| bad(e.to_string()))?;
        from_linear_system(&ls).map_err(bad)
    } else {
        let j: HypergraphJson = serde_json::from_value(v).map_err(|e| bad(e.to_string()))?;
        j.build().map_err(|e| bad(e.to_string()))
    }
}

pub fn run(a: Args) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("analyze");
    let (h, b) = match (&a.system, &a.builtin) {
        (Some(path), _) => load(&mut report, path)?,
        (None, Some(_)) => {
            report.stat("builtin", "magic_square");
            magic_square()
        }
        (None, None) => unreachable!("clap requires a system"),
    };
    let ls = to_linear_system(&h, &b);
    report.stat("constraints", ls.rows.len());
    report.stat("variables", ls.vars.len());
    report.stat("odd_constraints", ls.rows.iter().filter(|r| r.b == 1).count());

    let strategy = classical_perfect_strategy(&ls).map_err(|e| CliError::Input(e.to_string()))?;
    match strategy {
        Gf2Outcome::Solvable { x } => {
            let assignment: BTreeMap<&str, u8> =
                ls.vars.iter().map(String::as_str).zip(x.iter().map(|&v| u8::from(v))).collect();
            report.stat("perfect_classical_strategy", true);
            report.stat("assignment", assignment);
        }
        Gf2Outcome::Inconsistent { rows } => {
            let names: Vec<&str> = rows.iter().map(|&r| ls.rows[r].v.as_str()).collect();
            report.stat("perfect_classical_strategy", false);
            report.stat("inconsistent_rows", names);
        }
    }

    if a.classical_value {
        report.stat("strategy_bits", strategy_bits(&ls).map_err(|e| CliError::Input(e.to_string()))?);
        match classical_value(&ls, a.cap) {
            Ok(v) => report.stat("classical_value", v.to_string()),
            Err(GameError::CapExceeded { strategies, cap }) => {
                report.stat("classical_value", Value::Null);
                report.stat("cap_exceeded", json!({"strategies": strategies, "cap": cap}));
            }
            Err(e) => return Err(CliError::Input(e.to_string())),
        }
    }

    if let Some(path) = &a.verify_ops {
        let text = report.read(path)?;
        let bad = |e: String| CliError::Input(format!("{}: {e}", path.display()));
        let j: OperatorSolutionJson = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
        let sol = j.build().map_err(|e| bad(e.to_string()))?;
        let r = verify_operator_solution(&h, &b, &sol).map_err(|e| bad(e.to_string()))?;
        let j_rep = if !r.pass {
            Value::Null
        } else if r.vertices.iter().any(|c| c.b == 1) {
            json!("-I")
        } else {
            json!("undetermined")
        };
        report.stat("j_representation", j_rep);
        report.check("operator_solution", r.pass, Some(serde_json::to_value(&r).expect("operator report")));
    }
    Ok(report)
}
