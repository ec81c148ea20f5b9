use std::path::PathBuf;

use clap::Subcommand;
use wagon::fixtures::FILES;
use wagon::game::{magic_square, magic_square_pauli, OperatorSolutionJson};
use wagon::hypergraph::HypergraphJson;
use wagon::{Hypergraph, VertexLabelling};

use crate::report::to_json;
use crate::CliError;

#[derive(Subcommand)]
pub enum Action {
    /// Print the example names.
    List,
    /// Print one example, or write it into a directory.
    Emit {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

const GENERATED: [&str; 3] = ["magic_square.json", "pauli.json", "trivial.json"];

/// `x + y = 0`, `y + z = 1`.
fn trivial() -> (Hypergraph, VertexLabelling) {
    let inc = [("p", "x"), ("p", "y"), ("q", "y"), ("q", "z")].map(|(v, e)| (v.to_string(), e.to_string(), 1));
    let h = Hypergraph::from_parts(["p", "q"].map(String::from), ["x", "y", "z"].map(String::from), inc)
        .expect("trivial system");
    (h, VertexLabelling(vec![false, true]))
}

fn contents(name: &str) -> Option<String> {
    match name {
        "magic_square.json" => {
            let (h, b) = magic_square();
            Some(to_json(&HypergraphJson::new(&h, &b)))
        }
        "pauli.json" => Some(to_json(&OperatorSolutionJson::from(&magic_square_pauli()))),
        "trivial.json" => {
            let (h, b) = trivial();
            Some(to_json(&HypergraphJson::new(&h, &b)))
        }
        _ => FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| t.to_string()),
    }
}

pub fn run(action: Action) -> Result<(), CliError> {
    match action {
        Action::List => {
            let mut names: Vec<&str> = FILES.iter().map(|(n, _)| *n).chain(GENERATED).collect();
            names.sort_unstable();
            for n in names {
                println!("{n}");
            }
            Ok(())
        }
        Action::Emit { name, out } => {
            let text = contents(&name).ok_or_else(|| CliError::Input(format!("no example named `{name}`")))?;
            match out {
                None => print!("{text}"),
                Some(dir) => {
                    std::fs::create_dir_all(&dir).map_err(|e| CliError::Output(format!("{}: {e}", dir.display())))?;
                    let path = dir.join(&name);
                    std::fs::write(&path, text).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?;
                    println!("{}", path.display());
                }
            }
            Ok(())
        }
    }
}
