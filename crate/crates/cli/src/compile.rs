use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::ValueEnum;
use serde_json::json;
use wagon::dot::hypergraph_dot;
use wagon::game::{to_game, to_linear_system};
use wagon::hypergraph::{solution_group_presentation, HypergraphJson};
use wagon::passes::{compile, CompileOptions};
use wagon::presentation::{parse, parse_free_word, serialize, FreeWord, ParsedPresentation};
use wagon::wagonwheel::{is_inv_labelling, LabellingMode};

use crate::report::{to_json, RunReport};
use crate::{emit_dir, CliError, Emit};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Labelling {
    /// One 1 per odd wheel, at position 0.
    Any,
    /// Placed so the standard cycles form a constellation.
    Constellation,
}

#[derive(clap::Args)]
pub struct Args {
    /// Presentation file (`presentation` or `invpresentation`).
    file: PathBuf,
    /// Comma-separated words over the input generators to turn into involutions; '' for none.
    #[arg(long, default_value = "")]
    involutions: String,
    /// Require the input to be a presentation by involutions.
    #[arg(long)]
    already_involutive: bool,
    /// Do not fail when the final presentation is not collegial.
    #[arg(long)]
    skip_collegial_check: bool,
    /// Override k for one generator, as NAME=N. Repeatable.
    #[arg(long = "k", value_name = "NAME=N")]
    k: Vec<String>,
    #[arg(long, value_enum, default_value = "constellation")]
    labelling: Labelling,
    /// Directory for the artifacts; without it only the report is printed.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    emit: Option<Emit>,
    #[arg(long)]
    timestamps: bool,
}

fn parse_k(items: &[String]) -> Result<BTreeMap<String, usize>, CliError> {
    items
        .iter()
        .map(|s| {
            let (name, n) = s.split_once('=').ok_or_else(|| CliError::Input(format!("--k {s}: expected NAME=N")))?;
            let n = n.parse().map_err(|_| CliError::Input(format!("--k {s}: `{n}` is not a number")))?;
            Ok((name.to_string(), n))
        })
        .collect()
}

pub fn run(a: Args) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("compile");
    let dot_dir = emit_dir(a.emit, &a.out)?;
    let text = report.read(&a.file)?;
    let input = parse(&text).map_err(|e| CliError::Input(format!("{}: {e}", a.file.display())))?;
    if a.already_involutive && !matches!(input, ParsedPresentation::Inv(_)) {
        return Err(CliError::Input(format!("{}: --already-involutive needs an invpresentation", a.file.display())));
    }
    let involutions: Vec<FreeWord> = match &input {
        ParsedPresentation::Free(p) => a
            .involutions
            .split(',')
            .map(str::trim)
            .filter(|w| !w.is_empty())
            .map(|w| {
                parse_free_word(w, &p.generators).map_err(|e| CliError::Input(format!("--involutions `{w}`: {e}")))
            })
            .collect::<Result<_, _>>()?,
        ParsedPresentation::Inv(_) if !a.involutions.trim().is_empty() => {
            return Err(CliError::Input("--involutions applies only to free presentations".into()));
        }
        ParsedPresentation::Inv(_) => Vec::new(),
    };
    let labelling = match a.labelling {
        Labelling::Any => LabellingMode::Any,
        Labelling::Constellation => LabellingMode::Constellation,
    };
    let options = CompileOptions { k: parse_k(&a.k)?, labelling };
    let result = compile(&input, &involutions, &options).map_err(|e| CliError::Input(e.to_string()))?;

    let s = &result.stats;
    let expected_vertices = 3 * s.total_length;
    let expected_edges = 4 * s.total_length + s.generators;
    report.stat("total_length", s.total_length);
    report.stat("generators", s.generators);
    report.stat("relations", s.relations);
    report.stat("vertices", s.vertices);
    report.stat("edges", s.edges);
    report.stat("labelled_ones", result.labelling.ones().count());
    report.stat("collegial", s.collegial);
    report.stat(
        "stages",
        result
            .stages
            .iter()
            .map(|st| {
                json!({
                    "name": st.name,
                    "generators": st.presentation.generators.len(),
                    "relations": st.presentation.relations.len(),
                    "total_length": st.presentation.total_length(),
                })
            })
            .collect::<Vec<_>>(),
    );
    report.check(
        "vertices_3M",
        s.vertices == expected_vertices,
        Some(json!({"expected": expected_vertices, "found": s.vertices})),
    );
    report.check(
        "edges_4M_plus_S",
        s.edges == expected_edges,
        Some(json!({"expected": expected_edges, "found": s.edges})),
    );
    if !a.skip_collegial_check {
        let c = result.final_presentation().is_collegial();
        report.check("collegial", c.collegial, c.violation.map(|v| serde_json::to_value(v).expect("violation")));
    }
    report.check("inv_labelling", is_inv_labelling(&result.wagonwheel, &result.labelling), None);

    if let Some(dir) = &a.out {
        let h = result.hypergraph();
        let b = &result.labelling;
        report.write(dir, "hypergraph.json", &to_json(&HypergraphJson::new(h, b)))?;
        let ones: Vec<&str> = b.ones().map(|v| h.vertex_name(v)).collect();
        report.write(dir, "labelling.json", &to_json(&ones))?;
        let ls = to_linear_system(h, b);
        report.write(dir, "system.json", &to_json(&ls))?;
        report.write(dir, "game.json", &to_json(&to_game(&ls)))?;
        report.write(dir, "solution_group.txt", &solution_group_presentation(h, b).render())?;
        let trace: BTreeMap<String, String> = result.generator_trace.render().into_iter().collect();
        let trace = json!({
            "generators": trace,
            "involution_generators": result.involution_generators,
            "wheels": result.wagonwheel.index(),
        });
        report.write(dir, "trace.json", &to_json(&trace))?;
        if let Some(n) = &result.normalized {
            report.write(dir, "normalized.grp", &serialize(&ParsedPresentation::Free(n.clone())))?;
        }
        for (k, st) in result.stages.iter().enumerate() {
            let name = format!("stage{}.{}.grp", k + 1, st.name);
            report.write(dir, &name, &serialize(&ParsedPresentation::Inv(st.presentation.clone())))?;
        }
    }
    if let Some(dir) = dot_dir {
        report.write(&dir, "hypergraph.dot", &hypergraph_dot(result.hypergraph(), &result.labelling))?;
    }
    report.stamp(a.timestamps);
    Ok(report)
}
