use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::Subcommand;
use serde::Deserialize;
use serde_json::json;
use wagon::dot::picture_dot;
use wagon::hypergraph::{HypergraphJson, MorphismJson};
use wagon::passes::{compile, CompileOptions};
use wagon::picture::{
    apply_morphism, certifies_g, certifies_h, character, dot, sign, validate, validate_g_labels, validate_h_labels,
    Picture,
};
use wagon::presentation::{parse, parse_inv_word, Generators, InvPresentation, ParsedPresentation};
use wagon::wagonwheel::{is_constellation, is_inv_labelling, standard_cycles, standard_witnesses, LabellingMode};
use wagon::{build_wagon_wheel, Hypergraph, VertexLabelling};

use crate::report::{to_json, RunReport};
use crate::{emit_dir, CliError, Emit};

/// Node budget for retraction searches when no witness is known.
const SEARCH_BUDGET: u64 = 5_000_000;

#[derive(Subcommand)]
pub enum Kind {
    /// Validate a picture, optionally checking that it proves a relation.
    Picture {
        file: PathBuf,
        /// Read labels as generators of this presentation.
        #[arg(long, conflicts_with = "hypergraph", required_unless_present = "hypergraph")]
        presentation: Option<PathBuf>,
        /// Read labels as edges and vertices of this hypergraph.
        #[arg(long)]
        hypergraph: Option<PathBuf>,
        /// Word the boundary must spell, optionally starting with `J`.
        #[arg(long)]
        certifies: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        emit: Option<Emit>,
    },
    /// Validate a generalized morphism, optionally pushing a picture through it.
    Morphism {
        file: PathBuf,
        #[arg(long)]
        src: PathBuf,
        #[arg(long)]
        dst: PathBuf,
        /// H-picture over the source to map to the target.
        #[arg(long)]
        picture: Option<PathBuf>,
        /// Directory for the mapped picture.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the constellation conditions for a family of cycles.
    Constellation {
        #[arg(long, requires = "cycles", conflicts_with = "wheel", required_unless_present = "wheel")]
        hypergraph: Option<PathBuf>,
        /// JSON list of `{"name", "vertices", "edges"}`.
        #[arg(long)]
        cycles: Option<PathBuf>,
        /// Use the standard cycles of the wagon wheel of this presentation.
        #[arg(long)]
        wheel: Option<PathBuf>,
    },
    /// Check that a presentation by involutions is collegial.
    Collegial { file: PathBuf },
    /// Check that a hypergraph's labelling suits the wagon wheel of a presentation.
    Labelling {
        file: PathBuf,
        #[arg(long)]
        presentation: PathBuf,
    },
}

#[derive(Deserialize)]
struct NamedCycle {
    name: String,
    vertices: Vec<String>,
    edges: Vec<String>,
}

fn input<T>(path: &Path, r: Result<T, impl std::fmt::Display>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn hypergraph(report: &mut RunReport, path: &Path) -> Result<(Hypergraph, VertexLabelling), CliError> {
    let text = report.read(path)?;
    let j: HypergraphJson = input(path, serde_json::from_str(&text))?;
    input(path, j.build())
}

fn presentation(report: &mut RunReport, path: &Path) -> Result<ParsedPresentation, CliError> {
    let text = report.read(path)?;
    input(path, parse(&text))
}

fn inv_presentation(report: &mut RunReport, path: &Path) -> Result<InvPresentation, CliError> {
    match presentation(report, path)? {
        ParsedPresentation::Inv(p) => Ok(p),
        ParsedPresentation::Free(_) => Err(CliError::Input(format!("{}: expected an invpresentation", path.display()))),
    }
}

fn picture(report: &mut RunReport, path: &Path) -> Result<Picture, CliError> {
    let text = report.read(path)?;
    input(path, serde_json::from_str(&text))
}

fn outcome<E: std::fmt::Display>(r: &Result<(), E>) -> (bool, Option<serde_json::Value>) {
    match r {
        Ok(()) => (true, None),
        Err(e) => (false, Some(json!(e.to_string()))),
    }
}

pub fn run(kind: Kind) -> Result<RunReport, CliError> {
    match kind {
        Kind::Picture { file, presentation: pres, hypergraph: hg, certifies, out, emit } => {
            let mut report = RunReport::new("check picture");
            let dot_dir = emit_dir(emit, &out)?;
            let p = picture(&mut report, &file)?;
            report.stat("vertices", p.vertices.len());
            report.stat("edges", p.edges.len());
            report.stat("closed", p.closed);
            report.stat("boundary", p.boundary_word().join(" "));
            let (ok, detail) = outcome(&validate(&p));
            report.check("valid", ok, detail);
            if let Some(path) = pres {
                let g = inv_presentation(&mut report, &path)?;
                let labels = validate_g_labels(&p, &g);
                let (ok, detail) = outcome(&labels);
                report.check("labels", ok, detail);
                if ok {
                    report.stat("sign", u8::from(sign(&p, &g).expect("labels validated")));
                }
                if let Some(w) = certifies {
                    let word =
                        parse_inv_word(&w, &g.generators).map_err(|e| CliError::Input(format!("--certifies: {e}")))?;
                    let r = certifies_g(&p, &g, &word);
                    report.check("certifies", matches!(r, Ok(true)), r.err().map(|e| json!(e.to_string())));
                }
            } else if let Some(path) = hg {
                let (h, b) = hypergraph(&mut report, &path)?;
                let labels = validate_h_labels(&p, &h);
                let (ok, detail) = outcome(&labels);
                report.check("labels", ok, detail);
                if ok {
                    let ch = character(&p, &h).expect("labels validated");
                    report.stat("ch_dot_b", u8::from(dot(&ch, &b)));
                }
                if let Some(w) = certifies {
                    let mut gens = Generators::new();
                    for e in h.edges() {
                        gens.push(e.clone());
                    }
                    let word = parse_inv_word(&w, &gens).map_err(|e| CliError::Input(format!("--certifies: {e}")))?;
                    let r = certifies_h(&p, &h, &b, &word);
                    report.check("certifies", matches!(r, Ok(true)), r.err().map(|e| json!(e.to_string())));
                }
            }
            if let Some(dir) = dot_dir {
                report.write(&dir, "picture.dot", &picture_dot(&p))?;
            }
            Ok(report)
        }
        Kind::Morphism { file, src, dst, picture: pic, out } => {
            let mut report = RunReport::new("check morphism");
            let text = report.read(&file)?;
            let m: MorphismJson = input(&file, serde_json::from_str(&text))?;
            let (h1, _) = hypergraph(&mut report, &src)?;
            let (h2, _) = hypergraph(&mut report, &dst)?;
            let phi = input(&file, m.build(Arc::new(h1), Arc::new(h2)))?;
            let valid = phi.validate();
            let (ok, detail) = outcome(&valid);
            report.check("valid", ok, detail);
            let deleted_vertices =
                (0..phi.source.num_vertices()).filter(|&v| phi.vertex_image_name(v).is_none()).count();
            let deleted_edges = (0..phi.source.num_edges()).filter(|&e| phi.edge_image_name(e).is_none()).count();
            report.stat("deleted_vertices", deleted_vertices);
            report.stat("deleted_edges", deleted_edges);
            report.stat("retraction", phi.is_retraction());
            if let Some(path) = pic {
                let p = picture(&mut report, &path)?;
                match apply_morphism(&phi, &p) {
                    Ok(q) => {
                        report.stat("picture_in", p.vertices.len());
                        report.stat("picture_out", q.vertices.len());
                        report.stat("boundary_out", q.boundary_word().join(" "));
                        report.check("apply", true, None);
                        if let Some(dir) = &out {
                            report.write(dir, "picture.json", &to_json(&q))?;
                        }
                    }
                    Err(e) => report.check("apply", false, Some(json!(e.to_string()))),
                }
            }
            Ok(report)
        }
        Kind::Constellation { hypergraph: hg, cycles, wheel } => {
            let mut report = RunReport::new("check constellation");
            let (h, b, phi, witnesses) = if let Some(path) = wheel {
                let p = presentation(&mut report, &path)?;
                let options = CompileOptions { labelling: LabellingMode::Constellation, ..Default::default() };
                let r = compile(&p, &[], &options).map_err(|e| CliError::Input(e.to_string()))?;
                let w = r.wagonwheel;
                let phi = standard_cycles(&w).map_err(|e| CliError::Input(e.to_string()))?.phi();
                let witnesses = standard_witnesses(&w);
                (w.hypergraph.clone(), r.labelling, phi, witnesses)
            } else {
                let hg = hg.expect("clap requires --hypergraph");
                let (h, b) = hypergraph(&mut report, &hg)?;
                let cpath = cycles.expect("clap requires --cycles");
                let text = report.read(&cpath)?;
                let list: Vec<NamedCycle> = input(&cpath, serde_json::from_str(&text))?;
                let mut phi = Vec::new();
                for c in list {
                    let vs: Vec<&str> = c.vertices.iter().map(String::as_str).collect();
                    let es: Vec<&str> = c.edges.iter().map(String::as_str).collect();
                    phi.push((c.name.clone(), input(&cpath, h.sub(&vs, &es))?));
                }
                (Arc::new(h), b, phi, BTreeMap::new())
            };
            report.stat("cycles", phi.len());
            report.stat("witnesses", witnesses.len());
            let r = is_constellation(&h, &b, &phi, &witnesses, SEARCH_BUDGET);
            let stellar: Vec<&str> = r.stellar.iter().filter(|(_, s)| s.stellar).map(|(n, _)| n.as_str()).collect();
            report.stat("stellar", stellar);
            report.check(
                "constellation",
                r.constellation,
                (!r.violations.is_empty()).then(|| serde_json::to_value(&r.violations).expect("violations")),
            );
            Ok(report)
        }
        Kind::Collegial { file } => {
            let mut report = RunReport::new("check collegial");
            let p = inv_presentation(&mut report, &file)?;
            report.stat("generators", p.generators.len());
            report.stat("relations", p.relations.len());
            report.stat("total_length", p.total_length());
            let c = p.is_collegial();
            report.check("collegial", c.collegial, c.violation.map(|v| serde_json::to_value(v).expect("violation")));
            Ok(report)
        }
        Kind::Labelling { file, presentation: path } => {
            let mut report = RunReport::new("check labelling");
            let (h, b) = hypergraph(&mut report, &file)?;
            let p = inv_presentation(&mut report, &path)?;
            let w = build_wagon_wheel(&p).map_err(|e| CliError::Input(e.to_string()))?;
            let same = *w.hypergraph == h;
            report.check("same_wagon_wheel", same, None);
            if same {
                report.check("inv_labelling", is_inv_labelling(&w, &b), None);
            }
            report.stat("labelled_ones", b.ones().count());
            Ok(report)
        }
    }
}
