//! From a finite presentation to a collegial presentation by involutions, and on
//! to the wagon wheel.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{Hypergraph, VertexLabelling};
use crate::presentation::{
    CollegialReport, FreeWord, GenId, Generators, InvPresentation, InvWord, Letter, ParsedPresentation, Presentation,
};
use crate::wagonwheel::{build_wagon_wheel, choose_labelling, LabellingMode, WagonWheel, WagonWheelError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PassError {
    #[error("relation {0} is not cyclically reduced")]
    NotCyclicallyReduced(usize),
    #[error("the J word is not cyclically reduced")]
    JNotCyclicallyReduced,
    #[error("k for generator `{0}` must be at least 1")]
    BadK(String),
    #[error("generated name `{0}` is already taken")]
    NameCollision(String),
    #[error("the result is not collegial: {0:?}")]
    NotCollegial(CollegialReport),
    #[error(transparent)]
    WagonWheel(#[from] WagonWheelError),
}

/// Images of the generators of a source presentation as words over a target.
/// The image of `s⁻¹` is the reverse of the image of `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorMap {
    pub source: Generators,
    pub target: Generators,
    pub images: Vec<InvWord>,
    pub j_image: InvWord,
}

impl GeneratorMap {
    pub fn identity(g: &Generators) -> Self {
        GeneratorMap {
            source: g.clone(),
            target: g.clone(),
            images: (0..g.len()).map(|s| InvWord::even(vec![s])).collect(),
            j_image: InvWord::new(true, vec![]),
        }
    }

    pub fn image_of_letter(&self, l: Letter) -> InvWord {
        let w = &self.images[l.gen];
        if l.inverse {
            InvWord::new(w.parity, w.letters.iter().rev().copied().collect())
        } else {
            w.clone()
        }
    }

    /// `φ(w)`, reduced.
    pub fn apply(&self, w: &FreeWord) -> InvWord {
        w.letters.iter().fold(InvWord::default(), |acc, &l| acc.concat(&self.image_of_letter(l))).reduce()
    }

    /// Renders `name ↦ image` for every source generator.
    pub fn render(&self) -> Vec<(String, String)> {
        self.source.names().iter().zip(&self.images).map(|(n, w)| (n.clone(), w.render(&self.target))).collect()
    }
}

fn fresh(g: &Generators, base: &str) -> String {
    let mut name = base.to_string();
    while g.contains(&name) {
        name.push('\'');
    }
    name
}

/// `s ↦ (z_{s1} z_{s2})^{k_s}`; relations `φ(r)` for `r ∈ R` followed by `J·φ(J′)`.
pub fn involution_embed(p: &Presentation, k: &[usize]) -> Result<(InvPresentation, GeneratorMap), PassError> {
    if let Some(i) = p.relations.iter().position(|r| !r.is_cyclically_reduced()) {
        return Err(PassError::NotCyclicallyReduced(i));
    }
    if !p.j_word.is_cyclically_reduced() {
        return Err(PassError::JNotCyclicallyReduced);
    }
    let mut t = Generators::new();
    let mut images = Vec::with_capacity(p.generators.len());
    for (s, name) in p.generators.names().iter().enumerate() {
        let ks = k.get(s).copied().unwrap_or(2);
        if ks == 0 {
            return Err(PassError::BadK(name.clone()));
        }
        let z1 = format!("{name}.z1");
        let z2 = format!("{name}.z2");
        let a = t.push(z1.clone()).ok_or(PassError::NameCollision(z1))?;
        let b = t.push(z2.clone()).ok_or(PassError::NameCollision(z2))?;
        images.push(InvWord::even([a, b].repeat(ks)));
    }
    let mut map = GeneratorMap { source: p.generators.clone(), target: t.clone(), images, j_image: InvWord::default() };
    let mut relations: Vec<InvWord> = p.relations.iter().map(|r| map.apply(r)).collect();
    let j_rel = InvWord::new(true, vec![]).concat(&map.apply(&p.j_word));
    map.j_image = InvWord::new(true, vec![]);
    relations.push(j_rel);
    Ok((InvPresentation::new(t, relations), map))
}

/// Output of [`make_collegial`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollegialOutput {
    /// Cyclically reduced free presentation fed to the embedding.
    pub normalized: Presentation,
    /// `Inv⟨T : R′⟩`.
    pub embedded: InvPresentation,
    /// `Inv⟨S : R⟩` with `S = T ∪ {w̄_i}`.
    pub collegial: InvPresentation,
    /// From the normalized generators to `S`.
    pub map: GeneratorMap,
    /// The generator `w̄_i` of each requested involution.
    pub involution_generators: Vec<String>,
}

/// Runs the collegial construction with `k_s = 2` unless `k` says otherwise.
pub fn make_collegial(
    p: &Presentation,
    involutions: &[FreeWord],
    k: &BTreeMap<String, usize>,
) -> Result<CollegialOutput, PassError> {
    let mut gens = p.generators.clone();
    let mut relations: Vec<FreeWord> =
        p.relations.iter().map(FreeWord::cyclically_reduce).filter(|r| !r.is_empty()).collect();
    let mut z: Option<GenId> = None;
    let mut identity_rep = |gens: &mut Generators, relations: &mut Vec<FreeWord>| -> GenId {
        *z.get_or_insert_with(|| {
            let id = gens.push(fresh(gens, "z")).expect("fresh name");
            relations.push(FreeWord::new(vec![Letter::pos(id)]));
            id
        })
    };
    let mut j_word = p.j_word.cyclically_reduce();
    if j_word.is_empty() {
        j_word = FreeWord::new(vec![Letter::pos(identity_rep(&mut gens, &mut relations))]);
    }
    let reps: Vec<FreeWord> = involutions
        .iter()
        .map(|w| {
            let r = w.reduce();
            if r.is_empty() {
                FreeWord::new(vec![Letter::pos(identity_rep(&mut gens, &mut relations))])
            } else {
                r
            }
        })
        .collect();
    let normalized = Presentation { generators: gens, relations, j_word };
    let ks: Vec<usize> = normalized.generators.names().iter().map(|n| k.get(n).copied().unwrap_or(2)).collect();
    let (embedded, map) = involution_embed(&normalized, &ks)?;

    let mut s = embedded.generators.clone();
    let mut rels = embedded.relations.clone();
    let mut involution_generators = Vec::new();
    for (i, w) in reps.iter().enumerate() {
        let name = format!("w.{}", i + 1);
        let id = s.push(name.clone()).ok_or_else(|| PassError::NameCollision(name.clone()))?;
        rels.push(InvWord::even(vec![id]).concat(&map.apply(w)));
        involution_generators.push(name);
    }
    let collegial = InvPresentation::new(s.clone(), rels);
    let report = collegial.is_collegial();
    if !report.collegial {
        return Err(PassError::NotCollegial(report));
    }
    let map = GeneratorMap { target: s, ..map };
    Ok(CollegialOutput { normalized, embedded, collegial, map, involution_generators })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompileOptions {
    /// Per-generator `k_s`; missing generators use 2.
    pub k: BTreeMap<String, usize>,
    pub labelling: LabellingMode,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    pub name: String,
    pub presentation: InvPresentation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompileStats {
    pub total_length: usize,
    pub generators: usize,
    pub relations: usize,
    pub vertices: usize,
    pub edges: usize,
    pub collegial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompilationResult {
    pub normalized: Option<Presentation>,
    pub stages: Vec<Stage>,
    pub wagonwheel: WagonWheel,
    pub labelling: VertexLabelling,
    /// From the input generators to the generators of the final presentation,
    /// which are also the generator edges of the wagon wheel.
    pub generator_trace: GeneratorMap,
    pub involution_generators: Vec<String>,
    pub stats: CompileStats,
}

impl CompilationResult {
    pub fn hypergraph(&self) -> &Arc<Hypergraph> {
        &self.wagonwheel.hypergraph
    }

    pub fn final_presentation(&self) -> &InvPresentation {
        &self.stages.last().expect("at least one stage").presentation
    }
}

/// Free presentations go through [`make_collegial`]; presentations by
/// involutions are used as they are.
pub fn compile(
    input: &ParsedPresentation,
    involutions: &[FreeWord],
    options: &CompileOptions,
) -> Result<CompilationResult, PassError> {
    let (normalized, stages, trace, involution_generators) = match input {
        ParsedPresentation::Free(p) => {
            let out = make_collegial(p, involutions, &options.k)?;
            let mut trace = out.map.clone();
            // Trace from the input generators, which are a prefix of the normalized ones.
            trace.source = p.generators.clone();
            trace.images.truncate(p.generators.len());
            let stages = vec![
                Stage { name: "involution_embed".into(), presentation: out.embedded },
                Stage { name: "collegial".into(), presentation: out.collegial },
            ];
            (Some(out.normalized), stages, trace, out.involution_generators)
        }
        ParsedPresentation::Inv(p) => {
            let stages = vec![Stage { name: "input".into(), presentation: p.clone() }];
            (None, stages, GeneratorMap::identity(&p.generators), Vec::new())
        }
    };
    let last = &stages.last().unwrap().presentation;
    let wagonwheel = build_wagon_wheel(last)?;
    let labelling = choose_labelling(&wagonwheel, options.labelling)?;
    let h = &wagonwheel.hypergraph;
    let stats = CompileStats {
        total_length: last.total_length(),
        generators: last.generators.len(),
        relations: last.relations.len(),
        vertices: h.num_vertices(),
        edges: h.num_edges(),
        collegial: last.is_collegial().collegial,
    };
    Ok(CompilationResult {
        normalized,
        stages,
        wagonwheel,
        labelling,
        generator_trace: trace,
        involution_generators,
        stats,
    })
}
