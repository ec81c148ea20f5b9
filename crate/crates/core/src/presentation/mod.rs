//! Words over free groups and over `F₂(S) × Z₂`, presentations, and the
//! collegial predicate.

mod text;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

pub use text::{parse, parse_free_word, parse_inv_word, serialize, ParseError, ParsedPresentation};

/// Index into a [`Generators`] table.
pub type GenId = usize;

/// Generator names in declaration order.
#[derive(Clone, Default, Serialize, Deserialize)]
#[serde(from = "Vec<String>", into = "Vec<String>")]
pub struct Generators {
    names: Vec<String>,
    index: HashMap<String, GenId>,
}

impl Generators {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `name`, returning `None` if it is already declared.
    pub fn push(&mut self, name: impl Into<String>) -> Option<GenId> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return None;
        }
        let id = self.names.len();
        self.index.insert(name.clone(), id);
        self.names.push(name);
        Some(id)
    }

    pub fn id(&self, name: &str) -> Option<GenId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: GenId) -> &str {
        &self.names[id]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }
}

impl From<Vec<String>> for Generators {
    fn from(names: Vec<String>) -> Self {
        let mut g = Generators::new();
        for n in names {
            g.push(n);
        }
        g
    }
}

impl From<Generators> for Vec<String> {
    fn from(g: Generators) -> Self {
        g.names
    }
}

impl PartialEq for Generators {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for Generators {}

impl fmt::Debug for Generators {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.names).finish()
    }
}

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gen: GenId,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(gen: GenId) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn neg(gen: GenId) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }
}

/// A word in the free group on the generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FreeWord {
    pub letters: Vec<Letter>,
}

impl FreeWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        FreeWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord::new(self.letters.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inv())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced() && (self.letters.len() < 2 || self.letters[0] != self.letters[self.letters.len() - 1].inv())
    }

    pub fn reduce(&self) -> FreeWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord::new(out)
    }

    /// Deletes matching first/last letters of the reduced word until none remain.
    pub fn cyclically_reduce(&self) -> FreeWord {
        let r = self.reduce().letters;
        let (mut lo, mut hi) = (0, r.len());
        while hi - lo >= 2 && r[lo] == r[hi - 1].inv() {
            lo += 1;
            hi -= 1;
        }
        FreeWord::new(r[lo..hi].to_vec())
    }

    pub fn render(&self, gens: &Generators) -> String {
        let toks: Vec<String> = self
            .letters
            .iter()
            .map(|l| if l.inverse { format!("{}^-", gens.name(l.gen)) } else { gens.name(l.gen).to_string() })
            .collect();
        toks.join(" ")
    }
}

/// An element `J^parity · s_1 ⋯ s_n` of `F₂(S) × Z₂`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InvWord {
    pub parity: bool,
    pub letters: Vec<GenId>,
}

impl InvWord {
    pub fn new(parity: bool, letters: Vec<GenId>) -> Self {
        InvWord { parity, letters }
    }

    pub fn even(letters: Vec<GenId>) -> Self {
        InvWord { parity: false, letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced() && (self.letters.len() < 2 || self.letters[0] != self.letters[self.letters.len() - 1])
    }

    pub fn reduce(&self) -> InvWord {
        let mut out: Vec<GenId> = Vec::with_capacity(self.letters.len());
        for &s in &self.letters {
            if out.last() == Some(&s) {
                out.pop();
            } else {
                out.push(s);
            }
        }
        InvWord::new(self.parity, out)
    }

    /// Reduces, then peels equal first/last letters; the result is conjugate to `self`.
    pub fn cyclically_reduce(&self) -> InvWord {
        let r = self.reduce().letters;
        let (mut lo, mut hi) = (0, r.len());
        while hi - lo >= 2 && r[lo] == r[hi - 1] {
            lo += 1;
            hi -= 1;
        }
        InvWord::new(self.parity, r[lo..hi].to_vec())
    }

    pub fn multiplicity(&self, s: GenId) -> usize {
        self.letters.iter().filter(|&&x| x == s).count()
    }

    /// Unordered pairs of distinct letters that sit next to each other, cyclically.
    pub fn adjacency_pairs(&self) -> BTreeSet<(GenId, GenId)> {
        let n = self.letters.len();
        let mut out = BTreeSet::new();
        if n < 2 {
            return out;
        }
        for i in 0..n {
            let (a, b) = (self.letters[i], self.letters[(i + 1) % n]);
            if a != b {
                out.insert((a.min(b), a.max(b)));
            }
        }
        out
    }

    /// Every rotation and every reversed rotation.
    pub fn symmetrize(&self) -> BTreeSet<InvWord> {
        let n = self.letters.len();
        let mut out = BTreeSet::new();
        if n == 0 {
            out.insert(self.clone());
            return out;
        }
        let rev: Vec<GenId> = self.letters.iter().rev().copied().collect();
        for i in 0..n {
            out.insert(InvWord::new(self.parity, rotate(&self.letters, i)));
            out.insert(InvWord::new(self.parity, rotate(&rev, i)));
        }
        out
    }

    pub fn even_part(&self) -> InvWord {
        InvWord::new(false, self.letters.clone())
    }

    /// Product in `F₂(S) × Z₂` without reduction.
    pub fn concat(&self, other: &InvWord) -> InvWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        InvWord::new(self.parity ^ other.parity, letters)
    }

    pub fn render(&self, gens: &Generators) -> String {
        let mut toks: Vec<&str> = Vec::new();
        if self.parity {
            toks.push("J");
        }
        toks.extend(self.letters.iter().map(|&s| gens.name(s)));
        toks.join(" ")
    }
}

fn rotate(v: &[GenId], i: usize) -> Vec<GenId> {
    v[i..].iter().chain(&v[..i]).copied().collect()
}

/// True when `a` and `b` agree up to rotation.
pub fn cyclic_eq<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|k| (0..a.len()).all(|i| a[(i + k) % a.len()] == b[i]))
}

/// True when `a` agrees with `b` or its reverse up to rotation.
pub fn dihedral_eq<T: PartialEq + Clone>(a: &[T], b: &[T]) -> bool {
    if cyclic_eq(a, b) {
        return true;
    }
    let rev: Vec<T> = b.iter().rev().cloned().collect();
    cyclic_eq(a, &rev)
}

pub fn symmetrize(relations: &[InvWord]) -> BTreeSet<InvWord> {
    relations.iter().flat_map(|r| r.symmetrize()).collect()
}

/// A presentation of a group over the free group, with a representative of `J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Generators,
    pub relations: Vec<FreeWord>,
    pub j_word: FreeWord,
}

/// `Inv⟨S : R⟩`: every generator is an involution and `J` is central of order two.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvPresentation {
    pub generators: Generators,
    pub relations: Vec<InvWord>,
}

impl InvPresentation {
    pub fn new(generators: Generators, relations: Vec<InvWord>) -> Self {
        InvPresentation { generators, relations }
    }

    /// Builds from generator names and relations written as whitespace-separated names,
    /// with an optional leading `J`. Panics on undeclared names; meant for fixtures.
    pub fn from_strs(gens: &[&str], rels: &[&str]) -> Self {
        let generators: Generators = gens.iter().map(|s| s.to_string()).collect::<Vec<_>>().into();
        let relations = rels.iter().map(|r| parse_inv_word(r, &generators).expect("fixture relation")).collect();
        InvPresentation { generators, relations }
    }

    pub fn even_part(&self) -> InvPresentation {
        InvPresentation {
            generators: self.generators.clone(),
            relations: self.relations.iter().map(InvWord::even_part).collect(),
        }
    }

    pub fn symmetrized(&self) -> BTreeSet<InvWord> {
        symmetrize(&self.relations)
    }

    /// `M`: total number of letters over all relations.
    pub fn total_length(&self) -> usize {
        self.relations.iter().map(InvWord::len).sum()
    }

    pub fn is_collegial(&self) -> CollegialReport {
        is_collegial(self)
    }
}

/// The first failed clause of the collegial definition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum CollegialViolation {
    /// Clause (a): relation `relation` is not cyclically reduced.
    NotCyclicallyReduced { relation: usize },
    /// Clause (b): a relation equals `1` or `J`.
    TrivialRelation { relation: usize },
    /// Clause (b): a relation equals a generator.
    GeneratorRelation { relation: usize, generator: String },
    /// Clause (c): `s` is odd in `r0`, `t` is adjacent to `s` in `r1`, and `t` is odd in `r_prime`.
    OddAdjacency { s: String, t: String, r0: usize, r1: usize, r_prime: usize },
    /// A relation shorter than four letters (impossible once (a)–(c) hold, except `J s`).
    ShortRelation { relation: usize, length: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollegialReport {
    pub collegial: bool,
    pub violation: Option<CollegialViolation>,
}

pub fn is_collegial(p: &InvPresentation) -> CollegialReport {
    let fail = |v| CollegialReport { collegial: false, violation: Some(v) };
    let rels = &p.relations;
    for (i, r) in rels.iter().enumerate() {
        if !r.is_cyclically_reduced() {
            return fail(CollegialViolation::NotCyclicallyReduced { relation: i });
        }
    }
    for (i, r) in rels.iter().enumerate() {
        if r.is_empty() {
            return fail(CollegialViolation::TrivialRelation { relation: i });
        }
        if r.len() == 1 && !r.parity {
            return fail(CollegialViolation::GeneratorRelation {
                relation: i,
                generator: p.generators.name(r.letters[0]).to_string(),
            });
        }
    }
    let adjacency: Vec<Vec<(GenId, GenId)>> = rels.iter().map(ordered_neighbours).collect();
    for (i0, r0) in rels.iter().enumerate() {
        let mut seen = BTreeSet::new();
        for &s in &r0.letters {
            if !seen.insert(s) || r0.multiplicity(s) % 2 == 0 {
                continue;
            }
            for (i1, adj) in adjacency.iter().enumerate() {
                for &(a, b) in adj {
                    let t = if a == s {
                        b
                    } else if b == s {
                        a
                    } else {
                        continue;
                    };
                    if let Some(ip) = rels.iter().position(|rp| rp.multiplicity(t) % 2 == 1) {
                        return fail(CollegialViolation::OddAdjacency {
                            s: p.generators.name(s).to_string(),
                            t: p.generators.name(t).to_string(),
                            r0: i0,
                            r1: i1,
                            r_prime: ip,
                        });
                    }
                }
            }
        }
    }
    for (i, r) in rels.iter().enumerate() {
        if r.len() < 4 {
            return fail(CollegialViolation::ShortRelation { relation: i, length: r.len() });
        }
    }
    CollegialReport { collegial: true, violation: None }
}

/// Consecutive distinct letter pairs in reading order, wrapping around.
fn ordered_neighbours(r: &InvWord) -> Vec<(GenId, GenId)> {
    let n = r.letters.len();
    if n < 2 {
        return Vec::new();
    }
    (0..n).map(|i| (r.letters[i], r.letters[(i + 1) % n])).filter(|(a, b)| a != b).collect()
}
