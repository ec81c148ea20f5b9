//! Backtracking search for a retraction `H → H′`.
//!
//! Vertices are placed in decreasing degree (those of `H′` first, fixed to
//! themselves). Placing a vertex also places every still-free incident edge, so
//! each vertex's condition is checked exactly once, with all its edges known.

use std::sync::Arc;

use super::{GeneralizedMorphism, Hypergraph, Subhypergraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RetractionOutcome {
    Found(GeneralizedMorphism),
    /// The search space was exhausted.
    None,
    /// The node budget ran out first.
    BudgetExhausted,
}

impl RetractionOutcome {
    pub fn found(&self) -> Option<&GeneralizedMorphism> {
        match self {
            RetractionOutcome::Found(m) => Some(m),
            _ => None,
        }
    }
}

struct Search<'a> {
    h: &'a Hypergraph,
    t: &'a Hypergraph,
    order: Vec<usize>,
    fixed_v: Vec<Option<usize>>,
    vmap: Vec<Option<usize>>,
    emap: Vec<Option<Option<usize>>>,
    budget: u64,
    used: u64,
}

impl Search<'_> {
    fn tick(&mut self) -> bool {
        self.used += 1;
        self.used <= self.budget
    }

    fn place_vertex(&mut self, k: usize) -> Result<bool, ()> {
        let Some(&v) = self.order.get(k) else { return Ok(true) };
        if !self.tick() {
            return Err(());
        }
        let choices: Vec<Option<usize>> = match self.fixed_v[v] {
            Some(w) => vec![Some(w)],
            None => {
                let deg = self.h.degree(v);
                (0..self.t.num_vertices())
                    .filter(|&w| self.t.degree(w) <= deg)
                    .map(Some)
                    .chain(std::iter::once(None))
                    .collect()
            }
        };
        let free: Vec<(usize, u32)> =
            self.h.vertex_incidence(v).iter().copied().filter(|&(e, _)| self.emap[e].is_none()).collect();
        for w in choices {
            self.vmap[v] = w;
            let found = match w {
                Some(w) => {
                    let mut need: Vec<(usize, i64)> =
                        self.t.vertex_incidence(w).iter().map(|&(f, m)| (f, m as i64)).collect();
                    let mut ok = true;
                    for &(e, m) in self.h.vertex_incidence(v) {
                        if let Some(Some(f)) = self.emap[e] {
                            match need.iter_mut().find(|(g, _)| *g == f) {
                                Some(slot) => slot.1 -= m as i64,
                                None => ok = false,
                            }
                        }
                    }
                    if ok && need.iter().all(|&(_, n)| n >= 0) {
                        self.assign_to_target(k, &free, 0, &mut need)?
                    } else {
                        false
                    }
                }
                None => {
                    let mut image = None;
                    let mut parity = 0u32;
                    let mut ok = true;
                    for &(e, m) in self.h.vertex_incidence(v) {
                        if let Some(Some(f)) = self.emap[e] {
                            parity += m;
                            match image {
                                None => image = Some(f),
                                Some(g) if g != f => ok = false,
                                _ => {}
                            }
                        }
                    }
                    ok && self.assign_deleted(k, &free, 0, image, parity)?
                }
            };
            if found {
                return Ok(true);
            }
        }
        self.vmap[v] = None;
        Ok(false)
    }

    fn assign_to_target(
        &mut self,
        k: usize,
        free: &[(usize, u32)],
        i: usize,
        need: &mut Vec<(usize, i64)>,
    ) -> Result<bool, ()> {
        if !self.tick() {
            return Err(());
        }
        let remaining: i64 = free[i..].iter().map(|&(_, m)| m as i64).sum();
        let outstanding: i64 = need.iter().map(|&(_, n)| n).sum();
        if outstanding > remaining {
            return Ok(false);
        }
        let Some(&(e, m)) = free.get(i) else {
            return if outstanding == 0 { self.place_vertex(k + 1) } else { Ok(false) };
        };
        for slot in 0..need.len() {
            if need[slot].1 >= m as i64 {
                need[slot].1 -= m as i64;
                self.emap[e] = Some(Some(need[slot].0));
                let found = self.assign_to_target(k, free, i + 1, need)?;
                need[slot].1 += m as i64;
                if found {
                    return Ok(true);
                }
            }
        }
        self.emap[e] = Some(None);
        if self.assign_to_target(k, free, i + 1, need)? {
            return Ok(true);
        }
        self.emap[e] = None;
        Ok(false)
    }

    fn assign_deleted(
        &mut self,
        k: usize,
        free: &[(usize, u32)],
        i: usize,
        image: Option<usize>,
        parity: u32,
    ) -> Result<bool, ()> {
        if !self.tick() {
            return Err(());
        }
        let Some(&(e, m)) = free.get(i) else {
            return if parity.is_multiple_of(2) { self.place_vertex(k + 1) } else { Ok(false) };
        };
        let images: Vec<usize> = match image {
            Some(f) => vec![f],
            None => (0..self.t.num_edges()).collect(),
        };
        for f in images {
            self.emap[e] = Some(Some(f));
            if self.assign_deleted(k, free, i + 1, Some(f), parity + m)? {
                return Ok(true);
            }
        }
        self.emap[e] = Some(None);
        if self.assign_deleted(k, free, i + 1, image, parity)? {
            return Ok(true);
        }
        self.emap[e] = None;
        Ok(false)
    }
}

/// Searches for a morphism `H → H′` that is the identity on `H′`.
///
/// The returned morphism's target is `H′` as a standalone hypergraph.
pub fn find_retraction(h: &Arc<Hypergraph>, sub: &Subhypergraph, budget: u64) -> RetractionOutcome {
    let target = Arc::new(sub.to_hypergraph(h));
    let t = &*target;
    let mut fixed_v = vec![None; h.num_vertices()];
    for &v in &sub.vertices {
        fixed_v[v] = t.vertex_index(h.vertex_name(v));
    }
    let mut emap = vec![None; h.num_edges()];
    for &e in &sub.edges {
        emap[e] = Some(t.edge_index(h.edge_name(e)));
    }
    let mut order: Vec<usize> = (0..h.num_vertices()).collect();
    order.sort_by_key(|&v| (fixed_v[v].is_none(), std::cmp::Reverse(h.degree(v)), v));
    let mut search = Search { h, t, order, fixed_v, vmap: vec![None; h.num_vertices()], emap, budget, used: 0 };
    match search.place_vertex(0) {
        Err(()) => RetractionOutcome::BudgetExhausted,
        Ok(false) => RetractionOutcome::None,
        Ok(true) => {
            let emap = search.emap.iter().map(|e| e.flatten()).collect();
            let phi = GeneralizedMorphism::new(h.clone(), target.clone(), search.vmap.clone(), emap);
            debug_assert!(phi.is_retraction());
            if phi.is_retraction() {
                RetractionOutcome::Found(phi)
            } else {
                RetractionOutcome::None
            }
        }
    }
}
