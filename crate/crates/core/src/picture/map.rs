//! The working form of a picture: one connected planar map in which nesting
//! is realised by virtual edges. Surgery keeps the map connected and planar;
//! export reads the nesting back off a spanning tree of virtual edges.

use std::collections::{HashMap, HashSet, VecDeque};

use super::{Dart, FaceRef, FreeLoop, Nesting, PEdge, PVertex, Picture, Side, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum VKind {
    Real,
    Boundary,
    /// Carrier of a free loop: one loop edge, plus virtual darts.
    Loop,
    /// Temporary degree-two vertex left by deleting a vertex.
    Pass,
}

#[derive(Clone, Debug)]
pub(crate) struct MVertex {
    pub kind: VKind,
    pub id: String,
    pub label: String,
    pub rot: Vec<usize>,
    pub alive: bool,
    pub order: usize,
    /// For loop carriers: the dart whose following corner is the outside.
    pub first: Option<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct MEdge {
    pub real: bool,
    pub id: String,
    pub label: String,
    pub darts: [usize; 2],
    pub alive: bool,
    pub order: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct MDart {
    pub vertex: usize,
    pub edge: usize,
    pub ext: Option<Dart>,
}

#[derive(Clone, Debug)]
pub(crate) struct Map {
    pub vs: Vec<MVertex>,
    pub es: Vec<MEdge>,
    pub ds: Vec<MDart>,
    pub closed: bool,
    pub boundary: Option<usize>,
    pub ext: HashMap<Dart, usize>,
    boundary_rank: HashMap<Dart, usize>,
}

#[derive(Clone, Copy, Debug)]
enum Corner {
    After(usize),
    Empty(usize),
}

pub(crate) struct UnionFind(Vec<usize>);

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.0[hi] = lo;
        true
    }
}

impl Map {
    fn new_vertex(&mut self, kind: VKind, id: &str, label: &str, order: usize) -> usize {
        self.vs.push(MVertex {
            kind,
            id: id.to_string(),
            label: label.to_string(),
            rot: Vec::new(),
            alive: true,
            order,
            first: None,
        });
        self.vs.len() - 1
    }

    fn new_edge(&mut self, real: bool, id: &str, label: &str, order: usize) -> usize {
        self.es.push(MEdge { real, id: id.to_string(), label: label.to_string(), darts: [0, 0], alive: true, order });
        self.es.len() - 1
    }

    fn new_dart(&mut self, vertex: usize, edge: usize, ext: Option<Dart>) -> usize {
        self.ds.push(MDart { vertex, edge, ext });
        self.ds.len() - 1
    }

    /// A virtual edge whose darts are not yet placed in any rotation.
    fn add_virtual(&mut self, a: usize, b: usize) -> (usize, usize) {
        let e = self.new_edge(false, "", "", usize::MAX);
        let da = self.new_dart(a, e, None);
        let db = self.new_dart(b, e, None);
        self.es[e].darts = [da, db];
        (da, db)
    }

    pub fn vertex_of(&self, d: usize) -> usize {
        self.ds[d].vertex
    }

    pub fn edge_of(&self, d: usize) -> usize {
        self.ds[d].edge
    }

    pub fn is_real(&self, d: usize) -> bool {
        self.es[self.ds[d].edge].real
    }

    pub fn alpha(&self, d: usize) -> usize {
        let e = &self.es[self.ds[d].edge];
        if e.darts[0] == d {
            e.darts[1]
        } else {
            e.darts[0]
        }
    }

    fn pos(&self, d: usize) -> usize {
        self.vs[self.ds[d].vertex].rot.iter().position(|&x| x == d).expect("dart in rotation")
    }

    /// Next dart counter-clockwise among those passing `keep`.
    fn sigma_by(&self, d: usize, keep: &impl Fn(usize) -> bool) -> usize {
        let rot = &self.vs[self.ds[d].vertex].rot;
        let p = self.pos(d);
        (1..=rot.len()).map(|k| rot[(p + k) % rot.len()]).find(|&x| keep(x)).unwrap_or(d)
    }

    fn attach(&mut self, c: Corner, d: usize) {
        match c {
            Corner::After(a) => {
                let v = self.ds[a].vertex;
                let p = self.pos(a);
                self.vs[v].rot.insert(p + 1, d);
                self.ds[d].vertex = v;
            }
            Corner::Empty(v) => {
                self.vs[v].rot.push(d);
                self.ds[d].vertex = v;
            }
        }
    }

    fn insert_before(&mut self, anchor: usize, d: usize) {
        let v = self.ds[anchor].vertex;
        let p = self.pos(anchor);
        self.vs[v].rot.insert(p, d);
        self.ds[d].vertex = v;
    }

    pub fn kill_edge(&mut self, e: usize) {
        for d in self.es[e].darts {
            let v = self.ds[d].vertex;
            self.vs[v].rot.retain(|&x| x != d);
        }
        self.es[e].alive = false;
    }

    pub fn virtualize(&mut self, e: usize) {
        self.es[e].real = false;
    }

    pub fn alive_darts(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.ds.len()).filter(|&d| self.es[self.ds[d].edge].alive)
    }

    /// Orbits of `σ∘α` on darts passing `keep`, with `σ` skipping the rest.
    pub fn faces_by(&self, keep: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for d in self.alive_darts().filter(|&d| keep(d)) {
            if seen.contains(&d) {
                continue;
            }
            let mut orbit = Vec::new();
            let mut x = d;
            loop {
                seen.insert(x);
                orbit.push(x);
                x = self.sigma_by(self.alpha(x), &keep);
                if x == d {
                    break;
                }
            }
            out.push(orbit);
        }
        out
    }

    /// Components of the real structure, as a union-find over vertices.
    pub fn real_components(&self) -> UnionFind {
        let mut uf = UnionFind::new(self.vs.len());
        for e in self.es.iter().filter(|e| e.alive && e.real) {
            uf.union(self.ds[e.darts[0]].vertex, self.ds[e.darts[1]].vertex);
        }
        uf
    }

    fn component_name(&self, uf: &mut UnionFind, c: usize) -> String {
        let members: Vec<usize> = (0..self.vs.len()).filter(|&v| self.vs[v].alive && uf.find(v) == c).collect();
        if members.iter().any(|&v| self.vs[v].kind == VKind::Boundary) {
            return "boundary".into();
        }
        if let Some(&v) = members.iter().filter(|&&v| self.vs[v].kind == VKind::Real).min_by_key(|&&v| self.vs[v].order)
        {
            return self.vs[v].id.clone();
        }
        members.first().map(|&v| format!("loop:{}", self.vs[v].id)).unwrap_or_default()
    }

    pub fn build(p: &Picture) -> Result<Map, Violation> {
        if p.closed != p.boundary.is_empty() {
            return Err(Violation::ClosedMismatch);
        }
        let mut vid = HashSet::new();
        for v in &p.vertices {
            if !vid.insert(v.id.as_str()) {
                return Err(Violation::DuplicateId { id: v.id.clone() });
            }
        }
        let mut eid = HashSet::new();
        for id in p.edges.iter().map(|e| &e.id).chain(p.free_loops.iter().map(|l| &l.id)) {
            if !eid.insert(id.as_str()) {
                return Err(Violation::DuplicateId { id: id.clone() });
            }
        }

        let n = p.vertices.len();
        let bvertex = (!p.closed).then_some(n);
        let mut loc: HashMap<Dart, usize> = HashMap::new();
        for (vi, v) in p.vertices.iter().enumerate() {
            for &d in &v.rot {
                if loc.insert(d, vi).is_some() {
                    return Err(Violation::DartReused { dart: d });
                }
            }
        }
        for &d in &p.boundary {
            if loc.insert(d, n).is_some() {
                return Err(Violation::DartReused { dart: d });
            }
        }
        let mut dart_edge: HashMap<Dart, usize> = HashMap::new();
        for (ei, e) in p.edges.iter().enumerate() {
            if e.darts[0] == e.darts[1] {
                return Err(Violation::DegenerateEdge { edge: e.id.clone() });
            }
            for d in e.darts {
                if dart_edge.insert(d, ei).is_some() {
                    return Err(Violation::DartReused { dart: d });
                }
                if !loc.contains_key(&d) {
                    return Err(Violation::OrphanDart { dart: d });
                }
            }
        }
        let mut located: Vec<Dart> = loc.keys().copied().collect();
        located.sort_unstable();
        if let Some(&d) = located.iter().find(|d| !dart_edge.contains_key(d)) {
            return Err(Violation::OrphanDart { dart: d });
        }

        let mut m = Map {
            vs: Vec::new(),
            es: Vec::new(),
            ds: Vec::new(),
            closed: p.closed,
            boundary: bvertex,
            ext: HashMap::new(),
            boundary_rank: p.boundary.iter().enumerate().map(|(i, &d)| (d, i)).collect(),
        };
        for (i, v) in p.vertices.iter().enumerate() {
            m.new_vertex(VKind::Real, &v.id, &v.label, i);
        }
        if bvertex.is_some() {
            m.new_vertex(VKind::Boundary, "", "", n);
        }
        for (ei, e) in p.edges.iter().enumerate() {
            let me = m.new_edge(true, &e.id, &e.label, ei);
            let d0 = m.new_dart(loc[&e.darts[0]], me, Some(e.darts[0]));
            let d1 = m.new_dart(loc[&e.darts[1]], me, Some(e.darts[1]));
            m.es[me].darts = [d0, d1];
            m.ext.insert(e.darts[0], d0);
            m.ext.insert(e.darts[1], d1);
        }
        for (vi, v) in p.vertices.iter().enumerate() {
            m.vs[vi].rot = v.rot.iter().map(|d| m.ext[d]).collect();
        }
        if let Some(b) = bvertex {
            m.vs[b].rot = p.boundary.iter().rev().map(|d| m.ext[d]).collect();
        }

        let mut uf = m.real_components();
        let mut checked = HashSet::new();
        for v in 0..m.vs.len() {
            let c = uf.find(v);
            if !checked.insert(c) {
                continue;
            }
            let members: HashSet<usize> = (0..m.vs.len()).filter(|&u| uf.find(u) == c).collect();
            let darts: HashSet<usize> = m.alive_darts().filter(|&d| members.contains(&m.ds[d].vertex)).collect();
            let ne = darts.len() / 2;
            let nf = if ne == 0 { 1 } else { m.faces_by(|d| darts.contains(&d)).len() };
            if members.len() + nf != 2 + ne {
                return Err(Violation::Euler {
                    component: m.component_name(&mut uf, c),
                    v: members.len(),
                    e: ne,
                    f: nf,
                });
            }
        }

        let mut loop_vertex = HashMap::new();
        for (k, l) in p.free_loops.iter().enumerate() {
            let lv = m.new_vertex(VKind::Loop, &l.id, &l.label, p.edges.len() + k);
            let le = m.new_edge(true, &l.id, &l.label, p.edges.len() + k);
            let l1 = m.new_dart(lv, le, None);
            let l2 = m.new_dart(lv, le, None);
            m.es[le].darts = [l1, l2];
            m.vs[lv].rot = vec![l1, l2];
            m.vs[lv].first = Some(l1);
            loop_vertex.insert(l.id.as_str(), lv);
        }

        let vertex_index: HashMap<&str, usize> =
            p.vertices.iter().enumerate().map(|(i, v)| (v.id.as_str(), i)).collect();
        let resolve = |m: &Map, f: &FaceRef| -> Result<Corner, Violation> {
            let unknown = || Violation::UnknownFace { face: serde_json::to_string(f).unwrap_or_default() };
            match f {
                FaceRef::Dart(d) => m.ext.get(d).map(|&x| Corner::After(x)).ok_or_else(unknown),
                FaceRef::Vertex(id) => {
                    let &v = vertex_index.get(id.as_str()).ok_or_else(unknown)?;
                    if !p.vertices[v].rot.is_empty() {
                        return Err(Violation::NotIsolated { vertex: id.clone() });
                    }
                    Ok(Corner::Empty(v))
                }
                FaceRef::Loop { id, side } => {
                    let &lv = loop_vertex.get(id.as_str()).ok_or_else(unknown)?;
                    let r = &m.vs[lv].rot;
                    Ok(Corner::After(if *side == Side::Outside { r[0] } else { r[1] }))
                }
            }
        };
        let corner_vertex = |m: &Map, c: Corner| match c {
            Corner::After(d) => m.ds[d].vertex,
            Corner::Empty(v) => v,
        };

        let mut uf = m.real_components();
        let root = bvertex.map(|b| uf.find(b));
        let mut host_of: HashMap<usize, (Corner, Corner, usize)> = HashMap::new();
        let mut entries: Vec<(Corner, Corner)> = p
            .nesting
            .iter()
            .map(|n| Ok((resolve(&m, &n.outer)?, resolve(&m, &n.host)?)))
            .collect::<Result<_, Violation>>()?;
        for l in &p.free_loops {
            if let Some(f) = &l.face {
                let lv = loop_vertex[l.id.as_str()];
                entries.push((Corner::After(m.vs[lv].rot[0]), resolve(&m, f)?));
            }
        }
        for (outer, host) in entries {
            let c = uf.find(corner_vertex(&m, outer));
            let h = uf.find(corner_vertex(&m, host));
            if Some(c) == root {
                return Err(Violation::RootNested { component: m.component_name(&mut uf, c) });
            }
            if c == h {
                return Err(Violation::SelfHosted { component: m.component_name(&mut uf, c) });
            }
            if host_of.insert(c, (outer, host, h)).is_some() {
                return Err(Violation::DuplicateHost { component: m.component_name(&mut uf, c) });
            }
        }
        let mut comps = Vec::new();
        for v in 0..m.vs.len() {
            let c = uf.find(v);
            if !comps.contains(&c) {
                comps.push(c);
            }
        }
        let tops: Vec<usize> = comps.iter().copied().filter(|c| !host_of.contains_key(c)).collect();
        match root {
            Some(r) => {
                if let Some(&t) = tops.iter().find(|&&t| t != r) {
                    return Err(Violation::MissingHost { component: m.component_name(&mut uf, t) });
                }
            }
            None => {
                if tops.len() > 1 {
                    return Err(Violation::MissingHost { component: m.component_name(&mut uf, tops[1]) });
                }
                if tops.is_empty() && !comps.is_empty() {
                    return Err(Violation::NestingCycle { component: m.component_name(&mut uf, comps[0]) });
                }
            }
        }
        for &c in &comps {
            let mut x = c;
            for _ in 0..=comps.len() {
                match host_of.get(&x) {
                    Some(&(_, _, h)) => x = h,
                    None => break,
                }
            }
            if host_of.contains_key(&x) {
                return Err(Violation::NestingCycle { component: m.component_name(&mut uf, c) });
            }
        }
        for c in comps {
            if let Some(&(outer, host, _)) = host_of.get(&c) {
                let (a, b) = m.add_virtual(0, 0);
                m.attach(outer, a);
                m.attach(host, b);
            }
        }
        Ok(m)
    }

    /// Deletes a vertex whose real darts come in an even number, joining them
    /// in consecutive pairs starting just after the lowest-numbered dart.
    pub fn delete_vertex(&mut self, v: usize) -> Result<(), ()> {
        let rot = self.vs[v].rot.clone();
        let reals: Vec<usize> = (0..rot.len()).filter(|&i| self.is_real(rot[i])).collect();
        if reals.is_empty() {
            self.eliminate_star(v);
            return Ok(());
        }
        if reals.len() % 2 == 1 {
            return Err(());
        }
        let low =
            (0..reals.len()).min_by_key(|&t| (self.ds[rot[reals[t]]].ext.unwrap_or(Dart::MAX), rot[reals[t]])).unwrap();
        let len = reals.len();
        let rs: Vec<usize> = (0..len).map(|t| reals[(low + 1 + t) % len]).collect();
        let sector = |t: usize| -> Vec<usize> {
            let (a, b) = (rs[t], rs[(t + 1) % len]);
            let mut out = Vec::new();
            let mut i = (a + 1) % rot.len();
            while i != b {
                out.push(rot[i]);
                i = (i + 1) % rot.len();
            }
            out
        };
        let k = len / 2;
        let ps: Vec<usize> = (0..k).map(|_| self.new_vertex(VKind::Pass, "", "", usize::MAX)).collect();
        let links: Vec<(usize, usize)> = (0..k.saturating_sub(1)).map(|m| self.add_virtual(ps[m], ps[m + 1])).collect();
        for m in 0..k {
            let mut r = vec![rot[rs[2 * m]]];
            r.extend(sector(2 * m));
            r.push(rot[rs[2 * m + 1]]);
            r.extend(sector(2 * m + 1));
            if m + 1 < k {
                r.push(links[m].0);
            }
            if m > 0 {
                r.push(links[m - 1].1);
            }
            for &d in &r {
                self.ds[d].vertex = ps[m];
            }
            self.vs[ps[m]].rot = r;
        }
        self.vs[v].rot.clear();
        self.vs[v].alive = false;
        Ok(())
    }

    /// Contracts `members` and the `internal` edges among them to one real
    /// vertex with rotation `rot`.
    pub fn contract(&mut self, members: &[usize], internal: &[usize], rot: Vec<usize>, id: &str, label: &str) -> usize {
        let order = members.iter().map(|&v| self.vs[v].order).min().unwrap_or(usize::MAX);
        for &e in internal {
            self.es[e].alive = false;
        }
        for &v in members {
            self.vs[v].rot.clear();
            self.vs[v].alive = false;
        }
        let nv = self.new_vertex(VKind::Real, id, label, order);
        for &d in &rot {
            self.ds[d].vertex = nv;
        }
        self.vs[nv].rot = rot;
        nv
    }

    /// Removes a vertex carrying only virtual darts, joining its neighbours
    /// by a path of virtual edges in the same face.
    pub fn eliminate_star(&mut self, v: usize) {
        for d in self.vs[v].rot.clone() {
            if self.es[self.ds[d].edge].alive && self.ds[self.alpha(d)].vertex == v {
                let e = self.ds[d].edge;
                self.kill_edge(e);
            }
        }
        let ws = self.vs[v].rot.clone();
        debug_assert!(ws.iter().all(|&w| !self.is_real(w)));
        let cs: Vec<usize> = ws.iter().map(|&w| self.alpha(w)).collect();
        let t = cs.len();
        let links: Vec<(usize, usize)> = (0..t.saturating_sub(1))
            .map(|i| self.add_virtual(self.ds[cs[i]].vertex, self.ds[cs[i + 1]].vertex))
            .collect();
        for i in 0..t {
            let mut rep = Vec::new();
            if i + 1 < t {
                rep.push(links[i].0);
            }
            if i > 0 {
                rep.push(links[i - 1].1);
            }
            let u = self.ds[cs[i]].vertex;
            let p = self.pos(cs[i]);
            self.vs[u].rot.splice(p..p + 1, rep);
            self.es[self.ds[ws[i]].edge].alive = false;
        }
        self.vs[v].rot.clear();
        self.vs[v].alive = false;
    }

    /// Smooths every pass-through vertex into the edge through it; a closed
    /// chain of them becomes a free loop.
    pub fn smooth_passes(&mut self) {
        while let Some(p) = (0..self.vs.len()).find(|&v| self.vs[v].alive && self.vs[v].kind == VKind::Pass) {
            let rot = self.vs[p].rot.clone();
            let reals: Vec<usize> = (0..rot.len()).filter(|&i| self.is_real(rot[i])).collect();
            debug_assert_eq!(reals.len(), 2);
            let (i, j) = (reals[0], reals[1]);
            let (r1, r2) = (rot[i], rot[j]);
            if self.alpha(r1) == r2 {
                let e = self.ds[r1].edge;
                let v = &mut self.vs[p];
                v.kind = VKind::Loop;
                v.id = self.es[e].id.clone();
                v.label = self.es[e].label.clone();
                v.order = self.es[e].order;
                v.first = Some(r1);
                continue;
            }
            let side1: Vec<usize> = rot[i + 1..j].to_vec();
            let side2: Vec<usize> = rot[j + 1..].iter().chain(&rot[..i]).copied().collect();
            let (x, y) = (self.alpha(r1), self.alpha(r2));
            self.vs[p].rot.clear();
            self.vs[p].alive = false;
            for w in side1 {
                self.insert_before(x, w);
            }
            for w in side2 {
                self.insert_before(y, w);
            }
            let (e1, e2) = (self.ds[r1].edge, self.ds[r2].edge);
            let (keep, drop) = if self.es[e1].order <= self.es[e2].order { (e1, e2) } else { (e2, e1) };
            self.es[keep].darts = [x, y];
            self.ds[x].edge = keep;
            self.ds[y].edge = keep;
            self.es[drop].alive = false;
        }
    }

    /// Keeps a spanning set of virtual edges between real components.
    pub fn cleanup_virtual(&mut self) {
        let mut uf = self.real_components();
        for e in 0..self.es.len() {
            if !self.es[e].alive || self.es[e].real {
                continue;
            }
            let [a, b] = self.es[e].darts;
            if !uf.union(self.ds[a].vertex, self.ds[b].vertex) {
                self.kill_edge(e);
            }
        }
    }

    /// Finishes surgery and reads the picture back.
    pub fn finish(mut self) -> Picture {
        if let Some(b) = self.boundary {
            if !self.vs[b].rot.iter().any(|&d| self.is_real(d)) {
                self.eliminate_star(b);
                self.boundary = None;
                self.closed = true;
            }
        }
        self.smooth_passes();
        self.cleanup_virtual();
        self.export()
    }

    fn real_pred(&self, v: usize, w: usize) -> Option<usize> {
        let rot = &self.vs[v].rot;
        let p = rot.iter().position(|&x| x == w)?;
        (1..=rot.len()).map(|k| rot[(p + rot.len() - k) % rot.len()]).find(|&d| self.is_real(d))
    }

    fn corner_ref(&self, v: usize, w: usize) -> FaceRef {
        let pred = self.real_pred(v, w);
        match self.vs[v].kind {
            VKind::Loop => {
                let side = if pred == self.vs[v].first { Side::Outside } else { Side::Inside };
                FaceRef::Loop { id: self.vs[v].id.clone(), side }
            }
            _ => match pred {
                Some(d) => FaceRef::Dart(self.ds[d].ext.expect("real dart has a number")),
                None => FaceRef::Vertex(self.vs[v].id.clone()),
            },
        }
    }

    fn export(&mut self) -> Picture {
        let alive: Vec<usize> = (0..self.vs.len()).filter(|&v| self.vs[v].alive).collect();
        let mut uf = self.real_components();
        let mut vertices: Vec<usize> = alive.iter().copied().filter(|&v| self.vs[v].kind == VKind::Real).collect();
        vertices.sort_by_key(|&v| self.vs[v].order);
        let mut loops: Vec<usize> = alive.iter().copied().filter(|&v| self.vs[v].kind == VKind::Loop).collect();
        loops.sort_by_key(|&v| self.vs[v].order);

        let root = match self.boundary {
            Some(b) => Some(b),
            None => vertices.first().or(loops.first()).copied(),
        };
        let mut nesting = Vec::new();
        let mut loop_face: HashMap<usize, FaceRef> = HashMap::new();
        if let Some(root) = root {
            if self.vs[root].kind == VKind::Loop {
                let first = self.vs[root].rot.iter().copied().find(|&d| self.is_real(d));
                self.vs[root].first = first;
            }
            let mut by_comp: HashMap<usize, Vec<usize>> = HashMap::new();
            for e in 0..self.es.len() {
                if self.es[e].alive && !self.es[e].real {
                    for d in self.es[e].darts {
                        let c = uf.find(self.ds[d].vertex);
                        by_comp.entry(c).or_default().push(d);
                    }
                }
            }
            let mut seen = HashSet::new();
            let mut queue = VecDeque::new();
            let rc = uf.find(root);
            seen.insert(rc);
            queue.push_back(rc);
            while let Some(c) = queue.pop_front() {
                let mut darts = by_comp.get(&c).cloned().unwrap_or_default();
                darts.sort_unstable();
                for d in darts {
                    let o = self.alpha(d);
                    let ov = self.ds[o].vertex;
                    let oc = uf.find(ov);
                    if !seen.insert(oc) {
                        continue;
                    }
                    let host = self.corner_ref(self.ds[d].vertex, d);
                    if self.vs[ov].kind == VKind::Loop {
                        self.vs[ov].first = self.real_pred(ov, o);
                        loop_face.insert(ov, host);
                    } else {
                        nesting.push(Nesting { outer: self.corner_ref(ov, o), host });
                    }
                    queue.push_back(oc);
                }
            }
        }
        nesting.sort();

        let ext = |d: usize| self.ds[d].ext.expect("real dart has a number");
        let out_vertices = vertices
            .iter()
            .map(|&v| PVertex {
                id: self.vs[v].id.clone(),
                label: self.vs[v].label.clone(),
                rot: self.vs[v].rot.iter().copied().filter(|&d| self.is_real(d)).map(ext).collect(),
            })
            .collect();
        let mut edges: Vec<usize> = (0..self.es.len())
            .filter(|&e| {
                let me = &self.es[e];
                me.alive && me.real && self.vs[self.ds[me.darts[0]].vertex].kind != VKind::Loop
            })
            .collect();
        edges.sort_by_key(|&e| self.es[e].order);
        let out_edges = edges
            .iter()
            .map(|&e| PEdge {
                id: self.es[e].id.clone(),
                label: self.es[e].label.clone(),
                darts: [ext(self.es[e].darts[0]), ext(self.es[e].darts[1])],
            })
            .collect();
        let mut boundary: Vec<Dart> = match self.boundary {
            Some(b) => self.vs[b].rot.iter().rev().copied().filter(|&d| self.is_real(d)).map(ext).collect(),
            None => Vec::new(),
        };
        if let Some(start) =
            (0..boundary.len()).min_by_key(|&i| self.boundary_rank.get(&boundary[i]).copied().unwrap_or(usize::MAX))
        {
            boundary.rotate_left(start);
        }
        let free_loops = loops
            .iter()
            .map(|&l| {
                let d = self.vs[l].rot.iter().copied().find(|&d| self.is_real(d)).expect("loop edge");
                let e = &self.es[self.ds[d].edge];
                FreeLoop { id: e.id.clone(), label: e.label.clone(), face: loop_face.get(&l).cloned() }
            })
            .collect();
        Picture { closed: self.closed, vertices: out_vertices, edges: out_edges, boundary, free_loops, nesting }
    }
}
