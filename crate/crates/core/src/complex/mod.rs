//! Approximations of the Schützenberger complex of the identity.
//!
//! A [`Complex`] starts as a single `n`-gon whose start vertex is the base
//! vertex `v0`, and grows by attaching a fresh polygon at a vertex that is
//! not yet the start vertex of any face, then folding. Faces are always
//! attached at a minimum-distance unsaturated vertex by the radius builders;
//! ties break by vertex creation order.
//!
//! Each vertex stores its distance from `v0` and its owner `Ω(v)`: the face
//! that created it, or [`Node::Base`] for `v0`. Each face stores its parent
//! in the augmented dual tree and the representatives `0 ≤ φ̂ < ρ̂ ≤ n` of the
//! endpoints of its gluing arc, which runs clockwise from boundary index
//! `ρ̂ mod n` through `σ̄` to `φ̂`.

mod audit;
mod canonical;
mod dual;
mod fold;
mod io;

pub use audit::{AuditReport, Violation};
pub use canonical::CanonicalForm;
pub use dual::DualTree;
pub use io::ComplexDocument;

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet, VecDeque};
use std::fmt;

use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::word::{is_sparse, Letter, Word};
use crate::{Error, Result};

/// Default cap on the number of faces a single complex may hold.
pub const DEFAULT_FACE_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FaceId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl FaceId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.0 + 1)
    }
}

/// A node of the augmented dual tree: the base sentinel or a face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Base,
    Face(FaceId),
}

impl Node {
    pub fn face(self) -> Option<FaceId> {
        match self {
            Node::Base => None,
            Node::Face(f) => Some(f),
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Base => f.write_str("v0"),
            Node::Face(id) => id.fmt(f),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct End {
    pub(crate) letter: Letter,
    pub(crate) edge: u32,
}

#[derive(Clone, Debug)]
pub struct Vertex {
    dist: u32,
    owner: Node,
    owner_index: u32,
    start_of: Option<FaceId>,
    faces: Vec<FaceId>,
    ends: Vec<End>,
}

impl Vertex {
    fn new(dist: u32, owner: Node, owner_index: u32) -> Self {
        Vertex {
            dist,
            owner,
            owner_index,
            start_of: None,
            faces: Vec::new(),
            ends: Vec::new(),
        }
    }
}

/// One topological edge, stored once; the reverse reading is implicit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub src: VertexId,
    pub letter: Letter,
    pub dst: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    boundary: Vec<VertexId>,
    parent: Node,
    rho_hat: u32,
    phi_hat: u32,
    order: u32,
}

impl Face {
    /// Boundary vertices clockwise from `σ̄`; position `i` is boundary index `i`.
    pub fn boundary(&self) -> &[VertexId] {
        &self.boundary
    }

    pub fn sigma(&self) -> VertexId {
        self.boundary[0]
    }

    pub fn parent(&self) -> Node {
        self.parent
    }

    pub fn rho_hat(&self) -> u32 {
        self.rho_hat
    }

    pub fn phi_hat(&self) -> u32 {
        self.phi_hat
    }

    /// 1-based attachment order.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Number of edges in the gluing arc.
    pub fn gamma_len(&self) -> u32 {
        self.boundary.len() as u32 - self.rho_hat + self.phi_hat
    }

    /// Boundary index of `v`, if `v` lies on this face.
    pub fn index_of(&self, v: VertexId) -> Option<u32> {
        self.boundary.iter().position(|&b| b == v).map(|i| i as u32)
    }

    /// Whether boundary index `i` lies on the gluing arc.
    pub fn in_gamma(&self, i: u32) -> bool {
        i <= self.phi_hat || i >= self.rho_hat
    }
}

/// The gluing arc of a face onto its parent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gamma {
    pub rho: VertexId,
    pub phi: VertexId,
    pub length: u32,
}

/// How the folding worklist is processed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FoldOrder {
    /// Last-in first-out worklist; lower ids survive merges.
    #[default]
    Canonical,
    /// Worklist order, edge-end scan order and surviving representatives
    /// drawn from an RNG seeded per attachment.
    Shuffled(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub face_cap: usize,
    pub fold_order: FoldOrder,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            face_cap: DEFAULT_FACE_CAP,
            fold_order: FoldOrder::Canonical,
        }
    }
}

/// Relation between the owners of the endpoints of an edge `u → v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    /// `Ω(u) = Ω(v)`.
    SameFace,
    /// `Ω(v)` is a child of `Ω(u)`.
    Push,
    /// `Ω(v)` is the parent of `Ω(u)`.
    Pop,
}

#[derive(Clone, Debug)]
pub struct Complex {
    word: Word,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    faces: Vec<Face>,
    frontier: BinaryHeap<Reverse<(u32, u32)>>,
    options: BuildOptions,
    distances_certified: bool,
}

impl Complex {
    /// The one-face complex `S₁` for a sparse relator.
    pub fn init(w: &Word) -> Result<Self> {
        Self::init_with(w, BuildOptions::default())
    }

    pub fn init_with(w: &Word, options: BuildOptions) -> Result<Self> {
        let report = is_sparse(w);
        if let Some(failure) = report.failure {
            return Err(Error::NotSparse(failure));
        }
        Self::init_unchecked(w, options)
    }

    /// Like [`Complex::init_with`] without the sparseness check. The
    /// structural guarantees of the other methods only hold for sparse
    /// relators; folding still runs to completion.
    pub fn init_unchecked(w: &Word, options: BuildOptions) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::StructureViolation("empty relator".into()));
        }
        let mut c = Complex {
            word: w.clone(),
            vertices: vec![Vertex::new(0, Node::Base, 0)],
            edges: Vec::new(),
            faces: Vec::new(),
            frontier: BinaryHeap::new(),
            options,
            distances_certified: true,
        };
        c.attach_face(c.base())?;
        Ok(c)
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    /// Relator length `n`.
    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn options(&self) -> BuildOptions {
        self.options
    }

    pub fn set_face_cap(&mut self, cap: usize) {
        self.options.face_cap = cap;
    }

    pub fn base(&self) -> VertexId {
        VertexId(0)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    pub fn face_ids(&self) -> impl Iterator<Item = FaceId> + '_ {
        (0..self.faces.len() as u32).map(FaceId)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        v.index() < self.vertices.len()
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    pub fn face(&self, f: FaceId) -> Result<&Face> {
        self.faces.get(f.index()).ok_or(Error::UnknownFace(f))
    }

    pub(crate) fn face_unchecked(&self, f: FaceId) -> &Face {
        &self.faces[f.index()]
    }

    /// Graph distance from `v0` in the current 1-skeleton.
    pub fn distance(&self, v: VertexId) -> u32 {
        self.vertices[v.index()].dist
    }

    /// Whether stored distances are known to be distances in the full
    /// Schützenberger graph. Complexes grown by this type always are;
    /// imported documents are certified only if their distances match a
    /// fresh breadth-first search.
    pub fn distances_certified(&self) -> bool {
        self.distances_certified
    }

    /// `Ω(v)`: the owning face, or the base sentinel for `v0`.
    pub fn omega(&self, v: VertexId) -> Node {
        self.vertices[v.index()].owner
    }

    /// Boundary index of `v` in `Ω(v)` (0 for `v0`).
    pub fn owner_index(&self, v: VertexId) -> u32 {
        self.vertices[v.index()].owner_index
    }

    /// The face whose start vertex is `v`, if attached.
    pub fn face_starting_at(&self, v: VertexId) -> Option<FaceId> {
        self.vertices[v.index()].start_of
    }

    /// Faces whose boundary passes through `v`.
    pub fn faces_at(&self, v: VertexId) -> &[FaceId] {
        &self.vertices[v.index()].faces
    }

    /// Outgoing readings at `v`: each incident edge once per end.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (Letter, VertexId)> + '_ {
        self.vertices[v.index()].ends.iter().map(move |end| {
            let e = &self.edges[end.edge as usize];
            let other = if e.letter == end.letter && e.src == v { e.dst } else { e.src };
            (end.letter, other)
        })
    }

    /// Follows the edge labeled `letter` out of `v`.
    pub fn step(&self, v: VertexId, letter: Letter) -> Option<VertexId> {
        self.neighbors(v).find(|&(l, _)| l == letter).map(|(_, t)| t)
    }

    /// Whether no vertex has two edge-ends reading the same letter.
    pub fn is_folded(&self) -> bool {
        self.vertices.iter().all(|v| {
            let mut seen = HashSet::new();
            v.ends.iter().all(|e| seen.insert(e.letter))
        })
    }

    /// Endpoints and length of the gluing arc `γ(A)`.
    pub fn gamma(&self, a: FaceId) -> Result<Gamma> {
        let face = self.face(a)?;
        let n = self.n() as u32;
        Ok(Gamma {
            rho: face.boundary[(face.rho_hat % n) as usize],
            phi: face.boundary[(face.phi_hat % n) as usize],
            length: face.gamma_len(),
        })
    }

    /// Classifies the edge `u → v` by the owners of its endpoints.
    pub fn step_kind(&self, u: VertexId, v: VertexId) -> Option<StepKind> {
        let (ou, ov) = (self.omega(u), self.omega(v));
        if ou == ov {
            return Some(StepKind::SameFace);
        }
        let parent = |node: Node| node.face().map(|f| self.faces[f.index()].parent);
        if parent(ov) == Some(ou) {
            Some(StepKind::Push)
        } else if parent(ou) == Some(ov) {
            Some(StepKind::Pop)
        } else {
            None
        }
    }

    /// Distance of the nearest vertex that is not yet a start vertex.
    pub fn next_attachment_distance(&mut self) -> Option<u32> {
        self.peek_frontier().map(|v| self.distance(v))
    }

    /// Largest `R` such that every vertex within distance `R` is a start vertex.
    pub fn saturated_radius(&mut self) -> Option<u32> {
        match self.next_attachment_distance() {
            None => Some(u32::MAX),
            Some(0) => None,
            Some(d) => Some(d - 1),
        }
    }

    fn peek_frontier(&mut self) -> Option<VertexId> {
        while let Some(&Reverse((_, v))) = self.frontier.peek() {
            if self.vertices[v as usize].start_of.is_none() {
                return Some(VertexId(v));
            }
            self.frontier.pop();
        }
        None
    }

    /// Attaches a face at the nearest unsaturated vertex.
    pub fn attach_next(&mut self) -> Result<Option<FaceId>> {
        match self.peek_frontier() {
            Some(v) => self.attach_face(v).map(Some),
            None => Ok(None),
        }
    }

    /// Attaches faces until every vertex within distance `radius` is a start vertex.
    pub fn build_to_radius(&mut self, radius: u32) -> Result<()> {
        while let Some(d) = self.next_attachment_distance() {
            if d > radius {
                break;
            }
            self.attach_next()?;
        }
        Ok(())
    }

    /// Attaches faces in approximation order until at least `count` exist.
    pub fn build_to_face_count(&mut self, count: usize) -> Result<()> {
        while self.faces.len() < count {
            if self.attach_next()?.is_none() {
                break;
            }
        }
        Ok(())
    }

    /// Attaches a copy of the relator polygon with its start vertex at `v`
    /// and folds to exhaustion.
    pub fn attach_face(&mut self, v: VertexId) -> Result<FaceId> {
        self.check_vertex(v)?;
        if self.vertices[v.index()].start_of.is_some() {
            return Err(Error::AlreadySaturated(v));
        }
        if self.faces.len() >= self.options.face_cap {
            return Err(Error::ResourceLimit {
                cap: self.options.face_cap,
            });
        }
        let n = self.n();
        let fid = FaceId(self.faces.len() as u32);
        let parent = self.vertices[v.index()].owner;
        let old_nv = self.vertices.len() as u32;
        let old_ne = self.edges.len() as u32;

        let mut boundary = Vec::with_capacity(n);
        boundary.push(v);
        for i in 1..n {
            boundary.push(VertexId(self.vertices.len() as u32));
            self.vertices.push(Vertex::new(u32::MAX, Node::Face(fid), i as u32));
        }
        for i in 0..n {
            let (s, d) = (boundary[i], boundary[(i + 1) % n]);
            let letter = self.word.at(i);
            let e = self.edges.len() as u32;
            self.edges.push(Edge { src: s, letter, dst: d });
            self.vertices[s.index()].ends.push(End { letter, edge: e });
            self.vertices[d.index()].ends.push(End {
                letter: letter.inv(),
                edge: e,
            });
        }

        let mut rng = match self.options.fold_order {
            FoldOrder::Canonical => None,
            FoldOrder::Shuffled(seed) => Some(StdRng::seed_from_u64(
                seed ^ (u64::from(fid.0) + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15),
            )),
        };
        let seeds: Vec<u32> = boundary.iter().map(|b| b.0).collect();
        let mut folding = fold::fold(&self.vertices, &self.edges, &seeds, rng.as_mut());

        let plan = MergePlan::new(&mut folding, old_nv, self.vertices.len() as u32, old_ne, self.edges.len() as u32);
        let glued: Vec<bool> = (0..n as u32)
            .map(|i| plan.edge_map[&(old_ne + i)] < old_ne)
            .collect();
        let (rho_hat, phi_hat) = gluing_arc(&glued);

        if plan.old_vertices_merged {
            self.apply_general(&plan, fid, &boundary, parent, rho_hat, phi_hat);
        } else {
            self.apply_fresh(&plan, fid, &boundary, parent, rho_hat, phi_hat, old_nv, old_ne);
        }
        Ok(fid)
    }

    #[allow(clippy::too_many_arguments)]
    fn apply_fresh(
        &mut self,
        plan: &MergePlan,
        fid: FaceId,
        boundary: &[VertexId],
        parent: Node,
        rho_hat: u32,
        phi_hat: u32,
        old_nv: u32,
        old_ne: u32,
    ) {
        let vmap = |x: u32| plan.vertex_map.get(&x).copied().unwrap_or(x);
        let emap = |e: u32| plan.edge_map.get(&e).copied().unwrap_or(e);

        let fresh_vertices: Vec<Vertex> = self.vertices.drain(old_nv as usize..).collect();
        let fresh_edges: Vec<Edge> = self.edges.drain(old_ne as usize..).collect();

        for (k, vx) in fresh_vertices.iter().enumerate() {
            let id = old_nv + k as u32;
            if vmap(id) == self.vertices.len() as u32 && vmap(id) >= old_nv {
                let mut nv = Vertex::new(u32::MAX, vx.owner, vx.owner_index);
                nv.ends.clear();
                self.vertices.push(nv);
            }
        }
        for (k, e) in fresh_edges.iter().enumerate() {
            let id = old_ne + k as u32;
            if emap(id) == self.edges.len() as u32 && emap(id) >= old_ne {
                self.edges.push(Edge {
                    src: VertexId(vmap(e.src.0)),
                    letter: e.letter,
                    dst: VertexId(vmap(e.dst.0)),
                });
            }
        }

        // Rebuild edge-ends for every vertex the fold touched.
        let mut touched: HashMap<u32, Vec<End>> = HashMap::new();
        let mut collect = |member: u32, ends: &[End]| {
            let list = touched.entry(vmap(member)).or_default();
            for end in ends {
                let c = End {
                    letter: end.letter,
                    edge: emap(end.edge),
                };
                if !list.contains(&c) {
                    list.push(c);
                }
            }
        };
        for (k, vx) in fresh_vertices.iter().enumerate() {
            collect(old_nv + k as u32, &vx.ends);
        }
        for &x in plan.vertex_map.keys().filter(|&&x| x < old_nv) {
            let ends = self.vertices[x as usize].ends.clone();
            collect(x, &ends);
        }
        for &b in boundary.iter().filter(|b| b.0 < old_nv) {
            let ends = self.vertices[b.index()].ends.clone();
            collect(b.0, &ends);
        }
        for (x, ends) in touched {
            self.vertices[x as usize].ends = ends;
        }

        let boundary: Vec<VertexId> = boundary.iter().map(|b| VertexId(vmap(b.0))).collect();
        self.register_face(fid, boundary, parent, rho_hat, phi_hat);
        self.extend_distances(old_nv);
        for x in old_nv..self.vertices.len() as u32 {
            self.frontier.push(Reverse((self.vertices[x as usize].dist, x)));
        }
    }

    /// Slow path for folds that identify pre-existing vertices. Never taken
    /// for sparse relators.
    fn apply_general(
        &mut self,
        plan: &MergePlan,
        fid: FaceId,
        boundary: &[VertexId],
        parent: Node,
        rho_hat: u32,
        phi_hat: u32,
    ) {
        let vmap = |x: u32| plan.vertex_map.get(&x).copied().unwrap_or(x);
        let emap = |e: u32| plan.edge_map.get(&e).copied().unwrap_or(e);

        let old_vertices = std::mem::take(&mut self.vertices);
        let mut vertices: Vec<Option<Vertex>> = vec![None; plan.vertex_total as usize];
        for (x, vx) in old_vertices.into_iter().enumerate() {
            let slot = &mut vertices[vmap(x as u32) as usize];
            match slot {
                None => *slot = Some(Vertex { ends: Vec::new(), faces: Vec::new(), ..vx }),
                Some(existing) => {
                    existing.start_of = existing.start_of.or(vx.start_of);
                }
            }
        }
        self.vertices = vertices.into_iter().flatten().collect();

        let old_edges = std::mem::take(&mut self.edges);
        let mut edges: Vec<Option<Edge>> = vec![None; plan.edge_total as usize];
        for (e, edge) in old_edges.into_iter().enumerate() {
            let slot = &mut edges[emap(e as u32) as usize];
            if slot.is_none() {
                *slot = Some(Edge {
                    src: VertexId(vmap(edge.src.0)),
                    letter: edge.letter,
                    dst: VertexId(vmap(edge.dst.0)),
                });
            }
        }
        self.edges = edges.into_iter().flatten().collect();
        for (e, edge) in self.edges.iter().enumerate() {
            for (at, letter) in [(edge.src, edge.letter), (edge.dst, edge.letter.inv())] {
                let end = End { letter, edge: e as u32 };
                let ends = &mut self.vertices[at.index()].ends;
                if !ends.contains(&end) {
                    ends.push(end);
                }
            }
        }
        for face in &mut self.faces {
            for b in &mut face.boundary {
                *b = VertexId(vmap(b.0));
            }
        }
        for f in 0..self.faces.len() {
            let mut seen = HashSet::new();
            for b in self.faces[f].boundary.clone() {
                if seen.insert(b) {
                    self.vertices[b.index()].faces.push(FaceId(f as u32));
                }
            }
        }
        let boundary: Vec<VertexId> = boundary.iter().map(|b| VertexId(vmap(b.0))).collect();
        self.register_face(fid, boundary, parent, rho_hat, phi_hat);
        let dist = self.bfs_distances();
        for (v, d) in self.vertices.iter_mut().zip(dist) {
            v.dist = d;
        }
        self.distances_certified = false;
        self.frontier = self
            .vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| v.start_of.is_none())
            .map(|(i, v)| Reverse((v.dist, i as u32)))
            .collect();
    }

    fn register_face(&mut self, fid: FaceId, boundary: Vec<VertexId>, parent: Node, rho_hat: u32, phi_hat: u32) {
        let mut seen = HashSet::new();
        for &b in &boundary {
            if seen.insert(b) {
                self.vertices[b.index()].faces.push(fid);
            }
        }
        let sigma = boundary[0];
        self.vertices[sigma.index()].start_of = Some(fid);
        self.faces.push(Face {
            boundary,
            parent,
            rho_hat,
            phi_hat,
            order: fid.0 + 1,
        });
    }

    /// Assigns distances to vertices `first_new..` by a breadth-first sweep
    /// from their already-placed neighbors; falls back to a full search if
    /// the new vertices shorten any older distance.
    fn extend_distances(&mut self, first_new: u32) {
        let total = self.vertices.len() as u32;
        if first_new == total {
            return;
        }
        let mut heap = BinaryHeap::new();
        for x in first_new..total {
            let best = self
                .neighbors(VertexId(x))
                .filter(|(_, y)| y.0 < first_new)
                .map(|(_, y)| self.vertices[y.index()].dist.saturating_add(1))
                .min();
            if let Some(d) = best {
                heap.push(Reverse((d, x)));
            }
        }
        while let Some(Reverse((d, x))) = heap.pop() {
            if self.vertices[x as usize].dist <= d {
                continue;
            }
            self.vertices[x as usize].dist = d;
            let next: Vec<u32> = self
                .neighbors(VertexId(x))
                .map(|(_, y)| y.0)
                .filter(|&y| y >= first_new)
                .collect();
            for y in next {
                if self.vertices[y as usize].dist > d + 1 {
                    heap.push(Reverse((d + 1, y)));
                }
            }
        }
        let shortcut = (first_new..total).any(|x| {
            let d = self.vertices[x as usize].dist;
            self.neighbors(VertexId(x))
                .any(|(_, y)| y.0 < first_new && d.saturating_add(1) < self.vertices[y.index()].dist)
        });
        if shortcut {
            let dist = self.bfs_distances();
            for (v, d) in self.vertices.iter_mut().zip(dist) {
                v.dist = d;
            }
        }
    }

    /// Distances from `v0` recomputed by breadth-first search.
    pub fn bfs_distances(&self) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.vertices.len()];
        let mut queue = VecDeque::new();
        dist[0] = 0;
        queue.push_back(VertexId(0));
        while let Some(v) = queue.pop_front() {
            let d = dist[v.index()];
            for (_, t) in self.neighbors(v) {
                if dist[t.index()] == u32::MAX {
                    dist[t.index()] = d + 1;
                    queue.push_back(t);
                }
            }
        }
        dist
    }
}

/// Final placement of every vertex and edge that took part in a fold.
struct MergePlan {
    vertex_map: HashMap<u32, u32>,
    edge_map: HashMap<u32, u32>,
    old_vertices_merged: bool,
    vertex_total: u32,
    edge_total: u32,
}

impl MergePlan {
    /// Fresh vertices and edges are `old_n..total`. Classes containing an
    /// old element keep its id; the remaining classes are numbered after
    /// the old range in order of their smallest member. When two old
    /// vertices were merged, everything is renumbered by smallest member.
    fn new(folding: &mut fold::Folding, old_nv: u32, total_v: u32, old_ne: u32, total_e: u32) -> Self {
        let mut members: Vec<u32> = folding.merged_vertices().collect();
        members.extend(old_nv..total_v);
        members.sort_unstable();
        members.dedup();
        let vroot: HashMap<u32, u32> = members.iter().map(|&x| (x, folding.find_vertex(x))).collect();
        let mut vclass_min: HashMap<u32, u32> = HashMap::new();
        let mut vclass_old: HashMap<u32, usize> = HashMap::new();
        for (&x, &r) in &vroot {
            let m = vclass_min.entry(r).or_insert(x);
            *m = (*m).min(x);
            if x < old_nv {
                *vclass_old.entry(r).or_default() += 1;
            }
        }
        let old_vertices_merged = vclass_old.values().any(|&c| c > 1);

        let mut emembers: Vec<u32> = folding.merged_edges().collect();
        emembers.extend(old_ne..total_e);
        emembers.sort_unstable();
        emembers.dedup();
        let eroot: HashMap<u32, u32> = emembers.iter().map(|&e| (e, folding.find_edge(e))).collect();
        let mut eclass_min: HashMap<u32, u32> = HashMap::new();
        for (&e, &r) in &eroot {
            let m = eclass_min.entry(r).or_insert(e);
            *m = (*m).min(e);
        }

        let (vertex_map, vertex_total) = if old_vertices_merged {
            renumber_all(&vroot, &vclass_min, total_v)
        } else {
            renumber_tail(&members, &vroot, &vclass_min, old_nv)
        };
        let (edge_map, edge_total) = if old_vertices_merged {
            renumber_all(&eroot, &eclass_min, total_e)
        } else {
            renumber_tail(&emembers, &eroot, &eclass_min, old_ne)
        };
        MergePlan {
            vertex_map,
            edge_map,
            old_vertices_merged,
            vertex_total,
            edge_total,
        }
    }
}

fn renumber_tail(
    members: &[u32],
    root: &HashMap<u32, u32>,
    class_min: &HashMap<u32, u32>,
    old: u32,
) -> (HashMap<u32, u32>, u32) {
    let mut map = HashMap::new();
    let mut next = old;
    let mut assigned: HashMap<u32, u32> = HashMap::new();
    for &x in members {
        let m = class_min[&root[&x]];
        let id = if m < old {
            m
        } else {
            *assigned.entry(m).or_insert_with(|| {
                next += 1;
                next - 1
            })
        };
        map.insert(x, id);
    }
    (map, next)
}

fn renumber_all(
    root: &HashMap<u32, u32>,
    class_min: &HashMap<u32, u32>,
    total: u32,
) -> (HashMap<u32, u32>, u32) {
    let mut map = HashMap::new();
    let mut next = 0;
    let mut assigned: HashMap<u32, u32> = HashMap::new();
    for x in 0..total {
        let m = root.get(&x).map_or(x, |r| class_min[r]);
        let id = *assigned.entry(m).or_insert_with(|| {
            next += 1;
            next - 1
        });
        map.insert(x, id);
    }
    (map, next)
}

/// `(ρ̂, φ̂)` from the per-edge glued flags of a freshly attached polygon:
/// `φ̂` counts glued edges clockwise from `σ`, `n − ρ̂` counts them
/// counterclockwise.
fn gluing_arc(glued: &[bool]) -> (u32, u32) {
    let n = glued.len() as u32;
    let forward = glued.iter().take_while(|&&g| g).count() as u32;
    if forward == n {
        return (n, n);
    }
    let backward = glued.iter().rev().take_while(|&&g| g).count() as u32;
    (n - backward, forward)
}
