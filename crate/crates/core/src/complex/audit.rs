//! Structural audits of a complex.
//!
//! [`Complex::verify_structure`] checks the embedding properties that every
//! approximation complex of a sparse relator has:
//!
//! 1. each face embeds: its `n` boundary vertices are distinct and its
//!    boundary reads the relator clockwise from `σ̄`;
//! 2. two faces meet, if at all, in a connected arc that contains the start
//!    vertex of exactly one of them;
//! 3. three faces meet, if at all, in a single vertex that is the start
//!    vertex of one of them, and that face meets the other two nowhere else;
//! 4. no vertex lies on four faces;
//! 5. attachment order increases along parent links.
//!
//! The remaining audits cover the gluing arcs, the dual tree and geodesics.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use super::{Complex, FaceId, Node, VertexId};
use crate::word::Letter;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotFolded { vertex: VertexId, letter: Letter },
    BoundaryRepeat { face: FaceId, first: usize, second: usize },
    BoundaryLabel { face: FaceId, index: usize },
    PairIntersection { faces: [FaceId; 2], reason: &'static str },
    TripleIntersection { faces: [FaceId; 3], reason: &'static str },
    QuadrupleIntersection { vertex: VertexId, faces: Vec<FaceId> },
    OrderNotMonotone { face: FaceId, parent: FaceId },
    GammaTooLong { face: FaceId, length: u32 },
    GammaMismatch { face: FaceId },
    OwnerMismatch { vertex: VertexId, stored: Node, expected: Node },
    TooManyChildren { node: Node, count: usize },
    DualTree(String),
    DistanceMismatch { vertex: VertexId, stored: u32, expected: u32 },
    Geodesic { from: VertexId, to: VertexId, reason: &'static str },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotFolded { vertex, letter } => {
                write!(f, "{vertex} has two edge-ends reading {letter}")
            }
            Violation::BoundaryRepeat { face, first, second } => {
                write!(f, "{face} boundary indices {first} and {second} are the same vertex")
            }
            Violation::BoundaryLabel { face, index } => {
                write!(f, "{face} boundary edge {index} does not carry the relator letter")
            }
            Violation::PairIntersection { faces, reason } => {
                write!(f, "{} ∩ {}: {reason}", faces[0], faces[1])
            }
            Violation::TripleIntersection { faces, reason } => {
                write!(f, "{} ∩ {} ∩ {}: {reason}", faces[0], faces[1], faces[2])
            }
            Violation::QuadrupleIntersection { vertex, faces } => {
                write!(f, "{vertex} lies on {} faces", faces.len())
            }
            Violation::OrderNotMonotone { face, parent } => {
                write!(f, "{face} attached before its parent {parent}")
            }
            Violation::GammaTooLong { face, length } => {
                write!(f, "gluing arc of {face} has length {length}")
            }
            Violation::GammaMismatch { face } => {
                write!(f, "{face} meets its parent outside its recorded gluing arc")
            }
            Violation::OwnerMismatch {
                vertex,
                stored,
                expected,
            } => write!(f, "{vertex} has owner {stored}, expected {expected}"),
            Violation::TooManyChildren { node, count } => {
                write!(f, "{node} has {count} children")
            }
            Violation::DualTree(msg) => write!(f, "dual tree: {msg}"),
            Violation::DistanceMismatch {
                vertex,
                stored,
                expected,
            } => write!(f, "{vertex} stores distance {stored}, search gives {expected}"),
            Violation::Geodesic { from, to, reason } => {
                write!(f, "geodesic edge {from} -> {to}: {reason}")
            }
        }
    }
}

/// Named checks with their violations.
#[derive(Clone, Debug, Default)]
pub struct AuditReport {
    pub checks: Vec<(&'static str, Vec<Violation>)>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, v)| v.is_empty())
    }

    pub fn violations(&self) -> impl Iterator<Item = &Violation> {
        self.checks.iter().flat_map(|(_, v)| v.iter())
    }

    pub fn merge(&mut self, other: AuditReport) {
        self.checks.extend(other.checks);
    }

    fn push(&mut self, name: &'static str, v: Vec<Violation>) {
        self.checks.push((name, v));
    }
}

impl Complex {
    /// Embedding properties (1)–(5) plus folded determinism.
    pub fn verify_structure(&self) -> AuditReport {
        let mut report = AuditReport::default();
        report.push("folded", self.check_folded());
        report.push("faces embed", self.check_embedding());
        report.push("pairwise intersections", self.check_pairs());
        report.push("triple intersections", self.check_triples());
        report.push("no quadruple intersections", self.check_quadruples());
        report.push("attach order along parents", self.check_order());
        report
    }

    /// Gluing-arc length bound, arc consistency with the parent, and stored
    /// owners against the definition (incident face nearest the root).
    pub fn audit_gluing(&self) -> AuditReport {
        let mut report = AuditReport::default();
        let n = self.n() as u32;
        let mut long = Vec::new();
        let mut mismatch = Vec::new();
        for f in self.face_ids() {
            let face = self.face_unchecked(f);
            let len = face.gamma_len();
            if 2 * (len + 1) > n {
                long.push(Violation::GammaTooLong { face: f, length: len });
            }
            if !self.gamma_matches_parent(f) {
                mismatch.push(Violation::GammaMismatch { face: f });
            }
        }
        report.push("gluing arc length", long);
        report.push("gluing arc equals parent intersection", mismatch);
        report.push("owners", self.check_owners());
        report
    }

    /// Dual tree well-formedness and the bound of `n − 1` children per node.
    pub fn audit_dual_tree(&self) -> AuditReport {
        let mut report = AuditReport::default();
        match self.dual_tree() {
            Err(e) => report.push("dual tree", vec![Violation::DualTree(e.to_string())]),
            Ok(tree) => {
                report.push("dual tree", Vec::new());
                let limit = self.n() - 1;
                let mut wide = Vec::new();
                for node in std::iter::once(Node::Base).chain(self.face_ids().map(Node::Face)) {
                    let count = tree.children(node).len();
                    if count > limit {
                        wide.push(Violation::TooManyChildren { node, count });
                    }
                }
                report.push("children per node", wide);
            }
        }
        report
    }

    /// Stored distances against a fresh breadth-first search.
    pub fn audit_distances(&self) -> AuditReport {
        let bfs = self.bfs_distances();
        let v = self
            .vertex_ids()
            .filter(|&x| self.distance(x) != bfs[x.index()])
            .map(|x| Violation::DistanceMismatch {
                vertex: x,
                stored: self.distance(x),
                expected: bfs[x.index()],
            })
            .collect();
        let mut report = AuditReport::default();
        report.push("distances", v);
        report
    }

    /// For every edge `u → v` with `d(v) = d(u) + 1 ≤ radius`: the owners are
    /// equal or parent and child, the edge lies on `Ω(v)`, and on a
    /// parent-to-child step `u` is an endpoint of the child's gluing arc.
    /// Every geodesic from `v0` is made of such edges.
    pub fn audit_geodesics(&self, radius: u32) -> AuditReport {
        let mut bad = Vec::new();
        for u in self.vertex_ids() {
            let du = self.distance(u);
            if du >= radius {
                continue;
            }
            for (letter, v) in self.neighbors(u) {
                if self.distance(v) != du + 1 {
                    continue;
                }
                if let Some(reason) = self.geodesic_step_problem(u, letter, v) {
                    bad.push(Violation::Geodesic { from: u, to: v, reason });
                }
            }
        }
        let mut report = AuditReport::default();
        report.push("geodesic steps", bad);
        report
    }

    /// All audits; geodesics are checked up to `radius`.
    pub fn full_audit(&self, radius: u32) -> AuditReport {
        let mut report = self.verify_structure();
        report.merge(self.audit_gluing());
        report.merge(self.audit_dual_tree());
        report.merge(self.audit_distances());
        report.merge(self.audit_geodesics(radius));
        report
    }

    fn geodesic_step_problem(&self, u: VertexId, letter: Letter, v: VertexId) -> Option<&'static str> {
        let (ou, ov) = (self.omega(u), self.omega(v));
        let Node::Face(target) = ov else {
            return Some("target owned by the base");
        };
        let face = self.face_unchecked(target);
        if ou != ov && face.parent() != ou {
            return Some("owners are neither equal nor parent and child");
        }
        if !self.face_has_edge(target, u, letter, v) {
            return Some("edge does not lie on the target's owner");
        }
        if ou != ov {
            let g = self.gamma(target).ok()?;
            if u != g.rho && u != g.phi {
                return Some("parent-to-child step leaves from inside the gluing arc");
            }
        }
        None
    }

    /// Whether `u --letter--> v` is one of the boundary edges of `f`.
    pub(crate) fn face_has_edge(&self, f: FaceId, u: VertexId, letter: Letter, v: VertexId) -> bool {
        let face = self.face_unchecked(f);
        let b = face.boundary();
        let n = b.len();
        (0..n).any(|i| {
            let (s, t) = (b[i], b[(i + 1) % n]);
            let a = self.word().at(i);
            (s == u && t == v && a == letter) || (t == u && s == v && a.inv() == letter)
        })
    }

    fn check_folded(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for v in self.vertex_ids() {
            let mut seen = HashSet::new();
            for (l, _) in self.neighbors(v) {
                if !seen.insert(l) {
                    out.push(Violation::NotFolded { vertex: v, letter: l });
                }
            }
        }
        out
    }

    fn check_embedding(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.n();
        for f in self.face_ids() {
            let b = self.face_unchecked(f).boundary();
            let mut first_seen = std::collections::HashMap::new();
            for (i, &x) in b.iter().enumerate() {
                if let Some(&j) = first_seen.get(&x) {
                    out.push(Violation::BoundaryRepeat {
                        face: f,
                        first: j,
                        second: i,
                    });
                } else {
                    first_seen.insert(x, i);
                }
            }
            for i in 0..n {
                if self.step(b[i], self.word().at(i)) != Some(b[(i + 1) % n]) {
                    out.push(Violation::BoundaryLabel { face: f, index: i });
                }
            }
        }
        out
    }

    fn meeting_pairs(&self) -> BTreeSet<(FaceId, FaceId)> {
        let mut pairs = BTreeSet::new();
        for v in self.vertex_ids() {
            let fs = self.faces_at(v);
            for (i, &a) in fs.iter().enumerate() {
                for &b in &fs[i + 1..] {
                    pairs.insert((a.min(b), a.max(b)));
                }
            }
        }
        pairs
    }

    fn common_vertices(&self, a: FaceId, b: FaceId) -> Vec<VertexId> {
        let fb = self.face_unchecked(b);
        self.face_unchecked(a)
            .boundary()
            .iter()
            .copied()
            .filter(|&x| fb.index_of(x).is_some())
            .collect()
    }

    /// `None` if `a ∩ b` is a connected arc of shared edges (or a single
    /// vertex), else the reason it is not.
    fn arc_problem(&self, a: FaceId, b: FaceId) -> Option<&'static str> {
        let n = self.n();
        let fa = self.face_unchecked(a);
        let common: HashSet<usize> = self
            .common_vertices(a, b)
            .iter()
            .filter_map(|&x| fa.index_of(x).map(|i| i as usize))
            .collect();
        if common.len() == n {
            return Some("faces share their whole boundary");
        }
        let gaps = common.iter().filter(|&&i| !common.contains(&((i + 1) % n))).count();
        if gaps != 1 {
            return Some("intersection is not connected");
        }
        for &i in &common {
            let j = (i + 1) % n;
            if common.contains(&j) {
                let (s, t) = (fa.boundary()[i], fa.boundary()[j]);
                if !self.face_has_edge(b, s, self.word().at(i), t) {
                    return Some("consecutive shared vertices are not joined by a shared edge");
                }
            }
        }
        None
    }

    fn check_pairs(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (a, b) in self.meeting_pairs() {
            if let Some(reason) = self.arc_problem(a, b) {
                out.push(Violation::PairIntersection { faces: [a, b], reason });
                continue;
            }
            let (fa, fb) = (self.face_unchecked(a), self.face_unchecked(b));
            let a_in_b = fb.index_of(fa.sigma()).is_some();
            let b_in_a = fa.index_of(fb.sigma()).is_some();
            if a_in_b == b_in_a {
                out.push(Violation::PairIntersection {
                    faces: [a, b],
                    reason: "intersection must contain exactly one start vertex",
                });
            }
        }
        out
    }

    fn check_triples(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut done = HashSet::new();
        for v in self.vertex_ids() {
            let fs = self.faces_at(v);
            if fs.len() != 3 {
                continue;
            }
            let mut t = [fs[0], fs[1], fs[2]];
            t.sort();
            if !done.insert(t) {
                continue;
            }
            let common: Vec<VertexId> = self
                .common_vertices(t[0], t[1])
                .into_iter()
                .filter(|&x| self.face_unchecked(t[2]).index_of(x).is_some())
                .collect();
            if common.len() != 1 {
                out.push(Violation::TripleIntersection {
                    faces: t,
                    reason: "triple intersection is not a single vertex",
                });
                continue;
            }
            let x = common[0];
            let ok = t.iter().any(|&r| {
                self.face_unchecked(r).sigma() == x
                    && t.iter()
                        .filter(|&&s| s != r)
                        .all(|&s| self.common_vertices(r, s) == vec![x])
            });
            if !ok {
                out.push(Violation::TripleIntersection {
                    faces: t,
                    reason: "no face of the triple is attached at the common vertex alone",
                });
            }
        }
        out
    }

    fn check_quadruples(&self) -> Vec<Violation> {
        self.vertex_ids()
            .filter(|&v| self.faces_at(v).len() >= 4)
            .map(|v| Violation::QuadrupleIntersection {
                vertex: v,
                faces: self.faces_at(v).to_vec(),
            })
            .collect()
    }

    fn check_order(&self) -> Vec<Violation> {
        self.face_ids()
            .filter_map(|f| {
                let face = self.face_unchecked(f);
                match face.parent() {
                    Node::Face(p) if p.index() >= self.face_count() || self.face_unchecked(p).order() >= face.order() => {
                        Some(Violation::OrderNotMonotone { face: f, parent: p })
                    }
                    _ => None,
                }
            })
            .collect()
    }

    /// `A ∩ parent(A)` is exactly the recorded arc (just `σ̄` for `F₁`).
    fn gamma_matches_parent(&self, f: FaceId) -> bool {
        let face = self.face_unchecked(f);
        let n = self.n() as u32;
        let expected: HashSet<VertexId> = (0..n)
            .filter(|&i| face.in_gamma(i))
            .map(|i| face.boundary()[i as usize])
            .collect();
        let actual: HashSet<VertexId> = match face.parent() {
            Node::Base => std::iter::once(self.base()).collect(),
            Node::Face(p) => self.common_vertices(f, p).into_iter().collect(),
        };
        expected == actual
    }

    fn check_owners(&self) -> Vec<Violation> {
        let Ok(tree) = self.dual_tree() else {
            return vec![Violation::DualTree("cannot build dual tree".into())];
        };
        let mut out = Vec::new();
        for v in self.vertex_ids() {
            let expected = if v == self.base() {
                Node::Base
            } else {
                match self
                    .faces_at(v)
                    .iter()
                    .map(|&f| (tree.depth(Node::Face(f)), f))
                    .min()
                {
                    Some((_, f)) => Node::Face(f),
                    None => Node::Base,
                }
            };
            if expected != self.omega(v) {
                out.push(Violation::OwnerMismatch {
                    vertex: v,
                    stored: self.omega(v),
                    expected,
                });
            }
        }
        out
    }
}
