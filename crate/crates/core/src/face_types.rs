//! Face types, vertex classes and the finite table of class-level moves.
//!
//! A face `A` has type `(ρ̂, φ̂, 2k)` where
//! `2k = ρ̂ + φ̂ + d(v0, ρ(A)) − d(v0, φ(A))` locates the point of `∂A`
//! furthest from `v0`. Two vertices are in the same class when their
//! owners have the same type and they sit at the same boundary index.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::complex::{BuildOptions, Complex, FaceId, Node, StepKind, VertexId};
use crate::word::{Letter, Word};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceType {
    pub rho_hat: u32,
    pub phi_hat: u32,
    /// Twice `k`, so half-integers stay exact.
    pub two_k: i64,
}

impl FaceType {
    /// The type of a face glued at a single point, and of `F₁`.
    pub fn point_glued(n: usize) -> Self {
        FaceType {
            rho_hat: n as u32,
            phi_hat: 0,
            two_k: n as i64,
        }
    }

    /// Where the furthest point of the face sits.
    pub fn furthest_point(&self) -> FurthestPoint {
        if self.two_k % 2 == 0 {
            FurthestPoint::Vertex((self.two_k / 2) as u32)
        } else {
            FurthestPoint::EdgeMidpoint(((self.two_k - 1) / 2) as u32)
        }
    }
}

impl fmt::Display for FaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.rho_hat, self.phi_hat, self.two_k)
    }
}

/// The point `x_A`: a boundary vertex, or the midpoint of the edge from
/// the given index to the next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FurthestPoint {
    Vertex(u32),
    EdgeMidpoint(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexClass {
    Base,
    Face { face_type: FaceType, index: u32 },
}

impl fmt::Display for VertexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexClass::Base => f.write_str("[v0]"),
            VertexClass::Face { face_type, index } => write!(f, "{face_type}#{index}"),
        }
    }
}

fn certified(c: &Complex) -> Result<()> {
    if c.distances_certified() {
        Ok(())
    } else {
        Err(Error::StaleDistances)
    }
}

/// `2·k_A`.
pub fn k_value(c: &Complex, a: FaceId) -> Result<i64> {
    certified(c)?;
    let face = c.face(a)?;
    let g = c.gamma(a)?;
    Ok(face.rho_hat() as i64 + face.phi_hat() as i64 + c.distance(g.rho) as i64
        - c.distance(g.phi) as i64)
}

pub fn face_type(c: &Complex, a: FaceId) -> Result<FaceType> {
    let two_k = k_value(c, a)?;
    let face = c.face(a)?;
    Ok(FaceType {
        rho_hat: face.rho_hat(),
        phi_hat: face.phi_hat(),
        two_k,
    })
}

pub fn vertex_class(c: &Complex, v: VertexId) -> Result<VertexClass> {
    if !c.contains_vertex(v) {
        return Err(Error::UnknownVertex(v));
    }
    match c.omega(v) {
        Node::Base => Ok(VertexClass::Base),
        Node::Face(f) => Ok(VertexClass::Face {
            face_type: face_type(c, f)?,
            index: c.owner_index(v),
        }),
    }
}

pub type ClassId = usize;

/// Key of a class-level move: source class, letter, and for pops the class
/// of `σ̄(Ω(u))` that must be on top of the stack.
/// `(from, letter index, guard, to, kind, pushed)` with classes in place of ids.
pub type SignatureRow = (VertexClass, usize, Option<VertexClass>, VertexClass, StepKind, Option<VertexClass>);

pub type MoveKey = (ClassId, Letter, Option<ClassId>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Move {
    pub to: ClassId,
    pub kind: StepKind,
    /// Class of `σ̄(Ω(v))` for push moves.
    pub push: Option<ClassId>,
}

/// Processing order of the class worklist.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ClassOrder {
    #[default]
    BreadthFirst,
    DepthFirst,
}

#[derive(Clone, Debug)]
pub struct ClassTable {
    word: Word,
    classes: Vec<VertexClass>,
    ids: HashMap<VertexClass, ClassId>,
    representatives: Vec<VertexId>,
    child_type: Vec<Option<FaceType>>,
    moves: BTreeMap<(ClassId, usize, Option<ClassId>), (Letter, Move)>,
    complex: Complex,
    complete: bool,
}

impl ClassTable {
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// The base class always has id 0.
    pub fn base(&self) -> ClassId {
        0
    }

    pub fn class(&self, id: ClassId) -> VertexClass {
        self.classes[id]
    }

    pub fn classes(&self) -> &[VertexClass] {
        &self.classes
    }

    pub fn id_of(&self, class: &VertexClass) -> Option<ClassId> {
        self.ids.get(class).copied()
    }

    pub fn representative(&self, id: ClassId) -> VertexId {
        self.representatives[id]
    }

    /// Type of the face attached at vertices of this class.
    pub fn child_type(&self, id: ClassId) -> Option<FaceType> {
        self.child_type[id]
    }

    /// The working complex the table was read from.
    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn get(&self, from: ClassId, letter: Letter, guard: Option<ClassId>) -> Option<Move> {
        self.moves.get(&(from, letter.index(), guard)).map(|&(_, m)| m)
    }

    pub fn moves(&self) -> impl Iterator<Item = (MoveKey, Move)> + '_ {
        self.moves
            .iter()
            .map(|(&(from, _, guard), &(letter, m))| ((from, letter, guard), m))
    }

    pub fn face_types(&self) -> BTreeSet<FaceType> {
        self.classes
            .iter()
            .filter_map(|c| match c {
                VertexClass::Face { face_type, .. } => Some(*face_type),
                VertexClass::Base => None,
            })
            .collect()
    }

    /// Class id of a vertex of any complex for the same relator.
    pub fn class_of(&self, c: &Complex, v: VertexId) -> Result<ClassId> {
        let class = vertex_class(c, v)?;
        self.id_of(&class)
            .ok_or_else(|| Error::StructureViolation(format!("{v} has unlisted class {class}")))
    }

    /// The table with class ids replaced by classes, for comparing runs.
    pub fn signature(&self) -> BTreeSet<SignatureRow> {
        self.moves()
            .map(|((from, letter, guard), m)| {
                (
                    self.classes[from],
                    letter.index(),
                    guard.map(|g| self.classes[g]),
                    self.classes[m.to],
                    m.kind,
                    m.push.map(|p| self.classes[p]),
                )
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct ClassRecord {
            id: ClassId,
            kind: &'static str,
            face_type: Option<[i64; 3]>,
            index: Option<u32>,
        }
        #[derive(Serialize)]
        struct MoveRecord {
            from: ClassId,
            letter: Letter,
            to: ClassId,
            kind: StepKind,
            pop_guard: Option<ClassId>,
            push: Option<ClassId>,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            word: &'a Word,
            classes: Vec<ClassRecord>,
            transitions: Vec<MoveRecord>,
        }
        let classes = self
            .classes
            .iter()
            .enumerate()
            .map(|(id, c)| match c {
                VertexClass::Base => ClassRecord {
                    id,
                    kind: "base",
                    face_type: None,
                    index: None,
                },
                VertexClass::Face { face_type: t, index } => ClassRecord {
                    id,
                    kind: "face",
                    face_type: Some([t.rho_hat as i64, t.phi_hat as i64, t.two_k]),
                    index: Some(*index),
                },
            })
            .collect();
        let transitions = self
            .moves()
            .map(|((from, letter, guard), m)| MoveRecord {
                from,
                letter,
                to: m.to,
                kind: m.kind,
                pop_guard: guard,
                push: m.push,
            })
            .collect();
        serde_json::to_string_pretty(&Doc {
            word: &self.word,
            classes,
            transitions,
        })
        .expect("class tables serialize")
    }
}

pub fn enumerate_classes(w: &Word) -> Result<ClassTable> {
    enumerate_classes_with(w, BuildOptions::default(), ClassOrder::default())
}

/// Grows a working complex around one representative per class until every
/// class has all of its moves recorded.
pub fn enumerate_classes_with(w: &Word, options: BuildOptions, order: ClassOrder) -> Result<ClassTable> {
    let complex = Complex::init_with(w, options)?;
    let base = complex.base();
    let mut t = ClassTable {
        word: w.clone(),
        classes: vec![VertexClass::Base],
        ids: HashMap::from([(VertexClass::Base, 0)]),
        representatives: vec![base],
        child_type: vec![None],
        moves: BTreeMap::new(),
        complex,
        complete: false,
    };
    let mut queue = VecDeque::from([0]);
    while let Some(g) = match order {
        ClassOrder::BreadthFirst => queue.pop_front(),
        ClassOrder::DepthFirst => queue.pop_back(),
    } {
        t.saturate(g, &mut queue)?;
    }
    if !t.complex.distances_certified() {
        return Err(Error::StaleDistances);
    }
    t.complete = true;
    Ok(t)
}

impl ClassTable {
    fn register(&mut self, v: VertexId, queue: &mut VecDeque<ClassId>) -> Result<ClassId> {
        let class = vertex_class(&self.complex, v)?;
        if let Some(&id) = self.ids.get(&class) {
            return Ok(id);
        }
        let id = self.classes.len();
        self.classes.push(class);
        self.ids.insert(class, id);
        self.representatives.push(v);
        self.child_type.push(None);
        queue.push_back(id);
        Ok(id)
    }

    fn record(&mut self, from: ClassId, letter: Letter, guard: Option<ClassId>, m: Move) -> Result<()> {
        match self.moves.insert((from, letter.index(), guard), (letter, m)) {
            Some((_, old)) if old != m => Err(Error::StructureViolation(format!(
                "class {} has two different moves on {letter}",
                self.classes[from]
            ))),
            _ => Ok(()),
        }
    }

    fn ensure_face_at(&mut self, v: VertexId) -> Result<FaceId> {
        match self.complex.face_starting_at(v) {
            Some(f) => Ok(f),
            None => self.complex.attach_face(v),
        }
    }

    fn saturate(&mut self, g: ClassId, queue: &mut VecDeque<ClassId>) -> Result<()> {
        let u = self.representatives[g];

        // The face started at u, its owned vertices, and their pops under guard g.
        let child = self.ensure_face_at(u)?;
        self.child_type[g] = Some(face_type(&self.complex, child)?);
        let face = self.complex.face(child)?.clone();
        for i in face.phi_hat() + 1..face.rho_hat() {
            let y = face.boundary()[i as usize];
            if self.complex.omega(y) != Node::Face(child) {
                return Err(Error::StructureViolation(format!(
                    "{y} lies off the gluing arc of {child} but is not owned by it"
                )));
            }
            let cy = self.register(y, queue)?;
            let pops: Vec<_> = self
                .complex
                .neighbors(y)
                .filter(|&(_, z)| self.complex.step_kind(y, z) == Some(StepKind::Pop))
                .collect();
            for (x, z) in pops {
                let to = self.register(z, queue)?;
                self.record(cy, x, Some(g), Move { to, kind: StepKind::Pop, push: None })?;
            }
        }

        // Every face through u is Ω(u) or a child attached on ∂Ω(u).
        let owner = match self.complex.omega(u) {
            Node::Face(f) => f,
            Node::Base => child,
        };
        let boundary = self.complex.face(owner)?.boundary().to_vec();
        for b in boundary {
            self.ensure_face_at(b)?;
        }

        let steps: Vec<_> = self.complex.neighbors(u).collect();
        for (x, v) in steps {
            let kind = self.complex.step_kind(u, v).ok_or_else(|| {
                Error::StructureViolation(format!("edge {u} -{x}-> {v} joins unrelated faces"))
            })?;
            let to = self.register(v, queue)?;
            match kind {
                StepKind::SameFace => self.record(g, x, None, Move { to, kind, push: None })?,
                StepKind::Push => {
                    let b = self.complex.omega(v).face().expect("push targets are owned by faces");
                    let sigma = self.complex.face(b)?.sigma();
                    let push = Some(self.register(sigma, queue)?);
                    self.record(g, x, None, Move { to, kind, push })?;
                }
                StepKind::Pop => {
                    let a = self.complex.omega(u).face().expect("pop sources are owned by faces");
                    let sigma = self.complex.face(a)?.sigma();
                    let guard = self.register(sigma, queue)?;
                    self.record(g, x, Some(guard), Move { to, kind, push: None })?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn surface() -> Complex {
        Complex::init(&w("abABcdCD")).unwrap()
    }

    #[test]
    fn first_face_type() {
        let c = surface();
        assert_eq!(k_value(&c, FaceId(0)).unwrap(), 8);
        assert_eq!(face_type(&c, FaceId(0)).unwrap(), FaceType::point_glued(8));
    }

    #[test]
    fn index_three_face_type() {
        let mut c = surface();
        let v3 = c.face(FaceId(0)).unwrap().boundary()[3];
        let f = c.attach_face(v3).unwrap();
        assert_eq!(
            face_type(&c, f).unwrap(),
            FaceType {
                rho_hat: 8,
                phi_hat: 1,
                two_k: 10
            }
        );
    }

    #[test]
    fn point_glued_face_matches_first_face() {
        let mut c = surface();
        let v1 = c.face(FaceId(0)).unwrap().boundary()[1];
        let f = c.attach_face(v1).unwrap();
        assert_eq!(face_type(&c, f).unwrap(), face_type(&c, FaceId(0)).unwrap());
    }

    #[test]
    fn classes_of_first_face() {
        let c = surface();
        let f1 = c.face(FaceId(0)).unwrap().boundary().to_vec();
        assert_eq!(vertex_class(&c, c.base()).unwrap(), VertexClass::Base);
        for i in [1, 4] {
            assert_eq!(
                vertex_class(&c, f1[i]).unwrap(),
                VertexClass::Face {
                    face_type: FaceType::point_glued(8),
                    index: i as u32
                }
            );
        }
    }

    #[test]
    fn imported_uncertified_distances_are_refused() {
        let mut c = surface();
        c.build_to_radius(1).unwrap();
        let mut doc = c.to_document();
        doc.vertices[3].dist += 5;
        let bad = Complex::from_document(&doc, BuildOptions::default()).unwrap();
        assert!(matches!(k_value(&bad, FaceId(0)), Err(Error::StaleDistances)));
    }

    #[test]
    fn table_starts_with_a_push_into_the_first_face() {
        let t = enumerate_classes(&w("abABcdCD")).unwrap();
        assert!(t.is_complete());
        let a: Letter = Letter::new(0, false);
        let m = t.get(t.base(), a, None).unwrap();
        assert_eq!(m.kind, StepKind::Push);
        assert_eq!(m.push, Some(t.base()));
        assert_eq!(
            t.class(m.to),
            VertexClass::Face {
                face_type: FaceType::point_glued(8),
                index: 1
            }
        );
        let bound = 8 * t.face_types().len() + 1;
        assert!(t.len() <= bound);
    }

    #[test]
    fn base_is_never_entered_without_a_pop() {
        let t = enumerate_classes(&w("abABcdCD")).unwrap();
        for (_, m) in t.moves() {
            if m.to == t.base() {
                assert_eq!(m.kind, StepKind::Pop);
            }
        }
    }

    #[test]
    fn table_is_independent_of_processing_order() {
        let r = w("abABcdCD");
        let a = enumerate_classes(&r).unwrap();
        let b = enumerate_classes_with(
            &r,
            BuildOptions {
                fold_order: crate::complex::FoldOrder::Shuffled(7),
                ..BuildOptions::default()
            },
            ClassOrder::DepthFirst,
        )
        .unwrap();
        assert_eq!(a.len(), b.len());
        assert_eq!(a.signature(), b.signature());
    }

    #[test]
    fn working_complex_stays_well_formed() {
        let t = enumerate_classes(&w("abABcdCD")).unwrap();
        let report = t.complex().verify_structure();
        assert!(report.passed(), "{:?}", report.violations().collect::<Vec<_>>());
    }
}
