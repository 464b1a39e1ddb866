//! JSON and DOT renderings of a complex, and JSON import for replaying audits.

use std::cmp::Reverse;
use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{BuildOptions, Complex, Edge, End, Face, FaceId, Node, Vertex, VertexId};
use crate::word::{Letter, Word};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: u32,
    pub dist: u32,
    /// Owning face id; `null` for the base vertex.
    pub owner: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub src: u32,
    pub letter: Letter,
    pub dst: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceRecord {
    pub id: u32,
    /// Parent face id; `null` when the parent is the base vertex.
    pub parent: Option<u32>,
    pub boundary: Vec<u32>,
    pub rho_hat: u32,
    pub phi_hat: u32,
    pub order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub n: usize,
    pub word: Word,
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<EdgeRecord>,
    pub faces: Vec<FaceRecord>,
}

impl Complex {
    pub fn to_document(&self) -> ComplexDocument {
        ComplexDocument {
            n: self.n(),
            word: self.word().clone(),
            vertices: self
                .vertex_ids()
                .map(|v| VertexRecord {
                    id: v.0,
                    dist: self.distance(v),
                    owner: self.omega(v).face().map(|f| f.0),
                })
                .collect(),
            edges: self
                .edges()
                .iter()
                .map(|e| EdgeRecord {
                    src: e.src.0,
                    letter: e.letter,
                    dst: e.dst.0,
                })
                .collect(),
            faces: self
                .face_ids()
                .map(|f| {
                    let face = self.face_unchecked(f);
                    FaceRecord {
                        id: f.0,
                        parent: face.parent().face().map(|p| p.0),
                        boundary: face.boundary().iter().map(|b| b.0).collect(),
                        rho_hat: face.rho_hat(),
                        phi_hat: face.phi_hat(),
                        order: face.order(),
                    }
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("complex documents serialize")
    }

    /// Rebuilds a complex from a document. Only referential integrity is
    /// checked here; structural properties are left to the audits. Stored
    /// distances are certified only if they match a breadth-first search.
    pub fn from_document(doc: &ComplexDocument, options: BuildOptions) -> Result<Complex> {
        let nv = doc.vertices.len();
        let nf = doc.faces.len();
        if doc.n != doc.word.len() || doc.word.is_empty() {
            return Err(Error::Import(format!("n = {} but the word has length {}", doc.n, doc.word.len())));
        }
        for (i, v) in doc.vertices.iter().enumerate() {
            if v.id as usize != i {
                return Err(Error::Import(format!("vertex record {i} has id {}", v.id)));
            }
            if v.owner.is_some_and(|o| o as usize >= nf) {
                return Err(Error::Import(format!("vertex {i} has unknown owner")));
            }
        }
        if nv == 0 {
            return Err(Error::Import("no vertices".into()));
        }
        let vid = |x: u32| -> Result<VertexId> {
            if (x as usize) < nv {
                Ok(VertexId(x))
            } else {
                Err(Error::Import(format!("unknown vertex {x}")))
            }
        };

        let mut vertices: Vec<Vertex> = doc
            .vertices
            .iter()
            .map(|r| Vertex::new(r.dist, r.owner.map_or(Node::Base, |o| Node::Face(FaceId(o))), 0))
            .collect();
        let mut edges = Vec::with_capacity(doc.edges.len());
        for (k, e) in doc.edges.iter().enumerate() {
            let edge = Edge {
                src: vid(e.src)?,
                letter: e.letter,
                dst: vid(e.dst)?,
            };
            vertices[edge.src.index()].ends.push(End {
                letter: edge.letter,
                edge: k as u32,
            });
            vertices[edge.dst.index()].ends.push(End {
                letter: edge.letter.inv(),
                edge: k as u32,
            });
            edges.push(edge);
        }
        let mut faces = Vec::with_capacity(nf);
        for (i, f) in doc.faces.iter().enumerate() {
            if f.id as usize != i {
                return Err(Error::Import(format!("face record {i} has id {}", f.id)));
            }
            if f.boundary.len() != doc.n {
                return Err(Error::Import(format!("face {i} has {} boundary vertices", f.boundary.len())));
            }
            if f.parent.is_some_and(|p| p as usize >= nf) {
                return Err(Error::Import(format!("face {i} has unknown parent")));
            }
            let boundary = f.boundary.iter().map(|&b| vid(b)).collect::<Result<Vec<_>>>()?;
            let fid = FaceId(i as u32);
            let mut seen = HashSet::new();
            for &b in &boundary {
                if seen.insert(b) {
                    vertices[b.index()].faces.push(fid);
                }
            }
            vertices[boundary[0].index()].start_of.get_or_insert(fid);
            faces.push(Face {
                boundary,
                parent: f.parent.map_or(Node::Base, |p| Node::Face(FaceId(p))),
                rho_hat: f.rho_hat,
                phi_hat: f.phi_hat,
                order: f.order,
            });
        }
        for (i, v) in vertices.iter_mut().enumerate() {
            if let Node::Face(o) = v.owner {
                v.owner_index = faces[o.index()].index_of(VertexId(i as u32)).unwrap_or(0);
            }
        }

        let frontier = vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| v.start_of.is_none())
            .map(|(i, v)| Reverse((v.dist, i as u32)))
            .collect();
        let mut c = Complex {
            word: doc.word.clone(),
            vertices,
            edges,
            faces,
            frontier,
            options,
            distances_certified: false,
        };
        let certified = c.vertex_ids().zip(c.bfs_distances()).all(|(v, d)| c.distance(v) == d);
        c.distances_certified = certified;
        Ok(c)
    }

    pub fn from_json(s: &str, options: BuildOptions) -> Result<Complex> {
        let doc: ComplexDocument = serde_json::from_str(s).map_err(|e| Error::Import(e.to_string()))?;
        Complex::from_document(&doc, options)
    }

    /// GraphViz rendering of the 1-skeleton; `v0` is highlighted and each
    /// vertex shows its distance.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "digraph complex {{").unwrap();
        writeln!(out, "  node [shape=circle, fontsize=10];").unwrap();
        for v in self.vertex_ids() {
            let style = if v == self.base() {
                ", style=filled, fillcolor=gold, penwidth=2"
            } else {
                ""
            };
            writeln!(out, "  {v} [label=\"{v}\\nd={}\"{style}];", self.distance(v)).unwrap();
        }
        for e in self.edges() {
            writeln!(out, "  {} -> {} [label=\"{}\"];", e.src, e.dst, e.letter).unwrap();
        }
        writeln!(out, "}}").unwrap();
        out
    }
}
