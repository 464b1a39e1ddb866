use std::collections::VecDeque;

use super::{Complex, Node, VertexId};

/// A labeling-independent description of a complex: vertices are numbered
/// in breadth-first order from `v0`, visiting neighbors in letter order.
/// Two folded complexes are label-isomorphic (as based complexes) exactly
/// when their canonical forms are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// `(distance, canonical σ̄ of the owner)` per canonical vertex.
    pub vertices: Vec<(u32, Option<u32>)>,
    /// `(source, letter index, target)`, sorted.
    pub edges: Vec<(u32, usize, u32)>,
    /// `(boundary, canonical σ̄ of the parent, ρ̂, φ̂)`, sorted.
    pub faces: Vec<(Vec<u32>, Option<u32>, u32, u32)>,
}

impl Complex {
    pub fn canonical_form(&self) -> CanonicalForm {
        let mut label = vec![u32::MAX; self.vertex_count()];
        let mut order = Vec::with_capacity(self.vertex_count());
        let mut queue = VecDeque::from([self.base()]);
        label[0] = 0;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let mut next: Vec<_> = self.neighbors(v).collect();
            next.sort_by_key(|(l, _)| l.index());
            for (_, t) in next {
                if label[t.index()] == u32::MAX {
                    label[t.index()] = order.len() as u32 + queue.len() as u32;
                    queue.push_back(t);
                }
            }
        }
        let canon = |v: VertexId| label[v.index()];
        let sigma_of = |node: Node| node.face().map(|f| canon(self.face_unchecked(f).sigma()));

        let vertices = order
            .iter()
            .map(|&v| (self.distance(v), sigma_of(self.omega(v))))
            .collect();
        let mut edges: Vec<_> = self
            .edges()
            .iter()
            .map(|e| (canon(e.src), e.letter.index(), canon(e.dst)))
            .collect();
        edges.sort_unstable();
        let mut faces: Vec<_> = self
            .face_ids()
            .map(|f| {
                let face = self.face_unchecked(f);
                (
                    face.boundary().iter().map(|&b| canon(b)).collect(),
                    sigma_of(face.parent()),
                    face.rho_hat(),
                    face.phi_hat(),
                )
            })
            .collect();
        faces.sort_unstable();
        CanonicalForm {
            vertices,
            edges,
            faces,
        }
    }
}
