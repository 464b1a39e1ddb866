use std::collections::HashSet;

use super::{Complex, FaceId, Node};
use crate::{Error, Result};

/// The augmented dual tree: root `v0`, one node per face, each face
/// hanging off `Ω(σ̄(face))`.
#[derive(Clone, Debug)]
pub struct DualTree {
    parent: Vec<Node>,
    root_children: Vec<FaceId>,
    children: Vec<Vec<FaceId>>,
    depth: Vec<u32>,
}

impl DualTree {
    /// Builds the tree from the stored parents and cross-checks every edge
    /// against the combinatorial description: `(A, B)` is an edge iff
    /// `σ̄(B) ∈ A` and every face `C ∋ σ̄(B)` has `σ̄(C) ∈ A`.
    pub fn build(c: &Complex) -> Result<Self> {
        let count = c.face_count();
        let mut parent = Vec::with_capacity(count);
        let mut root_children = Vec::new();
        let mut children = vec![Vec::new(); count];
        let mut depth = vec![0u32; count];

        for b in c.face_ids() {
            let face = c.face_unchecked(b);
            let p = face.parent();
            match p {
                Node::Base => {
                    root_children.push(b);
                    depth[b.index()] = 1;
                }
                Node::Face(a) => {
                    if a.index() >= count || c.face_unchecked(a).order() >= face.order() {
                        return Err(Error::StructureViolation(format!(
                            "parent {a} of {b} was not attached before it"
                        )));
                    }
                    children[a.index()].push(b);
                    depth[b.index()] = depth[a.index()] + 1;
                }
            }
            parent.push(p);

            let expected: HashSet<FaceId> = p.face().into_iter().collect();
            let found = combinatorial_parents(c, b);
            if found != expected {
                return Err(Error::StructureViolation(format!(
                    "{b} has stored parent {p} but combinatorial parents {found:?}"
                )));
            }
        }
        if c.face_count() > 0 && root_children.len() != 1 {
            return Err(Error::StructureViolation(format!(
                "root has {} children",
                root_children.len()
            )));
        }
        Ok(DualTree {
            parent,
            root_children,
            children,
            depth,
        })
    }

    pub fn parent(&self, f: FaceId) -> Node {
        self.parent[f.index()]
    }

    pub fn children(&self, node: Node) -> &[FaceId] {
        match node {
            Node::Base => &self.root_children,
            Node::Face(f) => &self.children[f.index()],
        }
    }

    /// Distance from the root; the root itself has depth 0.
    pub fn depth(&self, node: Node) -> u32 {
        match node {
            Node::Base => 0,
            Node::Face(f) => self.depth[f.index()],
        }
    }

    /// Faces from the root's child down to `f`, inclusive.
    pub fn path_from_root(&self, f: FaceId) -> Vec<FaceId> {
        let mut path = vec![f];
        let mut cur = self.parent[f.index()];
        while let Node::Face(p) = cur {
            path.push(p);
            cur = self.parent[p.index()];
        }
        path.reverse();
        path
    }

    pub fn max_children(&self) -> usize {
        self.children
            .iter()
            .map(Vec::len)
            .chain(std::iter::once(self.root_children.len()))
            .max()
            .unwrap_or(0)
    }

    pub fn node_count(&self) -> usize {
        self.parent.len() + 1
    }
}

fn combinatorial_parents(c: &Complex, b: FaceId) -> HashSet<FaceId> {
    let sigma_b = c.face_unchecked(b).sigma();
    let around = c.faces_at(sigma_b);
    around
        .iter()
        .copied()
        .filter(|&a| a != b)
        .filter(|&a| {
            let fa = c.face_unchecked(a);
            around
                .iter()
                .all(|&cc| fa.index_of(c.face_unchecked(cc).sigma()).is_some())
        })
        .collect()
}

impl Complex {
    pub fn dual_tree(&self) -> Result<DualTree> {
        DualTree::build(self)
    }
}
