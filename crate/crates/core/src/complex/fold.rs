//! Edge folding over union-find on vertices and edges.
//!
//! Two edge-ends at one vertex with the same outgoing letter are identified,
//! together with their far endpoints, until no vertex has a repeated
//! outgoing letter. An edge `(s, x, t)` contributes the outgoing letter `x`
//! at `s` and `x⁻¹` at `t`, which covers both the same-orientation rule and
//! the opposite-orientation rule with inverse labels.

use std::collections::HashMap;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

use super::{Edge, End, Vertex};
use crate::word::Letter;

pub(super) struct Folding {
    vertex_parent: HashMap<u32, u32>,
    edge_parent: HashMap<u32, u32>,
    ends: HashMap<u32, Vec<End>>,
}

impl Folding {
    pub(super) fn find_vertex(&mut self, x: u32) -> u32 {
        find(&mut self.vertex_parent, x)
    }

    pub(super) fn find_edge(&mut self, e: u32) -> u32 {
        find(&mut self.edge_parent, e)
    }

    /// Vertices that took part in a merge.
    pub(super) fn merged_vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.vertex_parent.keys().copied()
    }

    pub(super) fn merged_edges(&self) -> impl Iterator<Item = u32> + '_ {
        self.edge_parent.keys().copied()
    }
}

fn find(parent: &mut HashMap<u32, u32>, x: u32) -> u32 {
    let mut root = x;
    while let Some(&p) = parent.get(&root) {
        if p == root {
            break;
        }
        root = p;
    }
    let mut cur = x;
    while cur != root {
        let next = parent[&cur];
        parent.insert(cur, root);
        cur = next;
    }
    root
}

/// Folds starting from `seeds` until every vertex has pairwise distinct
/// outgoing letters. With an RNG the worklist order, the scan order of
/// edge-ends and the surviving representatives are randomized.
pub(super) fn fold(
    vertices: &[Vertex],
    edges: &[Edge],
    seeds: &[u32],
    mut rng: Option<&mut StdRng>,
) -> Folding {
    let mut st = Folding {
        vertex_parent: HashMap::new(),
        edge_parent: HashMap::new(),
        ends: HashMap::new(),
    };
    let mut work: Vec<u32> = seeds.to_vec();

    while !work.is_empty() {
        let pick = match rng.as_deref_mut() {
            Some(r) => r.gen_range(0..work.len()),
            None => work.len() - 1,
        };
        let mut x = work.swap_remove(pick);
        x = st.find_vertex(x);

        loop {
            let raw = st
                .ends
                .get(&x)
                .cloned()
                .unwrap_or_else(|| vertices[x as usize].ends.clone());
            let mut canon: Vec<End> = Vec::with_capacity(raw.len());
            for end in raw {
                let e = st.find_edge(end.edge);
                let c = End { letter: end.letter, edge: e };
                if !canon.contains(&c) {
                    canon.push(c);
                }
            }
            if let Some(r) = rng.as_deref_mut() {
                canon.shuffle(r);
            }
            let clash = find_clash(&canon);
            st.ends.insert(x, canon.clone());
            let Some((a, b)) = clash else { break };

            let letter = canon[a].letter;
            let (e1, e2) = (canon[a].edge, canon[b].edge);
            let y1 = far_end(&mut st, edges, e1, x, letter);
            let y2 = far_end(&mut st, edges, e2, x, letter);

            let keep_first = match rng.as_deref_mut() {
                Some(r) => r.gen_bool(0.5),
                None => e1 < e2,
            };
            let (root_e, child_e) = if keep_first { (e1, e2) } else { (e2, e1) };
            st.edge_parent.insert(child_e, root_e);
            st.edge_parent.entry(root_e).or_insert(root_e);

            if y1 != y2 {
                let r = union_vertices(&mut st, vertices, y1, y2, rng.as_deref_mut());
                work.push(r);
            }
            x = st.find_vertex(x);
        }
    }
    st
}

fn find_clash(ends: &[End]) -> Option<(usize, usize)> {
    for a in 0..ends.len() {
        for b in a + 1..ends.len() {
            if ends[a].letter == ends[b].letter {
                return Some((a, b));
            }
        }
    }
    None
}

fn far_end(st: &mut Folding, edges: &[Edge], e: u32, x: u32, letter: Letter) -> u32 {
    let edge = &edges[e as usize];
    let src = st.find_vertex(edge.src.0);
    if edge.letter == letter && src == x {
        st.find_vertex(edge.dst.0)
    } else {
        src
    }
}

fn union_vertices(
    st: &mut Folding,
    vertices: &[Vertex],
    a: u32,
    b: u32,
    rng: Option<&mut StdRng>,
) -> u32 {
    let keep_a = match rng {
        Some(r) => r.gen_bool(0.5),
        None => a < b,
    };
    let (root, child) = if keep_a { (a, b) } else { (b, a) };
    st.vertex_parent.insert(child, root);
    st.vertex_parent.entry(root).or_insert(root);
    let child_ends = st
        .ends
        .remove(&child)
        .unwrap_or_else(|| vertices[child as usize].ends.clone());
    let root_ends = st
        .ends
        .entry(root)
        .or_insert_with(|| vertices[root as usize].ends.clone());
    root_ends.extend(child_ends);
    root
}
