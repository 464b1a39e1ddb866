use super::{require_complete, Dfa, MinimizedDfa};
use crate::complex::StepKind;
use crate::face_types::{ClassId, ClassTable, VertexClass};
use crate::word::{Alphabet, Letter, Word};
use crate::Result;

/// The finite automaton of geodesics from `v0`: pushes, and moves within a
/// face that head toward its furthest point. Every state accepts.
#[derive(Clone, Debug)]
pub struct GeodesicFsa {
    classes: Vec<VertexClass>,
    dfa: Dfa,
}

fn toward_furthest(from: &VertexClass, to: &VertexClass) -> bool {
    let (
        VertexClass::Face { face_type, index: i },
        VertexClass::Face { index: j, .. },
    ) = (from, to)
    else {
        return false;
    };
    let (i, j, two_k) = (2 * *i as i64, 2 * *j as i64, face_type.two_k);
    (i < j && j <= two_k) || (i > j && j >= two_k)
}

pub fn build_geodesic_fsa(table: &ClassTable) -> Result<GeodesicFsa> {
    require_complete(table)?;
    let letters: Vec<Letter> = Alphabet::covering(table.word()).letters().collect();
    let mut delta = vec![vec![None; letters.len()]; table.len()];
    for ((from, letter, _), m) in table.moves() {
        let keep = match m.kind {
            StepKind::Push => true,
            StepKind::SameFace => toward_furthest(&table.class(from), &table.class(m.to)),
            StepKind::Pop => false,
        };
        if keep {
            let pos = letters.iter().position(|&l| l == letter).expect("table letters come from the relator");
            delta[from][pos] = Some(m.to);
        }
    }
    Ok(GeodesicFsa {
        classes: table.classes().to_vec(),
        dfa: Dfa {
            letters,
            start: table.base(),
            accepting: vec![true; table.len()],
            delta,
            labels: table.classes().iter().map(ToString::to_string).collect(),
        },
    })
}

impl GeodesicFsa {
    pub fn classes(&self) -> &[VertexClass] {
        &self.classes
    }

    pub fn as_dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn run(&self, u: &Word) -> Option<ClassId> {
        self.dfa.run(u)
    }

    pub fn accepts(&self, u: &Word) -> bool {
        self.dfa.accepts(u)
    }

    pub fn transition_count(&self) -> usize {
        self.dfa.delta.iter().flatten().flatten().count()
    }

    pub fn minimize(&self) -> MinimizedDfa {
        self.dfa.minimize()
    }

    pub fn to_dot(&self) -> String {
        self.dfa.to_dot("geodesics")
    }

    pub fn to_json(&self) -> String {
        self.dfa.to_json()
    }
}
