use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::Word;
use crate::Error;

/// Reading direction around the boundary: clockwise reads letters as
/// written, counterclockwise reads inverted letters backwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Clockwise,
    Counterclockwise,
}

impl Orientation {
    /// `+1` or `−1`.
    pub fn sign(self) -> i64 {
        match self {
            Orientation::Clockwise => 1,
            Orientation::Counterclockwise => -1,
        }
    }

    pub fn from_sign(s: i64) -> Self {
        if s >= 0 {
            Orientation::Clockwise
        } else {
            Orientation::Counterclockwise
        }
    }
}

/// The cyclic subword `w(i, j, ε)` of a word of length `n`, materialized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicSubword {
    pub start: usize,
    pub end: usize,
    pub orientation: Orientation,
    pub letters: Word,
    zone: FixedBitSet,
}

impl CyclicSubword {
    /// Builds `w(i, j, ε)`. Indices are taken mod `n`. The subword must be
    /// nonempty and shorter than `w`.
    pub fn new(w: &Word, i: usize, j: usize, orientation: Orientation) -> Result<Self, Error> {
        let n = w.len();
        if n == 0 {
            return Err(Error::InvalidSubword("the word is empty".into()));
        }
        let (i, j) = (i % n, j % n);
        let len = match orientation {
            Orientation::Clockwise => (j + n - i) % n,
            Orientation::Counterclockwise => (i + n - j) % n,
        };
        if len == 0 {
            return Err(Error::InvalidSubword(format!(
                "w({i},{j},{}) would be empty or of length {n}",
                orientation.sign()
            )));
        }
        Ok(Self::build(w, i, len, orientation))
    }

    fn build(w: &Word, i: usize, len: usize, orientation: Orientation) -> Self {
        let n = w.len();
        let mut zone = FixedBitSet::with_capacity(n);
        zone.insert(i);
        let mut letters = Word::empty();
        let mut pos = i;
        for _ in 0..len {
            match orientation {
                Orientation::Clockwise => {
                    letters.push(w.at(pos));
                    pos = (pos + 1) % n;
                }
                Orientation::Counterclockwise => {
                    pos = (pos + n - 1) % n;
                    letters.push(w.at(pos).inv());
                }
            }
            zone.insert(pos);
        }
        CyclicSubword {
            start: i,
            end: pos,
            orientation,
            letters,
            zone,
        }
    }

    /// Every cyclic subword of `w`: all `(i, j, ε)` with `j ≠ i`.
    pub fn all(w: &Word) -> Vec<CyclicSubword> {
        let n = w.len();
        let mut out = Vec::with_capacity(2 * n * n.saturating_sub(1));
        for orientation in [Orientation::Clockwise, Orientation::Counterclockwise] {
            for i in 0..n {
                for len in 1..n {
                    out.push(Self::build(w, i, len, orientation));
                }
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn zone(&self) -> &FixedBitSet {
        &self.zone
    }

    /// Zone as sorted indices.
    pub fn zone_indices(&self) -> Vec<usize> {
        self.zone.ones().collect()
    }

    pub fn zone_contains(&self, k: usize) -> bool {
        self.zone.contains(k)
    }

    pub fn zone_meets(&self, other: &CyclicSubword) -> bool {
        !self.zone.is_disjoint(&other.zone)
    }
}

impl std::fmt::Display for CyclicSubword {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "w({},{},{})", self.start, self.end, self.orientation.sign())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn commutator_subwords() {
        let c = w("abAB");
        let q1 = CyclicSubword::new(&c, 3, 2, Orientation::Counterclockwise).unwrap();
        assert_eq!(q1.letters, w("a"));
        assert_eq!(q1.zone_indices(), vec![2, 3]);
        let q1p = CyclicSubword::new(&c, 0, 1, Orientation::Clockwise).unwrap();
        assert_eq!(q1p.letters, w("a"));
        assert_eq!(q1p.zone_indices(), vec![0, 1]);
        let q2 = CyclicSubword::new(&c, 1, 2, Orientation::Clockwise).unwrap();
        assert_eq!(q2.letters, w("b"));
        assert_eq!(q2.zone_indices(), vec![1, 2]);
        let q2p = CyclicSubword::new(&c, 0, 3, Orientation::Counterclockwise).unwrap();
        assert_eq!(q2p.letters, w("b"));
        assert_eq!(q2p.zone_indices(), vec![0, 3]);
    }

    #[test]
    fn wraps_around() {
        let c = w("abABcdCD");
        let q = CyclicSubword::new(&c, 6, 2, Orientation::Clockwise).unwrap();
        assert_eq!(q.letters, w("CDab"));
        assert_eq!(q.zone_indices(), vec![0, 1, 2, 6, 7]);
        let r = CyclicSubword::new(&c, 1, 7, Orientation::Counterclockwise).unwrap();
        assert_eq!(r.letters, w("Ad"));
    }

    #[test]
    fn rejects_empty_and_full() {
        let c = w("abAB");
        assert!(CyclicSubword::new(&c, 2, 2, Orientation::Clockwise).is_err());
        assert!(CyclicSubword::new(&c, 6, 2, Orientation::Counterclockwise).is_err());
        assert!(CyclicSubword::new(&Word::empty(), 0, 1, Orientation::Clockwise).is_err());
    }

    #[test]
    fn enumeration_size() {
        assert_eq!(CyclicSubword::all(&w("abABcdCD")).len(), 2 * 8 * 7);
    }

    proptest! {
        #[test]
        fn zone_has_len_plus_one_and_endpoints(
            letters in prop::collection::vec((0u32..3, any::<bool>()), 2..12),
            i in 0usize..12, j in 0usize..12, ccw in any::<bool>(),
        ) {
            let word: Word = letters.into_iter().map(|(g, inv)| super::super::Letter::new(g, inv)).collect();
            let orientation = if ccw { Orientation::Counterclockwise } else { Orientation::Clockwise };
            let n = word.len();
            prop_assume!(i % n != j % n);
            let q = CyclicSubword::new(&word, i, j, orientation).unwrap();
            prop_assert_eq!(q.zone().count_ones(..), q.len() + 1);
            prop_assert!(q.zone_contains(i % n));
            prop_assert!(q.zone_contains(j % n));
            prop_assert!(q.len() < n);
        }
    }
}
