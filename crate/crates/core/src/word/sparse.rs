//! The sparseness test for relators.
//!
//! A pair `(q, q')` of cyclic subwords is a *candidate* when both spell the
//! same word, their zones differ, and `0 ∈ zone(q')`. A freely reduced word
//! of length at least two is sparse when every ordered pair of candidates
//! `(q₁, q₁'), (q₂, q₂')` satisfies
//!
//! 1. `zone(q₁) ∩ zone(q₂') = ∅ = zone(q₁') ∩ zone(q₂)`, and
//! 2. `zone(q₁) ∩ zone(q₂) = ∅`, or `ε₁ε₁' = ε₂ε₂'` and
//!    `i₁ − ε₁ε₁'i₁' ≡ i₂ − ε₂ε₂'i₂' (mod n)`.
//!
//! The check is exhaustive: candidates are `O(n³)` and all pairs of them
//! are tested.

use std::fmt;

use super::{CyclicSubword, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Clause {
    Disjointness,
    Alignment,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Clause::Disjointness => f.write_str("sparse 1"),
            Clause::Alignment => f.write_str("sparse 2"),
        }
    }
}

/// Two candidate pairs `(q₁, q₁')`, `(q₂, q₂')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadruple {
    pub q1: CyclicSubword,
    pub q1_prime: CyclicSubword,
    pub q2: CyclicSubword,
    pub q2_prime: CyclicSubword,
}

impl fmt::Display for Quadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q1={} q1'={} q2={} q2'={}",
            self.q1, self.q1_prime, self.q2, self.q2_prime
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SparseFailure {
    NotFreelyReduced,
    TooShort,
    Violation { clause: Clause, witness: Box<Quadruple> },
}

impl fmt::Display for SparseFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SparseFailure::NotFreelyReduced => f.write_str("not freely reduced"),
            SparseFailure::TooShort => f.write_str("length must exceed 1"),
            SparseFailure::Violation { clause, witness } => {
                write!(f, "({clause}) fails for {witness}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseReport {
    pub verdict: bool,
    pub failure: Option<SparseFailure>,
}

impl SparseReport {
    fn pass() -> Self {
        SparseReport {
            verdict: true,
            failure: None,
        }
    }

    fn fail(failure: SparseFailure) -> Self {
        SparseReport {
            verdict: false,
            failure: Some(failure),
        }
    }

    pub fn witness(&self) -> Option<(&Quadruple, Clause)> {
        match &self.failure {
            Some(SparseFailure::Violation { clause, witness }) => Some((witness, *clause)),
            _ => None,
        }
    }
}

/// Candidate pairs `(q, q')` with equal letters, distinct zones and `0 ∈ zone(q')`.
pub(crate) fn candidate_pairs(w: &Word) -> Vec<(CyclicSubword, CyclicSubword)> {
    let all = CyclicSubword::all(w);
    let mut pairs = Vec::new();
    for q_prime in all.iter().filter(|q| q.zone_contains(0)) {
        for q in &all {
            if q.letters == q_prime.letters && q.zone() != q_prime.zone() {
                pairs.push((q.clone(), q_prime.clone()));
            }
        }
    }
    pairs
}

fn offset(q: &CyclicSubword, q_prime: &CyclicSubword, n: usize) -> (i64, usize) {
    let s = q.orientation.sign() * q_prime.orientation.sign();
    let n = n as i64;
    let r = (q.start as i64 - s * q_prime.start as i64).rem_euclid(n);
    (s, r as usize)
}

pub fn is_sparse(w: &Word) -> SparseReport {
    if !w.is_freely_reduced() {
        return SparseReport::fail(SparseFailure::NotFreelyReduced);
    }
    if w.len() <= 1 {
        return SparseReport::fail(SparseFailure::TooShort);
    }
    let n = w.len();
    let pairs = candidate_pairs(w);
    let quad = |a: &(CyclicSubword, CyclicSubword), b: &(CyclicSubword, CyclicSubword)| {
        Box::new(Quadruple {
            q1: a.0.clone(),
            q1_prime: a.1.clone(),
            q2: b.0.clone(),
            q2_prime: b.1.clone(),
        })
    };

    for a in &pairs {
        for b in &pairs {
            if a.0.zone_meets(&b.1) || a.1.zone_meets(&b.0) {
                return SparseReport::fail(SparseFailure::Violation {
                    clause: Clause::Disjointness,
                    witness: quad(a, b),
                });
            }
        }
    }
    let offsets: Vec<_> = pairs.iter().map(|(q, qp)| offset(q, qp, n)).collect();
    for (a, oa) in pairs.iter().zip(&offsets) {
        for (b, ob) in pairs.iter().zip(&offsets) {
            if a.0.zone_meets(&b.0) && oa != ob {
                return SparseReport::fail(SparseFailure::Violation {
                    clause: Clause::Alignment,
                    witness: quad(a, b),
                });
            }
        }
    }
    SparseReport::pass()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Orientation;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn surface_relator_conjugates() {
        // The condition depends on the base point: only the two rotations
        // starting at a commutator boundary pass.
        let r = w("abABcdCD");
        let sparse: Vec<usize> = (0..r.len()).filter(|&k| is_sparse(&r.rotate(k)).verdict).collect();
        assert_eq!(sparse, vec![0, 4]);
        let report = is_sparse(&r.rotate(1));
        let (q, clause) = report.witness().unwrap();
        assert_eq!(clause, Clause::Disjointness);
        assert_eq!(q.q1.to_string(), "w(3,2,-1)");
        assert_eq!(q.q1_prime.to_string(), "w(0,1,1)");
        assert_eq!(q.q2.to_string(), "w(2,1,-1)");
        assert_eq!(q.q2_prime.to_string(), "w(7,0,1)");
    }

    #[test]
    fn commutator_is_not_sparse() {
        let report = is_sparse(&w("abAB"));
        assert!(!report.verdict);
        let (_, clause) = report.witness().expect("quadruple witness");
        assert_eq!(clause, Clause::Disjointness);
    }

    #[test]
    fn length_and_reduction_failures_have_no_witness() {
        let one = is_sparse(&w("a"));
        assert_eq!(one.failure, Some(SparseFailure::TooShort));
        assert!(one.witness().is_none());
        assert_eq!(is_sparse(&w("")).failure, Some(SparseFailure::TooShort));
        assert_eq!(
            is_sparse(&w("aAbc")).failure,
            Some(SparseFailure::NotFreelyReduced)
        );
    }

    #[test]
    fn proper_powers_and_non_cyclically_reduced_fail() {
        assert!(!is_sparse(&w("abab")).verdict);
        assert!(!is_sparse(&w("abcA")).verdict);
    }

    #[test]
    fn candidate_pairs_respect_conditions() {
        let r = w("abABcdCD");
        for (q, qp) in candidate_pairs(&r) {
            assert_eq!(q.letters, qp.letters);
            assert_ne!(q.zone(), qp.zone());
            assert!(qp.zone_contains(0));
        }
    }

    #[test]
    fn offset_of_matching_pairs() {
        let r = w("abAB");
        let q = CyclicSubword::new(&r, 3, 2, Orientation::Counterclockwise).unwrap();
        let qp = CyclicSubword::new(&r, 0, 1, Orientation::Clockwise).unwrap();
        assert_eq!(offset(&q, &qp, 4), (-1, 3));
    }
}
