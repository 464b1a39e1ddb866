//! Sparseness verdicts checked against a direct reading of the definition.

use proptest::prelude::*;

use sparse_monoid::word::{free_reduce, is_sparse, Clause, Letter, Orientation, SparseFailure, Word};

/// Letters and zone of `w(i, j, ε)`, computed from scratch.
fn subword(w: &[Letter], i: usize, j: usize, eps: i64) -> (Vec<Letter>, Vec<usize>) {
    let n = w.len() as i64;
    let mut letters = Vec::new();
    let mut zone = vec![i];
    let mut k = i as i64;
    while k.rem_euclid(n) as usize != j {
        if eps == 1 {
            letters.push(w[k.rem_euclid(n) as usize]);
            k += 1;
        } else {
            k -= 1;
            letters.push(w[k.rem_euclid(n) as usize].inv());
        }
        zone.push(k.rem_euclid(n) as usize);
    }
    (letters, zone)
}

fn meets(a: &[usize], b: &[usize]) -> bool {
    a.iter().any(|x| b.contains(x))
}

type Sub = (usize, usize, i64);

fn eps(o: Orientation) -> i64 {
    match o {
        Orientation::Clockwise => 1,
        Orientation::Counterclockwise => -1,
    }
}

fn is_candidate(w: &[Letter], a: Sub, b: Sub) -> bool {
    let (la, mut za) = subword(w, a.0, a.1, a.2);
    let (lb, mut zb) = subword(w, b.0, b.1, b.2);
    let contains_zero = zb.contains(&0);
    za.sort_unstable();
    zb.sort_unstable();
    la == lb && za != zb && contains_zero
}

/// Whether `(q1, q1'), (q2, q2')` is a pair of candidates violating `clause`.
fn violates(w: &[Letter], q: [Sub; 4], clause: Clause) -> bool {
    let n = w.len() as i64;
    let s: Vec<_> = q.iter().map(|&(i, j, e)| subword(w, i, j, e)).collect();
    let candidate = |a: usize, b: usize| s[a].0 == s[b].0 && {
        let (mut za, mut zb) = (s[a].1.clone(), s[b].1.clone());
        za.sort_unstable();
        zb.sort_unstable();
        za != zb
    } && s[b].1.contains(&0);
    if !(candidate(0, 1) && candidate(2, 3)) {
        return false;
    }
    match clause {
        Clause::Disjointness => meets(&s[0].1, &s[3].1) || meets(&s[1].1, &s[2].1),
        Clause::Alignment => {
            let (e1, e1p, e2, e2p) = (q[0].2, q[1].2, q[2].2, q[3].2);
            let o1 = (q[0].0 as i64 - e1 * e1p * q[1].0 as i64).rem_euclid(n);
            let o2 = (q[2].0 as i64 - e2 * e2p * q[3].0 as i64).rem_euclid(n);
            meets(&s[0].1, &s[2].1) && !(e1 * e1p == e2 * e2p && o1 == o2)
        }
    }
}

fn letter() -> impl Strategy<Value = Letter> {
    (0u32..4, any::<bool>()).prop_map(|(g, inv)| Letter::new(g, inv))
}

fn reduced_word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(), 0..=max).prop_map(|v| free_reduce(&Word::new(v)))
}

#[test]
fn commutator_example_quadruple_violates_disjointness() {
    let w: Word = "abAB".parse().unwrap();
    let q = [(3, 2, -1), (0, 1, 1), (1, 2, 1), (0, 3, -1)];
    assert!(violates(w.letters(), q, Clause::Disjointness));
    let report = is_sparse(&w);
    let (found, clause) = report.witness().unwrap();
    assert_eq!(clause, Clause::Disjointness);
    let sub = |c: &sparse_monoid::word::CyclicSubword| (c.start, c.end, eps(c.orientation));
    let q = [sub(&found.q1), sub(&found.q1_prime), sub(&found.q2), sub(&found.q2_prime)];
    assert!(violates(w.letters(), q, clause));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn witnesses_really_violate(w in reduced_word(10)) {
        let report = is_sparse(&w);
        if let Some(SparseFailure::Violation { clause, witness }) = &report.failure {
            let sub = |c: &sparse_monoid::word::CyclicSubword| (c.start, c.end, eps(c.orientation));
            let q = [sub(&witness.q1), sub(&witness.q1_prime), sub(&witness.q2), sub(&witness.q2_prime)];
            prop_assert!(violates(w.letters(), q, *clause), "{w}: {witness}");
        }
    }

    #[test]
    fn sparse_words_are_cyclically_reduced(w in reduced_word(10)) {
        if is_sparse(&w).verdict {
            prop_assert!(w.is_cyclically_reduced());
        }
    }

    // A square x² has no candidate pairs at all (both one-letter subwords
    // share a zone), so it passes vacuously. Every other sparse word is primitive.
    #[test]
    fn sparse_words_other_than_squares_are_primitive(w in reduced_word(10)) {
        if is_sparse(&w).verdict && !w.is_primitive() {
            prop_assert_eq!(w.len(), 2);
            prop_assert_eq!(w.at(0), w.at(1));
        }
    }
}

#[test]
fn squares_of_letters_are_sparse_but_not_primitive() {
    for s in ["aa", "BB"] {
        let w: Word = s.parse().unwrap();
        assert!(is_sparse(&w).verdict);
        assert!(!w.is_primitive());
    }
}

/// Exhaustive check of the definition for short words: the verdict is true
/// iff no quadruple of cyclic subwords violates either clause.
#[test]
fn verdict_matches_brute_force_on_short_words() {
    let alphabet = sparse_monoid::word::Alphabet::new(2);
    for w in Word::all_up_to(alphabet, 5) {
        if w.len() < 2 || !w.is_freely_reduced() {
            continue;
        }
        let n = w.len();
        let mut subs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    subs.push((i, j, 1));
                    subs.push((i, j, -1));
                }
            }
        }
        let pairs: Vec<(Sub, Sub)> = subs
            .iter()
            .flat_map(|&a| subs.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| is_candidate(w.letters(), a, b))
            .collect();
        let bad = pairs.iter().any(|&(a, b)| {
            pairs.iter().any(|&(c, d)| {
                violates(w.letters(), [a, b, c, d], Clause::Disjointness)
                    || violates(w.letters(), [a, b, c, d], Clause::Alignment)
            })
        });
        assert_eq!(is_sparse(&w).verdict, !bad, "{w}");
    }
}
