use std::collections::{HashSet, VecDeque};

use rand::{rngs::StdRng, Rng, SeedableRng};

use sparse_monoid::automata::{build_geodesic_fsa, build_pda, stack_oracle, Dfa, Language};
use sparse_monoid::complex::Complex;
use sparse_monoid::face_types::enumerate_classes;
use sparse_monoid::word::{Alphabet, Word};
use sparse_monoid::word_problem::{trace, Trace};

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

/// Shortest word telling two states apart, by search over state pairs.
fn distinguisher(d: &Dfa, p: usize, q: usize) -> Option<Vec<usize>> {
    let mut seen = HashSet::from([(p, q)]);
    let mut queue = VecDeque::from([(p, q, Vec::new())]);
    let step = |s: usize, a: usize| d.delta[s][a];
    while let Some((x, y, path)) = queue.pop_front() {
        if d.accepting[x] != d.accepting[y] {
            return Some(path);
        }
        for a in 0..d.letters.len() {
            let (nx, ny) = (step(x, a).unwrap(), step(y, a).unwrap());
            if seen.insert((nx, ny)) {
                let mut next = path.clone();
                next.push(a);
                queue.push_back((nx, ny, next));
            }
        }
    }
    None
}

#[test]
fn minimized_geodesic_automaton_is_minimal_and_equivalent() {
    let t = enumerate_classes(&w("abABcdCD")).unwrap();
    let fsa = build_geodesic_fsa(&t).unwrap();
    let min = fsa.minimize();
    let d = &min.dfa;
    for p in 0..d.state_count() {
        for q in p + 1..d.state_count() {
            assert!(distinguisher(d, p, q).is_some(), "states {p} and {q} are equivalent");
        }
    }
    for u in Word::all_up_to(Alphabet::new(4), 5) {
        assert_eq!(fsa.accepts(&u), d.accepts(&u), "{u}");
    }
    let mut rng = StdRng::seed_from_u64(11);
    let letters: Vec<_> = Alphabet::new(4).letters().collect();
    for _ in 0..20_000 {
        let len = rng.gen_range(6..=7);
        let u = Word::new((0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect());
        assert_eq!(fsa.accepts(&u), d.accepts(&u), "{u}");
    }
    let again = d.minimize();
    assert_eq!(again.dfa.delta, d.delta);
}

#[test]
fn automata_agree_with_the_complex_on_short_words() {
    let r = w("abABcdCD");
    let t = enumerate_classes(&r).unwrap();
    let id = build_pda(&t, Language::Identity).unwrap();
    let rc = build_pda(&t, Language::RClass).unwrap();
    let fsa = build_geodesic_fsa(&t).unwrap();
    let mut c = Complex::init(&r).unwrap();
    c.build_to_radius(6).unwrap();
    for u in Word::all_up_to(Alphabet::new(4), 4) {
        let run = rc.run(&u);
        match trace(&c, &u) {
            Trace::Reached(v) => {
                assert!(run.accepted, "{u}");
                assert_eq!(id.accepts(&u), v == c.base(), "{u}");
                assert_eq!(run.state, t.class_of(&c, v).unwrap(), "{u}");
                assert_eq!(run.stack, stack_oracle(&t, &c, v).unwrap(), "{u}");
                assert_eq!(fsa.accepts(&u), c.distance(v) as usize == u.len(), "{u}");
            }
            Trace::Failed { position } => {
                assert!(!run.accepted && !id.accepts(&u) && !fsa.accepts(&u), "{u}");
                assert_eq!(run.failed_at, Some(position), "{u}");
            }
        }
    }
}

#[test]
fn twelve_letter_relator_automata() {
    let r = w("abABcdCDefEF");
    let t = enumerate_classes(&r).unwrap();
    let rc = build_pda(&t, Language::RClass).unwrap();
    let fsa = build_geodesic_fsa(&t).unwrap();
    let mut c = Complex::init(&r).unwrap();
    c.build_to_radius(7).unwrap();
    for u in Word::all_up_to(Alphabet::new(6), 3) {
        let run = rc.run(&u);
        match trace(&c, &u) {
            Trace::Reached(v) => {
                assert_eq!(run.stack, stack_oracle(&t, &c, v).unwrap(), "{u}");
                assert_eq!(fsa.accepts(&u), c.distance(v) as usize == u.len(), "{u}");
            }
            Trace::Failed { .. } => assert!(!run.accepted, "{u}"),
        }
    }
}
