use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use super::dot_escape;
use crate::word::{Letter, Word};

/// A partial deterministic automaton; missing transitions reject.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    pub letters: Vec<Letter>,
    pub start: usize,
    pub accepting: Vec<bool>,
    /// `delta[state][letter position in letters]`.
    pub delta: Vec<Vec<Option<usize>>>,
    pub labels: Vec<String>,
}

impl Dfa {
    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    fn letter_pos(&self, l: Letter) -> Option<usize> {
        self.letters.iter().position(|&x| x == l)
    }

    pub fn run(&self, u: &Word) -> Option<usize> {
        let mut s = self.start;
        for &l in u.iter() {
            s = self.delta[s][self.letter_pos(l)?]?;
        }
        Some(s)
    }

    pub fn accepts(&self, u: &Word) -> bool {
        self.run(u).is_some_and(|s| self.accepting[s])
    }

    /// Adds a single rejecting sink if any transition is missing.
    pub fn complete(&self) -> (Dfa, Option<usize>) {
        let missing = self.delta.iter().flatten().any(Option::is_none);
        if !missing {
            return (self.clone(), None);
        }
        let dead = self.state_count();
        let mut out = self.clone();
        for row in &mut out.delta {
            for t in row.iter_mut() {
                t.get_or_insert(dead);
            }
        }
        out.delta.push(vec![Some(dead); self.letters.len()]);
        out.accepting.push(false);
        out.labels.push("dead".into());
        (out, Some(dead))
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        let mut queue = VecDeque::from([self.start]);
        seen[self.start] = true;
        while let Some(s) = queue.pop_front() {
            for t in self.delta[s].iter().flatten() {
                if !seen[*t] {
                    seen[*t] = true;
                    queue.push_back(*t);
                }
            }
        }
        seen
    }

    /// Completes the automaton, drops unreachable states and merges
    /// equivalent ones by Hopcroft partition refinement.
    pub fn minimize(&self) -> MinimizedDfa {
        let (full, _) = self.complete();
        let keep = full.reachable();
        let old: Vec<usize> = (0..full.state_count()).filter(|&s| keep[s]).collect();
        let mut local = vec![usize::MAX; full.state_count()];
        for (i, &s) in old.iter().enumerate() {
            local[s] = i;
        }
        let k = full.letters.len();
        let m = old.len();
        let delta: Vec<Vec<usize>> = old
            .iter()
            .map(|&s| full.delta[s].iter().map(|t| local[t.expect("complete")]).collect())
            .collect();

        let blocks = hopcroft(m, k, &delta, |s| full.accepting[old[s]]);

        // Number blocks in breadth-first order from the start state.
        let mut block_of = vec![usize::MAX; m];
        for (b, members) in blocks.iter().enumerate() {
            for &s in members {
                block_of[s] = b;
            }
        }
        let mut renumber = vec![usize::MAX; blocks.len()];
        let mut order = Vec::new();
        let start = block_of[local[full.start]];
        renumber[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(b) = queue.pop_front() {
            order.push(b);
            let s = blocks[b][0];
            for &t in &delta[s] {
                let tb = block_of[t];
                if renumber[tb] == usize::MAX {
                    renumber[tb] = order.len() + queue.len();
                    queue.push_back(tb);
                }
            }
        }
        let min_delta: Vec<Vec<Option<usize>>> = order
            .iter()
            .map(|&b| delta[blocks[b][0]].iter().map(|&t| Some(renumber[block_of[t]])).collect())
            .collect();
        let accepting: Vec<bool> = order.iter().map(|&b| full.accepting[old[blocks[b][0]]]).collect();
        let labels: Vec<String> = order
            .iter()
            .map(|&b| {
                let names: Vec<&str> = blocks[b].iter().map(|&s| full.labels[old[s]].as_str()).collect();
                names.join(" | ")
            })
            .collect();
        let dfa = Dfa {
            letters: full.letters.clone(),
            start: 0,
            accepting,
            delta: min_delta,
            labels,
        };
        let dead = dead_states(&dfa);
        MinimizedDfa { dfa, dead }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            letters: &'a [Letter],
            start: usize,
            states: Vec<State<'a>>,
        }
        #[derive(Serialize)]
        struct State<'a> {
            id: usize,
            label: &'a str,
            accepting: bool,
            transitions: Vec<(Letter, usize)>,
        }
        let states = (0..self.state_count())
            .map(|s| State {
                id: s,
                label: &self.labels[s],
                accepting: self.accepting[s],
                transitions: self.letters.iter().zip(&self.delta[s]).filter_map(|(&l, t)| t.map(|t| (l, t))).collect(),
            })
            .collect();
        serde_json::to_string_pretty(&Doc {
            letters: &self.letters,
            start: self.start,
            states,
        })
        .expect("automata serialize")
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph {name} {{\n  rankdir=LR;\n  __start [shape=point];\n  __start -> s{};\n", self.start);
        for s in 0..self.state_count() {
            let shape = if self.accepting[s] { "doublecircle" } else { "circle" };
            writeln!(out, "  s{s} [shape={shape}, label=\"{}\"];", dot_escape(&self.labels[s])).unwrap();
        }
        for s in 0..self.state_count() {
            let mut by_target: Vec<(usize, Vec<String>)> = Vec::new();
            for (l, t) in self.letters.iter().zip(&self.delta[s]) {
                if let Some(t) = *t {
                    match by_target.iter_mut().find(|(x, _)| *x == t) {
                        Some((_, ls)) => ls.push(l.to_string()),
                        None => by_target.push((t, vec![l.to_string()])),
                    }
                }
            }
            for (t, ls) in by_target {
                writeln!(out, "  s{s} -> s{t} [label=\"{}\"];", ls.join(",")).unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Hopcroft's algorithm on a complete automaton; returns the blocks.
fn hopcroft(m: usize, k: usize, delta: &[Vec<usize>], accepting: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
    let mut inverse = vec![vec![Vec::new(); m]; k];
    for (s, row) in delta.iter().enumerate() {
        for (a, &t) in row.iter().enumerate() {
            inverse[a][t].push(s);
        }
    }
    let (acc, rej): (Vec<usize>, Vec<usize>) = (0..m).partition(|&s| accepting(s));
    let mut blocks: Vec<Vec<usize>> = [acc, rej].into_iter().filter(|b| !b.is_empty()).collect();
    let mut block_of = vec![0; m];
    for (b, members) in blocks.iter().enumerate() {
        for &s in members {
            block_of[s] = b;
        }
    }
    let mut work: BTreeSet<(usize, usize)> = BTreeSet::new();
    let smaller = if blocks.len() == 2 && blocks[1].len() < blocks[0].len() { 1 } else { 0 };
    for a in 0..k {
        work.insert((smaller, a));
    }
    while let Some(&(splitter, a)) = work.iter().next() {
        work.remove(&(splitter, a));
        let mut pre: Vec<usize> = blocks[splitter].iter().flat_map(|&t| inverse[a][t].iter().copied()).collect();
        pre.sort_unstable();
        pre.dedup();
        let mut touched: Vec<usize> = pre.iter().map(|&s| block_of[s]).collect();
        touched.sort_unstable();
        touched.dedup();
        for b in touched {
            let (inside, outside): (Vec<usize>, Vec<usize>) = blocks[b].iter().partition(|s| pre.binary_search(s).is_ok());
            if inside.is_empty() || outside.is_empty() {
                continue;
            }
            let new = blocks.len();
            let (stay, moved) = if inside.len() <= outside.len() { (outside, inside) } else { (inside, outside) };
            for &s in &moved {
                block_of[s] = new;
            }
            blocks[b] = stay;
            blocks.push(moved);
            // The moved part is the smaller one, so it can always be queued.
            for c in 0..k {
                work.insert((new, c));
            }
        }
    }
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks
}

/// Rejecting states from which nothing is accepted.
fn dead_states(dfa: &Dfa) -> Vec<usize> {
    let n = dfa.state_count();
    let mut live = dfa.accepting.clone();
    let mut changed = true;
    while changed {
        changed = false;
        for s in 0..n {
            if !live[s] && dfa.delta[s].iter().flatten().any(|&t| live[t]) {
                live[s] = true;
                changed = true;
            }
        }
    }
    (0..n).filter(|&s| !live[s]).collect()
}

/// Cone-type counts under the two common conventions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConeTypeCounts {
    /// Live states of the minimal automaton, the initial state included.
    pub live_states: usize,
    /// Live states plus the empty cone of the dead state.
    pub with_dead_state: usize,
}

#[derive(Clone, Debug)]
pub struct MinimizedDfa {
    pub dfa: Dfa,
    pub dead: Vec<usize>,
}

impl MinimizedDfa {
    pub fn live_state_count(&self) -> usize {
        self.dfa.state_count() - self.dead.len()
    }

    pub fn cone_types(&self) -> ConeTypeCounts {
        ConeTypeCounts {
            live_states: self.live_state_count(),
            with_dead_state: self.dfa.state_count(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn letters() -> Vec<Letter> {
        vec![Letter::new(0, false), Letter::new(0, true)]
    }

    #[test]
    fn all_accepting_single_state() {
        let d = Dfa {
            letters: letters(),
            start: 0,
            accepting: vec![true],
            delta: vec![vec![Some(0), Some(0)]],
            labels: vec!["x".into()],
        };
        let m = d.minimize();
        assert_eq!(m.dfa.state_count(), 1);
        assert_eq!(m.live_state_count(), 1);
    }

    #[test]
    fn equivalent_states_merge() {
        // States 1 and 2 both accept everything; 0 moves to either.
        let d = Dfa {
            letters: letters(),
            start: 0,
            accepting: vec![true, true, true],
            delta: vec![vec![Some(1), Some(2)], vec![Some(1), Some(1)], vec![Some(2), Some(2)]],
            labels: vec!["0".into(), "1".into(), "2".into()],
        };
        let m = d.minimize();
        assert_eq!(m.dfa.state_count(), 1);
    }

    #[test]
    fn partial_automaton_gets_a_dead_state() {
        // Accepts a* only.
        let d = Dfa {
            letters: letters(),
            start: 0,
            accepting: vec![true],
            delta: vec![vec![Some(0), None]],
            labels: vec!["0".into()],
        };
        let m = d.minimize();
        assert_eq!(m.dfa.state_count(), 2);
        assert_eq!(m.dead.len(), 1);
        assert_eq!(m.cone_types(), ConeTypeCounts { live_states: 1, with_dead_state: 2 });
    }

    #[test]
    fn minimization_is_idempotent() {
        let d = Dfa {
            letters: letters(),
            start: 0,
            accepting: vec![false, true, false, true],
            delta: vec![
                vec![Some(1), Some(2)],
                vec![Some(3), None],
                vec![Some(0), Some(2)],
                vec![Some(1), Some(1)],
            ],
            labels: (0..4).map(|i| i.to_string()).collect(),
        };
        let once = d.minimize();
        let twice = once.dfa.minimize();
        assert_eq!(once.dfa.delta, twice.dfa.delta);
        assert_eq!(once.dfa.accepting, twice.dfa.accepting);
    }
}
