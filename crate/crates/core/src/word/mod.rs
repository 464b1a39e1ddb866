//! Words over `X ∪ X⁻¹`.
//!
//! The text format uses lowercase `a`–`z` for generators and the matching
//! uppercase letter for the inverse, so `abAB` is the commutator
//! `a b a⁻¹ b⁻¹`.

mod cyclic;
mod sparse;

pub use cyclic::{CyclicSubword, Orientation};
pub use sparse::{is_sparse, Clause, Quadruple, SparseFailure, SparseReport};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    generator: u32,
    inverse: bool,
}

impl Letter {
    pub const fn new(generator: u32, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub const fn generator(self) -> u32 {
        self.generator
    }

    pub const fn is_inverse(self) -> bool {
        self.inverse
    }

    #[must_use]
    pub const fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    /// Dense index `2·generator + inverse`, used for transition tables.
    pub const fn index(self) -> usize {
        2 * self.generator as usize + self.inverse as usize
    }

    pub const fn from_index(index: usize) -> Self {
        Letter {
            generator: (index / 2) as u32,
            inverse: index % 2 == 1,
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'a'..='z' => Some(Letter::new(c as u32 - 'a' as u32, false)),
            'A'..='Z' => Some(Letter::new(c as u32 - 'A' as u32, true)),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generator < 26 {
            let base = if self.inverse { b'A' } else { b'a' };
            write!(f, "{}", (base + self.generator as u8) as char)
        } else if self.inverse {
            write!(f, "[-{}]", self.generator)
        } else {
            write!(f, "[{}]", self.generator)
        }
    }
}

impl Serialize for Letter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let mut chars = s.chars();
        match (chars.next().and_then(Letter::from_char), chars.next()) {
            (Some(l), None) => Ok(l),
            _ => Err(serde::de::Error::custom(format!("invalid letter {s:?}"))),
        }
    }
}

/// The generating set `X`, of size `generator_count`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Alphabet {
    generator_count: u32,
}

impl Alphabet {
    /// Panics if `generator_count` is zero.
    pub fn new(generator_count: u32) -> Self {
        assert!(generator_count >= 1, "an alphabet needs at least one generator");
        Alphabet { generator_count }
    }

    /// Smallest alphabet containing every generator of `w` (at least one generator).
    pub fn covering(w: &Word) -> Self {
        let m = w.iter().map(|l| l.generator() + 1).max().unwrap_or(1);
        Alphabet::new(m)
    }

    pub fn generator_count(self) -> u32 {
        self.generator_count
    }

    /// Number of letters in `X ∪ X⁻¹`.
    pub fn letter_count(self) -> usize {
        2 * self.generator_count as usize
    }

    pub fn contains(self, l: Letter) -> bool {
        l.generator() < self.generator_count
    }

    /// Letters in index order: `x₀, x₀⁻¹, x₁, x₁⁻¹, …`.
    pub fn letters(self) -> impl Iterator<Item = Letter> + Clone {
        (0..self.letter_count()).map(Letter::from_index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid character {ch:?} at position {position}")]
pub struct ParseError {
    pub position: usize,
    pub ch: char,
}

/// A finite sequence of letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Letter> {
        self.0.iter()
    }

    /// Letter at a cyclic position.
    pub fn at(&self, i: usize) -> Letter {
        self.0[i % self.0.len()]
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    #[must_use]
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    #[must_use]
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Cyclic conjugate starting at position `k`.
    #[must_use]
    pub fn rotate(&self, k: usize) -> Word {
        if self.is_empty() {
            return Word::empty();
        }
        let mut v = self.0.clone();
        v.rotate_left(k % self.len());
        Word(v)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1].inv())
    }

    /// First letter differs from the inverse of the last, and the word is freely reduced.
    pub fn is_cyclically_reduced(&self) -> bool {
        if !self.is_freely_reduced() {
            return false;
        }
        match (self.0.first(), self.0.last()) {
            (Some(&first), Some(&last)) if self.len() > 1 => first != last.inv(),
            _ => true,
        }
    }

    /// `true` unless `self = u^m` for some word `u` and `m > 1`.
    pub fn is_primitive(&self) -> bool {
        let n = self.len();
        (1..n)
            .filter(|d| n.is_multiple_of(*d))
            .all(|d| (d..n).any(|i| self.0[i] != self.0[i - d]))
    }

    /// Every word over `alphabet` of length at most `max_len`, shortlex order.
    pub fn all_up_to(alphabet: Alphabet, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * alphabet.letter_count());
            for w in &layer {
                for l in alphabet.letters() {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce(u: &Word) -> Word {
    let mut stack: Vec<Letter> = Vec::with_capacity(u.len());
    for &l in u.iter() {
        if stack.last() == Some(&l.inv()) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    Word(stack)
}

impl FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .enumerate()
            .map(|(position, ch)| Letter::from_char(ch).ok_or(ParseError { position, ch }))
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Letter;
    type IntoIter = std::slice::Iter<'a, Letter>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
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
    fn free_reduction_examples() {
        assert_eq!(free_reduce(&w("aAb")), w("b"));
        assert_eq!(free_reduce(&w("")), w(""));
        assert_eq!(free_reduce(&w("abBA")), w(""));
    }

    #[test]
    fn cyclic_reduction() {
        assert!(w("ab").is_cyclically_reduced());
        assert!(!w("abA").is_cyclically_reduced());
        assert!(w("abABcdCD").is_cyclically_reduced());
        assert!(!w("aAb").is_cyclically_reduced());
    }

    #[test]
    fn primitivity() {
        assert!(!w("abab").is_primitive());
        assert!(w("ab").is_primitive());
        assert!(w("abABcdCD").is_primitive());
        assert!(!w("aaa").is_primitive());
        assert!(w("aab").is_primitive());
    }

    #[test]
    fn parse_errors_name_the_character() {
        let err = "ab1".parse::<Word>().unwrap_err();
        assert_eq!(err, ParseError { position: 2, ch: '1' });
        assert!("a b".parse::<Word>().is_err());
    }

    #[test]
    fn display_round_trip() {
        for s in ["", "a", "abABcdCD", "zZ"] {
            assert_eq!(w(s).to_string(), s);
        }
    }

    #[test]
    fn enumeration_counts() {
        let words = Word::all_up_to(Alphabet::new(4), 3);
        assert_eq!(words.len(), 1 + 8 + 64 + 512);
    }

    fn arb_word(gens: u32, max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((0..gens, any::<bool>()), 0..=max_len)
            .prop_map(|v| v.into_iter().map(|(g, i)| Letter::new(g, i)).collect())
    }

    proptest! {
        #[test]
        fn free_reduce_is_idempotent_and_shrinks(u in arb_word(3, 16)) {
            let r = free_reduce(&u);
            prop_assert!(r.len() <= u.len());
            prop_assert!(r.is_freely_reduced());
            prop_assert_eq!(free_reduce(&r), r.clone());
        }

        #[test]
        fn inverse_cancels(u in arb_word(3, 12)) {
            prop_assert!(free_reduce(&u.concat(&u.inverse())).is_empty());
        }
    }
}
