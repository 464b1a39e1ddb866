//! Deciding `u = 1` and membership in the R-class of 1 by tracing `u` from
//! `v0` in a large enough piece of the complex.

use crate::complex::{BuildOptions, Complex, VertexId};
use crate::word::Word;
use crate::Result;

/// Result of following a word from `v0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trace {
    Reached(VertexId),
    /// No edge reads the letter at this position.
    Failed { position: usize },
}

impl Trace {
    pub fn vertex(self) -> Option<VertexId> {
        match self {
            Trace::Reached(v) => Some(v),
            Trace::Failed { .. } => None,
        }
    }
}

pub fn trace(c: &Complex, u: &Word) -> Trace {
    let mut v = c.base();
    for (position, &letter) in u.iter().enumerate() {
        match c.step(v, letter) {
            Some(next) => v = next,
            None => return Trace::Failed { position },
        }
    }
    Trace::Reached(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Identity,
    NotIdentity,
    NotInRClass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WpVerdict {
    pub outcome: Outcome,
    pub trace: Trace,
    /// Distance from `v0` of the vertex reached.
    pub distance: Option<u32>,
}

/// How far to grow the complex before tracing a word of length `L`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RadiusPolicy {
    /// `L + ⌊n/2⌋ − 2`. A trace of length `L` only leaves vertices at
    /// distance at most `L − 1`, and every face through such a vertex starts
    /// within `⌊n/2⌋ − 1` of it, so all edges it can use are present.
    #[default]
    Sufficient,
    /// `L·n`. Grows exponentially in `L`; usable only for very short words.
    LengthTimesRelator,
}

impl RadiusPolicy {
    pub fn radius(self, word_len: usize, n: usize) -> u32 {
        let l = word_len as u32;
        match self {
            RadiusPolicy::Sufficient => (l + (n / 2) as u32).saturating_sub(2),
            RadiusPolicy::LengthTimesRelator => l * n as u32,
        }
    }
}

/// A relator together with a cached complex that grows on demand.
#[derive(Clone, Debug)]
pub struct Solver {
    complex: Complex,
    policy: RadiusPolicy,
    built: u32,
}

impl Solver {
    pub fn new(w: &Word) -> Result<Self> {
        Self::with_options(w, BuildOptions::default(), RadiusPolicy::default())
    }

    pub fn with_options(w: &Word, options: BuildOptions, policy: RadiusPolicy) -> Result<Self> {
        let mut complex = Complex::init_with(w, options)?;
        complex.build_to_radius(0)?;
        Ok(Solver {
            complex,
            policy,
            built: 0,
        })
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn policy(&self) -> RadiusPolicy {
        self.policy
    }

    /// Grows the cached complex to at least `radius`.
    pub fn ensure_radius(&mut self, radius: u32) -> Result<()> {
        if radius > self.built {
            self.complex.build_to_radius(radius)?;
            self.built = radius;
        }
        Ok(())
    }

    /// Grows the complex far enough for words of length `len`.
    pub fn prepare(&mut self, len: usize) -> Result<()> {
        self.ensure_radius(self.policy.radius(len, self.complex.n()))
    }

    pub fn trace(&mut self, u: &Word) -> Result<Trace> {
        self.prepare(u.len())?;
        Ok(trace(&self.complex, u))
    }

    pub fn is_identity(&mut self, u: &Word) -> Result<WpVerdict> {
        let t = self.trace(u)?;
        let (outcome, distance) = match t {
            Trace::Failed { .. } => (Outcome::NotInRClass, None),
            Trace::Reached(v) if v == self.complex.base() => (Outcome::Identity, Some(0)),
            Trace::Reached(v) => (Outcome::NotIdentity, Some(self.complex.distance(v))),
        };
        Ok(WpVerdict {
            outcome,
            trace: t,
            distance,
        })
    }

    pub fn in_r_class(&mut self, u: &Word) -> Result<bool> {
        Ok(self.trace(u)?.vertex().is_some())
    }
}

pub fn is_identity(w: &Word, u: &Word) -> Result<WpVerdict> {
    Solver::new(w)?.is_identity(u)
}

pub fn in_r_class(w: &Word, u: &Word) -> Result<bool> {
    Solver::new(w)?.in_r_class(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::FaceId;
    use crate::word::free_reduce;
    use crate::Error;

    const W: &str = "abABcdCD";

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn outcome(u: &str) -> Outcome {
        is_identity(&w(W), &w(u)).unwrap().outcome
    }

    #[test]
    fn identity_examples() {
        assert_eq!(outcome(W), Outcome::Identity);
        assert_eq!(outcome(""), Outcome::Identity);
        assert_eq!(outcome("aA"), Outcome::Identity);
        assert_eq!(outcome("a"), Outcome::NotIdentity);
    }

    #[test]
    fn r_class_examples() {
        let r = w(W);
        assert!(in_r_class(&r, &w("abAB")).unwrap());
        assert!(in_r_class(&r, &w("aa")).unwrap());
        assert!(!in_r_class(&r, &w("aB")).unwrap());
    }

    #[test]
    fn non_sparse_relator_is_refused() {
        assert!(matches!(is_identity(&w("abAB"), &w("a")), Err(Error::NotSparse(_))));
    }

    #[test]
    fn trace_in_first_approximation() {
        let mut c = Complex::init(&w(W)).unwrap();
        let f1 = c.face(FaceId(0)).unwrap().boundary().to_vec();
        assert_eq!(trace(&c, &w("")), Trace::Reached(c.base()));
        assert_eq!(trace(&c, &w("a")), Trace::Reached(f1[1]));
        assert_eq!(trace(&c, &w("aa")), Trace::Failed { position: 1 });
        c.attach_face(f1[1]).unwrap();
        assert!(trace(&c, &w("aa")).vertex().is_some());
    }

    #[test]
    fn free_reduction_keeps_the_endpoint_of_a_path() {
        let r = w(W);
        let mut solver = Solver::new(&r).unwrap();
        let mut checked = 0;
        for u in Word::all_up_to(crate::word::Alphabet::new(4), 4) {
            let a = solver.is_identity(&u).unwrap();
            if a.trace.vertex().is_some() {
                assert_eq!(a, solver.is_identity(&free_reduce(&u)).unwrap(), "{u}");
                checked += 1;
            }
        }
        assert!(checked > 100);
        // The converse fails: cC reduces to the empty word but reads no path.
        assert_eq!(solver.is_identity(&w("cC")).unwrap().outcome, Outcome::NotInRClass);
    }

    #[test]
    fn short_words_agree_with_longer_policy() {
        let r = w(W);
        let mut quick = Solver::new(&r).unwrap();
        let mut slow = Solver::with_options(&r, BuildOptions::default(), RadiusPolicy::LengthTimesRelator).unwrap();
        for u in Word::all_up_to(crate::word::Alphabet::new(4), 1) {
            assert_eq!(quick.is_identity(&u).unwrap(), slow.is_identity(&u).unwrap(), "{u}");
        }
    }

    #[test]
    fn radius_policies() {
        assert_eq!(RadiusPolicy::Sufficient.radius(0, 8), 2);
        assert_eq!(RadiusPolicy::Sufficient.radius(5, 8), 7);
        assert_eq!(RadiusPolicy::LengthTimesRelator.radius(2, 8), 16);
    }
}
