//! Inverse monoids `Inv⟨X | w = 1⟩` with a single sparse relator `w`.
//!
//! The crate decides sparseness of a relator, grows approximations of the
//! Schützenberger complex of the identity by attaching `w`-labeled polygons
//! and folding, solves the word problem, classifies faces and vertices into
//! finitely many types, and builds the deterministic pushdown automaton for
//! the identity language together with the finite automaton of geodesics.
//!
//! ```
//! use sparse_monoid::{word::Word, word_problem::{is_identity, Outcome}};
//!
//! let w: Word = "abABcdCD".parse().unwrap();
//! let u: Word = "aA".parse().unwrap();
//! assert_eq!(is_identity(&w, &u).unwrap().outcome, Outcome::Identity);
//! ```

pub mod automata;
pub mod complex;
mod error;
pub mod face_types;
pub mod word;
pub mod word_problem;

pub use error::{Error, Result};
