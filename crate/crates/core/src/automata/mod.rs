//! Automata read off a complete class table: the deterministic pushdown
//! automaton for the identity and R-class languages, the finite automaton
//! of geodesics, and its minimization to the cone-type automaton.

mod dfa;
mod fsa;
mod pda;

pub use dfa::{ConeTypeCounts, Dfa, MinimizedDfa};
pub use fsa::{build_geodesic_fsa, GeodesicFsa};
pub use pda::{build_pda, stack_oracle, Language, Pda, PdaRule, PdaRun, StackAction};

use crate::face_types::ClassTable;
use crate::{Error, Result};

fn require_complete(table: &ClassTable) -> Result<()> {
    if table.is_complete() {
        Ok(())
    } else {
        Err(Error::IncompleteTable)
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
