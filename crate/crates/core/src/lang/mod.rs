//! Patterns, complete DFAs and the Boolean/decision operations on them.

mod dfa;
mod nfa;
mod ops;
mod pattern;

pub use dfa::{Dfa, DfaFile};
pub use nfa::compile_dfa;
pub use ops::{combine, equivalent, includes, is_empty, is_permutation_automaton, minimize, Combine, Inclusion};
pub use pattern::{parse_pattern, Pattern};

pub(crate) use nfa::Nfa;
