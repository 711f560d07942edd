//! Membership procedures for level one of group-based concatenation
//! hierarchies.
//!
//! A regular language is given as a pattern or a complete DFA. The crate
//! minimizes it, computes its syntactic monoid and syntactic order, computes
//! the pair relation for a basis of group languages (ST, MOD, AMT, or a
//! custom finite group morphism) and evaluates the characteristic equations
//! of `Pol(G)`, `Pol(G⁺)`, `BPol(G)` and `BPol(G⁺)`.
//!
//! ```
//! use hierarchy_one::{decide, Alphabet, Basis, Budget, Input, Level};
//!
//! let alphabet = Alphabet::parse("ab").unwrap();
//! let input = Input::pattern("(ab)*", alphabet);
//! let piecewise = decide(&input, &Basis::St, Level::Bpol, false, &Budget::default()).unwrap();
//! let dot_depth_one = decide(&input, &Basis::St, Level::Bpol, true, &Budget::default()).unwrap();
//! assert!(!piecewise.member);
//! assert!(dot_depth_one.member);
//! ```

mod alphabet;
mod budget;
mod error;

pub mod cli;
pub mod covers;
pub mod lang;
pub mod membership;
pub mod monoid;
pub mod pairs;
pub mod random;

pub use alphabet::Alphabet;
pub use budget::Budget;
pub use error::{Error, Result};

pub use covers::{guarded_decomposition, pgcov_cover, up_arrow, CoverResult, GuardedDecomposition};
pub use lang::{compile_dfa, parse_pattern, Combine, Dfa, Inclusion, Pattern};
pub use membership::{decide, Basis, EquationId, Input, Level, Report, Verdict};
pub use monoid::{transition_monoid, Element, OrderRelation, StableInfo, SyntacticMorphism};
pub use pairs::{PairBasis, PairRelation};
