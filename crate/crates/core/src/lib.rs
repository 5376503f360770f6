//! Automata for words with few or short palindromic factors.
//!
//! The crate builds complete DFAs for languages defined by constraints on
//! palindromic factors, minimizes and analyzes them, and counts their words
//! exactly:
//!
//! - [`words`]: words, palindromic factors (palindromic tree), enumeration.
//! - [`automaton`]: complete DFAs, Hopcroft minimization, Grail/DOT/JSON.
//! - [`construct`]: breadth-first construction per constraint family, and
//!   an independent forbidden-factor construction.
//! - [`analyze`]: recurrent/birecurrent states, infinite-word classification.
//! - [`recur`]: transfer matrices, minimal polynomials, annihilators,
//!   dominant roots and asymptotic constants.
//! - [`verify`]: state transformations and perturbed-symmetry words.
//! - [`oracle`]: brute-force ground truth.
//! - [`reproduce`]: the catalogue of quantitative checks.

pub mod analyze;
pub mod automaton;
pub mod construct;
pub mod error;
pub mod oracle;
pub mod par;
pub mod recur;
pub mod reproduce;
pub mod verify;
pub mod words;

pub use automaton::Dfa;
pub use error::{Error, Result};
pub use par::Execution;
pub use words::Word;
