//! Parikh images of context-free languages, computed constructively.
//!
//! A grammar is converted to Chomsky normal form, each production is
//! wrapped in production-indexed round and square brackets, and the
//! production-count vectors of all derivations are collected as a
//! semilinear set built from small "base" parse trees plus "pump"
//! contexts. Linear maps then carry that set down to bracket counts and
//! finally to letter counts, giving the Parikh image of the language.
//!
//! Every stage comes with a brute-force oracle (word enumeration, CYK,
//! exhaustive λ search) so results can be cross-checked at small sizes.
//!
//! ```
//! use parikh_kit::{grammar::Grammar, extraction::parikh_image};
//!
//! let g = Grammar::parse("S -> a S b | a b").unwrap();
//! let image = parikh_image(&g).unwrap();
//! assert_eq!(image.to_text(), "alphabet: a b\nlinear base=[1,1] periods=[[1,1]]\n");
//! ```

pub mod check;
pub mod cli;
pub mod cs;
pub mod extraction;
pub mod grammar;
pub mod parikh;
pub mod semilinear;

pub use grammar::{CnfGrammar, Grammar, GrammarError};
pub use parikh::{Alphabet, ParikhVector};
pub use semilinear::{LinearMap, LinearSet, NVector, SemilinearSet};
