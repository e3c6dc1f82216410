//! Completely unclustered words: construction, verification, enumeration,
//! and counting of necklaces whose Burrows–Wheeler transform has one run
//! per position, built on generalized de Bruijn graphs.

pub mod error;
pub mod extend;
pub mod graph;
pub mod numth;
pub mod oracle;
pub mod perm;
pub mod untie;
pub mod word;

pub use error::{Error, Result};
pub use perm::Permutation;
pub use word::{inverse_bwt, Necklace, RunLengthEncoding, Word};
