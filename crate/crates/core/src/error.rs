use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyWord,
    #[error("letter {letter} out of range for alphabet of size {alphabet}")]
    LetterOutOfRange { letter: u32, alphabet: usize },
    #[error("alphabet size {0} unsupported (must be between 1 and 36)")]
    BadAlphabet(usize),
    #[error("alphabet too small")]
    AlphabetTooSmall,
    #[error("length must be at least alphabet size")]
    LengthBelowAlphabet,
    #[error("not a BWT image of an aperiodic necklace")]
    NotBwtImage,
    #[error("not an alphabet-permutation power")]
    NotPermutationPower,
    #[error("no tie present")]
    NoTie,
    #[error("size guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("vertex {vertex} out of range for graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid cycle path: {0}")]
    InvalidCyclePath(String),
    #[error("invalid Eulerian cycle: {0}")]
    InvalidEulerianCycle(String),
    #[error("rerouting precondition violated: {0}")]
    Reroute(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("arithmetic precondition violated: {0}")]
    Arithmetic(String),
    #[error("internal invariant breached: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
