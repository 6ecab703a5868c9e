use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("morphism is not prolongable on letter {seed}: image must start with {seed} and have length >= 2")]
    NotProlongable { seed: u32 },

    #[error("letter {letter} is outside the expected alphabet of size {alphabet}")]
    AlphabetMismatch { letter: u32, alphabet: u32 },

    #[error("morphism is not a coding: image of {letter} has length {len}")]
    NotACoding { letter: u32, len: usize },

    #[error("word of length {len} is too short (need at least {need})")]
    TooShort { len: usize, need: usize },

    #[error("derived alphabet of size {size} exceeds the supported limit {limit}")]
    AlphabetTooLarge { size: u64, limit: u64 },

    #[error(
        "factor set of length {n} did not stabilize within the prefix cap {cap}; \
         the inspected prefix may not expose all factors"
    )]
    NotStabilized { n: usize, cap: usize },

    #[error("kernel basis exceeded the rank cap {cap}; regularity not detected at truncation {truncation}")]
    NotClosed { cap: usize, truncation: usize },

    #[error("guessed relation for slice (i={i}, j={j}) fails at n={n}; truncation too small")]
    VerificationFailed { i: u32, j: u64, n: u64 },

    #[error("kernel exploration exceeded the state cap {cap}")]
    StateCapExceeded { cap: usize },

    #[error("argument overflow while indexing kernel slice (i={i}, j={j})")]
    SliceOverflow { i: u32, j: u64 },

    #[error("combined sequence is not integral at n={n}")]
    NotIntegral { n: u64 },

    #[error("{0}")]
    BadInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
