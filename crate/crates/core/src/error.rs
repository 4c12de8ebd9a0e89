use thiserror::Error;

use crate::words::Letter;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid letter {0:?}")]
    InvalidLetter(char),
    #[error("invalid sign {0}, expected -1 or +1")]
    InvalidSign(i64),
    #[error("substitution erases letter {0}")]
    ErasingSubstitution(Letter),
    #[error("window length {n}: prefix would exceed the cap of {cap} terms before stabilizing")]
    PrefixCapExceeded { n: u64, cap: usize },
    #[error("cancellation mismatch building word {n}: expected {expected:?} at the boundary of {word}")]
    CancellationMismatch { n: u64, expected: String, word: String },
    #[error("kernel closure is not closed at fingerprint length {prefix}")]
    NotClosed { prefix: usize },
    #[error("kernel module needs more than {cap} generators at fingerprint length {prefix}")]
    NotFinitelyGenerated { cap: usize, prefix: usize },
    #[error("invalid 4-adic rational {0:?}")]
    InvalidQuad4(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("grid of {points} points exceeds the cap of {cap}")]
    GridTooLarge { points: u64, cap: u64 },
    #[error("sample resolution 4^-{sample} is too coarse for mesh 4^-{mesh}")]
    ResolutionTooCoarse { sample: u32, mesh: u32 },
    #[error("degenerate fit: {0}")]
    DegenerateFit(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
