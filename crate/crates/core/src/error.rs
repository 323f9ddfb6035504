use thiserror::Error;

use crate::structures::{Alphabet, StructureKind};

/// Everything that can go wrong inside the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("dimension {0} exceeds the supported maximum of {max}", max = crate::MAX_DIM)]
    DimensionTooLarge(usize),

    #[error("coordinate value {value} at position {position} is outside the alphabet")]
    InvalidCoordinate { position: usize, value: u8 },

    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("duplicate member {0}")]
    DuplicateMember(String),

    #[error("a weak Δ-system needs at least 3 sets, got {0}")]
    TooFewSets(usize),

    #[error("vector {0} appears more than once")]
    RepeatedVector(String),

    #[error("structure {kind} is not defined over {alphabet} vectors")]
    AlphabetMismatch { kind: StructureKind, alphabet: Alphabet },

    #[error("lift would produce {size} vectors, above the cap of {cap}")]
    LiftTooLarge { size: u128, cap: usize },

    #[error("exhaustive translate scan over 2^{n} points exceeds the cap 2^{cap}")]
    TranslateCapExceeded { n: usize, cap: usize },

    #[error("ground set of {size} points exceeds the cap of {cap}")]
    GroundTooLarge { size: usize, cap: usize },

    #[error("density is undefined for an empty ground set")]
    EmptyGround,

    #[error("witness member {0} is not in the ground set")]
    NotInGround(String),

    #[error("solver produced a witness that fails verification")]
    WitnessRejected,

    #[error("argument out of range: {0}")]
    Range(String),

    #[error("invalid capacity override {0}: must lie in (1, 3]")]
    InvalidTheta(f64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
