//! Crate-wide error type.

/// Everything that can go wrong while building or analysing automata.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("operands are defined over different alphabets")]
    AlphabetMismatch,
    #[error("state function of `{0}` is not a permutation of the alphabet")]
    NotInvertible(String),
    #[error("automaton is not synchronizing")]
    NotSynchronizing,
    #[error("automaton has no unique sink state")]
    NoUniqueSink,
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("acceptor does not denote a two-sided ideal")]
    NotAnIdeal,
    #[error("automaton is nilpotent")]
    Nilpotent,
    #[error("automaton is not simple")]
    NotSimple,
    #[error("machine is not (weakly) reset with respect to the chosen ideal")]
    NotReset,
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("resource cap exceeded: {0}")]
    ResourceExceeded(String),
    #[error("gap dichotomy violated on a simple automaton")]
    TheoremViolation,
    #[error("machine was not produced by the De Bruijn constructor")]
    WrongFamily,
    #[error("group operation is not abelian")]
    NonAbelian,
    #[error("series prefix too short for the requested operation")]
    PrefixTooShort,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
