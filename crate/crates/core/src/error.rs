use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {what} from {token:?}: {reason}")]
    Parse {
        what: &'static str,
        token: String,
        reason: String,
    },
    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch {
        left: crate::words::Alphabet,
        right: crate::words::Alphabet,
    },
    #[error("letter {letter} is not valid in alphabet {alphabet}")]
    InvalidLetter {
        alphabet: crate::words::Alphabet,
        letter: u32,
    },
    #[error("word {0} is not in ⟨X⟩x1")]
    NotInX1Ideal(String),
    #[error("expected a word over {expected}, got {got}")]
    WrongAlphabet {
        expected: crate::words::Alphabet,
        got: crate::words::Alphabet,
    },
    #[error("operation needs a non-empty index")]
    EmptyIndex,
    #[error("invalid permutation {perm:?} for {size} slots")]
    InvalidPermutation { perm: Vec<usize>, size: usize },
    #[error("relation file line {line}: {reason}")]
    Relation { line: usize, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn parse_err(what: &'static str, token: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        what,
        token: token.to_string(),
        reason: reason.into(),
    }
}
