use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at `{field}`: {message}")]
    Parse { field: String, message: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("unknown generator `{0}`")]
    UnknownLetter(String),

    #[error("letter {letter} out of range for alphabet of size {alphabet_size}")]
    LetterOutOfRange { letter: usize, alphabet_size: usize },

    #[error("no exact word problem for custom automaton; compare with level_action up to a depth instead")]
    NoExactWordProblem,

    #[error("recursion depth limit {limit} exceeded while deciding `{word}`")]
    DepthLimit { limit: usize, word: String },

    #[error("section contraction failed for `{word}`; rewriting rules do not contract")]
    Contraction { word: String },

    #[error("resource limit exceeded: {what} (cap {cap})")]
    Resource { what: String, cap: u64 },

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("invalid modulus {0}: must be at least 2")]
    InvalidModulus(u32),

    #[error("modulus {0} is not prime; the Gaussian oracle only decides prime moduli")]
    CompositeModulus(u32),

    #[error("chain length {got} does not match graph size {expected}")]
    ChainShape { expected: usize, got: usize },

    #[error("UnsolvableOnClosedGraph: total of c is {total} mod {p}, nonzero on a graph with no boundary")]
    UnsolvableOnClosedGraph { total: u32, p: u32 },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph error: {0}")]
    Graph(String),

    #[error("missing face on edge {edge} ({tail} -> {head})")]
    MissingFace { edge: usize, tail: usize, head: usize },

    #[error("tile error: {0}")]
    Tile(String),
}

impl Error {
    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }

    pub(crate) fn resource(what: impl Into<String>, cap: u64) -> Self {
        Error::Resource {
            what: what.into(),
            cap,
        }
    }
}
