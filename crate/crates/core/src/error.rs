use num_bigint::BigUint;
use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed graph document: {0}")]
    MalformedGraph(String),

    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),

    #[error("edge references unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(String, String),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("graph has no edges")]
    EdgelessGraph,

    #[error("graphs do not share the same ordered alphabet")]
    AlphabetMismatch,

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("schedule exhausted: word length {requested} exceeds covered length {covered}")]
    ScheduleExhausted { requested: u64, covered: u64 },

    #[error("enumeration cap exceeded: {count} words requested, cap is {cap}")]
    EnumerationCap { count: BigUint, cap: u64 },

    #[error("ill-conditioned coefficient system (condition estimate {condition:.3e})")]
    IllConditioned { condition: f64 },

    #[error(
        "ambiguous root clustering: roots {0} and {1} are closer than the clustering tolerance"
    )]
    RootClustering(String, String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
