use std::path::PathBuf;

/// Errors produced while building automata, monoids, pair relations and reports.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("symbol '{0}' is not part of the alphabet")]
    UnknownSymbol(char),

    #[error("alphabets differ: [{left}] vs [{right}]")]
    AlphabetMismatch { left: String, right: String },

    #[error("invalid automaton: {0}")]
    InvalidDfa(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    /// A configurable size cap was hit.
    #[error("{what} budget exceeded (limit {limit})")]
    Budget { what: &'static str, limit: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("guarded decompositions are defined for nonempty words only")]
    EmptyWord,

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
