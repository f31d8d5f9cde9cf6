use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}:{line}: {message}", path.display())]
    Malformed {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("duplicate document id {0:?}")]
    DuplicateId(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("term {0:?} is not in the vocabulary")]
    UnknownTerm(String),

    #[error("no candidate terms: {0}")]
    NoCandidates(String),

    #[error("both classes required: {0}")]
    SingleClass(String),

    #[error("length mismatch: {0} predictions vs {1} labels")]
    LengthMismatch(usize, usize),

    #[error("metric keys differ from baseline for {list:?}: {detail}")]
    MetricKeyMismatch { list: String, detail: String },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn malformed(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Malformed {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}
