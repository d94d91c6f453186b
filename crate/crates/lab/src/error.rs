use thiserror::Error;

pub type Result<T, E = LabError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum LabError {
    #[error(transparent)]
    Core(#[from] distpat::Error),

    #[error("unknown experiment `{0}` (see `distpat run --list`)")]
    UnknownExperiment(String),

    #[error("{0}")]
    Usage(String),

    #[error("b-file {path}: {msg}")]
    BFile { path: String, msg: String },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl LabError {
    /// Process exit code: 1 usage, 3 cap refusal. Experiment failures are reported, not raised.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Core(distpat::Error::CapExceeded { .. }) => 3,
            _ => 1,
        }
    }
}

pub(crate) fn io_err(path: &std::path::Path, source: std::io::Error) -> LabError {
    LabError::Io { path: path.display().to_string(), source }
}
