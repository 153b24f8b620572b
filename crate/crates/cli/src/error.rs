use thiserror::Error;

/// Failures that end a command without a mathematical verdict.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed or inconsistent workspace data, located by a key path.
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{context}: {source}")]
    Core {
        context: String,
        #[source]
        source: ncdef_core::Error,
    },
}

impl CliError {
    pub fn input(path: impl Into<String>, message: impl Into<String>) -> CliError {
        CliError::Input {
            path: path.into(),
            message: message.into(),
        }
    }

    pub fn core(context: impl Into<String>, source: ncdef_core::Error) -> CliError {
        CliError::Core {
            context: context.into(),
            source,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Attaches a key path to core errors raised while resolving workspace data.
pub trait AtPath<T> {
    fn at(self, path: &str) -> CliResult<T>;
}

impl<T> AtPath<T> for ncdef_core::Result<T> {
    fn at(self, path: &str) -> CliResult<T> {
        self.map_err(|e| CliError::input(path, e.to_string()))
    }
}
