//! Pipeline error type and its process exit codes.

use std::path::PathBuf;

/// Errors of the configuration/report/IO layer.
///
/// Exit codes: 0 success, 1 configuration, 2 numerical, 3 IO.
#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("config error: {0}")]
    Config(String),

    #[error("numerical error: {0}")]
    Numerical(#[from] tpdc_core::Error),

    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("degenerate plot range: {0}")]
    DegenerateRange(String),

    #[error("self-consistency failure: {0}")]
    SelfCheck(String),
}

impl PipelineError {
    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Config(_) => 1,
            PipelineError::Numerical(_)
            | PipelineError::DegenerateRange(_)
            | PipelineError::SelfCheck(_) => 2,
            PipelineError::Io { .. } => 3,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> Self {
        let path = path.into();
        move |source| PipelineError::Io { path, source }
    }
}

pub type Result<T> = std::result::Result<T, PipelineError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_match_the_contract() {
        assert_eq!(PipelineError::Config("x".into()).exit_code(), 1);
        assert_eq!(
            PipelineError::Numerical(tpdc_core::Error::Domain {
                what: "x",
                value: 0.0
            })
            .exit_code(),
            2
        );
        assert_eq!(
            PipelineError::Io {
                path: "p".into(),
                source: std::io::Error::new(std::io::ErrorKind::NotFound, "gone"),
            }
            .exit_code(),
            3
        );
        assert_eq!(PipelineError::DegenerateRange("x".into()).exit_code(), 2);
    }
}
