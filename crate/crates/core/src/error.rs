use thiserror::Error;

/// Errors raised by the solver pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("invalid state in cell {cell} ({stage}): {reason}")]
    State {
        cell: usize,
        stage: String,
        reason: String,
    },

    #[error("singular fitting system for stencil {0}")]
    SingularStencil(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// Adds the step/stage context to a state error coming out of a kernel.
    pub fn at_stage(self, stage: &str) -> Self {
        match self {
            Error::State { cell, stage: s, reason } => Error::State {
                cell,
                stage: if s.is_empty() {
                    stage.to_string()
                } else {
                    format!("{stage}, {s}")
                },
                reason,
            },
            other => other,
        }
    }
}
