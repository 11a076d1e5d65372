use thiserror::Error;

/// Failure of a tool invocation. Every variant is rendered into an
/// agent-visible error payload rather than aborting the trajectory.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ToolError {
    #[error("unknown tool '{0}'")]
    UnknownTool(String),
    #[error("invalid argument '{name}': {reason}")]
    InvalidArgument { name: String, reason: String },
    #[error("missing required argument '{0}'")]
    MissingArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0}")]
    Domain(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("execution timed out after {0} steps")]
    Timeout(u64),
    #[error("runtime error: {0}")]
    Runtime(String),
}

impl ToolError {
    pub fn invalid(name: &str, reason: impl Into<String>) -> Self {
        ToolError::InvalidArgument {
            name: name.to_string(),
            reason: reason.into(),
        }
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        ToolError::Domain(msg.into())
    }
}

pub type ToolOutcome<T> = Result<T, ToolError>;
