use thiserror::Error;

/// Failures that stop a subcommand before it produces a report.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Check(String),
    #[error("parse error in {0}")]
    Parse(String),
    #[error(transparent)]
    Core(#[from] retractlab::Error),
}

impl CliError {
    /// 1: the input fails the requested check; 2: bad input; 3: resource cap.
    pub fn exit_code(&self) -> i32 {
        use retractlab::Error as E;
        match self {
            CliError::Check(_) => 1,
            CliError::Usage(_) | CliError::Parse(_) => 2,
            CliError::Core(e) if e.is_resource() => 3,
            CliError::Core(E::NotARetraction { .. } | E::Inhomogeneous { .. } | E::Incompatible { .. } | E::NotMonomial { .. }) => 1,
            CliError::Core(_) => 2,
        }
    }
}
