use thiserror::Error;

/// Errors surfaced by the tools, each mapped to a process exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("format: {0}")]
    Format(String),
    #[error("capacity: {0}")]
    Capacity(String),
    #[error("verification failed: {0}")]
    Verify(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    /// An error that comes with partial output for stdout.
    #[error("{0}")]
    WithReport(Box<CliError>, String),
}

pub type CliResult<T> = Result<T, CliError>;

impl From<rankcodes_core::Error> for CliError {
    fn from(e: rankcodes_core::Error) -> Self {
        match e {
            rankcodes_core::Error::Usage(msg) => CliError::Usage(msg),
            rankcodes_core::Error::Capacity { what, needed, cap } => {
                CliError::Capacity(format!("{what} needs {needed}, cap is {cap}"))
            }
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Format(_) | CliError::Io(_) => 2,
            CliError::Capacity(_) => 3,
            CliError::Verify(_) => 4,
            CliError::WithReport(e, _) => e.exit_code(),
        }
    }

    /// One machine-parsable line: `error kind=<kind> msg=<text>`.
    pub fn one_line(&self) -> String {
        if let CliError::WithReport(e, _) = self {
            return e.one_line();
        }
        let kind = match self {
            CliError::Usage(_) => "usage",
            CliError::Format(_) => "format",
            CliError::Capacity(_) => "capacity",
            CliError::Verify(_) => "verify",
            CliError::Io(_) => "io",
            CliError::WithReport(..) => unreachable!(),
        };
        let msg = self.to_string().replace('\n', " ");
        format!("error kind={kind} msg={msg}")
    }
}
