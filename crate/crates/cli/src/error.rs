use std::fmt;
use std::path::PathBuf;

use kemeny_core::Error;

#[derive(Debug)]
pub enum CliError {
    Core { source: Error, path: Option<PathBuf> },
    Io { source: std::io::Error, path: PathBuf },
    Usage(String),
    Violations(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core { source: Error::Parse { .. }, .. } => 2,
            CliError::Core { source: Error::Inconsistency(_), .. } => 3,
            CliError::Core { .. } | CliError::Io { .. } | CliError::Usage(_) => 1,
            CliError::Violations(_) => 4,
        }
    }

    pub fn at(path: &std::path::Path) -> impl FnOnce(Error) -> CliError + '_ {
        move |source| CliError::Core { source, path: Some(path.to_path_buf()) }
    }
}

impl From<Error> for CliError {
    fn from(source: Error) -> Self {
        CliError::Core { source, path: None }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core { source, path: Some(p) } => write!(f, "{}: {source}", p.display()),
            CliError::Core { source, path: None } => write!(f, "{source}"),
            CliError::Io { source, path } => write!(f, "{}: {source}", path.display()),
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Violations(k) => write!(f, "{k} certification violation(s)"),
        }
    }
}

impl std::error::Error for CliError {}
