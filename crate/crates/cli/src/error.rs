use hypdiagram::Error;

/// Errors of a run, each mapped to a process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{0}")]
    Domain(Error),
    #[error("{0}")]
    Library(Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => 1,
            Self::Input(_) | Self::Library(_) | Self::Io(_) => 2,
            Self::Domain(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotPseudoEffective(_)
            | Error::NotPseudoEffectiveAnticanonical
            | Error::CanonicalTrivial
            | Error::VariantMismatch { .. } => Self::Domain(e),
            other => Self::Library(other),
        }
    }
}
