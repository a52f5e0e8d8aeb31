use thiserror::Error;

/// CLI failures with their process exit codes: 2 malformed input,
/// 3 resource limit, 4 not simplicial, 1 internal.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Core(#[from] sgring_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use sgring_core::Error as E;
        match self {
            CliError::Input(_) => 2,
            CliError::Core(err) => match err {
                E::EmptyGenerators
                | E::InvalidGenerator { .. }
                | E::DimensionMismatch { .. }
                | E::NotCoprime { .. }
                | E::InvalidCyclic { .. } => 2,
                E::BoxVolumeExceeded { .. }
                | E::AperyCapExceeded { .. }
                | E::EnumerationCapExceeded { .. }
                | E::ConeDimension { .. } => 3,
                E::NotSimplicial { .. } | E::RankDeficient { .. } | E::DegenerateTransform => 4,
                _ => 1,
            },
        }
    }
}
