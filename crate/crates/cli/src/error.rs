use std::path::PathBuf;

use nonrecip_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },

    #[error("cannot read config {path}: {source}")]
    ReadConfig { path: PathBuf, source: std::io::Error },

    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),

    #[error("invalid scene: {0}")]
    Scene(CoreError),

    #[error("numerical failure: {0}")]
    Numerical(CoreError),

    #[error("{failed} self-test row(s) failed")]
    SelftestFailed { failed: usize },
}

impl CliError {
    pub fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self::Config {
            path: path.into(),
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Config { .. } | Self::ReadConfig { .. } | Self::Scene(_) => 2,
            Self::Numerical(_) => 3,
            Self::Output(_) | Self::SelftestFailed { .. } => 1,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Quadrature(_)
            | CoreError::PersistentMismatch { .. }
            | CoreError::ResonantDenominator { .. }
            | CoreError::NonPositiveFrequency { .. }
            | CoreError::CoincidentPoints { .. } => Self::Numerical(e),
            CoreError::InvalidScene(_)
            | CoreError::OrientationMismatch { .. }
            | CoreError::AnisotropicClosedForm
            | CoreError::UnsupportedMaterial(_)
            | CoreError::CoincidentRealPart => Self::Scene(e),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self::Output(e.into())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::Output(e.into())
    }
}
