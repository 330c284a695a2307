use thiserror::Error;

use crate::collar::CollarError;
use crate::extremal::ExtremalError;
use crate::format::FormatError;
use crate::hyp2::HypError;
use crate::instability::InstabilityError;
use crate::pants::PantsError;
use crate::surface::SurfaceError;
use crate::teich::TeichError;

/// Any error raised by the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Hyp(#[from] HypError),
    #[error(transparent)]
    Pants(#[from] PantsError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Collar(#[from] CollarError),
    #[error(transparent)]
    Extremal(#[from] ExtremalError),
    #[error(transparent)]
    Teich(#[from] TeichError),
    #[error(transparent)]
    Instability(#[from] InstabilityError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{context}: {source}")]
    Io {
        context: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl Error {
    /// Process exit status: 2 for unreadable or unparsable input, 3 for
    /// inputs that parse but are inconsistent, 4 for numeric-domain failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Format(_) | Error::Io { .. } | Error::Usage(_) => 2,
            Error::Surface(_) | Error::Collar(_) => 3,
            Error::Extremal(ExtremalError::Surface(_) | ExtremalError::Collar(_) | ExtremalError::Parity(_)) => 3,
            Error::Teich(TeichError::Surface(_) | TeichError::Shape { .. } | TeichError::EmptyFamily) => 3,
            Error::Instability(InstabilityError::Ladder(_) | InstabilityError::Space(_)) => 3,
            _ => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
