use thiserror::Error;

use crate::fischer::{SolveError, VerifyError};
use crate::mc::WalkError;
use crate::poly::PolyError;
use crate::series::SeriesError;
use crate::spectral::SpectralError;

/// Crate-level error, mostly for the command-line front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error("{0}")]
    Usage(String),
    #[error("io error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl Error {
    /// 1 for bad input, 2 for a violated mathematical contract.
    pub fn exit_code(&self) -> i32 {
        use crate::fischer::SolveError as S;
        use crate::mc::WalkError as W;
        use crate::spectral::SpectralError as P;
        let solve_usage = |e: &S| {
            matches!(
                e,
                S::DimensionMismatch { .. } | S::InvalidDomain(_) | S::BasisTooLarge { .. }
            )
        };
        match self {
            Error::Usage(_) | Error::Io { .. } | Error::Poly(_) => 1,
            Error::Solve(e) => {
                if solve_usage(e) {
                    1
                } else {
                    2
                }
            }
            Error::Verify(e) => {
                if matches!(e, VerifyError::Dimension(_)) {
                    1
                } else {
                    2
                }
            }
            Error::Series(e) => match e {
                SeriesError::Family(_) | SeriesError::Poly(_) | SeriesError::NotHomogeneous { .. } => 1,
                SeriesError::Solve(s) if solve_usage(s) => 1,
                _ => 2,
            },
            Error::Spectral(e) => {
                if matches!(e, P::InvalidBase(_) | P::GridTooSmall(_) | P::Format(_)) {
                    1
                } else {
                    2
                }
            }
            Error::Walk(e) => {
                if matches!(e, W::InsufficientTailMass(_)) {
                    2
                } else {
                    1
                }
            }
        }
    }
}
