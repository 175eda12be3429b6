use core::fmt;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Evaluation at a pole of the map or coordinate change.
    Pole,
    /// A precondition on the argument's domain was violated.
    Domain(&'static str),
    /// Parameters degenerate for the requested construction
    /// (e.g. a Königs coordinate at λ = 1).
    DegenerateParams(&'static str),
    /// Iteration budget exhausted before the stopping criteria were met.
    NoConvergence { iterations: u64 },
    /// The required number of series terms exceeds the hard cap; the caller
    /// must loosen the tolerance.
    SlowConvergence { required: u64 },
    /// The orbit escaped or failed to reach the target region, so the point
    /// cannot lie in the interior of the filled Julia set.
    NotInBasin,
    /// |B_ε| fell below the sanity floor; signals an upstream bug.
    DegenerateNormalization,
    /// Internal assertion `T_ε(b_ε) = c_ε` failed.
    InconsistentNormalization,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Pole => write!(f, "evaluation at a pole"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::DegenerateParams(msg) => write!(f, "degenerate parameters: {msg}"),
            Error::NoConvergence { iterations } => {
                write!(f, "no convergence after {iterations} iterations")
            }
            Error::SlowConvergence { required } => {
                write!(f, "series needs ~{required} terms; loosen the tolerance")
            }
            Error::NotInBasin => write!(f, "point is not in the basin interior"),
            Error::DegenerateNormalization => write!(f, "normalization constant degenerate"),
            Error::InconsistentNormalization => {
                write!(f, "affine adjustment failed to match the critical orbit")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
