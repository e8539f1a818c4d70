use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series horizon exceeded: central index {nu} is within {guard} of the last stored term {last}")]
    HorizonExceeded {
        nu: usize,
        last: usize,
        guard: usize,
    },

    #[error("tail bound {bound:e} cannot be driven below tolerance {tol:e} with the stored terms")]
    TailNotDominated { bound: f64, tol: f64 },

    #[error("tolerance {0} must lie in (0, 1)")]
    InvalidTolerance(f64),

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("point {point} lies below the domain floor {floor}")]
    Domain { point: f64, floor: f64 },

    #[error(
        "adaptive quadrature did not converge: error estimate {estimate:e} above tolerance {tol:e}"
    )]
    Quadrature { estimate: f64, tol: f64 },

    #[error("could not bracket target {target} below ceiling {ceiling}")]
    Bracket { target: f64, ceiling: f64 },

    #[error("inner tail sum not certified: bound {bound:e} exceeds tolerance {tol:e}")]
    TailNotCertified { bound: f64, tol: f64 },

    #[error("function is not increasing between {a} and {b}")]
    MonotoneViolation { a: f64, b: f64 },

    #[error("construction invariant violated: {0}")]
    Construction(String),
}

impl Error {
    /// True for failures of truncation or tail certification.
    pub fn is_certification_failure(&self) -> bool {
        matches!(
            self,
            Error::HorizonExceeded { .. }
                | Error::TailNotDominated { .. }
                | Error::TailNotCertified { .. }
                | Error::Quadrature { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
