use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Every failure the library can report.
///
/// The first group are validation failures (malformed input data), the second
/// group are domain failures (well-formed input outside a theorem's scope).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Weights at a point do not form a full flag: wrong count, repeated or
    /// non-increasing values, or a value outside `[0, 1)`.
    ViolatedFlag { point: String, reason: &'static str },
    /// Two weight lists that must be disjoint share a value at `point`.
    WeightCollision { point: String },
    /// Objects defined over different marked surfaces were combined.
    SurfaceMismatch,
    /// A point label is not part of the surface.
    UnknownPoint(String),
    /// Equal dimensions were required.
    DimensionMismatch { source: usize, target: usize },
    /// The operation needs `target dim >= source dim` (or `r_1 > r_2`); dualize first.
    OrientationError,
    /// Input exceeds the size guard of an exhaustive routine.
    TooLarge { limit: usize },
    /// A finite upper end was required for a sigma interval.
    UnboundedInterval,
    /// Interval with `lo >= hi`.
    EmptyInterval,
    /// `sigma = 2g - 2` is a (numerical) wall, so the generic theory does not apply.
    NonGenericWeights,
    /// The weight total is not an integer, so no degrees give parabolic degree zero.
    NoIntegralSolution,
    /// The surface does not satisfy a theorem's genus / marked point hypotheses.
    Unsupported(&'static str),
    /// Orbifold data failing `2g + sum(1 - 1/m_i) > 2`.
    NotHyperbolic,
    /// Any other malformed input.
    Invalid(String),
}

impl Error {
    /// Validation errors mean the input is malformed; everything else is a
    /// domain error on well-formed input.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::ViolatedFlag { .. }
                | Error::WeightCollision { .. }
                | Error::SurfaceMismatch
                | Error::UnknownPoint(_)
                | Error::DimensionMismatch { .. }
                | Error::TooLarge { .. }
                | Error::EmptyInterval
                | Error::NotHyperbolic
                | Error::Invalid(_)
        )
    }

    /// Stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ViolatedFlag { .. } => "ViolatedFlag",
            Error::WeightCollision { .. } => "WeightCollision",
            Error::SurfaceMismatch => "SurfaceMismatch",
            Error::UnknownPoint(_) => "UnknownPoint",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::OrientationError => "OrientationError",
            Error::TooLarge { .. } => "TooLarge",
            Error::UnboundedInterval => "UnboundedInterval",
            Error::EmptyInterval => "EmptyInterval",
            Error::NonGenericWeights => "NonGenericWeights",
            Error::NoIntegralSolution => "NoIntegralSolution",
            Error::Unsupported(_) => "Unsupported",
            Error::NotHyperbolic => "NotHyperbolic",
            Error::Invalid(_) => "Invalid",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ViolatedFlag { point, reason } => {
                write!(f, "weights at point {point:?} are not a full flag: {reason}")
            }
            Error::WeightCollision { point } => {
                write!(f, "weights collide at point {point:?}")
            }
            Error::SurfaceMismatch => f.write_str("objects live on different marked surfaces"),
            Error::UnknownPoint(p) => write!(f, "point {p:?} is not a marked point of the surface"),
            Error::DimensionMismatch { source, target } => {
                write!(f, "dimension mismatch: source {source}, target {target}")
            }
            Error::OrientationError => {
                f.write_str("source rank exceeds target rank; dualize the data first")
            }
            Error::TooLarge { limit } => write!(f, "input exceeds the size limit {limit}"),
            Error::UnboundedInterval => f.write_str("upper end of the sigma interval must be finite"),
            Error::EmptyInterval => f.write_str("interval is empty (lo >= hi)"),
            Error::NonGenericWeights => f.write_str("sigma = 2g-2 is a wall: weights are not generic"),
            Error::NoIntegralSolution => {
                f.write_str("total weight is not an integer: no degrees give parabolic degree zero")
            }
            Error::Unsupported(why) => write!(f, "unsupported: {why}"),
            Error::NotHyperbolic => f.write_str("orbifold fails 2g + sum(1 - 1/m_i) > 2"),
            Error::Invalid(msg) => f.write_str(msg),
        }
    }
}

impl core::error::Error for Error {}
