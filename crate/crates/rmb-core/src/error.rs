//! Crate-wide error type.

use core::fmt;

/// Errors reported by geometric constructions, evaluators and oracles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    /// Input points do not span a polygon with positive area.
    DegenerateInput,
    /// Base point lies outside the polygon beyond tolerance.
    PointOutside,
    /// Perturbation failed to reach general position within the retry budget.
    PerturbationFailed,
    /// Perturbation broke convexity (a vertex fell inside the hull) on every attempt.
    ConvexityLost,
    /// The polygon violates the general-position hypothesis required here.
    NotGeneralPosition,
    /// The direction is parallel to a vertex difference (a cone boundary).
    DirectionOnConeBoundary,
    /// A direction argument is the zero vector.
    ZeroDirection,
    /// The cone weights do not show exactly one positive entry.
    SignStructureViolated,
    /// Two lines that must intersect are parallel.
    ParallelLines,
    /// The evaluation point is outside the open cone of the decomposition.
    OutsideOpenCone,
    /// The exponent `p` is outside the admissible range.
    InvalidP,
    /// The query vector is zero.
    ZeroVector,
    /// The requested sample count is out of range.
    BadSampleCount,
    /// Adaptive quadrature did not converge within the depth budget.
    QuadratureNoConvergence,
    /// Too few points for the requested check.
    TooFewPoints,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            Error::DegenerateInput => "input points do not span a polygon with positive area",
            Error::PointOutside => "base point lies outside the polygon",
            Error::PerturbationFailed => "perturbation failed to reach general position",
            Error::ConvexityLost => "perturbation broke convexity at this magnitude",
            Error::NotGeneralPosition => "polygon is not in general position",
            Error::DirectionOnConeBoundary => "direction is parallel to a vertex difference",
            Error::ZeroDirection => "direction is the zero vector",
            Error::SignStructureViolated => "cone weights do not have exactly one positive entry",
            Error::ParallelLines => "required line intersection does not exist",
            Error::OutsideOpenCone => "point is outside the open cone of the decomposition",
            Error::InvalidP => "exponent p is outside the admissible range",
            Error::ZeroVector => "query vector is zero",
            Error::BadSampleCount => "sample count is out of range",
            Error::QuadratureNoConvergence => "adaptive quadrature did not converge",
            Error::TooFewPoints => "too few points",
        };
        f.write_str(msg)
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
