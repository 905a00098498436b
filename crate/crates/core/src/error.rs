//! Error type shared by every module of the crate.
//!
//! Geometry code fails in a small number of well-understood ways (a curve
//! stops being timelike, a tube radius exceeds the reach of its normal
//! disks, a stencil walks off the parameter domain, ...). Each failure mode
//! gets its own variant carrying the numbers a caller needs to diagnose or
//! recover from the problem.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building curves, tubes, and reports.
#[derive(Debug, Error)]
pub enum Error {
    /// A preset was given parameters outside its admissible set.
    #[error("invalid parameters for {family}: {reason}")]
    ParamDomain { family: &'static str, reason: String },

    /// The velocity fails to be timelike somewhere on the parameter domain.
    #[error("curve is not timelike at parameter {param}: <d1,d1> = {inner}")]
    NotTimelike { param: f64, inner: f64 },

    /// The curvature dropped below the resolvable floor, so no Frenet
    /// normal exists there.
    #[error("curvature vanishes at parameter {param} (kappa = {kappa:e}); no Frenet frame")]
    VanishingCurvature { param: f64, kappa: f64 },

    /// A construction that requires an arclength parametrization received a
    /// curve whose speed deviates from 1.
    #[error("curve is not unit-speed at parameter {param}: |<d1,d1>+1| = {deviation:e}")]
    NotUnitSpeed { param: f64, deviation: f64 },

    /// The coordinate tangents fail to span a plane with a usable normal.
    #[error("degenerate tangent plane at (u, v) = ({u}, {v})")]
    DegenerateTangentPlane { u: f64, v: f64 },

    /// EG - F^2 is numerically zero, so shape ratios are undefined.
    #[error("degenerate first fundamental form: EG - F^2 = {value:e}")]
    DegenerateMetric { value: f64 },

    /// eg - f^2 is numerically zero, so the second-form Brioschi quotient
    /// (and the second Gaussian curvature) is undefined.
    #[error("degenerate second fundamental form at (u, v) = ({u}, {v}): eg - f^2 = {value:e}")]
    DegenerateSecondForm { u: f64, v: f64, value: f64 },

    /// A finite-difference stencil would sample outside the patch domain.
    #[error("finite-difference stencil leaves the domain on axis {axis} at {value}")]
    StencilOutOfDomain { axis: &'static str, value: f64 },

    /// The tube radius reaches past the curve's focal distance.
    #[error(
        "radius {radius} too large: sup kappa = {kappa_sup}, \
         admissible radii are below {max_radius}"
    )]
    RadiusTooLarge { radius: f64, kappa_sup: f64, max_radius: f64 },

    /// The tube regularity factor alpha = 1 + r kappa cos(theta) vanished,
    /// so the closed-form curvature quotients are undefined there.
    #[error("tube is singular at (t, theta) = ({t}, {theta}): alpha = 0")]
    SingularAlpha { t: f64, theta: f64 },

    /// Two fields that must share a grid do not.
    #[error("curvature fields are sampled on different grids")]
    GridMismatch,

    /// Too few grid points survive the degeneracy mask for a meaningful
    /// statistic.
    #[error("only {valid} of {total} grid points are usable; need at least {required}")]
    InsufficientValidGrid { valid: usize, total: usize, required: usize },

    /// The least-squares design matrix is numerically rank deficient.
    #[error("ill-conditioned fit: condition number {condition:e}")]
    IllConditionedFit { condition: f64 },

    /// A fit was requested with fewer samples than coefficients warrant.
    #[error("{got} samples are too few for this fit; need at least {need}")]
    InsufficientSamples { got: usize, need: usize },

    /// All three coefficients of a linear curvature relation are zero.
    #[error("coefficients (0, 0, 0) describe the trivial relation")]
    TrivialRelation,

    /// A theorem suite was invoked with nothing to check.
    #[error("fixture list is empty")]
    EmptyFixtureSet,

    /// A scalar input escaped its documented range.
    #[error("{name} = {value} outside [{min}, {max}]")]
    DomainViolation { name: &'static str, value: f64, min: f64, max: f64 },

    /// A non-finite number reached an input boundary.
    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },

    /// A curve sample table failed to parse.
    #[error("curve table line {line}: {message}")]
    CurveTable { line: usize, message: String },

    /// Underlying I/O failure while reading a curve table.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
