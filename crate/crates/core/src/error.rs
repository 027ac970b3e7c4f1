//! Error type shared by all engine modules.

use thiserror::Error;

/// Errors reported by the spherical harmonic engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Evaluation argument left the closed interval [-1, 1].
    #[error("argument t = {t} lies outside [-1, 1]")]
    ArgOutOfRange { t: f64 },
    /// Order |l| exceeds the degree n.
    #[error("order l = {l} exceeds degree n = {n}")]
    OrderOutOfRange { n: usize, l: i64 },
    /// An operation defined only for odd degrees received an even one.
    #[error("degree n = {n} is even; the value would multiply an annihilated channel")]
    EvenDegree { n: usize },
    /// Coefficient band limits of two operands disagree.
    #[error("band limit mismatch: {left} vs {right}")]
    BandLimitMismatch { left: usize, right: usize },
    /// Two fields do not live on the same grid.
    #[error("fields live on different grids")]
    GridMismatch,
    /// A grid cannot represent the requested band limit.
    #[error("grid supports band limit {grid} but {requested} was requested")]
    GridTooSmall { grid: usize, requested: usize },
    /// Angular quadrature order below the exactness threshold.
    #[error("circle quadrature needs at least {needed} nodes, got {got}")]
    QuadratureTooCoarse { needed: usize, got: usize },
    /// Local frame or 1/sin(theta) factor requested too close to a pole.
    #[error("direction too close to a pole (sin theta = {sin_theta:e})")]
    PoleProximity { sin_theta: f64 },
    /// Zonal kernel produced a non-finite sample.
    #[error("kernel sample at t = {t} is not finite")]
    NonFiniteKernel { t: f64 },
    /// Multiplier inversion hit a value below the floor on a populated channel.
    #[error("multiplier at degree {degree} has magnitude {magnitude:e}; inversion is ill-posed")]
    IllPosed { degree: usize, magnitude: f64 },
    /// Input carries mass on channels the operator annihilates.
    #[error("input has mass {mass:e} on annihilated channels")]
    KernelViolation { mass: f64 },
    /// Principal-value cutoff outside (0, 0.5].
    #[error("cutoff eps = {eps} lies outside (0, 0.5]")]
    InvalidCutoff { eps: f64 },
    /// A tangent-field operation received a field with radial content.
    #[error("field is not tangential: radial mass {mass:e}")]
    NotTangential { mass: f64 },
    /// Gradient-potential solve received divergence-free contamination.
    #[error("field has divergence-free mass {mass:e}; it is not a surface gradient")]
    NotCurlFree { mass: f64 },
    /// Multiplier sequence carries a nonzero value on a parity-excluded degree.
    #[error("multiplier sequence violates its parity mask at degree {degree}")]
    ParityViolation { degree: usize },
    /// Multiplier sequence contains a non-finite entry.
    #[error("multiplier at degree {degree} is not finite")]
    NonFiniteMultiplier { degree: usize },
    /// Vector harmonic channel outside {1, 2, 3}.
    #[error("invalid vector harmonic channel {channel}")]
    InvalidChannel { channel: u8 },
    /// Channels 2 and 3 start at degree 1.
    #[error("channel {channel} has no degree-0 harmonic")]
    DegreeZeroChannel { channel: u8 },
}

pub type Result<T> = core::result::Result<T, Error>;
