//! Error type shared by all modules.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors reported by workbench operations.
#[derive(Debug, Error)]
pub enum Error {
    /// A function was used on a domain it is not defined on.
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    /// An operation does not support the given function kind.
    #[error("unsupported function kind for {op}: {kind}")]
    UnsupportedKind { op: &'static str, kind: String },

    /// The requested norm diverges for this parameter combination.
    #[error("divergent norm: {0}")]
    DivergentNorm(String),

    /// An argument failed validation.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Two sampled functions live on incompatible grids.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// Quadrature / aliasing error estimate exceeds the allowed tolerance.
    #[error("quadrature tolerance exceeded: estimate {estimate:.3e} > tolerance {tolerance:.3e}")]
    QuadratureTolerance { estimate: f64, tolerance: f64 },

    /// Spectral energy outside the resolved dyadic band is too large.
    #[error("out-of-band energy fraction {fraction:.3e} exceeds tolerance {tolerance:.3e}")]
    OutOfBand { fraction: f64, tolerance: f64 },

    /// A measure atom lies outside the region where a field can be evaluated.
    #[error("atom at ({x}, {y}) outside the evaluable region")]
    AtomOutsideRegion { x: f64, y: f64 },

    /// A Carleson-box search was started with no candidate intervals.
    #[error("empty search family")]
    EmptySearchFamily,

    /// Horizontal line norms failed the monotonicity sanity check.
    #[error("line norms increase with height beyond tolerance at y = {y}: {excess:.3e}")]
    NonMonotoneLineNorms { y: f64, excess: f64 },

    /// The grid cannot resolve an oscillation frequency.
    #[error("grid cannot resolve oscillation at frequency {frequency} (nyquist {nyquist})")]
    UnresolvedOscillation { frequency: f64, nyquist: f64 },

    /// No analytic tail bound is available for this field source.
    #[error("tail bound unavailable: {0}")]
    TailBoundUnavailable(String),

    /// A multiplier with negative homogeneity was applied to a signal with
    /// spectral mass at the origin.
    #[error("spectrum does not vanish near the origin (fraction {fraction:.3e})")]
    OriginSingularity { fraction: f64 },

    /// Malformed input file or schema violation; names the offending field.
    #[error("malformed input: field `{field}`: {reason}")]
    MalformedInput { field: String, reason: String },
}

impl Error {
    pub fn malformed(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::MalformedInput {
            field: field.into(),
            reason: reason.into(),
        }
    }
}
