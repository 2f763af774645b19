use thiserror::Error;

use crate::roots::ZeroSet;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,

    #[error("reversal degree {d} is below polynomial degree {degree}")]
    ReverseDegree { d: usize, degree: usize },

    #[error("polynomial degree {degree} is below the required minimum {min}")]
    DegreeTooLow { degree: usize, min: usize },

    #[error("degree {degree} exceeds the supported cap of {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("root iteration did not converge after {sweeps} sweeps (worst residual {worst:.3e})")]
    NoConvergence {
        sweeps: usize,
        worst: f64,
        best: Box<ZeroSet>,
    },

    #[error("need at least two points, got {0}")]
    TooFewPoints(usize),

    #[error("linear system is singular to working precision ({context})")]
    Singular { context: String },

    #[error("Toeplitz recursion broke down at order {order} (|alpha| = {modulus})")]
    PivotBreakdown { order: usize, modulus: f64 },

    #[error("quadrature did not reach tolerance {tol:.1e} (last change {change:.3e})")]
    Quadrature { tol: f64, change: f64 },

    #[error("f(0) = 0: every optimal approximant vanishes identically")]
    ZeroAtOrigin,

    #[error("f must be normalized so that f(0) = 1 (got {0})")]
    NotNormalized(String),

    #[error("degree {n} is degenerate: the Szegő polynomial vanishes at the origin, p_n = p_(n-1)")]
    Degenerate { n: usize },

    #[error("zeros are not simple (minimum gap {gap:.3e})")]
    NotSimple { gap: f64 },

    #[error("zero {index} at {point} collides with a singular point of the field ({what})")]
    Collision {
        index: usize,
        point: String,
        what: &'static str,
    },

    #[error("electrostatic partner cannot be normalized: raw combination vanishes")]
    PartnerVanishes,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
