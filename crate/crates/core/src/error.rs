use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by construction, evaluation, and search routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("tilt angle {radians} is not inside (-pi/2, pi/2) with margin 1e-6")]
    TiltOutOfRange { radians: f64 },

    #[error("a series needs at least one coefficient")]
    EmptySeries,

    #[error("coefficient {index} is not finite")]
    NonFiniteCoefficient { index: usize },

    #[error("series division needs a constant term bounded away from zero; got modulus {modulus:e}")]
    DivisionByNearZeroConstantTerm { modulus: f64 },

    #[error("series composition needs an inner constant term of exactly zero; got {value}")]
    NonzeroInnerConstant { value: Complex64 },

    #[error("complex power needs the branch anchor (constant term) at 1; got {constant}")]
    BadBranchAnchor { constant: Complex64 },

    #[error("coefficient {index} breaks the normalization f(0) = 0, f'(0) = 1; got {got}")]
    NotNormalized { index: usize, got: Complex64 },

    #[error("evaluation point has modulus {modulus} beyond the supported radius")]
    OutsideEvaluationRadius { modulus: f64 },

    #[error("rotation parameter has modulus {modulus}, expected unimodular")]
    NotUnimodular { modulus: f64 },

    #[error("invalid measure: {reason}")]
    InvalidMeasure { reason: String },

    #[error("invalid grid: {reason}")]
    InvalidGrid { reason: String },

    #[error("operation needs both members at tilt zero; got {left} and {right}")]
    TiltMismatch { left: f64, right: f64 },

    #[error("combined tilt {sum} falls outside the admissible range, membership claim unavailable")]
    TiltSumOutOfRange { sum: f64 },

    #[error("radius {r} is outside the admissible range")]
    RadiusOutOfRange { r: f64 },

    #[error("no attaining angle at tilt {tilt}, radius {r}: the critical-point equation is infeasible")]
    NoAttainment { tilt: f64, r: f64 },

    #[error("unknown bound name {name:?}")]
    UnknownBound { name: String },

    #[error("lattice needs at least 2 points per axis; got {size}")]
    LatticeTooSmall { size: usize },

    #[error("did not converge within {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("tolerance {tol:e} is tighter than the supported minimum 1e-6")]
    ToleranceTooTight { tol: f64 },

    #[error("ratio z f'/f leaves the tilted half-plane: minimum rotated real part {min_margin}")]
    NotSpirallike { min_margin: f64 },

    #[error("derivative vanishes numerically at {z}")]
    VanishingDerivative { z: Complex64 },
}

pub type Result<T> = std::result::Result<T, Error>;
