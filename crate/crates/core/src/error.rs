use thiserror::Error;

use crate::rates::Regime;

/// Errors raised when a precondition of an operation does not hold.
///
/// Every message names the violated precondition so that the CLI can forward
/// it verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operators: linear operator is not monotone (min eigenvalue of symmetric part {min_eigenvalue:e} < -1e-12)")]
    NotMonotone { min_eigenvalue: f64 },

    #[error("operators: reflected resolvent is not nonexpansive (largest singular value {norm} > 1 + 1e-12)")]
    NotNonexpansive { norm: f64 },

    #[error("operators: {what} must be finite")]
    NotFinite { what: &'static str },

    #[error("operators: quadratic coefficient beta must be >= 0, got {0}")]
    NegativeCoefficient(f64),

    #[error("{context}: gamma must be > 0, got {gamma}")]
    NonPositiveGamma { context: &'static str, gamma: f64 },

    #[error("operators: operator was built for gamma = {built} but evaluated at gamma = {requested}")]
    GammaMismatch { built: f64, requested: f64 },

    #[error("operators: internal invariant violated, (I + gamma*M) is singular for a monotone M")]
    SingularResolvent,

    #[error("operators: Moreau conjugate is only available for a separable quadratic base")]
    UnsupportedConjugate,

    #[error("operators: shifted prox requires 1 - gamma*sigma_shift > 0, got {0}")]
    ShiftTooLarge(f64),

    #[error("operators: arctan2_nonneg requires a nonnegative numerator, got x = {0}")]
    NegativeNumerator(f64),

    #[error("rates: {0}")]
    InvalidRegimeParams(String),

    #[error("{context}: expected regime {expected}, got {got:?}")]
    WrongRegime {
        context: &'static str,
        expected: &'static str,
        got: Regime,
    },

    #[error("rates: alpha must lie in the open interval ({lower}, {upper}), got {alpha}")]
    AlphaOutOfRange { alpha: f64, lower: f64, upper: f64 },

    #[error("worstcase: alpha must satisfy alpha_threshold_c = {c} <= alpha < 1 for an exact regime-1 rate, got {alpha}")]
    AlphaBelowThreshold { alpha: f64, c: f64 },

    #[error("rates: ratio beta/sigma must be >= 1, got {0}")]
    InvalidRatio(f64),

    #[error("rates: ratio grid must be non-empty")]
    EmptyGrid,

    #[error("rates: ratio grid must be ascending, {prev} is followed by {next}")]
    UnsortedGrid { prev: f64, next: f64 },

    #[error("worstcase: angle xi must lie in [0, pi], got {0}")]
    AngleOutOfRange(f64),

    #[error("worstcase: {0}")]
    InvalidSpec(String),

    #[error("worstcase: regime 1 has no closed-form reflected resolvent")]
    NoClosedForm,

    #[error("engine: {0}")]
    InvalidRunConfig(String),

    #[error("engine: starting point equals the fixed point, no ratios computable")]
    StartAtFixedPoint,

    #[error("engine: need at least {needed} recorded norms above stop_norm, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("engine: trace too short, {usable} usable ratios but {needed} required")]
    TraceTooShort { usable: usize, needed: usize },

    #[error("propsuite: {0}")]
    InvalidSampler(String),
}

pub type Result<T> = std::result::Result<T, Error>;
