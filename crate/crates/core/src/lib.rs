//! Douglas-Rachford splitting for two maximally monotone operators, with
//! tight linear convergence rates, the parameters that optimise them, and the
//! two-dimensional instances on which the rates are attained.

pub mod engine;
pub mod error;
pub mod linalg;
pub mod operators;
pub mod propsuite;
pub mod rates;
pub mod worstcase;

pub use error::{Error, Result};
pub use linalg::{Mat2, Vec2};
pub use operators::{MonotoneOp, OpKind, ScaledOp};
pub use rates::{AlgoParams, ComparisonBounds, OptimalChoice, RateBound, Regime, RegimeParams};
pub use worstcase::{RotationSpec, TightInstance};
