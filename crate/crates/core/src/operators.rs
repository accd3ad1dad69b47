//! Maximally monotone operators represented through their resolvents.
//!
//! Douglas-Rachford only ever touches an operator through `J_{γA} = (I + γA)⁻¹`
//! and `R_{γA} = 2J_{γA} - I`, so each variant here knows how to evaluate
//! those two maps. Set-valued operators (the normal cone of the origin, the
//! subdifferential of a conjugate) enter only through their resolvents.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Mat2, Vec2};

/// Slack on the smallest eigenvalue of `(M + Mᵀ)/2` when checking monotonicity.
pub const MONOTONE_TOL: f64 = 1e-12;
/// Slack on the largest singular value when checking nonexpansiveness.
pub const NONEXPANSIVE_TOL: f64 = 1e-12;
/// Relative slack when matching the scaling of a [`OpKind::FromReflectedResolvent`].
pub const GAMMA_MATCH_TOL: f64 = 1e-12;

/// The concrete representation of a [`MonotoneOp`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum OpKind {
    /// `x ↦ Mx` with `M + Mᵀ ⪰ 0`.
    Linear(Mat2),
    /// Gradient of `f(x) = β/2 · x₁²`.
    SeparableQuadratic { beta: f64 },
    /// Subdifferential of the convex conjugate of the base function.
    ConjugateOf(Box<MonotoneOp>),
    /// The operator `B` with `R_{γB} = reflected`, valid only at the stored scaling.
    FromReflectedResolvent { reflected: Mat2, gamma: f64 },
    /// The zero operator; `J = R = I`.
    Zero,
    /// `∂ι₀`, the normal cone of the origin; `J = 0`, `R = -I`.
    IndicatorOrigin,
}

/// A maximally monotone operator on the plane.
///
/// Constructors validate the variant's invariant, so every value of this type
/// has a nonexpansive reflected resolvent.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct MonotoneOp {
    kind: OpKind,
}

impl MonotoneOp {
    /// Linear operator `x ↦ Mx`; rejects `M` whose symmetric part has an
    /// eigenvalue below `-1e-12 · max(1, ‖M‖)`.
    pub fn linear(m: Mat2) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NotFinite { what: "linear operator matrix" });
        }
        let min_eigenvalue = m.min_sym_eigenvalue();
        if min_eigenvalue < -MONOTONE_TOL * m.spectral_norm().max(1.0) {
            return Err(Error::NotMonotone { min_eigenvalue });
        }
        Ok(MonotoneOp { kind: OpKind::Linear(m) })
    }

    pub fn separable_quadratic(beta: f64) -> Result<Self> {
        if !beta.is_finite() {
            return Err(Error::NotFinite { what: "quadratic coefficient beta" });
        }
        if beta < 0.0 {
            return Err(Error::NegativeCoefficient(beta));
        }
        Ok(MonotoneOp { kind: OpKind::SeparableQuadratic { beta } })
    }

    /// `∂f*` for a conjugable base `f`.
    pub fn conjugate_of(base: MonotoneOp) -> Result<Self> {
        match base.kind {
            OpKind::SeparableQuadratic { .. } => Ok(MonotoneOp {
                kind: OpKind::ConjugateOf(Box::new(base)),
            }),
            _ => Err(Error::UnsupportedConjugate),
        }
    }

    /// The operator whose reflected resolvent at scaling `gamma` is `reflected`.
    ///
    /// Any nonexpansive map is the reflected resolvent of some maximally
    /// monotone operator, so the only check is `‖reflected‖₂ ≤ 1 + 1e-12`.
    pub fn from_reflected_resolvent(reflected: Mat2, gamma: f64) -> Result<Self> {
        check_gamma("operators", gamma)?;
        if !reflected.is_finite() {
            return Err(Error::NotFinite { what: "reflected resolvent matrix" });
        }
        let norm = reflected.spectral_norm();
        if norm > 1.0 + NONEXPANSIVE_TOL {
            return Err(Error::NotNonexpansive { norm });
        }
        Ok(MonotoneOp {
            kind: OpKind::FromReflectedResolvent { reflected, gamma },
        })
    }

    pub fn zero() -> Self {
        MonotoneOp { kind: OpKind::Zero }
    }

    pub fn indicator_origin() -> Self {
        MonotoneOp { kind: OpKind::IndicatorOrigin }
    }

    pub fn kind(&self) -> &OpKind {
        &self.kind
    }

    /// The operator scaled by `gamma > 0`.
    pub fn scaled(&self, gamma: f64) -> Result<ScaledOp<'_>> {
        ScaledOp::new(self, gamma)
    }

    /// `J_{γA}(x)`.
    pub fn resolvent(&self, gamma: f64, x: Vec2) -> Result<Vec2> {
        check_gamma("operators", gamma)?;
        match &self.kind {
            OpKind::Linear(m) => (Mat2::IDENTITY + gamma * *m)
                .solve(x)
                .ok_or(Error::SingularResolvent),
            OpKind::SeparableQuadratic { beta } => Ok(quadratic_prox(*beta, gamma, x)),
            OpKind::ConjugateOf(base) => moreau_prox(base, gamma, x),
            OpKind::FromReflectedResolvent { reflected, gamma: built } => {
                if (gamma - built).abs() > GAMMA_MATCH_TOL * built {
                    return Err(Error::GammaMismatch {
                        built: *built,
                        requested: gamma,
                    });
                }
                Ok((*reflected + Mat2::IDENTITY).mul_vec(x) * 0.5)
            }
            OpKind::Zero => Ok(x),
            OpKind::IndicatorOrigin => Ok(Vec2::ZERO),
        }
    }

    /// `R_{γA}(x) = 2 J_{γA}(x) - x`.
    pub fn reflected_resolvent(&self, gamma: f64, x: Vec2) -> Result<Vec2> {
        match &self.kind {
            // Evaluated directly so the stored matrix is reproduced without
            // the round trip through (R + I)/2.
            OpKind::FromReflectedResolvent { reflected, .. } => {
                self.resolvent(gamma, x)?;
                Ok(reflected.mul_vec(x))
            }
            OpKind::Zero => {
                check_gamma("operators", gamma)?;
                Ok(x)
            }
            OpKind::IndicatorOrigin => {
                check_gamma("operators", gamma)?;
                Ok(-x)
            }
            _ => Ok(self.resolvent(gamma, x)? * 2.0 - x),
        }
    }

    /// Matrix of `J_{γA}`. Every shipped variant has a linear resolvent.
    pub fn resolvent_matrix(&self, gamma: f64) -> Result<Mat2> {
        Ok(Mat2::from_columns(
            self.resolvent(gamma, Vec2::new(1.0, 0.0))?,
            self.resolvent(gamma, Vec2::new(0.0, 1.0))?,
        ))
    }

    /// Matrix of `R_{γA}`.
    pub fn reflected_matrix(&self, gamma: f64) -> Result<Mat2> {
        Ok(Mat2::from_columns(
            self.reflected_resolvent(gamma, Vec2::new(1.0, 0.0))?,
            self.reflected_resolvent(gamma, Vec2::new(0.0, 1.0))?,
        ))
    }

    /// Forward evaluation `Ax` for the single-valued variants.
    pub fn apply(&self, x: Vec2) -> Option<Vec2> {
        match &self.kind {
            OpKind::Linear(m) => Some(m.mul_vec(x)),
            OpKind::SeparableQuadratic { beta } => Some(Vec2::new(beta * x.x1, 0.0)),
            OpKind::Zero => Some(Vec2::ZERO),
            _ => None,
        }
    }
}

/// An operator together with the step size `γ > 0` it is evaluated at.
#[derive(Clone, Copy, Debug)]
pub struct ScaledOp<'a> {
    base: &'a MonotoneOp,
    gamma: f64,
}

impl<'a> ScaledOp<'a> {
    pub fn new(base: &'a MonotoneOp, gamma: f64) -> Result<Self> {
        check_gamma("operators", gamma)?;
        Ok(ScaledOp { base, gamma })
    }

    pub fn base(&self) -> &MonotoneOp {
        self.base
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn resolvent(&self, x: Vec2) -> Result<Vec2> {
        self.base.resolvent(self.gamma, x)
    }

    pub fn reflected_resolvent(&self, x: Vec2) -> Result<Vec2> {
        self.base.reflected_resolvent(self.gamma, x)
    }
}

pub(crate) fn check_gamma(context: &'static str, gamma: f64) -> Result<()> {
    if gamma > 0.0 && gamma.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveGamma { context, gamma })
    }
}

/// `prox_{γf}(y) = (y₁ / (1 + γβ), y₂)` for `f(x) = β/2 · x₁²`.
fn quadratic_prox(beta: f64, gamma: f64, y: Vec2) -> Vec2 {
    Vec2::new(y.x1 / (1.0 + gamma * beta), y.x2)
}

/// `prox_{γf*}(x) = x - γ · prox_{γ⁻¹f}(x/γ)` (Moreau decomposition).
pub fn moreau_prox(base: &MonotoneOp, gamma: f64, x: Vec2) -> Result<Vec2> {
    check_gamma("operators", gamma)?;
    match base.kind() {
        OpKind::SeparableQuadratic { .. } => {
            let inner = base.resolvent(1.0 / gamma, x * (1.0 / gamma))?;
            Ok(x - inner * gamma)
        }
        _ => Err(Error::UnsupportedConjugate),
    }
}

/// Prox of `f̂ = f - σ/2·‖·‖²` for `f(x) = β/2 · x₁²`, computed through the
/// unshifted prox: `prox_{γf̂}(z) = prox_{γ/(1-γσ)·f}(z / (1-γσ))`.
///
/// A negative `sigma_shift` adds the quadratic instead.
pub fn shifted_prox(f_beta: f64, sigma_shift: f64, gamma: f64, x: Vec2) -> Result<Vec2> {
    check_gamma("operators", gamma)?;
    if !sigma_shift.is_finite() {
        return Err(Error::NotFinite { what: "sigma_shift" });
    }
    let f = MonotoneOp::separable_quadratic(f_beta)?;
    let shrink = 1.0 - gamma * sigma_shift;
    if shrink <= 0.0 {
        return Err(Error::ShiftTooLarge(shrink));
    }
    f.resolvent(gamma / shrink, x * (1.0 / shrink))
}

/// Angle in `[0, π]` whose tangent is `x / y`, for a nonnegative numerator.
pub fn arctan2_nonneg(x: f64, y: f64) -> Result<f64> {
    if x.is_nan() || y.is_nan() {
        return Err(Error::NotFinite { what: "arctan2 argument" });
    }
    if x < 0.0 {
        return Err(Error::NegativeNumerator(x));
    }
    let angle = if y > 0.0 {
        (x / y).atan()
    } else if y < 0.0 {
        (x / y).atan() + std::f64::consts::PI
    } else {
        std::f64::consts::FRAC_PI_2
    };
    Ok(angle)
}
