//! Two-dimensional instances on which the rate bounds hold with equality.
//!
//! Every construction is linear through the origin, so the fixed point is
//! the origin and each Douglas-Rachford step multiplies the distance to it by
//! exactly the predicted rate.
//!
//! Regimes 2 and 3 pair a scaled rotation `A` with a skew operator `B` whose
//! reflected resolvent undoes the rotation of `R_{γA}`, leaving `±δ·Id`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Mat2, Vec2};
use crate::operators::{arctan2_nonneg, check_gamma, MonotoneOp};
use crate::rates::{self, AlgoParams, Regime, RegimeParams};

/// Below this `|sin φ|` a rotation by φ is treated as `±Id` and the
/// generating operator switches to `0` or `∂ι₀`.
pub const ANGLE_SNAP: f64 = 1e-14;

/// Relative gap under which `β - σ` is treated as zero, absorbing the
/// rounding in σ and β derived from a spec with `ψ = 0`.
const GAP_SNAP: f64 = 1e-14;

/// Slack on `α ≥ c` for the regime-1 instance.
const THRESHOLD_SLACK: f64 = 1e-12;

/// Shape of a rotation-based instance: scale `d`, angle `ψ ∈ [0, π/2)` and,
/// for regime 3, inner scale `c > 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RotationSpec {
    d: f64,
    psi: f64,
    c: Option<f64>,
}

impl RotationSpec {
    /// Spec for the strongly monotone + Lipschitz instance `A = d·Rot(ψ)`.
    pub fn new(d: f64, psi: f64) -> Result<Self> {
        if !(d.is_finite() && d > 0.0) {
            return Err(Error::InvalidSpec(format!("d must be positive and finite, got {d}")));
        }
        if !(0.0..FRAC_PI_2).contains(&psi) {
            return Err(Error::InvalidSpec(format!("psi must lie in [0, pi/2), got {psi}")));
        }
        Ok(RotationSpec { d, psi, c: None })
    }

    /// Spec for the strongly monotone + cocoercive instance
    /// `A = d(c·Rot(ψ) + I)⁻¹`.
    pub fn with_c(d: f64, psi: f64, c: f64) -> Result<Self> {
        let mut spec = RotationSpec::new(d, psi)?;
        if !(c.is_finite() && c > 1.0) {
            return Err(Error::InvalidSpec(format!("c must be finite and > 1, got {c}")));
        }
        spec.c = Some(c);
        Ok(spec)
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }

    pub fn c(&self) -> Option<f64> {
        self.c
    }

    fn require_c(&self) -> Result<f64> {
        self.c
            .ok_or_else(|| Error::InvalidSpec("regime 3 requires the inner scale c > 1".into()))
    }

    /// `A = d·Rot(ψ)`.
    pub fn regime2_matrix(&self) -> Mat2 {
        self.d * Mat2::rotation(self.psi)
    }

    /// `σ = d·cos ψ`, `β = d`.
    pub fn regime2_params(&self) -> Result<RegimeParams> {
        RegimeParams::new(Regime::StrongMonoLipschitz, self.d * self.psi.cos(), self.d)
    }

    /// `A = d(C + I)⁻¹` with `C = c·Rot(ψ)`.
    pub fn regime3_matrix(&self) -> Result<Mat2> {
        let c = self.require_c()?;
        let inner = c * Mat2::rotation(self.psi) + Mat2::IDENTITY;
        let inv = inner.inverse().ok_or(Error::SingularResolvent)?;
        Ok(self.d * inv)
    }

    /// `σ = d(1 + c cos ψ)/(1 + 2c cos ψ + c²)`, `β = d/(1 + c cos ψ)`.
    pub fn regime3_params(&self) -> Result<RegimeParams> {
        let c = self.require_c()?;
        let ccos = c * self.psi.cos();
        let sigma = self.d * (1.0 + ccos) / (1.0 + 2.0 * ccos + c * c);
        let beta = self.d / (1.0 + ccos);
        RegimeParams::new(Regime::StrongMonoCocoercive, sigma, beta)
    }
}

/// Regime-2 spec with prescribed (σ, β): `d = β`, `ψ = arccos(σ/β)`.
pub fn regime2_spec_for(sigma: f64, beta: f64) -> Result<RotationSpec> {
    let p = RegimeParams::new(Regime::StrongMonoLipschitz, sigma, beta)?;
    let psi = (p.sigma() / p.beta()).min(1.0).acos();
    RotationSpec::new(p.beta(), psi)
}

/// Regime-3 spec with prescribed (σ, β) at a pinned angle ψ.
///
/// Solving `β/σ = (1 + 2c cos ψ + c²)/(1 + c cos ψ)²` for c gives
/// `c = √(x-1)/(sin ψ - √(x-1) cos ψ)` with `x = β/σ`, which is a valid
/// inner scale only for `1 + tan²(ψ/2) < x < 1/cos²ψ`.
pub fn regime3_spec_for(sigma: f64, beta: f64, psi: f64) -> Result<RotationSpec> {
    let p = RegimeParams::new(Regime::StrongMonoCocoercive, sigma, beta)?;
    if !(0.0..FRAC_PI_2).contains(&psi) {
        return Err(Error::InvalidSpec(format!("psi must lie in [0, pi/2), got {psi}")));
    }
    let w = (p.ratio() - 1.0).max(0.0).sqrt();
    if w == 0.0 && psi == 0.0 {
        // β = σ at ψ = 0 holds for every c; pick c = 2.
        return RotationSpec::with_c(3.0 * p.beta(), 0.0, 2.0);
    }
    let (s, u) = psi.sin_cos();
    let lo = 1.0 + (psi / 2.0).tan().powi(2);
    let hi = 1.0 / (u * u);
    let denom = s - w * u;
    let c = w / denom;
    if !(denom > 0.0 && c > 1.0 && c.is_finite()) {
        return Err(Error::InvalidSpec(format!(
            "beta/sigma = {} is not reachable at psi = {psi}; need {lo} < beta/sigma < {hi}",
            p.ratio()
        )));
    }
    RotationSpec::with_c(p.beta() * (1.0 + c * u), psi, c)
}

/// Skew operator `B` whose scaled reflected resolvent is `Rot(angle)`:
/// `B = -tan(angle/2)/γ · [[0, -1], [1, 0]]`, switching to `0` at angle 0 and
/// to `∂ι₀` (reflected resolvent `-Id`) at angle ±π.
pub fn rotation_generator(angle: f64, gamma: f64) -> Result<MonotoneOp> {
    check_gamma("worstcase", gamma)?;
    if !angle.is_finite() {
        return Err(Error::NotFinite { what: "rotation angle" });
    }
    let (s, c) = angle.sin_cos();
    if s.abs() < ANGLE_SNAP {
        return Ok(if c > 0.0 {
            MonotoneOp::zero()
        } else {
            MonotoneOp::indicator_origin()
        });
    }
    // tan(φ/2) in whichever form avoids cancellation.
    let half_tan = if c >= 0.0 { s / (1.0 + c) } else { (1.0 - c) / s };
    MonotoneOp::linear(-half_tan / gamma * Mat2::SKEW)
}

/// The pair `B₁ = sin ξ/(γ(1 + cos ξ))·J`, `B₂ = sin ξ/(γ(1 - cos ξ))·J`
/// with `J = [[0, -1], [1, 0]]` and `ξ ∈ [0, π]`.
///
/// `R_{γB₁} = Rot(-ξ)` and `R_{γB₂} = Rot(ξ - π)`. At the endpoints the
/// unbounded coefficient is replaced by its limit `∂ι₀`: `B₁` at `ξ = π`
/// and `B₂` at `ξ = 0`.
pub fn explicit_b_operators(xi: f64, gamma: f64) -> Result<(MonotoneOp, MonotoneOp)> {
    if !(0.0..=PI).contains(&xi) {
        return Err(Error::AngleOutOfRange(xi));
    }
    Ok((rotation_generator(-xi, gamma)?, rotation_generator(xi - PI, gamma)?))
}

/// Contraction δ, angle ξ and the reflected resolvent `R_{γA}` of the
/// rotation instance with the given (σ, β).
///
/// Regime 2: `R_{γA} = δ·Rot(-ξ)`, `ξ = arctan2(2γ√(β² - σ²), 1 - (γβ)²)`.
/// Regime 3: `R_{γA} = δ·Rot(ξ)`, `ξ = arctan2(2γ√(σ(β - σ)), 1 - σβγ²)`.
pub fn closed_form_reflected(p: &RegimeParams, gamma: f64) -> Result<(f64, f64, Mat2)> {
    let (sigma, beta) = (p.sigma(), p.beta());
    let gap = if beta - sigma <= GAP_SNAP * beta {
        0.0
    } else {
        beta - sigma
    };
    match p.regime() {
        Regime::SplitStrongCoco => Err(Error::NoClosedForm),
        Regime::StrongMonoLipschitz => {
            let delta = rates::delta_regime2(p, gamma)?;
            let gb = gamma * beta;
            let xi = arctan2_nonneg(2.0 * gamma * (gap * (beta + sigma)).sqrt(), 1.0 - gb * gb)?;
            Ok((delta, xi, delta * Mat2::rotation(-xi)))
        }
        Regime::StrongMonoCocoercive => {
            let delta = rates::delta_regime3(p, gamma)?;
            let xi = arctan2_nonneg(
                2.0 * gamma * (sigma * gap).sqrt(),
                1.0 - sigma * beta * gamma * gamma,
            )?;
            Ok((delta, xi, delta * Mat2::rotation(xi)))
        }
    }
}

/// An (A, B, γ, α) tuple whose iteration contracts at exactly `predicted_rate`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TightInstance {
    op_a: MonotoneOp,
    op_b: MonotoneOp,
    params: AlgoParams,
    regime_params: RegimeParams,
    predicted_rate: f64,
    fixed_point: Vec2,
    z0: Vec2,
}

impl TightInstance {
    pub fn op_a(&self) -> &MonotoneOp {
        &self.op_a
    }

    pub fn op_b(&self) -> &MonotoneOp {
        &self.op_b
    }

    pub fn params(&self) -> &AlgoParams {
        &self.params
    }

    pub fn regime_params(&self) -> &RegimeParams {
        &self.regime_params
    }

    pub fn predicted_rate(&self) -> f64 {
        self.predicted_rate
    }

    pub fn fixed_point(&self) -> Vec2 {
        self.fixed_point
    }

    /// Prescribed starting point; for regime 1 the first coordinate must be 0.
    pub fn z0(&self) -> Vec2 {
        self.z0
    }
}

/// `f(x) = β/2·x₁²` paired with its conjugate, which is `1/β`-strongly
/// monotone. From `z⁰ = (0, 1)` the iteration is `z⁺ = (1 - 2α)z`.
pub fn build_regime1(beta: f64, gamma: f64, alpha: f64) -> Result<TightInstance> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::InvalidSpec(format!("beta must be positive and finite, got {beta}")));
    }
    let p = RegimeParams::new(Regime::SplitStrongCoco, 1.0 / beta, beta)?;
    let c = rates::alpha_threshold_c(&p, gamma)?;
    if !alpha.is_finite() || alpha < c - THRESHOLD_SLACK || alpha >= 1.0 {
        return Err(Error::AlphaBelowThreshold { alpha, c });
    }
    let f = MonotoneOp::separable_quadratic(beta)?;
    Ok(TightInstance {
        op_a: MonotoneOp::conjugate_of(f.clone())?,
        op_b: f,
        params: AlgoParams::new(gamma, alpha)?,
        regime_params: p,
        predicted_rate: (1.0 - 2.0 * alpha).abs(),
        fixed_point: Vec2::ZERO,
        z0: Vec2::new(0.0, 1.0),
    })
}

/// Pair `A` with the generator of `Rot(angle_b)` so that
/// `R_{γA}R_{γB} = ±δ·Id`.
fn rotation_instance(
    op_a: Mat2,
    p: RegimeParams,
    gamma: f64,
    alpha: f64,
    angle_b: f64,
) -> Result<TightInstance> {
    let params = AlgoParams::new(gamma, alpha)?;
    let bound = rates::rate(&p, &params)?;
    Ok(TightInstance {
        op_a: MonotoneOp::linear(op_a)?,
        op_b: rotation_generator(angle_b, gamma)?,
        params,
        regime_params: p,
        predicted_rate: bound.rate,
        fixed_point: Vec2::ZERO,
        z0: Vec2::new(1.0, 0.0),
    })
}

/// `A = d·Rot(ψ)` with `R_{γB} = Rot(ξ)` for `α ≤ 1` (composition `δ·Id`)
/// and `Rot(ξ - π)` for `α > 1` (composition `-δ·Id`).
pub fn build_regime2(spec: &RotationSpec, gamma: f64, alpha: f64) -> Result<TightInstance> {
    let p = spec.regime2_params()?;
    check_gamma("worstcase", gamma)?;
    let (_, xi, _) = closed_form_reflected(&p, gamma)?;
    let angle_b = if alpha <= 1.0 { xi } else { xi - PI };
    rotation_instance(spec.regime2_matrix(), p, gamma, alpha, angle_b)
}

/// `A = d(c·Rot(ψ) + I)⁻¹` with `R_{γB} = Rot(-ξ)` for `α ≤ 1` and
/// `Rot(π - ξ)` for `α > 1`.
pub fn build_regime3(spec: &RotationSpec, gamma: f64, alpha: f64) -> Result<TightInstance> {
    let p = spec.regime3_params()?;
    check_gamma("worstcase", gamma)?;
    let (_, xi, _) = closed_form_reflected(&p, gamma)?;
    let angle_b = if alpha <= 1.0 { -xi } else { PI - xi };
    rotation_instance(spec.regime3_matrix()?, p, gamma, alpha, angle_b)
}
