//! The relaxed Douglas-Rachford iteration
//! `z⁺ = (1 - α)z + α R_{γA} R_{γB} z`, its traces, and empirical rates.
//!
//! Rates are measured as distances to a known fixed point rather than from
//! consecutive residuals; on the worst-case instances the fixed point is the
//! origin and every step contracts by exactly the predicted factor.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Vec2;
use crate::operators::MonotoneOp;
use crate::rates::AlgoParams;
use crate::worstcase::TightInstance;

pub const DEFAULT_MAX_ITERS: usize = 100;
pub const MAX_ITERS_LIMIT: usize = 1_000_000;
/// Below this distance ratio measurements are dominated by rounding.
pub const DEFAULT_STOP_NORM: f64 = 1e-13;
/// Fewest ratios [`verify_tightness`] accepts from a run that did not converge.
pub const MIN_USABLE_RATIOS: usize = 10;
pub const TIGHTNESS_TOL: f64 = 1e-10;

/// Iteration budget, stopping distance and starting point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    max_iters: usize,
    stop_norm: f64,
    z0: Vec2,
}

impl RunConfig {
    pub fn new(max_iters: usize, stop_norm: f64, z0: Vec2) -> Result<Self> {
        if !(1..=MAX_ITERS_LIMIT).contains(&max_iters) {
            return Err(Error::InvalidRunConfig(format!(
                "max_iters must lie in [1, {MAX_ITERS_LIMIT}], got {max_iters}"
            )));
        }
        if !(stop_norm > 0.0 && stop_norm.is_finite()) {
            return Err(Error::InvalidRunConfig(format!(
                "stop_norm must be positive and finite, got {stop_norm}"
            )));
        }
        if !z0.is_finite() {
            return Err(Error::InvalidRunConfig("z0 must be finite".into()));
        }
        Ok(RunConfig {
            max_iters,
            stop_norm,
            z0,
        })
    }

    /// 100 iterations, stop at `1e-13`.
    pub fn with_defaults(z0: Vec2) -> Self {
        RunConfig {
            max_iters: DEFAULT_MAX_ITERS,
            stop_norm: DEFAULT_STOP_NORM,
            z0,
        }
    }

    /// Defaults, started from the instance's prescribed point.
    pub fn for_instance(instance: &TightInstance) -> Self {
        RunConfig::with_defaults(instance.z0())
    }

    pub fn max_iters(&self) -> usize {
        self.max_iters
    }

    pub fn stop_norm(&self) -> f64 {
        self.stop_norm
    }

    pub fn z0(&self) -> Vec2 {
        self.z0
    }
}

/// Distances to the fixed point and step lengths of one run.
///
/// `norms` has one more entry than `ratios` and `residuals`; a ratio is
/// recorded only while the current distance exceeds `stop_norm`, so at most
/// the final entry of `norms` lies below it.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Trace {
    pub norms: Vec<f64>,
    pub ratios: Vec<f64>,
    pub residuals: Vec<f64>,
    pub stop_norm: f64,
}

impl Trace {
    /// Build a trace from a sequence of distances, for analysing data that
    /// did not come from [`run`]. Residuals are left empty.
    pub fn from_norms(norms: Vec<f64>, stop_norm: f64) -> Self {
        let ratios = norms
            .windows(2)
            .take_while(|w| w[0] > stop_norm)
            .map(|w| w[1] / w[0])
            .collect();
        Trace {
            norms,
            ratios,
            residuals: Vec::new(),
            stop_norm,
        }
    }

    /// Whether the run stopped because it reached `stop_norm`.
    pub fn converged(&self) -> bool {
        self.norms.last().is_some_and(|&n| n <= self.stop_norm)
    }
}

/// Per-step extremes and the least-squares geometric rate of a trace.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RateEstimate {
    pub per_step_max: f64,
    pub per_step_min: f64,
    /// `exp` of the least-squares slope of `ln norms` against the step index.
    pub geometric_fit: f64,
}

/// Predicted vs measured rate of a worst-case instance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TightnessReport {
    pub predicted: f64,
    pub measured: f64,
    pub abs_gap: f64,
    /// Largest `|ratio - predicted|` over the recorded steps.
    pub max_step_deviation: f64,
    pub usable_ratios: usize,
    pub pass: bool,
}

/// One relaxed step: B's reflected resolvent first, then A's.
pub fn dr_step(op_a: &MonotoneOp, op_b: &MonotoneOp, a: &AlgoParams, z: Vec2) -> Result<Vec2> {
    let gamma = a.gamma();
    let alpha = a.alpha();
    let rb = op_b.reflected_resolvent(gamma, z)?;
    let ra = op_a.reflected_resolvent(gamma, rb)?;
    Ok(z * (1.0 - alpha) + ra * alpha)
}

/// Iterate from `config.z0` for at most `max_iters` steps, stopping once the
/// distance to `fixed_point` drops to `stop_norm`.
pub fn run(
    op_a: &MonotoneOp,
    op_b: &MonotoneOp,
    params: &AlgoParams,
    fixed_point: Vec2,
    config: &RunConfig,
) -> Result<Trace> {
    let mut z = config.z0;
    let first = (z - fixed_point).norm();
    if first == 0.0 {
        return Err(Error::StartAtFixedPoint);
    }
    if first <= config.stop_norm {
        return Err(Error::InvalidRunConfig(format!(
            "z0 is within stop_norm = {} of the fixed point",
            config.stop_norm
        )));
    }
    let mut trace = Trace {
        norms: Vec::with_capacity(config.max_iters.min(4096) + 1),
        ratios: Vec::new(),
        residuals: Vec::new(),
        stop_norm: config.stop_norm,
    };
    trace.norms.push(first);
    let mut current = first;
    for _ in 0..config.max_iters {
        if current <= config.stop_norm {
            break;
        }
        let next = dr_step(op_a, op_b, params, z)?;
        if !next.is_finite() {
            return Err(Error::NotFinite { what: "iterate" });
        }
        let norm = (next - fixed_point).norm();
        trace.residuals.push((next - z).norm());
        trace.ratios.push(norm / current);
        trace.norms.push(norm);
        z = next;
        current = norm;
    }
    Ok(trace)
}

/// [`run`] on a worst-case instance.
pub fn run_instance(instance: &TightInstance, config: &RunConfig) -> Result<Trace> {
    run(
        instance.op_a(),
        instance.op_b(),
        instance.params(),
        instance.fixed_point(),
        config,
    )
}

/// Fit a geometric rate to the distances above `stop_norm`.
pub fn estimate_rate(trace: &Trace) -> Result<RateEstimate> {
    let fit: Vec<f64> = trace
        .norms
        .iter()
        .copied()
        .take_while(|&n| n > trace.stop_norm)
        .collect();
    if fit.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: fit.len(),
        });
    }
    // Least squares of ln(norm_k) = a + b·k.
    let n = fit.len() as f64;
    let k_mean = (n - 1.0) / 2.0;
    let y_mean = fit.iter().map(|v| v.ln()).sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (k, v) in fit.iter().enumerate() {
        let dk = k as f64 - k_mean;
        sxy += dk * (v.ln() - y_mean);
        sxx += dk * dk;
    }
    let (per_step_min, per_step_max) = trace
        .ratios
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &r| {
            (lo.min(r), hi.max(r))
        });
    Ok(RateEstimate {
        per_step_max,
        per_step_min,
        geometric_fit: (sxy / sxx).exp(),
    })
}

/// Run a worst-case instance and compare the measured rate with its
/// prediction, both as a geometric fit and step by step.
///
/// A run that reaches `stop_norm` early (for instance `δ = 0`, which lands
/// on the fixed point in one step) is measured from the steps it has; a run
/// that exhausts `max_iters` with fewer than [`MIN_USABLE_RATIOS`] ratios is
/// rejected.
pub fn verify_tightness(instance: &TightInstance, config: &RunConfig) -> Result<TightnessReport> {
    let trace = run_instance(instance, config)?;
    let usable = trace.ratios.len();
    if usable < MIN_USABLE_RATIOS && !trace.converged() {
        return Err(Error::TraceTooShort {
            usable,
            needed: MIN_USABLE_RATIOS,
        });
    }
    let predicted = instance.predicted_rate();
    let measured = match estimate_rate(&trace) {
        Ok(est) => est.geometric_fit,
        Err(Error::InsufficientData { .. }) => trace.ratios.iter().copied().fold(0.0, f64::max),
        Err(e) => return Err(e),
    };
    let max_step_deviation = trace
        .ratios
        .iter()
        .map(|r| (r - predicted).abs())
        .fold(0.0, f64::max);
    let abs_gap = (measured - predicted).abs();
    Ok(TightnessReport {
        predicted,
        measured,
        abs_gap,
        max_step_deviation,
        usable_ratios: usable,
        pass: abs_gap <= TIGHTNESS_TOL && max_step_deviation <= TIGHTNESS_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Mat2;
    use crate::worstcase::{build_regime1, build_regime2, build_regime3, RotationSpec};
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};

    fn close(a: Vec2, b: Vec2) -> bool {
        (a - b).norm() < 1e-15
    }

    #[test]
    fn step_with_zero_operators_is_identity() {
        let z = Vec2::new(0.3, -2.0);
        let a = AlgoParams::new(0.7, 1.0).unwrap();
        let zero = MonotoneOp::zero();
        assert_eq!(dr_step(&zero, &zero, &a, z).unwrap(), z);
    }

    #[test]
    fn step_on_regime1_instance() {
        for gamma in [0.3, 1.0, 3.0] {
            let inst = build_regime1(1.0, gamma, 0.8);
            // α = 0.8 is above c only for some γ; the recursion holds regardless.
            let a = AlgoParams::new(gamma, 0.8).unwrap();
            let f = MonotoneOp::separable_quadratic(1.0).unwrap();
            let fstar = MonotoneOp::conjugate_of(f.clone()).unwrap();
            let z = dr_step(&fstar, &f, &a, Vec2::new(0.0, 1.0)).unwrap();
            assert!(close(z, Vec2::new(0.0, -0.6)));
            if let Ok(inst) = inst {
                let z = dr_step(inst.op_a(), inst.op_b(), inst.params(), inst.z0()).unwrap();
                assert!(close(z, Vec2::new(0.0, -0.6)));
            }
        }
    }

    #[test]
    fn step_with_negated_scaled_composition() {
        // R_A = -0.6·Id via a reflected-resolvent operator, R_B = Id.
        let ra = MonotoneOp::from_reflected_resolvent(Mat2::scalar(-0.6), 1.0).unwrap();
        let a = AlgoParams::new(1.0, 0.5).unwrap();
        let z = dr_step(&ra, &MonotoneOp::zero(), &a, Vec2::new(1.0, 0.0)).unwrap();
        assert!(close(z, Vec2::new(0.2, 0.0)));
    }

    #[test]
    fn run_shapes() {
        let zero = MonotoneOp::zero();
        let a = AlgoParams::new(1.0, 0.5).unwrap();
        let cfg = RunConfig::new(1, DEFAULT_STOP_NORM, Vec2::new(1.0, 1.0)).unwrap();
        let t = run(&zero, &zero, &a, Vec2::ZERO, &cfg).unwrap();
        assert_eq!((t.norms.len(), t.ratios.len(), t.residuals.len()), (2, 1, 1));

        let cfg = RunConfig::with_defaults(Vec2::new(1.0, 1.0));
        let t = run(&zero, &zero, &a, Vec2::ZERO, &cfg).unwrap();
        assert_eq!(t.norms.len(), DEFAULT_MAX_ITERS + 1);
        assert!(t.norms.iter().all(|&n| n == t.norms[0]));
        assert_eq!(estimate_rate(&t).unwrap().geometric_fit, 1.0);
    }

    #[test]
    fn run_rejects_start_at_fixed_point() {
        let zero = MonotoneOp::zero();
        let a = AlgoParams::new(1.0, 0.5).unwrap();
        let cfg = RunConfig::with_defaults(Vec2::ZERO);
        assert_eq!(
            run(&zero, &zero, &a, Vec2::ZERO, &cfg).unwrap_err(),
            Error::StartAtFixedPoint
        );
    }

    #[test]
    fn config_validation() {
        assert!(RunConfig::new(0, 1e-13, Vec2::ZERO).is_err());
        assert!(RunConfig::new(MAX_ITERS_LIMIT + 1, 1e-13, Vec2::ZERO).is_err());
        assert!(RunConfig::new(10, 0.0, Vec2::ZERO).is_err());
        assert!(RunConfig::new(10, 1e-13, Vec2::new(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn estimate_of_geometric_sequence() {
        let t = Trace::from_norms(vec![1.0, 0.5, 0.25], 1e-13);
        let e = estimate_rate(&t).unwrap();
        assert_eq!((e.per_step_max, e.per_step_min), (0.5, 0.5));
        assert!((e.geometric_fit - 0.5).abs() < 1e-15);
        assert!(matches!(
            estimate_rate(&Trace::from_norms(vec![1.0], 1e-13)),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn tight_regime2_ratios_are_exact() {
        let spec = RotationSpec::new(2.0, FRAC_PI_3).unwrap();
        let inst = build_regime2(&spec, 0.5, 1.0).unwrap();
        let trace = run_instance(&inst, &RunConfig::for_instance(&inst)).unwrap();
        for r in &trace.ratios {
            assert!((r - inst.predicted_rate()).abs() < 1e-10);
        }
        assert!(verify_tightness(&inst, &RunConfig::for_instance(&inst)).unwrap().pass);
    }

    #[test]
    fn tight_regime3_fit_is_exact() {
        let spec = RotationSpec::with_c(1.0, FRAC_PI_4, 3.0).unwrap();
        let inst = build_regime3(&spec, 1.2, 0.9).unwrap();
        let trace = run_instance(&inst, &RunConfig::for_instance(&inst)).unwrap();
        let est = estimate_rate(&trace).unwrap();
        assert!((est.geometric_fit - inst.predicted_rate()).abs() < 1e-10);
    }

    #[test]
    fn tight_regime1_measures_one_minus_two_alpha() {
        let inst = build_regime1(1.0, 1.0, 0.9).unwrap();
        let rep = verify_tightness(&inst, &RunConfig::for_instance(&inst)).unwrap();
        assert!(rep.pass);
        assert!((rep.measured - 0.8).abs() < 1e-10);
    }

    #[test]
    fn zero_delta_converges_in_one_step() {
        let spec = RotationSpec::new(1.0, 0.0).unwrap();
        let inst = build_regime2(&spec, 1.0, 1.0).unwrap();
        assert_eq!(inst.predicted_rate(), 0.0);
        let rep = verify_tightness(&inst, &RunConfig::for_instance(&inst)).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.measured, 0.0);
        assert_eq!(rep.usable_ratios, 1);
    }

    #[test]
    fn too_few_iterations_is_an_error() {
        let spec = RotationSpec::new(2.0, FRAC_PI_3).unwrap();
        let inst = build_regime2(&spec, 0.5, 1.0).unwrap();
        let cfg = RunConfig::new(1, DEFAULT_STOP_NORM, inst.z0()).unwrap();
        assert!(matches!(
            verify_tightness(&inst, &cfg),
            Err(Error::TraceTooShort { usable: 1, needed: 10 })
        ));
    }
}
