//! Closed-form contraction factors, rate bounds and optimal parameters for
//! the three problem classes, plus the comparison curves used in the figures.
//!
//! * [`Regime::SplitStrongCoco`]: `A` is σ-strongly monotone, `B` is
//!   1/β-cocoercive. The Douglas-Rachford operator `R_{γA}R_{γB}` is
//!   θ-negatively averaged and the relaxed iteration contracts with factor
//!   `|1 - 2α + αθ| + αθ`.
//! * [`Regime::StrongMonoLipschitz`]: `A` is σ-strongly monotone and
//!   β-Lipschitz; `R_{γA}` is δ-contractive.
//! * [`Regime::StrongMonoCocoercive`]: `A` is σ-strongly monotone and
//!   1/β-cocoercive; `R_{γA}` is δ-contractive with a smaller δ.
//!
//! In the last two cases the relaxed iteration contracts with `|1 - α| + αδ`
//! for every `α ∈ (0, 2/(1+δ))`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::check_gamma;

/// Relative slack allowed on `σ ≤ β` so that instances built with `σ = β` in
/// exact arithmetic survive rounding.
const SIGMA_BETA_SLACK: f64 = 1e-12;

/// Which pair of assumptions the problem satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `A` strongly monotone, `B` cocoercive.
    SplitStrongCoco,
    /// `A` strongly monotone and Lipschitz.
    StrongMonoLipschitz,
    /// `A` strongly monotone and cocoercive.
    StrongMonoCocoercive,
}

impl Regime {
    pub const ALL: [Regime; 3] = [
        Regime::SplitStrongCoco,
        Regime::StrongMonoLipschitz,
        Regime::StrongMonoCocoercive,
    ];

    /// 1, 2 or 3, as used on the command line.
    pub fn number(self) -> u8 {
        match self {
            Regime::SplitStrongCoco => 1,
            Regime::StrongMonoLipschitz => 2,
            Regime::StrongMonoCocoercive => 3,
        }
    }

    pub fn from_number(n: u8) -> Option<Regime> {
        match n {
            1 => Some(Regime::SplitStrongCoco),
            2 => Some(Regime::StrongMonoLipschitz),
            3 => Some(Regime::StrongMonoCocoercive),
            _ => None,
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Regime::SplitStrongCoco => "split strong monotonicity / cocoercivity",
            Regime::StrongMonoLipschitz => "strongly monotone and Lipschitz",
            Regime::StrongMonoCocoercive => "strongly monotone and cocoercive",
        };
        write!(f, "{name}")
    }
}

/// Strong monotonicity modulus σ and Lipschitz (or inverse cocoercivity)
/// constant β of a problem class.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RegimeParams {
    sigma: f64,
    beta: f64,
    regime: Regime,
}

impl RegimeParams {
    pub fn new(regime: Regime, sigma: f64, beta: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidRegimeParams(format!(
                "sigma must be positive and finite, got {sigma}"
            )));
        }
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::InvalidRegimeParams(format!(
                "beta must be positive and finite, got {beta}"
            )));
        }
        if regime != Regime::SplitStrongCoco && sigma > beta * (1.0 + SIGMA_BETA_SLACK) {
            return Err(Error::InvalidRegimeParams(format!(
                "sigma <= beta required for regime {}, got sigma = {sigma}, beta = {beta}",
                regime.number()
            )));
        }
        Ok(RegimeParams { sigma, beta, regime })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// Condition ratio β/σ.
    pub fn ratio(&self) -> f64 {
        self.beta / self.sigma
    }

    fn expect(&self, context: &'static str, regime: Regime) -> Result<()> {
        if self.regime == regime {
            Ok(())
        } else {
            Err(Error::WrongRegime {
                context,
                expected: match regime {
                    Regime::SplitStrongCoco => "SplitStrongCoco",
                    Regime::StrongMonoLipschitz => "StrongMonoLipschitz",
                    Regime::StrongMonoCocoercive => "StrongMonoCocoercive",
                },
                got: self.regime,
            })
        }
    }
}

/// Step size γ and relaxation α of the iteration.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AlgoParams {
    gamma: f64,
    alpha: f64,
}

impl AlgoParams {
    /// Checks `γ > 0` and a finite α; the feasible α interval depends on the
    /// regime and is checked by the rate functions.
    pub fn new(gamma: f64, alpha: f64) -> Result<Self> {
        check_gamma("rates", gamma)?;
        if !alpha.is_finite() {
            return Err(Error::AlphaOutOfRange {
                alpha,
                lower: 0.0,
                upper: f64::INFINITY,
            });
        }
        Ok(AlgoParams { gamma, alpha })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// A guaranteed contraction factor for given parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RateBound {
    /// Contraction factor of `R_{γA}` (regimes 2 and 3), or the negative
    /// averagedness θ of `R_{γA}R_{γB}` (regime 1).
    pub delta: f64,
    pub rate: f64,
    /// Open upper end of the feasible α interval.
    pub alpha_feasible_upper: f64,
}

/// Parameters minimising the rate bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OptimalChoice {
    pub gamma_star: f64,
    pub alpha_star: f64,
    pub rate_star: f64,
}

fn kappa_regime1(p: &RegimeParams, gamma: f64) -> f64 {
    1.0 / (gamma * p.sigma) + gamma * p.beta
}

/// Negative averagedness of `R_{γA}R_{γB}` in the split regime,
/// `θ = κ/(κ+1)` with `κ = 1/(γσ) + γβ`.
pub fn theta_regime1(p: &RegimeParams, gamma: f64) -> Result<f64> {
    p.expect("rates", Regime::SplitStrongCoco)?;
    check_gamma("rates", gamma)?;
    let kappa = kappa_regime1(p, gamma);
    Ok(kappa / (kappa + 1.0))
}

fn check_alpha(alpha: f64, upper: f64) -> Result<()> {
    if alpha > 0.0 && alpha < upper {
        Ok(())
    } else {
        Err(Error::AlphaOutOfRange {
            alpha,
            lower: 0.0,
            upper,
        })
    }
}

/// `|1 - 2α + αθ_γ| + αθ_γ` for `α ∈ (0, 1)`.
pub fn rate_regime1(p: &RegimeParams, a: &AlgoParams) -> Result<RateBound> {
    let theta = theta_regime1(p, a.gamma)?;
    check_alpha(a.alpha, 1.0)?;
    let alpha = a.alpha;
    Ok(RateBound {
        delta: theta,
        rate: (1.0 - 2.0 * alpha + alpha * theta).abs() + alpha * theta,
        alpha_feasible_upper: 1.0,
    })
}

/// `γ* = 1/√(βσ)`, `α* = (√(β/σ) + 1/2)/(1 + √(β/σ))`, rate `√(β/σ)/(√(β/σ) + 1)`.
pub fn optimal_regime1(p: &RegimeParams) -> Result<OptimalChoice> {
    p.expect("rates", Regime::SplitStrongCoco)?;
    let r = p.ratio().sqrt();
    Ok(OptimalChoice {
        gamma_star: 1.0 / (p.beta * p.sigma).sqrt(),
        alpha_star: (r + 0.5) / (1.0 + r),
        rate_star: r / (r + 1.0),
    })
}

/// The relaxation above which the split-regime bound reduces to `|1 - 2α|`:
/// `c = (1 + γσ + γ²σβ)/(1 + 2γσ + γ²σβ)`, which equals the kink `1/(2 - θ_γ)`.
pub fn alpha_threshold_c(p: &RegimeParams, gamma: f64) -> Result<f64> {
    p.expect("rates", Regime::SplitStrongCoco)?;
    check_gamma("rates", gamma)?;
    let gs = gamma * p.sigma;
    let ggsb = gamma * gamma * p.sigma * p.beta;
    Ok((1.0 + gs + ggsb) / (1.0 + 2.0 * gs + ggsb))
}

/// `√((1 - 2γσ + q)/(1 + 2γσ + q))`, the common shape of both δ formulas.
fn contraction_from_quadratic(gamma_sigma: f64, q: f64) -> f64 {
    let num = (1.0 - 2.0 * gamma_sigma + q).max(0.0);
    (num / (1.0 + 2.0 * gamma_sigma + q)).sqrt()
}

/// `δ = √(1 - 4γσ/(1 + 2γσ + (γβ)²))`.
pub fn delta_regime2(p: &RegimeParams, gamma: f64) -> Result<f64> {
    p.expect("rates", Regime::StrongMonoLipschitz)?;
    check_gamma("rates", gamma)?;
    let gb = gamma * p.beta;
    Ok(contraction_from_quadratic(gamma * p.sigma, gb * gb))
}

/// `δ = √(1 - 4γσ/(1 + 2γσ + γ²σβ))`.
pub fn delta_regime3(p: &RegimeParams, gamma: f64) -> Result<f64> {
    p.expect("rates", Regime::StrongMonoCocoercive)?;
    check_gamma("rates", gamma)?;
    Ok(contraction_from_quadratic(
        gamma * p.sigma,
        gamma * gamma * p.sigma * p.beta,
    ))
}

fn averaged_contraction(delta: f64, alpha: f64) -> Result<RateBound> {
    let upper = 2.0 / (1.0 + delta);
    check_alpha(alpha, upper)?;
    Ok(RateBound {
        delta,
        rate: (1.0 - alpha).abs() + alpha * delta,
        alpha_feasible_upper: upper,
    })
}

/// `|1 - α| + αδ` for `α ∈ (0, 2/(1+δ))`.
pub fn rate_regime2(p: &RegimeParams, a: &AlgoParams) -> Result<RateBound> {
    averaged_contraction(delta_regime2(p, a.gamma)?, a.alpha)
}

/// `γ* = 1/β`, `α* = 1`, rate `√((β/σ - 1)/(β/σ + 1))`, evaluated as δ at γ*.
pub fn optimal_regime2(p: &RegimeParams) -> Result<OptimalChoice> {
    p.expect("rates", Regime::StrongMonoLipschitz)?;
    let gamma_star = 1.0 / p.beta;
    Ok(OptimalChoice {
        gamma_star,
        alpha_star: 1.0,
        rate_star: delta_regime2(p, gamma_star)?,
    })
}

/// `|1 - α| + αδ` for `α ∈ (0, 2/(1+δ))`.
pub fn rate_regime3(p: &RegimeParams, a: &AlgoParams) -> Result<RateBound> {
    averaged_contraction(delta_regime3(p, a.gamma)?, a.alpha)
}

/// `γ* = 1/√(βσ)`, `α* = 1`, rate `√((√(β/σ) - 1)/(√(β/σ) + 1))`, evaluated as δ at γ*.
pub fn optimal_regime3(p: &RegimeParams) -> Result<OptimalChoice> {
    p.expect("rates", Regime::StrongMonoCocoercive)?;
    let gamma_star = 1.0 / (p.beta * p.sigma).sqrt();
    Ok(OptimalChoice {
        gamma_star,
        alpha_star: 1.0,
        rate_star: delta_regime3(p, gamma_star)?,
    })
}

/// Contraction factor of `R_{γA}` for regimes 2 and 3, θ_γ for regime 1.
pub fn delta(p: &RegimeParams, gamma: f64) -> Result<f64> {
    match p.regime {
        Regime::SplitStrongCoco => theta_regime1(p, gamma),
        Regime::StrongMonoLipschitz => delta_regime2(p, gamma),
        Regime::StrongMonoCocoercive => delta_regime3(p, gamma),
    }
}

/// Rate bound for the regime carried by `p`.
pub fn rate(p: &RegimeParams, a: &AlgoParams) -> Result<RateBound> {
    match p.regime {
        Regime::SplitStrongCoco => rate_regime1(p, a),
        Regime::StrongMonoLipschitz => rate_regime2(p, a),
        Regime::StrongMonoCocoercive => rate_regime3(p, a),
    }
}

/// Optimal parameters for the regime carried by `p`.
pub fn optimal(p: &RegimeParams) -> Result<OptimalChoice> {
    match p.regime {
        Regime::SplitStrongCoco => optimal_regime1(p),
        Regime::StrongMonoLipschitz => optimal_regime2(p),
        Regime::StrongMonoCocoercive => optimal_regime3(p),
    }
}

/// Rate after moving the strong monotonicity of `A` onto the cocoercive
/// operator, `(√((β+σ)/σ) - 1)/(√((β+σ)/σ) + 1)`.
pub fn shifted_regime1_rate(p: &RegimeParams) -> Result<f64> {
    p.expect("rates", Regime::SplitStrongCoco)?;
    let r = ((p.beta + p.sigma) / p.sigma).sqrt();
    Ok((r - 1.0) / (r + 1.0))
}

/// Optimal rates of the competing bounds at one condition ratio `x = β/σ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonBounds {
    pub ratio: f64,
    /// Classical Lions-Mercier bound, `√(1 - 1/(2x))`.
    pub lions_mercier: f64,
    /// Lions-Mercier with `α = 1`, `√(1 - 1/x)`.
    pub improved_lm: f64,
    /// Strongly monotone + Lipschitz, `√((x-1)/(x+1))`.
    pub thm_regime2: f64,
    /// Strongly monotone + cocoercive, `√((√x-1)/(√x+1))`.
    pub thm_regime3: f64,
    /// Cocoercive subdifferential, `(√x-1)/(√x+1)`.
    pub subdiff: f64,
}

pub fn comparison_bounds(ratio: f64) -> Result<ComparisonBounds> {
    if !(ratio >= 1.0 && ratio.is_finite()) {
        return Err(Error::InvalidRatio(ratio));
    }
    let x = ratio;
    let r = x.sqrt();
    let subdiff = (r - 1.0) / (r + 1.0);
    Ok(ComparisonBounds {
        ratio,
        lions_mercier: (1.0 - 1.0 / (2.0 * x)).sqrt(),
        improved_lm: (1.0 - 1.0 / x).sqrt(),
        thm_regime2: ((x - 1.0) / (x + 1.0)).sqrt(),
        thm_regime3: subdiff.sqrt(),
        subdiff,
    })
}

/// Which comparison figure a sweep materialises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Figure {
    /// Strongly monotone + Lipschitz against the Lions-Mercier bounds.
    LipschitzVsLionsMercier,
    /// Subdifferential vs cocoercive vs Lipschitz.
    CocoerciveVsLipschitz,
}

impl Figure {
    pub fn from_number(n: u8) -> Option<Figure> {
        match n {
            1 => Some(Figure::LipschitzVsLionsMercier),
            2 => Some(Figure::CocoerciveVsLipschitz),
            _ => None,
        }
    }

    /// Column names, ratio first, tightest bound next.
    pub fn columns(self) -> [&'static str; 4] {
        match self {
            Figure::LipschitzVsLionsMercier => ["ratio", "thm_regime2", "improved_lm", "lions_mercier"],
            Figure::CocoerciveVsLipschitz => ["ratio", "subdiff", "thm_regime3", "thm_regime2"],
        }
    }

    /// Row values in [`Figure::columns`] order.
    pub fn values(self, row: &ComparisonBounds) -> [f64; 4] {
        match self {
            Figure::LipschitzVsLionsMercier => {
                [row.ratio, row.thm_regime2, row.improved_lm, row.lions_mercier]
            }
            Figure::CocoerciveVsLipschitz => {
                [row.ratio, row.subdiff, row.thm_regime3, row.thm_regime2]
            }
        }
    }
}

/// Evaluate [`comparison_bounds`] on an ascending grid of ratios.
pub fn sweep(ratios: &[f64]) -> Result<Vec<ComparisonBounds>> {
    if ratios.is_empty() {
        return Err(Error::EmptyGrid);
    }
    for w in ratios.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::UnsortedGrid {
                prev: w[0],
                next: w[1],
            });
        }
    }
    ratios.iter().map(|&x| comparison_bounds(x)).collect()
}

/// Lattice `min, min + step, …` up to and including `max` when it lies on the
/// lattice (to within `1e-9·step`).
pub fn ratio_grid(min: f64, max: f64, step: f64) -> Result<Vec<f64>> {
    if !(min >= 1.0 && min.is_finite()) {
        return Err(Error::InvalidRatio(min));
    }
    if !(max.is_finite() && max >= min) {
        return Err(Error::InvalidRegimeParams(format!(
            "ratio_max must be finite and >= ratio_min, got {max} < {min}"
        )));
    }
    if max == min {
        return Ok(vec![min]);
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidRegimeParams(format!(
            "step must be positive and finite, got {step}"
        )));
    }
    let count = ((max - min) / step + 1e-9).floor() as usize;
    Ok((0..=count).map(|k| min + k as f64 * step).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r1(sigma: f64, beta: f64) -> RegimeParams {
        RegimeParams::new(Regime::SplitStrongCoco, sigma, beta).unwrap()
    }
    fn r2(sigma: f64, beta: f64) -> RegimeParams {
        RegimeParams::new(Regime::StrongMonoLipschitz, sigma, beta).unwrap()
    }
    fn r3(sigma: f64, beta: f64) -> RegimeParams {
        RegimeParams::new(Regime::StrongMonoCocoercive, sigma, beta).unwrap()
    }
    fn algo(gamma: f64, alpha: f64) -> AlgoParams {
        AlgoParams::new(gamma, alpha).unwrap()
    }

    #[test]
    fn theta_examples() {
        assert!((theta_regime1(&r1(1.0, 1.0), 1.0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((theta_regime1(&r1(4.0, 1.0), 0.5).unwrap() - 0.5).abs() < 1e-15);
        // θ = κ/(κ+1) with κ = θ_A/(1-θ_A) + α_B/(1-α_B), θ_A = 1/(1+γσ), α_B = γβ/(1+γβ).
        let (sigma, beta, gamma) = (1.0, 1.0, 1.0);
        let theta_a: f64 = 1.0 / (1.0 + gamma * sigma);
        let alpha_b: f64 = gamma * beta / (1.0 + gamma * beta);
        let kappa = theta_a / (1.0 - theta_a) + alpha_b / (1.0 - alpha_b);
        assert!((kappa - 2.0).abs() < 1e-15);
        let theta = theta_regime1(&r1(sigma, beta), gamma).unwrap();
        assert!((theta - kappa / (kappa + 1.0)).abs() < 1e-15);
        assert!(theta_regime1(&r1(1.0, 1.0), 0.0).is_err());
    }

    #[test]
    fn rate_regime1_examples() {
        let b = rate_regime1(&r1(1.0, 1.0), &algo(1.0, 0.75)).unwrap();
        assert!((b.rate - 0.5).abs() < 1e-15);
        let b = rate_regime1(&r1(1.0, 4.0), &algo(0.5, 5.0 / 6.0)).unwrap();
        assert!((b.rate - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(b.alpha_feasible_upper, 1.0);
    }

    #[test]
    fn rate_regime1_rejects_alpha_outside_unit_interval() {
        let p = r1(1.0, 1.0);
        for alpha in [0.0, 1.0, 1.2, -0.1] {
            assert!(matches!(
                rate_regime1(&p, &algo(1.0, alpha)),
                Err(Error::AlphaOutOfRange { .. })
            ));
        }
    }

    #[test]
    fn rate_regime1_continuous_at_kink() {
        let p = r1(0.7, 2.3);
        let gamma = 0.9;
        let theta = theta_regime1(&p, gamma).unwrap();
        let kink = 1.0 / (2.0 - theta);
        let left = rate_regime1(&p, &algo(gamma, kink - 1e-9)).unwrap().rate;
        let right = rate_regime1(&p, &algo(gamma, kink + 1e-9)).unwrap().rate;
        assert!((left - right).abs() < 1e-8);
        let c = alpha_threshold_c(&p, gamma).unwrap();
        assert!((c - kink).abs() < 1e-15);
    }

    #[test]
    fn optimal_regime1_examples() {
        let o = optimal_regime1(&r1(1.0, 4.0)).unwrap();
        assert!((o.gamma_star - 0.5).abs() < 1e-15);
        assert!((o.alpha_star - 5.0 / 6.0).abs() < 1e-15);
        assert!((o.rate_star - 2.0 / 3.0).abs() < 1e-15);
        let o = optimal_regime1(&r1(2.5, 2.5)).unwrap();
        assert!((o.rate_star - 0.5).abs() < 1e-15);
        assert!((o.alpha_star - 0.75).abs() < 1e-15);
        assert!((o.gamma_star - 0.4).abs() < 1e-15);
    }

    #[test]
    fn alpha_threshold_examples() {
        assert!((alpha_threshold_c(&r1(1.0, 1.0), 1.0).unwrap() - 0.75).abs() < 1e-15);
        for gamma in [1e-3, 0.1, 1.0, 10.0, 1e3] {
            let c = alpha_threshold_c(&r1(0.3, 7.0), gamma).unwrap();
            assert!(c > 0.5 && c < 1.0);
        }
    }

    #[test]
    fn delta_regime2_examples() {
        assert_eq!(delta_regime2(&r2(1.0, 1.0), 1.0).unwrap(), 0.0);
        assert!((delta_regime2(&r2(1.0, 2.0), 1.0).unwrap() - (3.0f64 / 7.0).sqrt()).abs() < 1e-15);
        let p = r2(0.4, 2.0);
        let x = p.ratio();
        let at_opt = delta_regime2(&p, 1.0 / p.beta()).unwrap();
        assert!((at_opt - ((x - 1.0) / (x + 1.0)).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn rate_regime2_examples() {
        let p = r2(1.0, 2.0);
        let d = delta_regime2(&p, 1.0).unwrap();
        assert_eq!(rate_regime2(&p, &algo(1.0, 1.0)).unwrap().rate, d);
        let b = rate_regime2(&p, &algo(1.0, 0.5)).unwrap();
        assert!((b.rate - 0.827_326_835_353_988_6).abs() < 1e-12);
        assert!((b.alpha_feasible_upper - 2.0 / (1.0 + d)).abs() < 1e-15);
        assert_eq!(rate_regime2(&r2(3.0, 3.0), &algo(1.0 / 3.0, 1.0)).unwrap().rate, 0.0);
    }

    #[test]
    fn rate_regime2_rejects_infeasible_alpha() {
        let p = r2(1.0, 2.0);
        let upper = 2.0 / (1.0 + delta_regime2(&p, 1.0).unwrap());
        assert!(rate_regime2(&p, &algo(1.0, upper)).is_err());
        assert!(rate_regime2(&p, &algo(1.0, 0.0)).is_err());
        assert!(rate_regime2(&p, &algo(1.0, upper - 1e-9)).is_ok());
    }

    #[test]
    fn optimal_regime2_examples() {
        let o = optimal_regime2(&r2(1.0, 10.0)).unwrap();
        assert!((o.rate_star - 0.904_534_033_733_290_9).abs() < 1e-12);
        assert_eq!(o.alpha_star, 1.0);
        assert!((o.gamma_star - 0.1).abs() < 1e-15);
        assert_eq!(optimal_regime2(&r2(2.0, 2.0)).unwrap().rate_star, 0.0);
    }

    #[test]
    fn delta_regime3_examples() {
        assert_eq!(delta_regime3(&r3(2.0, 2.0), 0.5).unwrap(), 0.0);
        assert!((delta_regime3(&r3(1.0, 4.0), 0.5).unwrap() - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
        let p = r3(0.5, 3.0);
        let r = p.ratio().sqrt();
        let at_opt = delta_regime3(&p, 1.0 / (p.beta() * p.sigma()).sqrt()).unwrap();
        assert!((at_opt - ((r - 1.0) / (r + 1.0)).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn optimal_regime3_examples() {
        let o = optimal_regime3(&r3(1.0, 4.0)).unwrap();
        assert!((o.rate_star - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(optimal_regime3(&r3(1.5, 1.5)).unwrap().rate_star, 0.0);
        for x in [2.0, 4.0, 10.0] {
            let rate3 = optimal_regime3(&r3(1.0, x)).unwrap().rate_star;
            let subdiff = comparison_bounds(x).unwrap().subdiff;
            assert!((rate3 - subdiff.sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn wrong_regime_is_rejected() {
        assert!(matches!(
            delta_regime2(&r1(1.0, 1.0), 1.0),
            Err(Error::WrongRegime { .. })
        ));
        assert!(optimal_regime1(&r3(1.0, 2.0)).is_err());
        assert!(shifted_regime1_rate(&r2(1.0, 2.0)).is_err());
    }

    #[test]
    fn regime_params_validation() {
        assert!(RegimeParams::new(Regime::StrongMonoLipschitz, 2.0, 1.0).is_err());
        assert!(RegimeParams::new(Regime::SplitStrongCoco, 2.0, 1.0).is_ok());
        assert!(RegimeParams::new(Regime::StrongMonoCocoercive, 0.0, 1.0).is_err());
        assert!(RegimeParams::new(Regime::StrongMonoCocoercive, 1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn comparison_examples() {
        let b = comparison_bounds(10.0).unwrap();
        assert!((b.lions_mercier - 0.95f64.sqrt()).abs() < 1e-15);
        assert!((b.improved_lm - 0.9f64.sqrt()).abs() < 1e-15);
        assert!((b.thm_regime2 - (9.0f64 / 11.0).sqrt()).abs() < 1e-15);
        let b = comparison_bounds(1.0).unwrap();
        assert_eq!((b.thm_regime2, b.thm_regime3, b.subdiff), (0.0, 0.0, 0.0));
        let b = comparison_bounds(4.0).unwrap();
        assert!((b.subdiff - 1.0 / 3.0).abs() < 1e-15);
        assert!((b.thm_regime3 - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(comparison_bounds(0.5).unwrap_err(), Error::InvalidRatio(0.5));
    }

    #[test]
    fn shifted_rate_examples() {
        assert!((shifted_regime1_rate(&r1(1.0, 3.0)).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        let r = optimal_regime1(&r1(1.0, 3.0)).unwrap().rate_star;
        assert!((r - 0.633_974_596_215_561_4).abs() < 1e-15);
        let s = shifted_regime1_rate(&r1(2.0, 2.0)).unwrap();
        assert!((s - 0.171_572_875_253_809_9).abs() < 1e-15);
        assert!(s <= 0.5);
    }

    #[test]
    fn sweep_shape_and_ordering() {
        let grid: Vec<f64> = (1..=10).map(f64::from).collect();
        let rows = sweep(&grid).unwrap();
        assert_eq!(rows.len(), 10);
        for row in &rows {
            assert!(row.thm_regime2 <= row.improved_lm && row.improved_lm <= row.lions_mercier);
            assert!(row.subdiff <= row.thm_regime3 && row.thm_regime3 <= row.thm_regime2);
        }
        assert_eq!(sweep(&[]).unwrap_err(), Error::EmptyGrid);
        assert!(matches!(sweep(&[2.0, 1.0]), Err(Error::UnsortedGrid { .. })));
        assert!(sweep(&[0.5, 1.0]).is_err());
    }

    #[test]
    fn ratio_grid_lattice() {
        assert_eq!(ratio_grid(1.0, 10.0, 1.0).unwrap().len(), 10);
        let g = ratio_grid(1.0, 10.0, 0.25).unwrap();
        assert_eq!(g.len(), 37);
        assert_eq!(*g.last().unwrap(), 10.0);
        assert_eq!(ratio_grid(3.0, 3.0, 0.0).unwrap(), vec![3.0]);
        assert!(ratio_grid(0.5, 3.0, 1.0).is_err());
        assert!(ratio_grid(1.0, 3.0, -1.0).is_err());
    }

    #[test]
    fn figure_projection() {
        let row = comparison_bounds(4.0).unwrap();
        let v = Figure::CocoerciveVsLipschitz.values(&row);
        assert_eq!(v, [4.0, row.subdiff, row.thm_regime3, row.thm_regime2]);
        assert_eq!(Figure::LipschitzVsLionsMercier.columns()[1], "thm_regime2");
    }
}
