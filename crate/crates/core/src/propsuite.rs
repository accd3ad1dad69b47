//! Sampling checks of the operator inequalities behind the rate bounds.
//!
//! Each check draws random linear operators whose hypothesis constants are
//! certified exactly from their matrices, random point pairs in
//! `[-s, s]²`, and records the largest excess of one side of the inequality
//! over the other. Excesses are divided by `‖x - y‖²` (or `‖x - y‖` for norm
//! inequalities) so that rounding, not the point scale, sets the noise floor.
//!
//! Every check has a negative control that feeds it operators violating the
//! hypothesis by 10%; a control is detected when its excess exceeds `1e-3`.

use std::f64::consts::{FRAC_PI_2, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Mat2, Vec2};
use crate::operators::MonotoneOp;
use crate::rates::{self, Regime, RegimeParams};
use crate::worstcase::RotationSpec;

/// Excess treated as rounding rather than a counterexample.
pub const SLACK: f64 = 1e-9;
/// Smallest excess that counts as detecting a negative control.
pub const CONTROL_MIN_VIOLATION: f64 = 1e-3;
pub const DEFAULT_N_PAIRS: usize = 1000;
pub const MIN_N_PAIRS: usize = 100;
pub const DEFAULT_POINT_SCALE: f64 = 10.0;
/// How far negative controls break their hypothesis.
const INFLATE: f64 = 1.1;

/// Seed, number of samples per check and the half-width of the point box.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SamplerConfig {
    seed: u64,
    n_pairs: usize,
    point_scale: f64,
}

impl SamplerConfig {
    pub fn new(seed: u64, n_pairs: usize, point_scale: f64) -> Result<Self> {
        if n_pairs < MIN_N_PAIRS {
            return Err(Error::InvalidSampler(format!(
                "n_pairs must be >= {MIN_N_PAIRS}, got {n_pairs}"
            )));
        }
        if !(point_scale > 0.0 && point_scale.is_finite()) {
            return Err(Error::InvalidSampler(format!(
                "point_scale must be positive and finite, got {point_scale}"
            )));
        }
        Ok(SamplerConfig {
            seed,
            n_pairs,
            point_scale,
        })
    }

    /// 1000 pairs in `[-10, 10]²`.
    pub fn with_seed(seed: u64) -> Self {
        SamplerConfig {
            seed,
            n_pairs: DEFAULT_N_PAIRS,
            point_scale: DEFAULT_POINT_SCALE,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn n_pairs(&self) -> usize {
        self.n_pairs
    }

    pub fn point_scale(&self) -> f64 {
        self.point_scale
    }
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig::with_seed(0)
    }
}

/// Outcome of one check; `pass` iff `max_violation <= 1e-9`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub samples: usize,
    pub max_violation: f64,
    pub pass: bool,
}

/// Outcome of one negative control; `detected` iff `max_violation > 1e-3`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ControlResult {
    pub name: &'static str,
    pub samples: usize,
    pub max_violation: f64,
    pub detected: bool,
}

/// Hypothesis constants read off a matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Certificate {
    /// Strong monotonicity modulus, smallest eigenvalue of the symmetric part.
    pub sigma: f64,
    /// Lipschitz constant, largest singular value.
    pub lipschitz: f64,
    /// Smallest β with `⟨Mx, x⟩ ≥ ‖Mx‖²/β`, when the symmetric part is
    /// positive definite.
    pub coco_beta: Option<f64>,
}

/// Certify a linear map. The cocoercivity constant is the largest
/// generalised eigenvalue of `MᵀM` against the symmetric part `S`, i.e. the
/// largest eigenvalue of `S⁻¹MᵀM`, whose spectrum is real and nonnegative.
pub fn certify(m: &Mat2) -> Certificate {
    let sigma = m.min_sym_eigenvalue();
    let coco_beta = if sigma > 0.0 {
        m.symmetric_part().inverse().map(|s_inv| {
            let p = s_inv * (m.transpose() * *m);
            let half_tr = 0.5 * p.trace();
            half_tr + (half_tr * half_tr - p.det()).max(0.0).sqrt()
        })
    } else {
        None
    };
    Certificate {
        sigma,
        lipschitz: m.spectral_norm(),
        coco_beta,
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Hypothesis,
    Control,
}

struct Sampler {
    rng: ChaCha8Rng,
    scale: f64,
}

impl Sampler {
    fn new(cfg: &SamplerConfig, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(stream);
        Sampler {
            rng,
            scale: cfg.point_scale,
        }
    }

    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    fn log_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.uniform(lo.ln(), hi.ln()).exp()
    }

    fn angle(&mut self) -> f64 {
        self.uniform(0.0, TAU)
    }

    /// A pair of distinct points.
    fn pair(&mut self) -> (Vec2, Vec2) {
        let s = self.scale;
        loop {
            let x = Vec2::new(self.uniform(-s, s), self.uniform(-s, s));
            let y = Vec2::new(self.uniform(-s, s), self.uniform(-s, s));
            if (x - y).norm() > 1e-6 * s {
                return (x, y);
            }
        }
    }

    /// Random map with spectral norm at most one; a quarter of the draws
    /// have norm exactly one, where the inequalities are tightest.
    fn nonexpansive(&mut self) -> Mat2 {
        loop {
            let m = Mat2::new(
                self.uniform(-1.0, 1.0),
                self.uniform(-1.0, 1.0),
                self.uniform(-1.0, 1.0),
                self.uniform(-1.0, 1.0),
            );
            let norm = m.spectral_norm();
            if norm > 1e-3 {
                let u = if self.rng.gen_bool(0.25) {
                    1.0
                } else {
                    self.uniform(0.0, 1.0)
                };
                return m * (u / norm);
            }
        }
    }

    /// `S + K` with `S` symmetric, eigenvalues in `[lo, hi]`, and `K` skew
    /// with coefficient up to `skew`.
    fn monotone(&mut self, lo: f64, hi: f64, skew: f64) -> Mat2 {
        let q = Mat2::rotation(self.angle());
        let s = q * Mat2::diag(self.uniform(lo, hi), self.uniform(lo, hi)) * q.transpose();
        s + self.uniform(-skew, skew) * Mat2::SKEW
    }

    /// `(β/2)(I + N)` with `N` nonexpansive: every 1/β-cocoercive linear map
    /// has this form.
    fn cocoercive(&mut self, beta: f64) -> Mat2 {
        (Mat2::IDENTITY + self.nonexpansive()) * (0.5 * beta)
    }

    /// Step size with `γβ` on one side of 1 or the other, alternating.
    fn gamma_around(&mut self, beta: f64, k: usize) -> f64 {
        let t = if k.is_multiple_of(2) {
            self.log_uniform(0.1, 1.0)
        } else {
            self.log_uniform(1.0, 10.0)
        };
        t / beta
    }
}

/// Excesses, each divided by `‖d‖²` or `‖d‖`, where `d = x - y` and
/// `td = Tx - Ty`.
fn averaged_excess(d: Vec2, td: Vec2, alpha: f64) -> f64 {
    ((1.0 - alpha) / alpha * (d - td).norm_sq() + td.norm_sq() - d.norm_sq()) / d.norm_sq()
}

fn neg_averaged_excess(d: Vec2, td: Vec2, theta: f64) -> f64 {
    ((1.0 - theta) / theta * (d + td).norm_sq() + td.norm_sq() - d.norm_sq()) / d.norm_sq()
}

/// Excess of `‖td‖²/β` over `⟨td, d⟩`.
fn coco_excess(d: Vec2, td: Vec2, beta: f64) -> f64 {
    (td.norm_sq() / beta - td.dot(d)) / d.norm_sq()
}

fn strong_mono_excess(d: Vec2, td: Vec2, sigma: f64) -> f64 {
    (sigma * d.norm_sq() - td.dot(d)) / d.norm_sq()
}

fn contraction_excess(d: Vec2, td: Vec2, factor: f64) -> f64 {
    (td.norm() - factor * d.norm()) / d.norm()
}

fn diff(m: &Mat2, x: Vec2, y: Vec2) -> Vec2 {
    *m * x - *m * y
}

struct Outcome {
    samples: usize,
    max_violation: f64,
}

fn sample<F>(cfg: &SamplerConfig, stream: u64, mut one: F) -> Result<Outcome>
where
    F: FnMut(&mut Sampler, usize) -> Result<f64>,
{
    let mut s = Sampler::new(cfg, stream);
    let mut worst: f64 = 0.0;
    for k in 0..cfg.n_pairs {
        let excess = one(&mut s, k)?;
        if excess.is_nan() {
            return Err(Error::NotFinite { what: "sampled inequality" });
        }
        worst = worst.max(excess);
    }
    Ok(Outcome {
        samples: cfg.n_pairs,
        max_violation: worst,
    })
}

type CheckFn = fn(&SamplerConfig, Mode) -> Result<Outcome>;

/// Name and body of every check, in reporting order; the position doubles
/// as the RNG stream id.
const CHECKS: [(&str, CheckFn); 15] = [
    ("coco_vs_lipschitz", coco_vs_lipschitz),
    ("coco_averaged", coco_averaged),
    ("averaged_identity", averaged_identity),
    ("neg_averaged_identity", neg_averaged_identity),
    ("avg_contraction", avg_contraction),
    ("resolvent_coco", resolvent_coco),
    ("resolvent_averaged", resolvent_averaged),
    ("reflres_averaged", reflres_averaged),
    ("reflres_neg_averaged", reflres_neg_averaged),
    ("composition_neg_averaged", composition_neg_averaged),
    ("avg_negavg_contraction", avg_negavg_contraction),
    ("lipschitz_resolvent_ineq", lipschitz_resolvent_ineq),
    ("reflres_contraction_r2", reflres_contraction_r2),
    ("reflres_contraction_r3", reflres_contraction_r3),
    ("regime3_operator_props", regime3_operator_props),
];

fn stream_of(name: &str, mode: Mode) -> u64 {
    let idx = CHECKS.iter().position(|(n, _)| *n == name).unwrap_or(0) as u64;
    match mode {
        Mode::Hypothesis => idx,
        Mode::Control => 1000 + idx,
    }
}

/// `βI + T` is `1/(2β)`-cocoercive for β-Lipschitz `T`.
fn coco_vs_lipschitz(cfg: &SamplerConfig, mode: Mode) -> Result<Outcome> {
    sample(cfg, stream_of("coco_vs_lipschitz", mode), |s, _| {
        let beta = s.log_uniform(0.1, 10.0);
        let t = match mode {
            Mode::Hypothesis => s.nonexpansive() * beta,
            Mode::Control => Mat2::rotation(s.angle()) * (INFLATE * beta),
        };
        let shifted = Mat2::scalar(beta) + t;
        let (x, y) = s.pair();
        Ok(coco_excess(x - y, diff(&shifted, x, y), 2.0 * beta))
    })
}

/// For `b ∈ (0, 1)`, a `1/b`-cocoercive `R` makes `R + (1 - b)I` `b/2`-averaged.
fn coco_averaged(cfg: &SamplerConfig, mode: Mode) -> Result<Outcome> {
    sample(cfg, stream_of("coco_averaged", mode), |s, _| {
        let b = s.uniform(0.01, 0.99);
        let (r, b_cert) = match mode {
            Mode::Hypothesis => {
                let r = s.cocoercive(b);
                let b_cert = certify(&r).coco_beta.unwrap_or(b).min(b);
                (r, b_cert)
            }
            Mode::Control => {
                let n = Mat2::rotation(s.angle()) * INFLATE;
                ((Mat2::IDENTITY + n) * (0.5 * b), b)
            }
        };
        let t = r + Mat2::scalar(1.0 - b_cert);
        let (x, y) = s.pair();
        Ok(averaged_excess(x - y, diff(&t, x, y), 0.5 * b_cert))
    })
}

/// `(1 - α)I + αR` with nonexpansive `R` satisfies the averaged identity.
fn averaged_identity(cfg: &SamplerConfig, mode: Mode) -> Result<Outcome> {
    sample(cfg, stream_of("averaged_identity", mode), |s, _| {
        let alpha = s.uniform(0.05, 0.95);
        let r = match mode {
            Mode::Hypothesis => s.nonexpansive(),
            Mode::Control => Mat2::rotation(s.angle()) * INFLATE,
        };
        let t = Mat2::scalar(1.0 - alpha) + r * alpha;
        let (x, y) = s.pair();
        Ok(averaged_excess(x - y, diff(&t, x, y), alpha))
    })
}

/// `(θ - 1)I + θR` with nonexpansive `R` satisfies the negatively averaged
/// identity, including θ close to 1.
fn neg_averaged_identity(cfg: &SamplerConfig, mode: Mode) -> Result<Outcome> {
    sample(cfg, stream_of("neg_averaged_identity", mode), |s, _| {
        let theta = s.uniform(0.05, 0.999);
        let r = match mode {
            Mode::Hypothesis => s.nonexpansive(),
            Mode::Control => Mat2::rotation(s.angle()) * INFLATE,
        };
        let t = Mat2::scalar(theta - 1.0) + r * theta;
        let (x, y) = s.pair();
        Ok(neg_averaged_excess(x - y, diff(&t, x, y), theta))
    })
}

/// `(1 - α)I + αT` with δ-contractive `T` contracts by `|1 - α| + αδ` for
/// `α ∈ (0, 2/(1 + δ))`.
fn avg_contraction(cfg: &SamplerConfig, mode: Mode) -> Result<Outcome> {
    sample(cfg, stream_of("avg_contraction", mode), |s, _| {
        let (delta, alpha, t) = match mode {
            Mode::Hypothesis => {
                let delta = s.uniform(0.0, 0.95);
                let alpha = s.uniform(1e-3, 2.0 / (1.0 + delta));
                (delta, alpha, s.nonexpansive() * delta)
            }
            Mode::Control => {
                let delta = s.uniform(0.2, 0.95);
                let alpha = s.uniform(0.2, 1.0);
                (delta, alpha, Mat2::rotation(s.angle()) * (INFLATE * delta))
            }
        };
        let r = Mat2::scalar(1.0 - alpha) + t * alpha;
        let (x, y) = s.pair();
        Ok(contraction_excess(x - y, diff(&r, x, y), (1.0 - alpha).abs() + alpha * delta))
    })
}

/// Strongly monotone `A` paired with the modulus it is credited with.
fn strongly_monotone(s: &mut Sampler, mode: Mode) -> (Mat2, f64) {
    match mode {
        Mode::Hypothesis => {
            let a = s.monotone(0.05, 3.0, 3.0);
            let sigma = certify(&a).sigma;
            (a, sigma)
        }
        Mode::Control => {
            let sigma = s.uniform(0.05, 3.0);
            (Mat2::scalar(sigma), INFLATE * sigma)
        }
    }
}

/// `J_{γA}` is `(1 + γσ)`-cocoercive for σ-strongly monotone `A`.
fn resolvent_coco(cfg: &SamplerConfig, mode: Mode) -> Result<Outcome> {
    sample(cfg, stream_of("resolvent_coco", mode), |s, _| {
        let (a, sigma) = strongly_monotone(s, mode);
        let gamma = s.log_uniform(0.1, 10.0);
        let op = MonotoneOp::linear(a)?;
        let (x, y) = s.pair();
        let jd = op.resolvent(gamma, x)? - op.resolvent(gamma, y)?;
        Ok(coco_excess(x - y, jd, 1.0 / (1.0 + gamma * sigma)))
    })
}

/// Cocoercive `B` paired with the constant β it is credited with.
fn cocoercive(s: &mut Sampler, mode: Mode) -> (Mat2, f64) {
    let beta = s.log_uniform(0.1, 10.0);
    match mode {
        Mode::Hypothesis => {
            let b = s.cocoercive(beta);
            let cert = certify(&b).coco_beta.unwrap_or(beta).min(beta);
            (b, cert)
        }
        Mode::Control => (Mat2::scalar(beta), beta / INFLATE),
    }
}

/// `J_{γB}` is `γβ/(2(1 + γβ))`-averaged for `1/β`-cocoercive `B`.
fn resolvent_averaged(cfg: &SamplerConfig, mode: Mode) -> Result<Outcome> {
    sample(cfg, stream_of("resolvent_averaged", mode), |s, _| {
        let (b, beta) = cocoercive(s, mode);
        let gamma = s.log_uniform(0.1, 10.0);
        let op = MonotoneOp::linear(b)?;
        let (x, y) = s.pair();
        let jd = op.resolvent(gamma, x)? - op.resolvent(gamma, y)?;
        let gb = gamma * beta;
        Ok(averaged_excess(x - y, jd, gb / (2.0 * (1.0 + gb))))
    })
}

/// `R_{γB}` is `γβ/(1 + γβ)`-averaged for `1/β`-cocoercive `B`.
fn reflres_averaged(cfg: &SamplerConfig, mode: Mode) -> Result<Outcome> {
    sample(cfg, stream_of("reflres_averaged", mode), |s, _| {
        let (b, beta) = cocoercive(s, mode);
        let gamma = s.log_uniform(0.1, 10.0);
        let op = MonotoneOp::linear(b)?;
        let (x, y) = s.pair();
        let rd = op.reflected_resolvent(gamma, x)? - op.reflected_resolvent(gamma, y)?;
        let gb = gamma * beta;
        Ok(averaged_excess(x - y, rd, gb / (1.0 + gb)))
    })
}

/// `R_{γA}` is `1/(1 + γσ)`-negatively averaged for σ-strongly monotone `A`.
fn reflres_neg_averaged(cfg: &SamplerConfig, mode: Mode) -> Result<Outcome> {
    sample(cfg, stream_of("reflres_neg_averaged", mode), |s, _| {
        let (a, sigma) = strongly_monotone(s, mode);
        let gamma = s.log_uniform(0.1, 10.0);
        let op = MonotoneOp::linear(a)?;
        let (x, y) = s.pair();
        let rd = op.reflected_resolvent(gamma, x)? - op.reflected_resolvent(gamma, y)?;
        Ok(neg_averaged_excess(x - y, rd, 1.0 / (1.0 + gamma * sigma)))
    })
}

/// θ-negatively averaged after α-averaged is `κ/(κ + 1)`-negatively
/// averaged, `κ = θ/(1 - θ) + α/(1 - α)`.
fn composition_neg_averaged(cfg: &SamplerConfig, mode: Mode) -> Result<Outcome> {
    sample(cfg, stream_of("composition_neg_averaged", mode), |s, _| {
        let theta = s.uniform(0.05, 0.95);
        let alpha = s.uniform(0.05, 0.95);
        let (n1, n2) = match mode {
            Mode::Hypothesis => (s.nonexpansive(), s.nonexpansive()),
            Mode::Control => (
                Mat2::rotation(s.angle()) * INFLATE,
                Mat2::rotation(s.angle()) * INFLATE,
            ),
        };
        let t_alpha = Mat2::scalar(1.0 - alpha) + n1 * alpha;
        let t_theta = Mat2::scalar(theta - 1.0) + n2 * theta;
        let kappa = theta / (1.0 - theta) + alpha / (1.0 - alpha);
        let (x, y) = s.pair();
        let td = t_theta * diff(&t_alpha, x, y);
        Ok(neg_averaged_excess(x - y, td, kappa / (kappa + 1.0)))
    })
}

/// `(1 - α)I + αT` with θ-negatively averaged `T` contracts by
/// `|1 - 2α + αθ| + αθ`.
fn avg_negavg_contraction(cfg: &SamplerConfig, mode: Mode) -> Result<Outcome> {
    sample(cfg, stream_of("avg_negavg_contraction", mode), |s, _| {
        let theta = s.uniform(0.05, 0.95);
        let alpha = s.uniform(0.05, 0.95);
        let r = match mode {
            Mode::Hypothesis => s.nonexpansive(),
            Mode::Control => Mat2::rotation(s.angle()) * INFLATE,
        };
        let t = Mat2::scalar(theta - 1.0) + r * theta;
        let avg = Mat2::scalar(1.0 - alpha) + t * alpha;
        let factor = (1.0 - 2.0 * alpha + alpha * theta).abs() + alpha * theta;
        let (x, y) = s.pair();
        Ok(contraction_excess(x - y, diff(&avg, x, y), factor))
    })
}

/// For monotone β-Lipschitz `A`,
/// `2⟨J x - J y, x - y⟩ ≥ ‖x - y‖² + (1 - (γβ)²)‖J x - J y‖²` with `J = J_{γA}`.
fn lipschitz_resolvent_ineq(cfg: &SamplerConfig, mode: Mode) -> Result<Outcome> {
    sample(cfg, stream_of("lipschitz_resolvent_ineq", mode), |s, _| {
        let (a, beta) = match mode {
            Mode::Hypothesis => {
                let a = s.monotone(0.0, 3.0, 3.0);
                let beta = certify(&a).lipschitz;
                (a, beta)
            }
            Mode::Control => {
                let beta = s.log_uniform(0.1, 10.0);
                let psi = s.uniform(0.0, FRAC_PI_2);
                (Mat2::rotation(psi) * beta, beta / INFLATE)
            }
        };
        let gamma = s.log_uniform(0.1, 10.0) / beta;
        let op = MonotoneOp::linear(a)?;
        let (x, y) = s.pair();
        let d = x - y;
        let jd = op.resolvent(gamma, x)? - op.resolvent(gamma, y)?;
        let gb = gamma * beta;
        Ok((d.norm_sq() + (1.0 - gb * gb) * jd.norm_sq() - 2.0 * jd.dot(d)) / d.norm_sq())
    })
}

/// `R_{γA}` is δ-contractive for σ-strongly monotone β-Lipschitz `A`, on
/// both sides of `γβ = 1`.
fn reflres_contraction_r2(cfg: &SamplerConfig, mode: Mode) -> Result<Outcome> {
    sample(cfg, stream_of("reflres_contraction_r2", mode), |s, k| {
        let (a, sigma, beta) = match mode {
            Mode::Hypothesis => {
                let a = s.monotone(0.05, 3.0, 3.0);
                let cert = certify(&a);
                (a, cert.sigma, cert.lipschitz)
            }
            Mode::Control => {
                let d = s.log_uniform(0.1, 10.0);
                let psi = s.uniform(0.5, 1.4);
                (Mat2::rotation(psi) * d, INFLATE * d * psi.cos(), d)
            }
        };
        let p = RegimeParams::new(Regime::StrongMonoLipschitz, sigma, beta)?;
        let gamma = s.gamma_around(beta, k);
        let delta = rates::delta_regime2(&p, gamma)?;
        let op = MonotoneOp::linear(a)?;
        let (x, y) = s.pair();
        let rd = op.reflected_resolvent(gamma, x)? - op.reflected_resolvent(gamma, y)?;
        Ok(contraction_excess(x - y, rd, delta))
    })
}

/// `R_{γA}` is δ-contractive for σ-strongly monotone `1/β`-cocoercive `A`.
fn reflres_contraction_r3(cfg: &SamplerConfig, mode: Mode) -> Result<Outcome> {
    sample(cfg, stream_of("reflres_contraction_r3", mode), |s, k| {
        let (a, sigma, beta) = match mode {
            Mode::Hypothesis => {
                let m = s.monotone(0.05, 3.0, 3.0);
                let a = m.inverse().ok_or(Error::SingularResolvent)?;
                let cert = certify(&a);
                let beta = cert.coco_beta.ok_or(Error::NotFinite { what: "certificate" })?;
                (a, cert.sigma, beta.max(cert.sigma))
            }
            Mode::Control => {
                let spec = RotationSpec::with_c(
                    s.log_uniform(0.5, 2.0),
                    s.uniform(0.8, 1.4),
                    s.uniform(2.0, 5.0),
                )?;
                let p = spec.regime3_params()?;
                (spec.regime3_matrix()?, INFLATE * p.sigma(), p.beta())
            }
        };
        let p = RegimeParams::new(Regime::StrongMonoCocoercive, sigma, beta)?;
        let gamma = s.gamma_around((sigma * beta).sqrt(), k);
        let delta = rates::delta_regime3(&p, gamma)?;
        let op = MonotoneOp::linear(a)?;
        let (x, y) = s.pair();
        let rd = op.reflected_resolvent(gamma, x)? - op.reflected_resolvent(gamma, y)?;
        Ok(contraction_excess(x - y, rd, delta))
    })
}

/// `A = d(c·Rot(ψ) + I)⁻¹` is strongly monotone and cocoercive with the
/// closed-form σ and β.
fn regime3_operator_props(cfg: &SamplerConfig, mode: Mode) -> Result<Outcome> {
    sample(cfg, stream_of("regime3_operator_props", mode), |s, _| {
        let spec = RotationSpec::with_c(
            s.log_uniform(0.1, 10.0),
            s.uniform(0.0, FRAC_PI_2),
            s.log_uniform(1.01, 10.0),
        )?;
        let p = spec.regime3_params()?;
        let (sigma, beta) = match mode {
            Mode::Hypothesis => (p.sigma(), p.beta()),
            Mode::Control => (INFLATE * p.sigma(), p.beta() / INFLATE),
        };
        let a = spec.regime3_matrix()?;
        let (x, y) = s.pair();
        let (d, ad) = (x - y, diff(&a, x, y));
        Ok(strong_mono_excess(d, ad, sigma).max(coco_excess(d, ad, beta)))
    })
}

fn run_one(cfg: &SamplerConfig, name: &'static str, f: CheckFn) -> Result<CheckResult> {
    let out = f(cfg, Mode::Hypothesis)?;
    Ok(CheckResult {
        name,
        samples: out.samples,
        max_violation: out.max_violation,
        pass: out.max_violation <= SLACK,
    })
}

fn by_name(name: &str) -> CheckFn {
    CHECKS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, f)| *f)
        .expect("check table covers every public check")
}

macro_rules! public_check {
    ($(#[$doc:meta])* $fn_name:ident, $name:literal) => {
        $(#[$doc])*
        pub fn $fn_name(cfg: &SamplerConfig) -> Result<CheckResult> {
            run_one(cfg, $name, by_name($name))
        }
    };
}

public_check!(
    /// `βI + T` is `1/(2β)`-cocoercive for β-Lipschitz `T`.
    check_coco_vs_lipschitz, "coco_vs_lipschitz");
public_check!(
    /// `R + (1 - β)I` is `β/2`-averaged for `1/β`-cocoercive `R`, `β ∈ (0, 1)`.
    check_coco_averaged, "coco_averaged");
public_check!(
    /// The averaged-operator identity for `(1 - α)I + αR`.
    check_averaged_identity, "averaged_identity");
public_check!(
    /// The negatively averaged identity for `(θ - 1)I + θR`.
    check_neg_averaged_identity, "neg_averaged_identity");
public_check!(
    /// Contraction factor `|1 - α| + αδ` of a relaxed δ-contraction.
    check_avg_contraction, "avg_contraction");
public_check!(
    /// `(1 + γσ)`-cocoercivity of the resolvent of a σ-strongly monotone map.
    check_resolvent_coco, "resolvent_coco");
public_check!(
    /// `γβ/(2(1 + γβ))`-averagedness of the resolvent of a cocoercive map.
    check_resolvent_averaged, "resolvent_averaged");
public_check!(
    /// `γβ/(1 + γβ)`-averagedness of the reflected resolvent of a cocoercive map.
    check_reflres_averaged, "reflres_averaged");
public_check!(
    /// `1/(1 + γσ)`-negative averagedness of the reflected resolvent of a
    /// strongly monotone map.
    check_reflres_neg_averaged, "reflres_neg_averaged");
public_check!(
    /// Negative averagedness `κ/(κ + 1)` of a negatively averaged map after
    /// an averaged one.
    check_composition_neg_averaged, "composition_neg_averaged");
public_check!(
    /// Contraction factor `|1 - 2α + αθ| + αθ` of a relaxed negatively
    /// averaged map.
    check_avg_negavg_contraction, "avg_negavg_contraction");
public_check!(
    /// The resolvent inequality of a monotone Lipschitz map.
    check_lipschitz_resolvent_ineq, "lipschitz_resolvent_ineq");
public_check!(
    /// δ-contractivity of `R_{γA}` for strongly monotone Lipschitz `A`.
    check_reflres_contraction_r2, "reflres_contraction_r2");
public_check!(
    /// δ-contractivity of `R_{γA}` for strongly monotone cocoercive `A`.
    check_reflres_contraction_r3, "reflres_contraction_r3");
public_check!(
    /// Strong monotonicity and cocoercivity constants of the rotation-based
    /// cocoercive instance.
    check_regime3_operator_props, "regime3_operator_props");

/// Every check, in a fixed order.
pub fn run_all(cfg: &SamplerConfig) -> Result<Vec<CheckResult>> {
    CHECKS
        .iter()
        .map(|(name, f)| run_one(cfg, name, *f))
        .collect()
}

/// Every check fed operators that break its hypothesis by 10%.
pub fn run_negative_controls(cfg: &SamplerConfig) -> Result<Vec<ControlResult>> {
    CHECKS
        .iter()
        .map(|(name, f)| {
            let out = f(cfg, Mode::Control)?;
            Ok(ControlResult {
                name,
                samples: out.samples,
                max_violation: out.max_violation,
                detected: out.max_violation > CONTROL_MIN_VIOLATION,
            })
        })
        .collect()
}
