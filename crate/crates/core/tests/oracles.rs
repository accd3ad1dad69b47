//! Brute-force oracles for the closed forms: grid searches over (γ, α),
//! numeric Legendre transforms and finite differences.

use drsplit::operators::{moreau_prox, shifted_prox};
use drsplit::rates::{self, AlgoParams, Regime, RegimeParams};
use drsplit::{MonotoneOp, Vec2};

const GRID: usize = 200;

fn log_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(move |i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
}

/// Smallest rate bound over a log-γ × linear-α grid spanning four decades
/// around `gamma_mid`. Returns the minimum and its (γ, α).
fn grid_minimum(p: &RegimeParams, gamma_mid: f64) -> (f64, f64, f64) {
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for gamma in log_grid(gamma_mid / 100.0, gamma_mid * 100.0, GRID) {
        let upper = match p.regime() {
            Regime::SplitStrongCoco => 1.0,
            _ => 2.0 / (1.0 + rates::delta(p, gamma).unwrap()),
        };
        for j in 0..GRID {
            let alpha = upper * (j as f64 + 0.5) / GRID as f64;
            let a = AlgoParams::new(gamma, alpha).unwrap();
            let r = rates::rate(p, &a).unwrap().rate;
            if r < best.0 {
                best = (r, gamma, alpha);
            }
        }
    }
    best
}

#[test]
fn closed_form_optimum_beats_grid_in_every_regime() {
    for regime in Regime::ALL {
        for ratio in [1.0, 2.0, 10.0] {
            let sigma = 0.7;
            let p = RegimeParams::new(regime, sigma, ratio * sigma).unwrap();
            let opt = rates::optimal(&p).unwrap();
            let (grid_min, _, _) = grid_minimum(&p, opt.gamma_star);
            assert!(
                opt.rate_star <= grid_min + 1e-9,
                "{regime:?} x={ratio}: closed form {} vs grid {}",
                opt.rate_star,
                grid_min
            );
            // The grid is fine enough to land close to the optimum.
            assert!(grid_min - opt.rate_star < 2e-2, "{regime:?} x={ratio}");
            // And the closed form is attained by its own parameters.
            if opt.alpha_star < 1.0 || regime != Regime::SplitStrongCoco {
                let a = AlgoParams::new(opt.gamma_star, opt.alpha_star).unwrap();
                let r = rates::rate(&p, &a).unwrap().rate;
                assert!((r - opt.rate_star).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn regime2_grid_over_stated_box() {
    // γ ∈ [0.01/β, 10/β], α ∈ (0, 2).
    let p = RegimeParams::new(Regime::StrongMonoLipschitz, 1.0, 10.0).unwrap();
    let opt = rates::optimal_regime2(&p).unwrap();
    let mut best = f64::INFINITY;
    for gamma in log_grid(0.01 / p.beta(), 10.0 / p.beta(), GRID) {
        for j in 0..GRID {
            let alpha = 2.0 * (j as f64 + 0.5) / GRID as f64;
            if let Ok(b) = rates::rate_regime2(&p, &AlgoParams::new(gamma, alpha).unwrap()) {
                best = best.min(b.rate);
            }
        }
    }
    assert!(opt.rate_star <= best + 1e-9);
    assert!(best - opt.rate_star < 1e-2);
}

#[test]
fn regime1_rate_equals_one_minus_two_alpha_above_threshold() {
    for (sigma, beta) in [(1.0, 1.0), (0.2, 3.0), (2.0, 0.5)] {
        let p = RegimeParams::new(Regime::SplitStrongCoco, sigma, beta).unwrap();
        for gamma in log_grid(0.01, 100.0, 50) {
            let c = rates::alpha_threshold_c(&p, gamma).unwrap();
            let theta = rates::theta_regime1(&p, gamma).unwrap();
            assert!((c - 1.0 / (2.0 - theta)).abs() < 1e-14);
            assert!(c > 0.5 && c < 1.0);
            for j in 0..20 {
                let alpha = c + (1.0 - c) * j as f64 / 20.0;
                let r = rates::rate_regime1(&p, &AlgoParams::new(gamma, alpha).unwrap()).unwrap();
                assert!((r.rate - (1.0 - 2.0 * alpha).abs()).abs() < 1e-14);
            }
        }
    }
}

#[test]
fn delta_strictly_decreasing_in_sigma() {
    let h = 1e-6;
    for regime in [Regime::StrongMonoLipschitz, Regime::StrongMonoCocoercive] {
        for beta in [0.5, 1.0, 4.0] {
            for gamma in log_grid(0.05, 20.0, 30) {
                for i in 1..40 {
                    let sigma = beta * i as f64 / 41.0;
                    let lo = RegimeParams::new(regime, sigma, beta).unwrap();
                    let hi = RegimeParams::new(regime, sigma + h, beta).unwrap();
                    let d_lo = rates::delta(&lo, gamma).unwrap();
                    let d_hi = rates::delta(&hi, gamma).unwrap();
                    assert!(d_hi < d_lo, "{regime:?} β={beta} γ={gamma} σ={sigma}");
                }
            }
        }
    }
}

#[test]
fn optimal_rate_equals_delta_at_optimal_gamma() {
    for ratio in [1.0, 1.5, 2.0, 10.0, 123.0] {
        let p2 = RegimeParams::new(Regime::StrongMonoLipschitz, 0.3, 0.3 * ratio).unwrap();
        let o2 = rates::optimal_regime2(&p2).unwrap();
        assert_eq!(rates::delta_regime2(&p2, o2.gamma_star).unwrap(), o2.rate_star);
        assert!((o2.rate_star - ((ratio - 1.0) / (ratio + 1.0)).sqrt()).abs() < 1e-15);

        let p3 = RegimeParams::new(Regime::StrongMonoCocoercive, 0.3, 0.3 * ratio).unwrap();
        let o3 = rates::optimal_regime3(&p3).unwrap();
        assert_eq!(rates::delta_regime3(&p3, o3.gamma_star).unwrap(), o3.rate_star);
        let r = ratio.sqrt();
        assert!((o3.rate_star - ((r - 1.0) / (r + 1.0)).sqrt()).abs() < 1e-15);
    }
}

/// `sup_x (x·y - f(x))` of a 1-D function over a grid.
fn legendre_1d(f: impl Fn(f64) -> f64, y: f64, xs: &[f64]) -> f64 {
    xs.iter().map(|&x| x * y - f(x)).fold(f64::NEG_INFINITY, f64::max)
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// `argmin_u g(u) + (u - v)²/(2γ)` over a grid.
fn grid_prox(g: impl Fn(f64) -> f64, v: f64, gamma: f64, us: &[f64]) -> f64 {
    us.iter()
        .copied()
        .min_by(|a, b| {
            let fa = g(*a) + (a - v).powi(2) / (2.0 * gamma);
            let fb = g(*b) + (b - v).powi(2) / (2.0 * gamma);
            fa.total_cmp(&fb)
        })
        .unwrap()
}

#[test]
fn moreau_prox_matches_numeric_conjugate() {
    // f(x) = β/2·x₁², so f* separates into a conjugate in y₁ and
    // sup over x₂ of x₂y₂, which over [-L, L] is L|y₂|.
    let xs = linspace(-40.0, 40.0, 1601);
    let us = linspace(-8.0, 8.0, 1601);
    let step = us[1] - us[0];
    let big_l = 40.0;
    for (beta, gamma, v) in [
        (1.0, 1.0, Vec2::new(2.0, 4.0)),
        (3.0, 0.5, Vec2::new(-1.5, 0.7)),
        (0.5, 2.0, Vec2::new(4.0, -3.0)),
    ] {
        let f = MonotoneOp::separable_quadratic(beta).unwrap();
        let p = moreau_prox(&f, gamma, v).unwrap();
        let conj1 = |y: f64| legendre_1d(|x| 0.5 * beta * x * x, y, &xs);
        let u1 = grid_prox(conj1, v.x1, gamma, &us);
        let u2 = grid_prox(|y: f64| big_l * y.abs(), v.x2, gamma, &us);
        assert!((p.x1 - u1).abs() <= step, "β={beta}: {} vs {u1}", p.x1);
        assert!((p.x2 - u2).abs() <= step, "β={beta}: {} vs {u2}", p.x2);
        assert_eq!(p.x2, 0.0);
    }
}

#[test]
fn shifted_prox_matches_grid_minimiser() {
    let us = linspace(-10.0, 10.0, 20001);
    let step = us[1] - us[0];
    for (beta, sigma, gamma, z) in [
        (2.0, 0.5, 0.5, Vec2::new(3.0, -1.0)),
        (1.0, -0.3, 1.5, Vec2::new(-2.0, 2.5)),
        (4.0, 0.2, 1.0, Vec2::new(0.7, 0.4)),
    ] {
        let p = shifted_prox(beta, sigma, gamma, z).unwrap();
        let u1 = grid_prox(|u| 0.5 * (beta - sigma) * u * u, z.x1, gamma, &us);
        let u2 = grid_prox(|u| -0.5 * sigma * u * u, z.x2, gamma, &us);
        assert!((p.x1 - u1).abs() <= step);
        assert!((p.x2 - u2).abs() <= step);
    }
}

#[test]
fn comparison_orderings_on_fine_grid() {
    for i in 0..=990 {
        let x = 1.0 + i as f64 * 0.1;
        let b = rates::comparison_bounds(x).unwrap();
        assert!(b.thm_regime2 <= b.improved_lm + 1e-15 && b.improved_lm <= b.lions_mercier + 1e-15);
        assert!(b.subdiff <= b.thm_regime3 + 1e-15 && b.thm_regime3 <= b.thm_regime2 + 1e-15);
        let p = RegimeParams::new(Regime::SplitStrongCoco, 1.0, x).unwrap();
        let shifted = rates::shifted_regime1_rate(&p).unwrap();
        assert!(shifted <= rates::optimal_regime1(&p).unwrap().rate_star + 1e-12);
    }
}
