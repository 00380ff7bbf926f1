//! Closed-form reduced linear entropy of the coupled two-mode model, used
//! as an independent oracle for the numerical propagators: the rotating
//! mode amplitudes, the double Poisson-weighted entropy sum, and the
//! purity-revival time.

use num_complex::Complex64 as C64;

use crate::error::{CoreError, Result};

/// Rotated mode amplitudes at time `t`.
#[derive(Debug, Clone, Copy)]
pub struct BetaPair {
    pub beta1: C64,
    pub beta2: C64,
}

impl BetaPair {
    /// `|b1|^2 + |b2|^2`, conserved by the rotation.
    pub fn total_action(&self) -> f64 {
        self.beta1.norm_sqr() + self.beta2.norm_sqr()
    }
}

/// `b_{1,2}(t) = (a_{1,2} cos(l t) - i a_{2,1} sin(l t)) e^{-i w t}`.
pub fn beta(t: f64, alphas: (C64, C64), omega: f64, lambda: f64) -> BetaPair {
    let rot = C64::from_polar(1.0, -omega * t);
    let (c, s) = ((lambda * t).cos(), (lambda * t).sin());
    let i = C64::new(0.0, 1.0);
    BetaPair {
        beta1: (alphas.0 * c - i * alphas.1 * s) * rot,
        beta2: (alphas.1 * c - i * alphas.0 * s) * rot,
    }
}

/// Default truncation tolerance of the entropy sum.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Closed-form reduced linear entropy at time `t`:
///
/// `S = 1 - sum_{n,m} w_n w_m exp(-4 |b2|^2 sin^2(hbar g t (n - m)))`
///
/// with Poisson weights `w_n = e^-mu mu^n / n!` at `mu = |b1(t)|^2`. The
/// sum is truncated where the neglected Poisson weight falls below `tol`
/// and the retained weights are renormalized, so the exact zeros at `t = 0`,
/// at `g = 0`, and at full revivals survive truncation. Weights accumulate
/// in log space.
pub fn analytic_rle(
    t: f64,
    alphas: (C64, C64),
    omega: f64,
    lambda: f64,
    g: f64,
    hbar: f64,
    tol: f64,
) -> f64 {
    assert!(tol > 0.0, "truncation tolerance must be positive");
    let pair = beta(t, alphas, omega, lambda);
    let mu = pair.beta1.norm_sqr();
    let gamma = 4.0 * pair.beta2.norm_sqr();
    let phase = hbar * g * t;

    if mu == 0.0 {
        return 0.0;
    }

    // Truncation window around the Poisson bulk, extended until the tail
    // weight estimate is below tol.
    let mut n_hi = (mu + 8.0 * mu.sqrt()).ceil() as usize + 8;
    let ln_weights = loop {
        let w = log_poisson_weights(mu, n_hi);
        let tail = 1.0 - w.iter().map(|lw| lw.exp()).sum::<f64>();
        if tail < tol || n_hi > 100_000 {
            break w;
        }
        n_hi = n_hi * 3 / 2 + 8;
    };

    // Renormalize retained weights so that sum w_n = 1 exactly.
    let total: f64 = ln_weights.iter().map(|lw| lw.exp()).sum();
    let ln_total = total.ln();

    let n_terms = ln_weights.len();
    let mut sum = 0.0;
    // diagonal n = m: factor exp(0) = 1
    for lw in &ln_weights {
        sum += (2.0 * (lw - ln_total)).exp();
    }
    // off-diagonal, using symmetry in n <-> m
    for d in 1..n_terms {
        let s = (phase * d as f64).sin();
        let damping = (-gamma * s * s).exp();
        let mut pair_sum = 0.0;
        for n in d..n_terms {
            pair_sum += (ln_weights[n] + ln_weights[n - d] - 2.0 * ln_total).exp();
        }
        sum += 2.0 * damping * pair_sum;
    }
    1.0 - sum
}

fn log_poisson_weights(mu: f64, n_hi: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_hi + 1);
    let ln_mu = mu.ln();
    let mut ln_fact = 0.0;
    for n in 0..=n_hi {
        if n > 0 {
            ln_fact += (n as f64).ln();
        }
        out.push(-mu + n as f64 * ln_mu - ln_fact);
    }
    out
}

/// Instant `t = pi / (g hbar)` at which the state returns to a coherent
/// product and the entropy vanishes.
pub fn revival_time(g: f64, hbar: f64) -> Result<f64> {
    if g * hbar <= 0.0 {
        return Err(CoreError::Undefined(
            "revival time needs g * hbar > 0".into(),
        ));
    }
    Ok(std::f64::consts::PI / (g * hbar))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn alphas_from_points(q: [f64; 4], hbar: f64) -> (C64, C64) {
        (
            C64::new(q[0], q[1]) / (2.0 * hbar).sqrt(),
            C64::new(q[2], q[3]) / (2.0 * hbar).sqrt(),
        )
    }

    #[test]
    fn beta_starts_at_alphas() {
        let alphas = (C64::new(0.7, 0.1), C64::new(-0.2, 0.5));
        let pair = beta(0.0, alphas, 1.0, 0.2);
        assert!((pair.beta1 - alphas.0).norm() < 1e-15);
        assert!((pair.beta2 - alphas.1).norm() < 1e-15);
    }

    #[test]
    fn beta_modulus_constant_without_exchange() {
        let alphas = (C64::new(0.7, 0.1), C64::new(-0.2, 0.5));
        for t in [0.3, 1.7, 9.2] {
            let pair = beta(t, alphas, 1.3, 0.0);
            assert_abs_diff_eq!(pair.beta1.norm(), alphas.0.norm(), epsilon = 1e-14);
        }
    }

    #[test]
    fn quarter_exchange_swaps_amplitudes() {
        let alphas = (C64::new(0.7, 0.1), C64::new(-0.2, 0.5));
        let lambda = 0.2;
        let t = std::f64::consts::FRAC_PI_2 / lambda;
        let pair = beta(t, alphas, 1.0, lambda);
        assert_abs_diff_eq!(pair.beta1.norm(), alphas.1.norm(), epsilon = 1e-12);
        assert_abs_diff_eq!(pair.beta2.norm(), alphas.0.norm(), epsilon = 1e-12);
    }

    #[test]
    fn rotation_preserves_total_action() {
        let alphas = (C64::new(1.0, -0.4), C64::new(0.3, 0.8));
        let total0 = alphas.0.norm_sqr() + alphas.1.norm_sqr();
        for t in [0.1, 2.0, 17.3] {
            let pair = beta(t, alphas, 0.7, 0.2);
            assert_abs_diff_eq!(pair.total_action(), total0, epsilon = 1e-12);
        }
    }

    #[test]
    fn entropy_zero_at_start() {
        let alphas = alphas_from_points([1.0, 1.0, 1.0, 1.0], 1.0);
        let s = analytic_rle(0.0, alphas, 1.0, 0.2, 0.1, 1.0, DEFAULT_TOL);
        assert!(s.abs() <= 1e-14);
    }

    #[test]
    fn entropy_vanishes_without_nonlinearity() {
        let alphas = alphas_from_points([1.0, 1.0, 1.0, 1.0], 1.0);
        for t in [0.5, 3.1, 12.0, 40.0] {
            let s = analytic_rle(t, alphas, 1.0, 0.2, 0.0, 1.0, DEFAULT_TOL);
            assert!(s.abs() <= 1e-12, "S = {s:e} at g = 0");
        }
    }

    #[test]
    fn purity_revives_at_pi_over_g_hbar() {
        let (g, hbar) = (0.1, 1.0);
        let alphas = alphas_from_points([1.0, 1.0, 1.0, 1.0], hbar);
        let t_rev = revival_time(g, hbar).unwrap();
        assert_abs_diff_eq!(t_rev, 10.0 * std::f64::consts::PI, epsilon = 1e-12);
        let s = analytic_rle(t_rev, alphas, 1.0, 0.2, g, hbar, DEFAULT_TOL);
        assert!(s.abs() <= 1e-12, "revival entropy {s:e}");
        // and at integer multiples
        let s2 = analytic_rle(2.0 * t_rev, alphas, 1.0, 0.2, g, hbar, DEFAULT_TOL);
        assert!(s2.abs() <= 1e-12);
    }

    #[test]
    fn revival_scales_inversely_with_g_and_hbar() {
        let t1 = revival_time(0.1, 0.1).unwrap();
        assert_abs_diff_eq!(t1, 100.0 * std::f64::consts::PI, epsilon = 1e-10);
        let t2 = revival_time(0.2, 1.0).unwrap();
        let t3 = revival_time(0.1, 1.0).unwrap();
        assert_abs_diff_eq!(t2 * 2.0, t3, epsilon = 1e-12);
        assert!(revival_time(0.0, 1.0).is_err());
    }

    #[test]
    fn entropy_positive_and_below_one_midway() {
        let alphas = alphas_from_points([1.0, 1.0, 1.0, 1.0], 1.0);
        let s = analytic_rle(5.0, alphas, 1.0, 0.2, 0.1, 1.0, DEFAULT_TOL);
        assert!(s > 0.0 && s < 1.0, "S = {s}");
    }

    #[test]
    fn truncation_is_certified_by_doubling() {
        let hbar = 0.1; // mean occupation 10 per mode
        let alphas = alphas_from_points([1.0, 1.0, 1.0, 1.0], hbar);
        let tol = 1e-12;
        let s1 = analytic_rle(7.3, alphas, 1.0, 0.2, 0.1, hbar, tol);
        let s2 = analytic_rle(7.3, alphas, 1.0, 0.2, 0.1, hbar, tol / 2.0);
        assert!(
            (s1 - s2).abs() < 10.0 * tol,
            "truncation drift {:e}",
            (s1 - s2).abs()
        );
    }
}
