//! Instantaneous SNR under SαS noise and Nakagami-m fading.
//!
//! With γ = (P_c|h|π / (2λ_nΓ(1−1/α)))^α and γ̄ = E[γ], the change of variable
//! |h|^α = γξ/γ̄ (ξ = E|h|^α) carries the Gamma law of |h|² onto γ.

use crate::error::{invalid, Result};
use crate::fading::{alpha_moment, NakagamiParams};
use crate::special::{gamma, gamma_p, gamma_p_inv, gamma_q, ln_gamma};
use std::f64::consts::PI;

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 1.0 && alpha <= 2.0) {
        return Err(invalid("alpha", format!("{alpha} not in (1, 2]")));
    }
    Ok(())
}

/// Law of the instantaneous SNR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrDistribution {
    alpha: f64,
    m: f64,
    omega: f64,
    xi: f64,
    gamma_bar: f64,
}

impl SnrDistribution {
    /// Unit mean-square fading (Ω = 1) with average SNR `gamma_bar` ≥ 0.
    pub fn new(alpha: f64, m: f64, gamma_bar: f64) -> Result<Self> {
        Self::with_omega(alpha, m, 1.0, gamma_bar)
    }

    /// Unit mean-square fading with γ̄ derived from the amplitude constraint and noise scale.
    pub fn from_physical(alpha: f64, m: f64, p_c: f64, lambda_n: f64) -> Result<Self> {
        let fading = NakagamiParams::new(m, 1.0)?;
        let xi = alpha_moment(&fading, alpha)?;
        Self::new(alpha, m, gamma_bar_from(p_c, lambda_n, alpha, xi)?)
    }

    /// Free-Ω variant, for diagnostics of the density normalization only.
    pub fn with_omega(alpha: f64, m: f64, omega: f64, gamma_bar: f64) -> Result<Self> {
        check_alpha(alpha)?;
        let fading = NakagamiParams::new(m, omega)?;
        if !(gamma_bar >= 0.0 && gamma_bar.is_finite()) {
            return Err(invalid("gamma_bar", format!("{gamma_bar} must be finite and non-negative")));
        }
        let xi = alpha_moment(&fading, alpha)?;
        Ok(Self { alpha, m, omega, xi, gamma_bar })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn m(&self) -> f64 {
        self.m
    }
    pub fn omega(&self) -> f64 {
        self.omega
    }
    pub fn xi(&self) -> f64 {
        self.xi
    }
    pub fn gamma_bar(&self) -> f64 {
        self.gamma_bar
    }

    pub fn fading(&self) -> NakagamiParams {
        NakagamiParams::new(self.m, self.omega).expect("validated")
    }

    /// Argument of the incomplete gamma: (m/Ω)(γξ/γ̄)^{2/α}.
    pub fn gamma_argument(&self, gamma: f64) -> f64 {
        (self.m / self.omega) * (gamma * self.xi / self.gamma_bar).powf(2.0 / self.alpha)
    }

    /// SNR seen at fading amplitude `h`: γ̄|h|^α/ξ.
    pub fn snr_at(&self, h: f64) -> f64 {
        self.gamma_bar * h.powf(self.alpha) / self.xi
    }

    /// Amplitude producing SNR `gamma`: (γξ/γ̄)^{1/α}.
    pub fn amplitude_at(&self, gamma: f64) -> f64 {
        (gamma * self.xi / self.gamma_bar).powf(1.0 / self.alpha)
    }

    /// γ with P(SNR ≤ γ) = p.
    pub fn quantile(&self, p: f64) -> f64 {
        let x = gamma_p_inv(self.m, p);
        self.gamma_bar / self.xi * (x * self.omega / self.m).powf(self.alpha / 2.0)
    }
}

/// γ = (P_c|h|π / (2λ_nΓ(1−1/α)))^α.
pub fn instantaneous_snr(p_c: f64, h_abs: f64, alpha: f64, lambda_n: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !(p_c >= 0.0) {
        return Err(invalid("p_c", format!("{p_c} must be non-negative")));
    }
    if !(h_abs >= 0.0) {
        return Err(invalid("h_abs", format!("{h_abs} must be non-negative")));
    }
    if !(lambda_n > 0.0) {
        return Err(invalid("lambda_n", format!("{lambda_n} must be positive")));
    }
    Ok((p_c * h_abs * PI / (2.0 * lambda_n * gamma(1.0 - 1.0 / alpha))).powf(alpha))
}

/// γ̄ = ξ (P_cπ / (2λ_nΓ(1−1/α)))^α.
pub fn gamma_bar_from(p_c: f64, lambda_n: f64, alpha: f64, xi: f64) -> Result<f64> {
    if !(xi > 0.0) {
        return Err(invalid("xi", format!("{xi} must be positive")));
    }
    Ok(xi * instantaneous_snr(p_c, 1.0, alpha, lambda_n)?)
}

/// Density of the SNR at γ > 0:
/// 2m^m / (ΩαΓ(m)γ) · exp(−(m/Ω)(γξ/γ̄)^{2/α}) · (γξ/γ̄)^{2m/α}.
pub fn snr_pdf(dist: &SnrDistribution, gamma: f64) -> Result<f64> {
    if !(gamma > 0.0) {
        return Err(invalid("gamma", format!("{gamma} must be positive")));
    }
    if dist.gamma_bar == 0.0 {
        return Err(invalid("gamma_bar", "the SNR law is degenerate at 0"));
    }
    let SnrDistribution { alpha, m, omega, xi, gamma_bar } = *dist;
    let lr = (gamma * xi / gamma_bar).ln();
    let ln = 2f64.ln() + m * m.ln() - omega.ln() - alpha.ln() - ln_gamma(m) - gamma.ln()
        - (m / omega) * (2.0 * lr / alpha).exp()
        + 2.0 * m / alpha * lr;
    Ok(ln.exp())
}

/// P(SNR ≤ γ) = P(m, (m/Ω)(γξ/γ̄)^{2/α}).
pub fn snr_cdf(dist: &SnrDistribution, gamma: f64) -> f64 {
    if gamma <= 0.0 {
        return 0.0;
    }
    if dist.gamma_bar == 0.0 {
        return 1.0;
    }
    gamma_p(dist.m, dist.gamma_argument(gamma))
}

/// P(SNR > γ), accurate when the distribution function is close to 1.
pub fn snr_sf(dist: &SnrDistribution, gamma: f64) -> f64 {
    if gamma <= 0.0 {
        return 1.0;
    }
    if dist.gamma_bar == 0.0 {
        return 0.0;
    }
    gamma_q(dist.m, dist.gamma_argument(gamma))
}
