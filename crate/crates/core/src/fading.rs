//! Nakagami-m fading amplitudes.

use crate::error::{invalid, Result};
use crate::rng;
use crate::special::ln_gamma;
use rand::Rng;
use rand_distr::{Distribution, Gamma};

/// Nakagami-m law with shape `m` and mean-square amplitude `omega`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NakagamiParams {
    m: f64,
    omega: f64,
}

impl NakagamiParams {
    pub fn new(m: f64, omega: f64) -> Result<Self> {
        if !(m >= 0.5 && m.is_finite()) {
            return Err(invalid("m", format!("{m} must be at least 0.5")));
        }
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(invalid("omega", format!("{omega} must be positive")));
        }
        Ok(Self { m, omega })
    }

    pub fn m(&self) -> f64 {
        self.m
    }
    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Law of |h|²: Gamma with shape m and scale Ω/m.
    pub fn power_law(&self) -> Gamma<f64> {
        Gamma::new(self.m, self.omega / self.m).expect("validated shape and scale")
    }
}

/// Density 2 m^m x^{2m−1} e^{−m x²/Ω} / (Γ(m) Ω^m) at x ≥ 0.
pub fn nakagami_pdf(params: &NakagamiParams, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(invalid("x", format!("{x} must be non-negative")));
    }
    let NakagamiParams { m, omega } = *params;
    if x == 0.0 {
        return Ok(if m == 0.5 { (2.0 / (std::f64::consts::PI * omega)).sqrt() } else { 0.0 });
    }
    let ln = 2f64.ln() + m * (m / omega).ln() + (2.0 * m - 1.0) * x.ln() - m * x * x / omega - ln_gamma(m);
    Ok(ln.exp())
}

/// One amplitude draw.
pub fn draw_h<R: Rng + ?Sized>(law: &Gamma<f64>, rng: &mut R) -> f64 {
    law.sample(rng).sqrt()
}

/// `n` amplitudes, deterministic in `seed`.
pub fn sample_h(params: &NakagamiParams, seed: u64, n: usize) -> Vec<f64> {
    let law = params.power_law();
    let mut rng = rng::seeded(seed);
    (0..n).map(|_| draw_h(&law, &mut rng)).collect()
}

/// ξ = E|h|^α = Γ(m + α/2)/Γ(m) · (Ω/m)^{α/2}.
pub fn alpha_moment(params: &NakagamiParams, alpha: f64) -> Result<f64> {
    if !(alpha > 1.0 && alpha <= 2.0) {
        return Err(invalid("alpha", format!("{alpha} not in (1, 2]")));
    }
    let NakagamiParams { m, omega } = *params;
    if alpha == 2.0 {
        return Ok(omega);
    }
    Ok((ln_gamma(m + alpha / 2.0) - ln_gamma(m) + 0.5 * alpha * (omega / m).ln()).exp())
}

/// Nakagami shape matching a Rician K-factor: (K+1)²/(2K+1).
pub fn rician_to_m(k: f64) -> Result<f64> {
    if !(k >= 0.0) {
        return Err(invalid("k", format!("{k} must be non-negative")));
    }
    if k.is_infinite() {
        return Ok(f64::INFINITY);
    }
    Ok((k + 1.0).powi(2) / (2.0 * k + 1.0))
}
