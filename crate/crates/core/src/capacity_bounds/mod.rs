//! Capacity lower bounds and the outage upper bound.

mod meijer;

pub use meijer::{meijer_g, meijer_g_with_limit, MeijerGSpec, DEFAULT_ORDER_LIMIT};

use crate::error::{invalid, Error, Result};
use crate::quad::integrate;
use crate::snr_model::{snr_pdf, SnrDistribution};
use crate::special::{gamma_p, gamma_q, ln_gamma};
use std::f64::consts::{LN_2, PI};

/// (1/α) log₂(1 + ratio^α) for ratio = P_c / E|N|.
pub fn capacity_lb(ratio: f64, alpha: f64) -> Result<f64> {
    if !(alpha > 1.0 && alpha <= 2.0) {
        return Err(invalid("alpha", format!("{alpha} not in (1, 2]")));
    }
    if !(ratio >= 0.0) {
        return Err(invalid("ratio", format!("{ratio} must be non-negative")));
    }
    Ok(ratio.powf(alpha).ln_1p() / (alpha * LN_2))
}

const LOWER_TAIL: f64 = 1e-16;
const UPPER_TAIL: f64 = 1e-22;

/// (1/α) E[log₂(1 + γ)] by adaptive quadrature over s = ln γ.
///
/// The range is cut where the SNR law has less than 1e−16 mass below and
/// 1e−22 above; the integral is resolved to 1e−10 absolute.
pub fn ergodic_capacity_lb_quadrature(dist: &SnrDistribution) -> Result<f64> {
    if dist.gamma_bar() == 0.0 {
        return Ok(0.0);
    }
    let m = dist.m();
    let lo = dist.quantile(LOWER_TAIL).max(f64::MIN_POSITIVE);
    let mut x_hi = m.max(1.0);
    while gamma_q(m, x_hi) > UPPER_TAIL {
        x_hi *= 1.5;
    }
    let hi = dist.gamma_bar() / dist.xi() * (x_hi * dist.omega() / m).powf(dist.alpha() / 2.0);
    let (s_lo, s_hi) = (lo.ln(), hi.ln());
    let panels = 24;
    let breaks: Vec<f64> = (0..=panels).map(|i| s_lo + (s_hi - s_lo) * i as f64 / panels as f64).collect();
    let f = |s: f64| {
        let g = s.exp();
        g.ln_1p() * snr_pdf(dist, g).unwrap_or(0.0) * g
    };
    let est = integrate(f, &breaks, 1e-10 * LN_2, 1e-12, 20_000);
    let scale = 1.0 / (dist.alpha() * LN_2);
    if !est.converged {
        return Err(Error::Quadrature { value: est.value * scale, estimate: est.error * scale });
    }
    Ok(est.value * scale)
}

/// 2/α = l/k in lowest terms with k ≤ l < 2k, so α = 2k/l ∈ (1, 2].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalAlpha {
    l: u32,
    k: u32,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 { a } else { gcd(b, a % b) }
}

impl RationalAlpha {
    pub fn new(l: u32, k: u32) -> Result<Self> {
        if l == 0 || k == 0 {
            return Err(invalid("l/k", "must be positive integers"));
        }
        if gcd(l, k) != 1 {
            return Err(invalid("l/k", format!("{l}/{k} is not in lowest terms")));
        }
        if !(k <= l && l < 2 * k) {
            return Err(invalid("l/k", format!("alpha = 2*{k}/{l} is outside (1, 2]")));
        }
        Ok(Self { l, k })
    }

    /// Smallest-denominator representation of 2/α with l ≤ `max_l`.
    pub fn from_alpha(alpha: f64, max_l: u32) -> Result<Self> {
        for l in 1..=max_l {
            let k = (alpha * l as f64 / 2.0).round() as u32;
            if k > 0 && (2.0 * k as f64 / l as f64 - alpha).abs() < 1e-12 {
                return Self::new(l, k);
            }
        }
        Err(invalid("alpha", format!("{alpha} is not 2k/l with l <= {max_l}")))
    }

    pub fn l(&self) -> u32 {
        self.l
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn alpha(&self) -> f64 {
        2.0 * self.k as f64 / self.l as f64
    }

    /// Order p + q of the G-function in the closed-form bound.
    pub fn meijer_order(&self) -> usize {
        4 * self.l as usize + self.k as usize
    }
}

/// Index list ι/ρ, (ι+1)/ρ, …, (ι+ρ−1)/ρ.
fn index_list(rho: u32, iota: f64) -> impl Iterator<Item = f64> {
    (0..rho).map(move |j| (iota + j as f64) / rho as f64)
}

/// Closed form of the ergodic bound as a G^{k+2l, l}_{2l, k+2l} function.
pub fn ergodic_capacity_lb_meijerg(dist: &SnrDistribution, ra: RationalAlpha) -> Result<f64> {
    ergodic_capacity_lb_meijerg_with_limit(dist, ra, DEFAULT_ORDER_LIMIT)
}

/// As [`ergodic_capacity_lb_meijerg`] with an explicit G-function order limit.
pub fn ergodic_capacity_lb_meijerg_with_limit(
    dist: &SnrDistribution,
    ra: RationalAlpha,
    limit: usize,
) -> Result<f64> {
    if (ra.alpha() - dist.alpha()).abs() > 1e-12 {
        return Err(invalid("ra", format!("2k/l = {} does not match alpha = {}", ra.alpha(), dist.alpha())));
    }
    if ra.meijer_order() > limit {
        return Err(Error::UnsupportedOrder { order: ra.meijer_order(), limit });
    }
    if dist.gamma_bar() == 0.0 {
        return Ok(0.0);
    }
    let (l, k) = (ra.l, ra.k);
    let (lf, kf) = (l as f64, k as f64);
    let (m, omega) = (dist.m(), dist.omega());
    let a: Vec<f64> = index_list(l, 0.0).chain(index_list(l, 1.0)).collect();
    let b: Vec<f64> = index_list(k, m).chain(index_list(l, 0.0)).chain(index_list(l, 0.0)).collect();
    let z = (dist.xi() / dist.gamma_bar()).powf(lf) / (kf * omega / m).powf(kf);
    let q = b.len();
    let g = meijer_g_with_limit(&MeijerGSpec::new(a, l as usize, b, q, z)?, limit)?;
    let ln_pref = (m - 1.0) * omega.ln() + lf.ln() - (2.0 * LN_2).ln() - ln_gamma(m)
        + 0.5 * ((2.0 * m - 3.0) * kf.ln() - (2.0 * lf + kf - 3.0) * (2.0 * PI).ln());
    Ok(ln_pref.exp() * g)
}

/// Outage bound Ω^{m−1}/Γ(m)·γ(m, (m/Ω)(γ_th ξ/γ̄)^{2/α}), γ the lower incomplete gamma.
pub fn outage_ub(dist: &SnrDistribution, gamma_th: f64) -> Result<f64> {
    if !(gamma_th >= 0.0) {
        return Err(invalid("gamma_th", format!("{gamma_th} must be non-negative")));
    }
    if gamma_th == 0.0 {
        return Ok(0.0);
    }
    let pref = dist.omega().powf(dist.m() - 1.0);
    if dist.gamma_bar() == 0.0 {
        return Ok(pref);
    }
    Ok(pref * gamma_p(dist.m(), dist.gamma_argument(gamma_th)))
}

/// 1 − outage bound at Ω = 1, resolved where the bound rounds to 1.
pub fn outage_ub_complement(dist: &SnrDistribution, gamma_th: f64) -> Result<f64> {
    if dist.omega() != 1.0 {
        return Err(invalid("omega", "complement is defined for unit mean-square fading"));
    }
    if !(gamma_th >= 0.0) {
        return Err(invalid("gamma_th", format!("{gamma_th} must be non-negative")));
    }
    if gamma_th == 0.0 {
        return Ok(1.0);
    }
    if dist.gamma_bar() == 0.0 {
        return Ok(0.0);
    }
    Ok(gamma_q(dist.m(), dist.gamma_argument(gamma_th)))
}
