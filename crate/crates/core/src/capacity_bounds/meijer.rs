//! Meijer G-function of a positive real argument via its Mellin-Barnes integral.

use crate::error::{invalid, Error, Result};
use crate::quad::integrate;
use crate::special::{is_gamma_pole, ln_gamma_complex};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Largest p + q accepted by [`meijer_g`].
pub const DEFAULT_ORDER_LIMIT: usize = 32;

/// Parameters of G^{m,n}_{p,q}(z | a; b).
///
/// `a_top` holds the p upper parameters, the first `n` of which enter as
/// Γ(1 − a + s); `b_bottom` holds the q lower parameters, the first `m` of
/// which enter as Γ(b − s).
#[derive(Debug, Clone, PartialEq)]
pub struct MeijerGSpec {
    a_top: Vec<f64>,
    n: usize,
    b_bottom: Vec<f64>,
    m: usize,
    z: f64,
}

impl MeijerGSpec {
    pub fn new(a_top: Vec<f64>, n: usize, b_bottom: Vec<f64>, m: usize, z: f64) -> Result<Self> {
        if n > a_top.len() {
            return Err(invalid("n", format!("{n} exceeds p = {}", a_top.len())));
        }
        if m > b_bottom.len() {
            return Err(invalid("m", format!("{m} exceeds q = {}", b_bottom.len())));
        }
        if !(z > 0.0 && z.is_finite()) {
            return Err(invalid("z", format!("{z} must be positive and finite")));
        }
        if a_top.iter().chain(&b_bottom).any(|x| !x.is_finite()) {
            return Err(invalid("parameters", "must be finite"));
        }
        Ok(Self { a_top, n, b_bottom, m, z })
    }

    pub fn order(&self) -> usize {
        self.a_top.len() + self.b_bottom.len()
    }

    /// Real part of the vertical contour Re s = c separating the two pole families.
    pub fn contour(&self) -> Result<f64> {
        let left = self.a_top[..self.n].iter().map(|a| a - 1.0).fold(f64::NEG_INFINITY, f64::max);
        let right = self.b_bottom[..self.m].iter().copied().fold(f64::INFINITY, f64::min);
        match (left.is_finite(), right.is_finite()) {
            (true, true) if left < right => Ok(0.5 * (left + right)),
            (true, true) => Err(Error::PoleCollision(format!(
                "rightmost left pole {left} is not below leftmost right pole {right}"
            ))),
            (false, true) => Ok(right - 0.5),
            (true, false) => Ok(left + 0.5),
            (false, false) => Err(invalid("spec", "m + n must be positive")),
        }
    }

    fn ln_integrand(&self, s: Complex64) -> Option<Complex64> {
        let one = Complex64::new(1.0, 0.0);
        let mut acc = s * self.z.ln();
        for (j, &b) in self.b_bottom.iter().enumerate() {
            if j < self.m {
                acc += ln_gamma_complex(Complex64::new(b, 0.0) - s);
            } else {
                let w = one - b + s;
                if is_gamma_pole(w) {
                    return None;
                }
                acc -= ln_gamma_complex(w);
            }
        }
        for (i, &a) in self.a_top.iter().enumerate() {
            if i < self.n {
                acc += ln_gamma_complex(one - a + s);
            } else {
                let w = Complex64::new(a, 0.0) - s;
                if is_gamma_pole(w) {
                    return None;
                }
                acc -= ln_gamma_complex(w);
            }
        }
        Some(acc)
    }
}

/// G^{m,n}_{p,q}(z) with the default order limit.
pub fn meijer_g(spec: &MeijerGSpec) -> Result<f64> {
    meijer_g_with_limit(spec, DEFAULT_ORDER_LIMIT)
}

/// G^{m,n}_{p,q}(z) = (1/π)∫₀^∞ Re F(c + it) dt, F the Mellin-Barnes integrand.
///
/// The integral is truncated where |F| drops below 1e−16 of its peak and
/// integrated adaptively with Gauss-Kronrod panels.
pub fn meijer_g_with_limit(spec: &MeijerGSpec, limit: usize) -> Result<f64> {
    let order = spec.order();
    if order > limit {
        return Err(Error::UnsupportedOrder { order, limit });
    }
    let (p, q) = (spec.a_top.len() as f64, spec.b_bottom.len() as f64);
    let delta = (spec.m + spec.n) as f64 - 0.5 * (p + q);
    if delta <= 0.0 {
        return Err(Error::Unsupported(format!(
            "contour integral diverges for m + n - (p + q)/2 = {delta}"
        )));
    }
    let c = spec.contour()?;
    let log_mag = |t: f64| spec.ln_integrand(Complex64::new(c, t)).map_or(f64::NEG_INFINITY, |v| v.re);

    let step = 0.25;
    let cutoff = 16.0 * std::f64::consts::LN_10;
    let mut peak = f64::NEG_INFINITY;
    let mut t: f64 = 0.0;
    let mut below = 0;
    while below < 4 {
        let v = log_mag(t.max(1e-9));
        peak = peak.max(v);
        below = if v < peak - cutoff { below + 1 } else { 0 };
        t += step;
        if t > 1e4 {
            return Err(Error::Quadrature { value: f64::NAN, estimate: f64::INFINITY });
        }
    }
    let t_max = t;

    let freq = spec.z.ln().abs();
    let spacing = if freq > 0.0 { (PI / freq).min(1.0) } else { 1.0 };
    let panels = (t_max / spacing).ceil().max(1.0) as usize;
    let breaks: Vec<f64> = (0..=panels).map(|i| t_max * i as f64 / panels as f64).collect();
    let f = |t: f64| spec.ln_integrand(Complex64::new(c, t)).map_or(0.0, |v| v.exp().re);
    let est = integrate(f, &breaks, 0.0, 1e-13, 200_000);
    let scale_floor = 1e-14 * est.l1;
    if !est.converged && est.error > scale_floor.max(1e-12 * est.value.abs()) {
        return Err(Error::Quadrature { value: est.value / PI, estimate: est.error / PI });
    }
    Ok(est.value / PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma;
    use approx::assert_relative_eq;

    #[test]
    fn log_identity() {
        for z in [0.1, 1.0, 10.0] {
            let spec = MeijerGSpec::new(vec![1.0, 1.0], 2, vec![1.0, 0.0], 1, z).unwrap();
            assert!((meijer_g(&spec).unwrap() - (1.0 + z).ln()).abs() < 1e-8, "z={z}");
        }
        let spec = MeijerGSpec::new(vec![1.0, 1.0], 2, vec![1.0, 0.0], 1, 1.0).unwrap();
        assert_relative_eq!(meijer_g(&spec).unwrap(), 2f64.ln(), epsilon = 1e-10);
    }

    #[test]
    fn power_exponential_identity() {
        for (b, x) in [(0.0, 1.0), (3.0, 2.0), (1.5, 0.3), (5.0, 7.0)] {
            let spec = MeijerGSpec::new(vec![], 0, vec![b], 1, x).unwrap();
            let want = x.powf(b) * (-x).exp();
            assert!((meijer_g(&spec).unwrap() - want).abs() < 1e-8 * want.max(1.0), "b={b} x={x}");
        }
        let spec = MeijerGSpec::new(vec![], 0, vec![3.0], 1, 2.0).unwrap();
        assert_relative_eq!(meijer_g(&spec).unwrap(), 1.082_682, epsilon = 1e-6);
    }

    #[test]
    fn bessel_like_and_gamma_ratio_cases() {
        // G^{1,1}_{1,1}(z | 1-a; 0) = Γ(a) (1+z)^{-a}
        for (a, z) in [(0.5, 0.4), (2.5, 3.0)] {
            let spec = MeijerGSpec::new(vec![1.0 - a], 1, vec![0.0], 1, z).unwrap();
            let want = gamma(a) * (1.0 + z).powf(-a);
            assert_relative_eq!(meijer_g(&spec).unwrap(), want, max_relative = 1e-10);
        }
        // G^{2,0}_{0,2}(z | -; b, c) = 2 z^{(b+c)/2} K_{b-c}(2√z); at (b, c) = (1/2, 0) this is √π e^{-2√z}
        let z: f64 = 1.7;
        let spec = MeijerGSpec::new(vec![], 0, vec![0.5, 0.0], 2, z).unwrap();
        let want = PI.sqrt() * (-2.0 * z.sqrt()).exp();
        assert_relative_eq!(meijer_g(&spec).unwrap(), want, max_relative = 1e-10);
    }

    #[test]
    fn errors() {
        let big = MeijerGSpec::new(vec![0.0; 10], 5, vec![1.0; 30], 30, 1.0).unwrap();
        assert!(matches!(meijer_g(&big), Err(Error::UnsupportedOrder { order: 40, limit: 32 })));
        let clash = MeijerGSpec::new(vec![2.5], 1, vec![0.0], 1, 1.0).unwrap();
        assert!(matches!(meijer_g(&clash), Err(Error::PoleCollision(_))));
        let divergent = MeijerGSpec::new(vec![0.5, 0.5], 0, vec![0.0], 1, 1.0).unwrap();
        assert!(meijer_g(&divergent).is_err());
        assert!(MeijerGSpec::new(vec![1.0], 2, vec![0.0], 1, 1.0).is_err());
        assert!(MeijerGSpec::new(vec![1.0], 1, vec![0.0], 1, -1.0).is_err());
    }
}
