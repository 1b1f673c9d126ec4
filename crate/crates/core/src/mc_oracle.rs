//! Monte-Carlo oracles for the SNR law, the capacity and outage bounds and the
//! noise construction.
//!
//! Sampling is split into fixed-size shards, each on its own stream of the
//! seed, evaluated in parallel and merged in shard order.

use crate::alpha_stable::{self, quadrature_sum, ComplexIsotropicNoise, StableParams};
use crate::capacity_bounds::{ergodic_capacity_lb_meijerg, ergodic_capacity_lb_quadrature, outage_ub, RationalAlpha};
use crate::error::{invalid, Result};
use crate::fading::{alpha_moment, draw_h, NakagamiParams};
use crate::rng;
use crate::snr_model::{snr_cdf, SnrDistribution};
use crate::special::gamma_p_inv;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Default seed for reproducible runs.
pub const DEFAULT_SEED: u64 = 0xC15;
/// Smallest accepted sample count.
pub const MIN_SAMPLES: usize = 10_000;
/// Batches used by the heavy-tail estimator.
pub const HEAVY_TAIL_BATCHES: usize = 20;
const SHARD: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McConfig {
    pub n_samples: usize,
    pub seed: u64,
    /// Width of the acceptance band in standard errors.
    pub confidence_z: f64,
}

impl Default for McConfig {
    fn default() -> Self {
        Self { n_samples: 1_000_000, seed: DEFAULT_SEED, confidence_z: 3.0 }
    }
}

impl McConfig {
    pub fn new(n_samples: usize, seed: u64) -> Result<Self> {
        let cfg = Self { n_samples, seed, ..Self::default() };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_samples < MIN_SAMPLES {
            return Err(invalid("n_samples", format!("{} is below {MIN_SAMPLES}", self.n_samples)));
        }
        if !(self.confidence_z > 0.0 && self.confidence_z.is_finite()) {
            return Err(invalid("confidence_z", "must be positive"));
        }
        Ok(())
    }
}

/// Sample estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub value: f64,
    pub std_error: f64,
}

impl McEstimate {
    /// |value − target| ≤ z·SE.
    pub fn covers(&self, target: f64, z: f64) -> bool {
        (self.value - target).abs() <= z * self.std_error
    }
}

/// Runs `work` on every shard in parallel and returns the results in shard order.
fn sharded<T, F>(seed: u64, n: usize, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, usize) -> T + Sync,
{
    rng::shard_plan(n, SHARD)
        .into_par_iter()
        .map(|(idx, count)| work(&mut rng::shard(seed, idx), count))
        .collect()
}

/// Running sum and sum of squares.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: usize,
    sum: f64,
    sum_sq: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1;
        self.sum += x;
        self.sum_sq += x * x;
    }

    fn merge(parts: &[Moments]) -> Moments {
        parts.iter().fold(Moments::default(), |a, b| Moments {
            n: a.n + b.n,
            sum: a.sum + b.sum,
            sum_sq: a.sum_sq + b.sum_sq,
        })
    }

    fn estimate(&self) -> McEstimate {
        let n = self.n as f64;
        let mean = self.sum / n;
        let var = ((self.sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
        McEstimate { value: mean, std_error: (var / n).sqrt() }
    }
}

/// `n` SNR draws from the fading law, deterministic in `seed`.
pub fn sample_snr(dist: &SnrDistribution, seed: u64, n: usize) -> Vec<f64> {
    let law = dist.fading().power_law();
    sharded(seed, n, |r, count| (0..count).map(|_| dist.snr_at(draw_h(&law, r))).collect::<Vec<_>>())
        .concat()
}

/// Sample mean of (1/α)log₂(1+γ) with its standard error.
pub fn mc_ergodic(dist: &SnrDistribution, cfg: &McConfig) -> Result<McEstimate> {
    cfg.validate()?;
    if dist.gamma_bar() == 0.0 {
        return Ok(McEstimate { value: 0.0, std_error: 0.0 });
    }
    let law = dist.fading().power_law();
    let inv_alpha = 1.0 / dist.alpha();
    let parts = sharded(cfg.seed, cfg.n_samples, |r, count| {
        let mut acc = Moments::default();
        for _ in 0..count {
            let g = dist.snr_at(draw_h(&law, r));
            acc.push(inv_alpha * g.ln_1p() / std::f64::consts::LN_2);
        }
        acc
    });
    Ok(Moments::merge(&parts).estimate())
}

/// Empirical P(γ < γ_th) with its binomial standard error.
pub fn mc_outage(dist: &SnrDistribution, gamma_th: f64, cfg: &McConfig) -> Result<McEstimate> {
    cfg.validate()?;
    if !(gamma_th >= 0.0) {
        return Err(invalid("gamma_th", format!("{gamma_th} must be non-negative")));
    }
    let law = dist.fading().power_law();
    let counts = sharded(cfg.seed, cfg.n_samples, |r, count| {
        (0..count).filter(|_| dist.snr_at(draw_h(&law, r)) < gamma_th).count()
    });
    let hits: usize = counts.iter().sum();
    let n = cfg.n_samples as f64;
    let p = hits as f64 / n;
    Ok(McEstimate { value: p, std_error: (p * (1.0 - p) / n).sqrt() })
}

/// True when `bound` is not exceeded by the empirical frequency by more than z
/// standard errors, the error taken under the bound itself so that a frequency
/// of exactly 0 or 1 still carries a spread.
pub fn dominates(bound: f64, empirical: &McEstimate, n: usize, z: f64) -> bool {
    let p0 = bound.clamp(0.0, 1.0);
    let se = (p0 * (1.0 - p0) / n as f64).sqrt().max(empirical.std_error);
    empirical.value - bound <= z * se
}

/// Empirical E|n₁ + n₂| of the complex noise.
///
/// For α < 1.5 the value is the median of 20 batch means and the error is the
/// normal-theory standard error of that median.
pub fn mc_noise_moments(noise: &ComplexIsotropicNoise, cfg: &McConfig) -> Result<McEstimate> {
    cfg.validate()?;
    let batch_means = |n: usize, seed: u64| -> Vec<Moments> {
        sharded(seed, n, |r, count| {
            let mut acc = Moments::default();
            for z in noise.sampler(&mut *r).take(count) {
                acc.push(quadrature_sum(z).abs());
            }
            acc
        })
    };
    if noise.alpha() >= 1.5 {
        return Ok(Moments::merge(&batch_means(cfg.n_samples, cfg.seed)).estimate());
    }
    let per = cfg.n_samples / HEAVY_TAIL_BATCHES;
    let mut means: Vec<f64> = (0..HEAVY_TAIL_BATCHES as u64)
        .map(|b| {
            let seed = cfg.seed.wrapping_add(b.wrapping_mul(0x9E37_79B9_7F4A_7C15));
            Moments::merge(&batch_means(per, seed)).estimate().value
        })
        .collect();
    means.sort_by(f64::total_cmp);
    let k = means.len();
    let median = 0.5 * (means[(k - 1) / 2] + means[k / 2]);
    let mean = means.iter().sum::<f64>() / k as f64;
    let sd = (means.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / (k as f64 - 1.0)).sqrt();
    Ok(McEstimate { value: median, std_error: 1.2533 * sd / (k as f64).sqrt() })
}

/// Outcome of a goodness-of-fit test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GofTest {
    pub statistic: f64,
    pub critical: f64,
    pub passed: bool,
}

/// Pearson chi-square test on `bins` equiprobable cells from the model
/// `quantile`, at the 0.01 level.
pub fn chi_square_gof<Q: Fn(f64) -> f64>(samples: &[f64], bins: usize, quantile: Q) -> Result<GofTest> {
    if bins < 2 {
        return Err(invalid("bins", "need at least two cells"));
    }
    if samples.len() < 5 * bins {
        return Err(invalid("samples", "fewer than five expected counts per cell"));
    }
    let edges: Vec<f64> = (1..bins).map(|i| quantile(i as f64 / bins as f64)).collect();
    let mut observed = vec![0usize; bins];
    for &x in samples {
        observed[edges.partition_point(|&e| e <= x)] += 1;
    }
    let expected = samples.len() as f64 / bins as f64;
    let statistic = observed.iter().map(|&o| (o as f64 - expected).powi(2) / expected).sum();
    let dof = (bins - 1) as f64;
    let critical = 2.0 * gamma_p_inv(0.5 * dof, 0.99);
    Ok(GofTest { statistic, critical, passed: statistic <= critical })
}

/// Two-sample Kolmogorov-Smirnov test at the 0.01 level.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<GofTest> {
    if a.is_empty() || b.is_empty() {
        return Err(invalid("samples", "both samples must be non-empty"));
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (n, m) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    let critical = 1.628 * ((n + m) / (n * m)).sqrt();
    Ok(GofTest { statistic: d, critical, passed: d <= critical })
}

/// Empirical characteristic function E[cos(tX)] of a symmetric sample.
pub fn empirical_char_fn(samples: &[f64], t: f64) -> f64 {
    samples.par_iter().map(|x| (t * x).cos()).sum::<f64>() / samples.len() as f64
}

/// One line of the validation report.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed, detail: detail.into() }
    }

    fn failed(name: impl Into<String>, err: impl std::fmt::Display) -> Self {
        Self::new(name, false, format!("error: {err}"))
    }
}

fn nakagami_quantile(params: &NakagamiParams, p: f64) -> f64 {
    (params.omega() / params.m() * gamma_p_inv(params.m(), p)).sqrt()
}

fn check_or_fail(name: String, run: impl FnOnce() -> Result<Check>) -> Check {
    run().unwrap_or_else(|e| Check::failed(name, e))
}

/// Every analytical quantity against its sampled counterpart.
pub fn validation_suite(cfg: &McConfig) -> Result<Vec<Check>> {
    cfg.validate()?;
    let z = cfg.confidence_z;
    let mut out = Vec::new();

    for m in [1.0, 5.0, 15.0] {
        let name = format!("fading m={m}: chi-square against the Nakagami law");
        out.push(check_or_fail(name.clone(), || {
            let params = NakagamiParams::new(m, 1.0)?;
            let law = params.power_law();
            let hs = sharded(cfg.seed, cfg.n_samples, |r, count| {
                (0..count).map(|_| draw_h(&law, r)).collect::<Vec<_>>()
            })
            .concat();
            let t = chi_square_gof(&hs, 50, |p| nakagami_quantile(&params, p))?;
            Ok(Check::new(name, t.passed, format!("X2 = {:.2}, critical {:.2}", t.statistic, t.critical)))
        }));
        for alpha in [1.8, 2.0] {
            let name = format!("fading m={m} alpha={alpha}: E|h|^alpha");
            out.push(check_or_fail(name.clone(), || {
                let params = NakagamiParams::new(m, 1.0)?;
                let law = params.power_law();
                let parts = sharded(cfg.seed ^ 0x5A, cfg.n_samples, |r, count| {
                    let mut acc = Moments::default();
                    for _ in 0..count {
                        acc.push(draw_h(&law, r).powf(alpha));
                    }
                    acc
                });
                let est = Moments::merge(&parts).estimate();
                let xi = alpha_moment(&params, alpha)?;
                Ok(Check::new(name, est.covers(xi, z), format!("{:.6} +- {:.1e} vs {xi:.6}", est.value, est.std_error)))
            }));
        }
    }

    for m in [1.0, 5.0, 15.0] {
        for alpha in [1.8, 2.0] {
            let name = format!("snr law m={m} alpha={alpha}: chi-square");
            out.push(check_or_fail(name.clone(), || {
                let dist = SnrDistribution::new(alpha, m, 10.0)?;
                let g = sample_snr(&dist, cfg.seed, cfg.n_samples);
                let t = chi_square_gof(&g, 50, |p| dist.quantile(p))?;
                Ok(Check::new(name, t.passed, format!("X2 = {:.2}, critical {:.2}", t.statistic, t.critical)))
            }));
        }
    }

    for m in [1.0, 5.0, 15.0] {
        for alpha in [1.8, 2.0] {
            for gamma_bar in [10.0, 100.0] {
                let name = format!("ergodic bound m={m} alpha={alpha} gamma_bar={gamma_bar}");
                out.push(check_or_fail(name.clone(), || {
                    let dist = SnrDistribution::new(alpha, m, gamma_bar)?;
                    let q = ergodic_capacity_lb_quadrature(&dist)?;
                    let est = mc_ergodic(&dist, cfg)?;
                    Ok(Check::new(
                        name,
                        est.covers(q, z),
                        format!("{:.5} +- {:.1e} vs {q:.5}", est.value, est.std_error),
                    ))
                }));
            }
        }
    }

    for (l, k) in [(1u32, 1u32), (3, 2), (6, 5)] {
        let name = format!("closed-form bound l={l} k={k}");
        out.push(check_or_fail(name.clone(), || {
            let ra = RationalAlpha::new(l, k)?;
            let dist = SnrDistribution::new(ra.alpha(), 5.0, 10.0)?;
            let g = ergodic_capacity_lb_meijerg(&dist, ra)?;
            let est = mc_ergodic(&dist, cfg)?;
            Ok(Check::new(name, est.covers(g, z), format!("{:.5} +- {:.1e} vs {g:.5}", est.value, est.std_error)))
        }));
    }

    for m in [1.0, 5.0, 15.0] {
        for alpha in [1.8, 2.0] {
            for gamma_bar in [10.0, 100.0] {
                for th in [0.1, 1.0, 10.0] {
                    let gamma_th = th * gamma_bar;
                    let name = format!("outage m={m} alpha={alpha} gamma_bar={gamma_bar} gamma_th={gamma_th}");
                    out.push(check_or_fail(name.clone(), || {
                        let dist = SnrDistribution::new(alpha, m, gamma_bar)?;
                        let ub = outage_ub(&dist, gamma_th)?;
                        let est = mc_outage(&dist, gamma_th, cfg)?;
                        let ok = dominates(ub, &est, cfg.n_samples, z) && (ub - snr_cdf(&dist, gamma_th)).abs() < 1e-10;
                        Ok(Check::new(name, ok, format!("{:.3e} +- {:.1e}, bound {ub:.3e}", est.value, est.std_error)))
                    }));
                }
            }
        }
    }

    for (alpha, sigma) in [(2.0, std::f64::consts::FRAC_1_SQRT_2), (1.8, 1.0)] {
        let name = format!("noise alpha={alpha} sigma={sigma:.4}: E|n1+n2|");
        out.push(check_or_fail(name.clone(), || {
            let noise = alpha_stable::make_complex_noise(alpha, sigma)?;
            let target = alpha_stable::mean_abs(alpha, noise.derived_scale())?;
            let est = mc_noise_moments(&noise, cfg)?;
            Ok(Check::new(
                name,
                est.covers(target, z),
                format!("{:.5} +- {:.1e} vs {target:.5}", est.value, est.std_error),
            ))
        }));
    }

    let name = "noise alpha=1.2: median-of-batches E|n1+n2| stable across seeds".to_string();
    out.push(check_or_fail(name.clone(), || {
        let noise = alpha_stable::make_complex_noise(1.2, 1.0)?;
        let a = mc_noise_moments(&noise, cfg)?;
        let b = mc_noise_moments(&noise, &McConfig { seed: cfg.seed ^ 0xB7, ..*cfg })?;
        let rel = (a.value / b.value - 1.0).abs();
        Ok(Check::new(name, a.value.is_finite() && rel < 0.05, format!("{:.4} vs {:.4}", a.value, b.value)))
    }));

    for alpha in [1.5, 1.8, 2.0] {
        let name = format!("noise alpha={alpha}: KS against direct SaS draws of the derived scale");
        out.push(check_or_fail(name.clone(), || {
            let noise = alpha_stable::make_complex_noise(alpha, 1.0)?;
            let n = cfg.n_samples.min(200_000);
            let sums: Vec<f64> = noise.sample(cfg.seed, n).into_iter().map(quadrature_sum).collect();
            let direct = alpha_stable::sample(&noise.sum_law(), cfg.seed ^ 0xD1, n)?;
            let t = ks_two_sample(&sums, &direct)?;
            Ok(Check::new(name, t.passed, format!("D = {:.5}, critical {:.5}", t.statistic, t.critical)))
        }));
        let name = format!("noise alpha={alpha}: characteristic function of n1+n2");
        out.push(check_or_fail(name.clone(), || {
            let noise = alpha_stable::make_complex_noise(alpha, std::f64::consts::FRAC_1_SQRT_2)?;
            let sums: Vec<f64> = noise.sample(cfg.seed, cfg.n_samples).into_iter().map(quadrature_sum).collect();
            let law: StableParams = noise.sum_law();
            let mut worst = 0f64;
            for t in [0.5, 1.0, 2.0] {
                let exact = alpha_stable::char_fn(&law, t)?.re;
                worst = worst.max((empirical_char_fn(&sums, t) - exact).abs());
            }
            Ok(Check::new(name, worst <= 0.01, format!("max deviation {worst:.2e}")))
        }));
    }

    Ok(out)
}
