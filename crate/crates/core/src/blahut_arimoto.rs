//! Amplitude-constrained Blahut-Arimoto capacity of the real scalar channel
//! Y = hX + N, N ~ S(α, 0, λ_n, 0), averaged over Nakagami-m fading.

use crate::alpha_stable::SasTable;
use crate::error::{invalid, Error, Result};
use crate::snr_model::{snr_pdf, SnrDistribution};
use rayon::prelude::*;
use std::f64::consts::LN_2;

/// Run parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaConfig {
    /// Stop once the per-iteration capacity gain is at most this (bpcu).
    pub epsilon: f64,
    pub max_iter: usize,
    /// Amplitude constraint E|X| ≤ p_c.
    pub p_c: f64,
    /// Input alphabet size.
    pub m_x: usize,
    /// Output alphabet size.
    pub m_n: usize,
    /// Input grid spans ±x_max_factor·p_c.
    pub x_max_factor: f64,
    /// Number of fading grid points.
    pub n_h: usize,
    /// Two-sided noise mass left outside the inner output bins.
    pub output_tail_mass: f64,
}

impl BaConfig {
    pub fn new(p_c: f64) -> Self {
        Self {
            epsilon: 1e-6,
            max_iter: 2000,
            p_c,
            m_x: 65,
            m_n: 513,
            x_max_factor: 4.0,
            n_h: 40,
            output_tail_mass: 1e-3,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0) {
            return Err(invalid("epsilon", "must be positive"));
        }
        if self.max_iter == 0 {
            return Err(invalid("max_iter", "must be positive"));
        }
        if !(self.p_c > 0.0 && self.p_c.is_finite()) {
            return Err(invalid("p_c", format!("{} must be positive", self.p_c)));
        }
        if self.m_x < 3 || self.m_n < 3 {
            return Err(invalid("m_x/m_n", "alphabets need at least 3 points"));
        }
        if !(self.x_max_factor > 0.0 && self.x_max_factor.is_finite()) {
            return Err(invalid("x_max_factor", "must be positive"));
        }
        if self.n_h == 0 {
            return Err(invalid("n_h", "must be at least 1"));
        }
        if !(self.output_tail_mass > 0.0 && self.output_tail_mass < 1.0) {
            return Err(invalid("output_tail_mass", "must lie in (0, 1)"));
        }
        Ok(())
    }
}

/// Finite-alphabet channel with row-stochastic transition matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteChannel {
    /// Received noiseless amplitudes h·x.
    pub inputs: Vec<f64>,
    /// Output bin centers; the first and last bins extend to ∓∞.
    pub outputs: Vec<f64>,
    /// Row-major M_X × M_N matrix of P(y | x).
    pub transition: Vec<f64>,
}

impl DiscreteChannel {
    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.outputs.len();
        &self.transition[i * n..(i + 1) * n]
    }
}

/// Points v_i = half·(2i − (n−1))/(n−1), exactly antisymmetric.
fn symmetric_grid(half: f64, n: usize) -> Vec<f64> {
    let d = (n - 1) as f64;
    (0..n).map(|i| half * (2.0 * i as f64 - d) / d).collect()
}

/// Sum invariant under reversing the slice.
fn symmetric_sum(v: &[f64]) -> f64 {
    let n = v.len();
    let mut s = 0.0;
    for j in 0..n / 2 {
        s += v[j] + v[n - 1 - j];
    }
    if n % 2 == 1 {
        s += v[n / 2];
    }
    s
}

/// Discretizes Y = hX + N with N ~ S(α, 0, λ_n, 0).
pub fn build_channel(alpha: f64, lambda_n: f64, h: f64, cfg: &BaConfig) -> Result<DiscreteChannel> {
    let table = SasTable::new(alpha)?;
    build_channel_with(&table, lambda_n, h, cfg)
}

/// As [`build_channel`], reusing a precomputed noise table.
///
/// Inputs are h·x on a uniform grid over ±x_max_factor·p_c; outputs are M_N
/// uniform bin centers spanning the inputs plus the noise radius that leaves
/// `output_tail_mass` outside; P(y | x) is the exact noise mass of each bin.
pub fn build_channel_with(table: &SasTable, lambda_n: f64, h: f64, cfg: &BaConfig) -> Result<DiscreteChannel> {
    cfg.validate()?;
    if !(lambda_n > 0.0 && lambda_n.is_finite()) {
        return Err(invalid("lambda_n", format!("{lambda_n} must be positive")));
    }
    if !(h > 0.0 && h.is_finite()) {
        return Err(invalid("h", format!("{h} must be positive; zero gives a degenerate grid")));
    }
    let x_max = cfg.x_max_factor * cfg.p_c * h;
    let inputs = symmetric_grid(x_max, cfg.m_x);
    let radius = x_max + lambda_n * table.unit_upper_quantile(0.5 * cfg.output_tail_mass);
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(invalid("grid", "output grid has zero or infinite width"));
    }
    let outputs = symmetric_grid(radius, cfg.m_n);
    let n = cfg.m_n;
    let mut edges = Vec::with_capacity(n + 1);
    edges.push(f64::NEG_INFINITY);
    edges.extend(outputs.windows(2).map(|w| 0.5 * (w[0] + w[1])));
    edges.push(f64::INFINITY);

    let mut transition = vec![0.0; cfg.m_x * n];
    for (i, &x) in inputs.iter().enumerate() {
        let row = &mut transition[i * n..(i + 1) * n];
        for j in 0..n {
            row[j] = table.mass(lambda_n, edges[j] - x, edges[j + 1] - x);
        }
        let s = symmetric_sum(row);
        for p in row.iter_mut() {
            *p /= s;
        }
    }
    Ok(DiscreteChannel { inputs, outputs, transition })
}

/// Result of one Blahut-Arimoto run.
#[derive(Debug, Clone, PartialEq)]
pub struct BaOutcome {
    /// I(X; Y) in bits at the returned input law.
    pub capacity: f64,
    pub input_pmf: Vec<f64>,
    pub iterations: usize,
    /// Capacity after each iteration.
    pub history: Vec<f64>,
    /// Lagrange multiplier of the amplitude constraint, in units of 1/constraint.
    pub nu: f64,
    pub mean_abs_input: f64,
}

const NU_BRACKET: f64 = -50.0;
const NU_TOLERANCE: f64 = 1e-10;

/// Normalized law ∝ exp(log_w + ν|x|/A).
fn tilt(log_w: &[f64], cost: &[f64], nu: f64) -> Vec<f64> {
    let e: Vec<f64> = log_w.iter().zip(cost).map(|(l, c)| l + nu * c).collect();
    let top = e.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let w: Vec<f64> = e.iter().map(|v| (v - top).exp()).collect();
    let s: f64 = w.iter().sum();
    w.into_iter().map(|v| v / s).collect()
}

/// Σ r(x)(1 − |x|/A), the stationarity residual of the constraint.
fn residual(r: &[f64], cost: &[f64]) -> f64 {
    r.iter().zip(cost).map(|(p, c)| p * (1.0 - c)).sum()
}

/// Constrained maximizer of Σ r(x)(log_w(x) − ln r(x)) over E|X| ≤ A.
fn constrained_update(log_w: &[f64], cost: &[f64], constraint: f64) -> Result<(Vec<f64>, f64)> {
    let r0 = tilt(log_w, cost, 0.0);
    if residual(&r0, cost) >= 0.0 {
        return Ok((r0, 0.0));
    }
    let r_lo = tilt(log_w, cost, NU_BRACKET);
    if residual(&r_lo, cost) < 0.0 {
        return Err(Error::ConstraintInfeasible {
            constraint,
            reason: format!("no multiplier in [{NU_BRACKET}, 0] meets the constraint"),
        });
    }
    let (mut lo, mut hi) = (NU_BRACKET, 0.0);
    let mut best = (r_lo, lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let r = tilt(log_w, cost, mid);
        let res = residual(&r, cost);
        if res >= 0.0 {
            lo = mid;
            let done = res <= NU_TOLERANCE;
            best = (r, mid);
            if done {
                break;
            }
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    Ok(best)
}

/// Capacity of `ch` under E|input| ≤ `constraint`.
pub fn ba_capacity(ch: &DiscreteChannel, constraint: f64, cfg: &BaConfig) -> Result<BaOutcome> {
    cfg.validate()?;
    if !(constraint > 0.0 && constraint.is_finite()) {
        return Err(invalid("constraint", format!("{constraint} must be positive")));
    }
    let mx = ch.inputs.len();
    let ny = ch.outputs.len();
    if ch.transition.len() != mx * ny || mx == 0 {
        return Err(invalid("channel", "transition matrix does not match the alphabets"));
    }
    let cost: Vec<f64> = ch.inputs.iter().map(|x| x.abs() / constraint).collect();
    let neg_entropy: Vec<f64> = (0..mx)
        .map(|i| ch.row(i).iter().filter(|&&p| p > 0.0).map(|p| p * p.ln()).sum())
        .collect();

    let (mut r, mut nu) = constrained_update(&vec![0.0; mx], &cost, constraint)?;
    let mut history = Vec::new();
    let mut last = f64::NEG_INFINITY;
    let mut q = vec![0.0; ny];
    let mut ln_q = vec![0.0; ny];
    let mut div = vec![0.0; mx];
    for it in 1..=cfg.max_iter {
        q.iter_mut().for_each(|v| *v = 0.0);
        for (i, &ri) in r.iter().enumerate() {
            for (qj, p) in q.iter_mut().zip(ch.row(i)) {
                *qj += ri * p;
            }
        }
        for (l, v) in ln_q.iter_mut().zip(&q) {
            *l = if *v > 0.0 { v.ln() } else { 0.0 };
        }
        for (i, d) in div.iter_mut().enumerate() {
            let cross: f64 = ch.row(i).iter().zip(&ln_q).filter(|(p, _)| **p > 0.0).map(|(p, l)| p * l).sum();
            *d = neg_entropy[i] - cross;
        }
        let cap = r.iter().zip(&div).map(|(a, b)| a * b).sum::<f64>() / LN_2;
        history.push(cap);
        let mean_abs_input = r.iter().zip(&ch.inputs).map(|(p, x)| p * x.abs()).sum();
        if cap - last <= cfg.epsilon {
            return Ok(BaOutcome { capacity: cap, input_pmf: r, iterations: it, history, nu, mean_abs_input });
        }
        last = cap;
        let log_w: Vec<f64> = r
            .iter()
            .zip(&div)
            .map(|(p, d)| if *p > 0.0 { p.ln() + d } else { f64::NEG_INFINITY })
            .collect();
        (r, nu) = constrained_update(&log_w, &cost, constraint)?;
    }
    let n = history.len();
    Err(Error::NonConvergence { iterations: cfg.max_iter, increment: history[n - 1] - history[n - 2] })
}

/// One fading grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FadingPoint {
    pub h: f64,
    pub gamma: f64,
    pub weight: f64,
}

/// Quantile grid over the SNR law with Riemann weights f_γ(γ_i)Δ_i.
#[derive(Debug, Clone, PartialEq)]
pub struct FadingGrid {
    pub points: Vec<FadingPoint>,
    /// Σ f_γ(γ_i)Δ_i before renormalization.
    pub raw_weight_sum: f64,
}

impl FadingGrid {
    /// γ_i at `n_h` equally spaced probabilities in [0.005, 0.995]; Δ_i spans the
    /// neighbouring midpoints, ending at the outer grid points.
    pub fn from_quantiles(dist: &SnrDistribution, n_h: usize) -> Result<Self> {
        if n_h == 0 {
            return Err(invalid("n_h", "must be at least 1"));
        }
        if !(dist.gamma_bar() > 0.0) {
            return Err(invalid("gamma_bar", "fading grid needs a positive average SNR"));
        }
        if n_h == 1 {
            let g = dist.quantile(0.5);
            let point = FadingPoint { h: dist.amplitude_at(g), gamma: g, weight: 1.0 };
            return Ok(Self { points: vec![point], raw_weight_sum: 1.0 });
        }
        let (p_lo, p_hi) = (0.005, 0.995);
        let gammas: Vec<f64> = (0..n_h)
            .map(|i| dist.quantile(p_lo + (p_hi - p_lo) * i as f64 / (n_h - 1) as f64))
            .collect();
        let mut raw = Vec::with_capacity(n_h);
        for i in 0..n_h {
            let left = if i == 0 { gammas[0] } else { 0.5 * (gammas[i - 1] + gammas[i]) };
            let right = if i == n_h - 1 { gammas[i] } else { 0.5 * (gammas[i] + gammas[i + 1]) };
            raw.push(snr_pdf(dist, gammas[i])? * (right - left));
        }
        let total: f64 = raw.iter().sum();
        let points = gammas
            .iter()
            .zip(&raw)
            .map(|(&g, &w)| FadingPoint { h: dist.amplitude_at(g), gamma: g, weight: w / total })
            .collect();
        Ok(Self { points, raw_weight_sum: total })
    }
}

/// Fading-averaged Blahut-Arimoto capacity.
#[derive(Debug, Clone, PartialEq)]
pub struct ErgodicBa {
    /// Σ weight_i · C_i in bpcu.
    pub capacity: f64,
    pub grid: FadingGrid,
    pub per_point: Vec<BaOutcome>,
}

/// Runs [`ba_capacity`] at every fading grid point and forms the weighted sum.
pub fn ergodic_ba(alpha: f64, lambda_n: f64, dist: &SnrDistribution, cfg: &BaConfig) -> Result<ErgodicBa> {
    cfg.validate()?;
    if dist.omega() != 1.0 {
        return Err(invalid("dist", "fading grid requires unit mean-square fading"));
    }
    if (dist.alpha() - alpha).abs() > 1e-12 {
        return Err(invalid("alpha", "does not match the SNR law"));
    }
    let table = SasTable::new(alpha)?;
    let grid = FadingGrid::from_quantiles(dist, cfg.n_h)?;
    let per_point = grid
        .points
        .par_iter()
        .enumerate()
        .map(|(index, pt)| {
            build_channel_with(&table, lambda_n, pt.h, cfg)
                .and_then(|ch| ba_capacity(&ch, cfg.p_c * pt.h, cfg))
                .map_err(|e| Error::GridPoint { index, source: Box::new(e) })
        })
        .collect::<Result<Vec<_>>>()?;
    let capacity = grid.points.iter().zip(&per_point).map(|(p, o)| p.weight * o.capacity).sum();
    Ok(ErgodicBa { capacity, grid, per_point })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alpha_stable::mean_abs;
    use crate::capacity_bounds::capacity_lb;
    use crate::special::gamma_p;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn small_cfg(p_c: f64) -> BaConfig {
        BaConfig { m_x: 33, m_n: 257, ..BaConfig::new(p_c) }
    }

    fn normal_cdf(sd: f64, z: f64) -> f64 {
        if z.is_infinite() {
            return if z > 0.0 { 1.0 } else { 0.0 };
        }
        let p = 0.5 * gamma_p(0.5, 0.5 * (z / sd).powi(2));
        if z >= 0.0 { 0.5 + p } else { 0.5 - p }
    }

    #[test]
    fn rows_are_stochastic_and_mirror_symmetric() {
        for alpha in [1.5, 1.8, 2.0] {
            let cfg = small_cfg(2.0);
            let ch = build_channel(alpha, 0.8, 0.7, &cfg).unwrap();
            let (mx, ny) = (ch.inputs.len(), ch.outputs.len());
            for i in 0..mx {
                let row = ch.row(i);
                assert!(row.iter().all(|&p| p >= 0.0));
                assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-9);
                let mirror = ch.row(mx - 1 - i);
                for j in 0..ny {
                    assert_eq!(row[j], mirror[ny - 1 - j], "alpha={alpha} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn gaussian_rows_match_normal_bin_masses() {
        let cfg = BaConfig::new(5.0);
        let lambda = FRAC_1_SQRT_2;
        let ch = build_channel(2.0, lambda, 1.3, &cfg).unwrap();
        let n = ch.outputs.len();
        for i in [0, 10, 32, 64] {
            let x = ch.inputs[i];
            let mut tv = 0.0;
            let mut want_row = Vec::with_capacity(n);
            for j in 0..n {
                let lo = if j == 0 { f64::NEG_INFINITY } else { 0.5 * (ch.outputs[j - 1] + ch.outputs[j]) };
                let hi = if j == n - 1 { f64::INFINITY } else { 0.5 * (ch.outputs[j] + ch.outputs[j + 1]) };
                want_row.push(normal_cdf(1.0, hi - x) - normal_cdf(1.0, lo - x));
            }
            let s: f64 = want_row.iter().sum();
            for (got, want) in ch.row(i).iter().zip(&want_row) {
                tv += (got - want / s).abs();
            }
            assert!(0.5 * tv < 1e-6, "row {i}: {tv}");
        }
    }

    #[test]
    fn degenerate_inputs_rejected() {
        let cfg = small_cfg(1.0);
        assert!(build_channel(1.8, 1.0, 0.0, &cfg).is_err());
        assert!(build_channel(1.8, 0.0, 1.0, &cfg).is_err());
        let bad = BaConfig { m_x: 2, ..cfg };
        assert!(build_channel(1.8, 1.0, 1.0, &bad).is_err());
    }

    #[test]
    fn iterations_are_monotone_and_feasible() {
        for alpha in [1.8, 2.0] {
            let cfg = small_cfg(3.0);
            let ch = build_channel(alpha, FRAC_1_SQRT_2, 0.9, &cfg).unwrap();
            let out = ba_capacity(&ch, 3.0 * 0.9, &cfg).unwrap();
            for w in out.history.windows(2) {
                assert!(w[1] >= w[0] - 1e-12, "{} -> {}", w[0], w[1]);
            }
            assert!(out.mean_abs_input <= 2.7 * (1.0 + 1e-6));
            assert!((out.input_pmf.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(out.nu <= 0.0);
        }
    }

    #[test]
    fn loose_constraint_leaves_multiplier_at_zero() {
        let cfg = BaConfig { x_max_factor: 0.5, ..small_cfg(2.0) };
        let ch = build_channel(1.9, 1.0, 1.0, &cfg).unwrap();
        let out = ba_capacity(&ch, 10.0, &cfg).unwrap();
        assert_eq!(out.nu, 0.0);
    }

    #[test]
    fn non_convergence_is_reported() {
        let cfg = BaConfig { max_iter: 3, ..small_cfg(5.0) };
        let ch = build_channel(1.8, FRAC_1_SQRT_2, 1.0, &cfg).unwrap();
        assert!(matches!(ba_capacity(&ch, 5.0, &cfg), Err(Error::NonConvergence { iterations: 3, .. })));
    }

    #[test]
    fn dominates_single_letter_lower_bound() {
        for alpha in [1.8, 1.9, 2.0] {
            let lambda = FRAC_1_SQRT_2;
            let table = SasTable::new(alpha).unwrap();
            for p_c in [1.0, 5.0, 10.0] {
                let cfg = BaConfig::new(p_c);
                let ch = build_channel_with(&table, lambda, 1.0, &cfg).unwrap();
                let c = ba_capacity(&ch, p_c, &cfg).unwrap().capacity;
                let lb = capacity_lb(p_c / mean_abs(alpha, lambda).unwrap(), alpha).unwrap();
                assert!(c >= lb - 0.1, "alpha={alpha} p_c={p_c}: {c} < {lb}");
            }
        }
    }

    #[test]
    fn fading_grid_weights() {
        for (alpha, m) in [(1.8, 1.0), (1.9, 5.0), (2.0, 15.0)] {
            let d = SnrDistribution::new(alpha, m, 25.0).unwrap();
            let g = FadingGrid::from_quantiles(&d, 40).unwrap();
            assert!((0.95..=1.0).contains(&g.raw_weight_sum), "{}", g.raw_weight_sum);
            assert!(g.points.iter().all(|p| p.weight > 0.0));
            assert!((g.points.iter().map(|p| p.weight).sum::<f64>() - 1.0).abs() < 1e-12);
            for p in &g.points {
                assert!((d.snr_at(p.h) / p.gamma - 1.0).abs() < 1e-12);
            }
        }
        let d = SnrDistribution::new(2.0, 1.0, 3.0).unwrap();
        assert_eq!(FadingGrid::from_quantiles(&d, 1).unwrap().points.len(), 1);
    }

    #[test]
    fn ergodic_run_is_deterministic() {
        let cfg = BaConfig { n_h: 4, ..small_cfg(2.0) };
        let d = SnrDistribution::from_physical(1.9, 5.0, 2.0, 1.0).unwrap();
        let a = ergodic_ba(1.9, 1.0, &d, &cfg).unwrap();
        let b = ergodic_ba(1.9, 1.0, &d, &cfg).unwrap();
        assert_eq!(a.capacity.to_bits(), b.capacity.to_bits());
        assert_eq!(a.per_point.len(), 4);
    }
}
