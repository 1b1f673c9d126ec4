//! Parameter sweeps over the lunar link: configuration, grid evaluation in
//! physical units, CSV and SVG output.

mod svg;

pub use svg::{emit_plots, PlotKind};

use crate::blahut_arimoto::{ergodic_ba, BaConfig};
use crate::capacity_bounds::{ergodic_capacity_lb_quadrature, outage_ub};
use crate::error::{Error, Result};
use crate::link_budget::{db_to_linear, Band, GainsMode, LinkBudget};
use crate::snr_model::SnrDistribution;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

/// Flat `key = value` configuration text with `#` comments.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", i + 1)))?;
            let key = k.trim().replace('-', "_");
            if key.is_empty() {
                return Err(Error::Config(format!("line {}: empty key", i + 1)));
            }
            if entries.insert(key.clone(), v.trim().to_string()).is_some() {
                return Err(Error::Config(format!("line {}: duplicate key `{key}`", i + 1)));
            }
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    /// Fails on any key outside `allowed`.
    pub fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        for k in self.entries.keys() {
            if !allowed.contains(&k.as_str()) {
                return Err(Error::Config(format!("unknown key `{k}`")));
            }
        }
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }
}

/// Comma-separated numbers or an inclusive `start:step:stop` range.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let num = |t: &str| -> Result<f64> {
        t.trim().parse::<f64>().map_err(|_| Error::Config(format!("`{}` is not a number", t.trim())))
    };
    let parts: Vec<&str> = s.split(':').collect();
    let out = match parts.as_slice() {
        [start, step, stop] => {
            let (a, h, b) = (num(start)?, num(step)?, num(stop)?);
            if !(h > 0.0) || b < a {
                return Err(Error::Config(format!("range `{s}` needs a positive step and start <= stop")));
            }
            let n = ((b - a) / h + 1e-9).floor() as usize;
            (0..=n).map(|i| a + i as f64 * h).collect()
        }
        [_] => s.split(',').filter(|t| !t.trim().is_empty()).map(num).collect::<Result<Vec<_>>>()?,
        _ => return Err(Error::Config(format!("cannot read grid `{s}`"))),
    };
    if out.is_empty() {
        return Err(Error::Config(format!("grid `{s}` is empty")));
    }
    Ok(out)
}

fn parse_bands(s: &str) -> Result<Vec<Band>> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect()
}

/// Sweep definition.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub bands: Vec<Band>,
    /// Brightness temperatures (K).
    pub t_b_grid: Vec<f64>,
    pub alphas: Vec<f64>,
    pub ms: Vec<f64>,
    /// Link distances (m).
    pub distances: Vec<f64>,
    /// Transmit powers (W).
    pub p_ts: Vec<f64>,
    pub gains_mode: GainsMode,
    /// Outage threshold (dB) for every panel; per-panel defaults when unset.
    pub gamma_th_db: Option<f64>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            bands: vec![Band::Ka, Band::S],
            t_b_grid: (0..=24).map(|i| 25.0 * i as f64).collect(),
            alphas: vec![1.8, 1.9, 2.0],
            ms: vec![1.0, 5.0, 15.0],
            distances: vec![1e7, 7e7],
            p_ts: vec![1.0, 10.0],
            gains_mode: GainsMode::Table,
            gamma_th_db: None,
        }
    }
}

/// Config keys read by [`ScenarioConfig::set`].
pub const SCENARIO_KEYS: &[&str] =
    &["bands", "t_b_grid", "alphas", "ms", "distances", "p_ts", "gains", "gamma_th_db"];

/// Default outage threshold (dB) of a (band, distance, power) panel.
///
/// Distances below 3e7 m count as near, powers below 3 W as low.
pub fn default_gamma_th_db(band: Band, d: f64, p_t: f64) -> f64 {
    let near = d < 3e7;
    let low = p_t < 3.0;
    match (band, near, low) {
        (Band::Ka, true, true) => 15.0,
        (Band::Ka, false, true) => 5.0,
        (Band::Ka, true, false) => 30.0,
        (Band::Ka, false, false) => 10.0,
        (Band::S, true, true) => 10.0,
        (Band::S, false, true) => -5.0,
        (Band::S, true, false) => 15.0,
        (Band::S, false, false) => -5.0,
    }
}

impl ScenarioConfig {
    /// Sets one key from its text value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key.replace('-', "_").as_str() {
            "bands" => self.bands = parse_bands(value)?,
            "t_b_grid" => self.t_b_grid = parse_grid(value)?,
            "alphas" => self.alphas = parse_grid(value)?,
            "ms" => self.ms = parse_grid(value)?,
            "distances" => self.distances = parse_grid(value)?,
            "p_ts" => self.p_ts = parse_grid(value)?,
            "gains" => self.gains_mode = value.parse()?,
            "gamma_th_db" => {
                self.gamma_th_db = Some(
                    value.trim().parse().map_err(|_| Error::Config(format!("`{value}` is not a number")))?,
                )
            }
            other => return Err(Error::Config(format!("unknown scenario key `{other}`"))),
        }
        Ok(())
    }

    /// Applies every scenario key present in `file`.
    pub fn apply_file(&mut self, file: &ConfigFile) -> Result<()> {
        for (k, v) in file.iter() {
            if SCENARIO_KEYS.contains(&k) {
                self.set(k, v)?;
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let grids: [(&str, &[f64]); 5] = [
            ("t_b_grid", &self.t_b_grid),
            ("alphas", &self.alphas),
            ("ms", &self.ms),
            ("distances", &self.distances),
            ("p_ts", &self.p_ts),
        ];
        if self.bands.is_empty() {
            return Err(Error::Config("bands is empty".into()));
        }
        for (name, g) in grids {
            if g.is_empty() {
                return Err(Error::Config(format!("{name} is empty")));
            }
            if g.iter().any(|x| !x.is_finite()) {
                return Err(Error::Config(format!("{name} has a non-finite entry")));
            }
        }
        if self.t_b_grid.iter().any(|&t| t < 0.0) {
            return Err(Error::Config("brightness temperatures must be non-negative".into()));
        }
        if self.alphas.iter().any(|&a| !(a > 1.0 && a <= 2.0)) {
            return Err(Error::Config("alphas must lie in (1, 2]".into()));
        }
        if self.ms.iter().any(|&m| m < 0.5) {
            return Err(Error::Config("ms must be at least 0.5".into()));
        }
        if self.distances.iter().any(|&d| d <= crate::link_budget::MOON_RADIUS) {
            return Err(Error::Config("distances must exceed the lunar radius".into()));
        }
        if self.p_ts.iter().any(|&p| p <= 0.0) {
            return Err(Error::Config("p_ts must be positive".into()));
        }
        Ok(())
    }

    /// Threshold (dB) of a panel.
    pub fn gamma_th_db_for(&self, band: Band, d: f64, p_t: f64) -> f64 {
        self.gamma_th_db.unwrap_or_else(|| default_gamma_th_db(band, d, p_t))
    }

    /// `# key = value` lines describing the run.
    pub fn metadata(&self) -> Vec<(String, String)> {
        let list = |g: &[f64]| g.iter().map(|x| format!("{x:e}")).collect::<Vec<_>>().join(",");
        let mut meta = vec![
            ("gains".to_string(), self.gains_mode.name().to_string()),
            ("capacity".to_string(), "bandwidth times the ergodic (1/alpha)log2(1+snr) bound".to_string()),
            ("bands".to_string(), self.bands.iter().map(Band::name).collect::<Vec<_>>().join(",")),
            ("t_b_grid".to_string(), list(&self.t_b_grid)),
            ("alphas".to_string(), list(&self.alphas)),
            ("ms".to_string(), list(&self.ms)),
            ("distances".to_string(), list(&self.distances)),
            ("p_ts".to_string(), list(&self.p_ts)),
        ];
        for &band in &self.bands {
            for &d in &self.distances {
                for &p in &self.p_ts {
                    meta.push((
                        format!("gamma_th_db[{} d={d:e} p_t={p:e}]", band.name()),
                        format!("{:e}", self.gamma_th_db_for(band, d, p)),
                    ));
                }
            }
        }
        meta
    }
}

/// One evaluated grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub band: Band,
    pub f_hz: f64,
    pub bw_hz: f64,
    pub t_b: f64,
    pub alpha: f64,
    pub m: f64,
    pub d: f64,
    pub p_t: f64,
    pub t_op: f64,
    pub p_r_dbw: f64,
    pub lambda_n: f64,
    pub gamma_bar: f64,
    pub capacity_bps: f64,
    pub outage_ub: f64,
}

/// Grid point that could not be evaluated.
#[derive(Debug)]
pub struct RowFailure {
    pub point: String,
    pub error: Error,
}

/// Rows in grid order plus the points that failed.
#[derive(Debug)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    pub failures: Vec<RowFailure>,
}

/// One point of the sweep grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    pub band: Band,
    /// Distance (m).
    pub d: f64,
    /// Transmit power (W).
    pub p_t: f64,
    pub alpha: f64,
    pub m: f64,
    /// Brightness temperature (K).
    pub t_b: f64,
    /// Outage threshold (dB).
    pub gamma_th_db: f64,
}

/// Evaluates one operating point.
pub fn evaluate_point(point: &OperatingPoint, gains_mode: GainsMode) -> Result<SweepRow> {
    let OperatingPoint { band, d, p_t, alpha, m, t_b, gamma_th_db } = *point;
    let report = LinkBudget::standard(band, gains_mode, d, p_t, t_b, alpha).evaluate()?;
    let dist = SnrDistribution::from_physical(alpha, m, report.p_c, report.noise.lambda_n)?;
    let bpcu = ergodic_capacity_lb_quadrature(&dist)?;
    Ok(SweepRow {
        band,
        f_hz: band.frequency(),
        bw_hz: band.bandwidth(),
        t_b,
        alpha,
        m,
        d,
        p_t,
        t_op: report.noise.t_op,
        p_r_dbw: report.p_r_dbw,
        lambda_n: report.noise.lambda_n,
        gamma_bar: dist.gamma_bar(),
        capacity_bps: band.bandwidth() * bpcu,
        outage_ub: outage_ub(&dist, db_to_linear(gamma_th_db))?,
    })
}

/// Evaluates the full grid, ordered band, distance, power, α, m, T_B.
pub fn run_sweep(cfg: &ScenarioConfig) -> Result<SweepOutcome> {
    cfg.validate()?;
    let mut points = Vec::new();
    for &band in &cfg.bands {
        for &d in &cfg.distances {
            for &p_t in &cfg.p_ts {
                let gamma_th_db = cfg.gamma_th_db_for(band, d, p_t);
                for &alpha in &cfg.alphas {
                    for &m in &cfg.ms {
                        for &t_b in &cfg.t_b_grid {
                            points.push(OperatingPoint { band, d, p_t, alpha, m, t_b, gamma_th_db });
                        }
                    }
                }
            }
        }
    }
    let results: Vec<Result<SweepRow>> = points
        .par_iter()
        .map(|p| evaluate_point(p, cfg.gains_mode))
        .collect();
    let mut rows = Vec::with_capacity(results.len());
    let mut failures = Vec::new();
    for (p, r) in points.iter().zip(results) {
        match r {
            Ok(row) => rows.push(row),
            Err(error) => failures.push(RowFailure {
                point: format!(
                    "band={} d={:e} p_t={:e} alpha={} m={} t_b={}",
                    p.band.name(),
                    p.d,
                    p.p_t,
                    p.alpha,
                    p.m,
                    p.t_b
                ),
                error,
            }),
        }
    }
    Ok(SweepOutcome { rows, failures })
}

/// Column names of the sweep CSV.
pub const CSV_HEADER: &str =
    "band,f_hz,bw_hz,t_b_k,alpha,m,d_m,p_t_w,t_op_k,p_r_dbw,lambda_n,gamma_bar,capacity_bps,outage_ub";

fn format_row(r: &SweepRow) -> String {
    let nums = [
        r.f_hz,
        r.bw_hz,
        r.t_b,
        r.alpha,
        r.m,
        r.d,
        r.p_t,
        r.t_op,
        r.p_r_dbw,
        r.lambda_n,
        r.gamma_bar,
        r.capacity_bps,
        r.outage_ub,
    ];
    let mut s = r.band.name().to_string();
    for x in nums {
        write!(s, ",{x:e}").expect("writing to a string");
    }
    s
}

/// CSV text: header, one line per row, then `# key = value` metadata lines.
pub fn csv_text(rows: &[SweepRow], metadata: &[(String, String)]) -> String {
    let mut s = String::with_capacity(160 * (rows.len() + 1));
    s.push_str(CSV_HEADER);
    s.push('\n');
    for r in rows {
        s.push_str(&format_row(r));
        s.push('\n');
    }
    for (k, v) in metadata {
        writeln!(s, "# {k} = {v}").expect("writing to a string");
    }
    s
}

/// Writes header and rows.
pub fn emit_csv(rows: &[SweepRow], path: &Path) -> Result<()> {
    emit_csv_with_metadata(rows, &[], path)
}

/// Writes header, rows and trailing metadata comments.
pub fn emit_csv_with_metadata(rows: &[SweepRow], metadata: &[(String, String)], path: &Path) -> Result<()> {
    std::fs::write(path, csv_text(rows, metadata))?;
    Ok(())
}

/// Reads sweep CSV text back into rows, skipping `#` lines.
pub fn parse_csv(text: &str) -> Result<Vec<SweepRow>> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.starts_with('#') && !l.trim().is_empty());
    match lines.next() {
        Some((_, h)) if h == CSV_HEADER => {}
        _ => return Err(Error::Csv("missing or unexpected header".into())),
    }
    lines
        .map(|(i, line)| {
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 14 {
                return Err(Error::Csv(format!("line {}: {} columns, expected 14", i + 1, cols.len())));
            }
            let band: Band = cols[0].parse().map_err(|e| Error::Csv(format!("line {}: {e}", i + 1)))?;
            let mut v = [0f64; 13];
            for (slot, c) in v.iter_mut().zip(&cols[1..]) {
                *slot = c.parse().map_err(|_| Error::Csv(format!("line {}: `{c}` is not a number", i + 1)))?;
            }
            Ok(SweepRow {
                band,
                f_hz: v[0],
                bw_hz: v[1],
                t_b: v[2],
                alpha: v[3],
                m: v[4],
                d: v[5],
                p_t: v[6],
                t_op: v[7],
                p_r_dbw: v[8],
                lambda_n: v[9],
                gamma_bar: v[10],
                capacity_bps: v[11],
                outage_ub: v[12],
            })
        })
        .collect()
}

/// Amplitude-constrained capacity next to the closed-form bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaRow {
    pub alpha: f64,
    pub m: f64,
    pub p_c: f64,
    pub lambda_n: f64,
    pub gamma_bar: f64,
    pub ba_bpcu: f64,
    pub bound_bpcu: f64,
}

/// Column names of the capacity comparison CSV.
pub const BA_CSV_HEADER: &str = "alpha,m,p_c,lambda_n,gamma_bar,ba_bpcu,bound_bpcu,gap_bpcu";

/// Runs the discretized capacity and the bound for every α.
pub fn run_ba(alphas: &[f64], m: f64, p_c: f64, lambda_n: f64, grid: &BaConfig) -> Result<Vec<BaRow>> {
    alphas
        .iter()
        .map(|&alpha| {
            let dist = SnrDistribution::from_physical(alpha, m, p_c, lambda_n)?;
            let cfg = BaConfig { p_c, ..*grid };
            let ba = ergodic_ba(alpha, lambda_n, &dist, &cfg)?;
            Ok(BaRow {
                alpha,
                m,
                p_c,
                lambda_n,
                gamma_bar: dist.gamma_bar(),
                ba_bpcu: ba.capacity,
                bound_bpcu: ergodic_capacity_lb_quadrature(&dist)?,
            })
        })
        .collect()
}

/// CSV text of capacity comparison rows.
pub fn ba_csv_text(rows: &[BaRow]) -> String {
    let mut s = String::new();
    s.push_str(BA_CSV_HEADER);
    s.push('\n');
    for r in rows {
        writeln!(
            s,
            "{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e}",
            r.alpha,
            r.m,
            r.p_c,
            r.lambda_n,
            r.gamma_bar,
            r.ba_bpcu,
            r.bound_bpcu,
            r.ba_bpcu - r.bound_bpcu
        )
        .expect("writing to a string");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capacity_bounds::outage_ub_complement;
    use proptest::prelude::*;

    fn small() -> ScenarioConfig {
        ScenarioConfig {
            bands: vec![Band::Ka],
            t_b_grid: vec![0.0, 300.0],
            alphas: vec![1.8, 2.0],
            ms: vec![1.0, 15.0],
            distances: vec![1e7],
            p_ts: vec![1.0],
            ..ScenarioConfig::default()
        }
    }

    #[test]
    fn grid_syntax() {
        let g = parse_grid("0:25:600").unwrap();
        assert_eq!(g.len(), 25);
        assert_eq!(g[24], 600.0);
        assert_eq!(parse_grid("1.8, 1.9,2").unwrap(), vec![1.8, 1.9, 2.0]);
        assert!(parse_grid("").is_err());
        assert!(parse_grid("0:-1:5").is_err());
        assert!(parse_grid("a,b").is_err());
    }

    #[test]
    fn default_grid_matches_range_syntax() {
        assert_eq!(ScenarioConfig::default().t_b_grid, parse_grid("0:25:600").unwrap());
    }

    #[test]
    fn config_file_sets_keys() {
        let text = "# sweep\nbands = Ka\nt-b-grid = 0:100:200  # three points\ngains = computed\n";
        let file = ConfigFile::parse(text).unwrap();
        let mut cfg = ScenarioConfig::default();
        cfg.apply_file(&file).unwrap();
        assert_eq!(cfg.bands, vec![Band::Ka]);
        assert_eq!(cfg.t_b_grid, vec![0.0, 100.0, 200.0]);
        assert_eq!(cfg.gains_mode, GainsMode::Computed);
        assert!(ConfigFile::parse("bands = S\nbands = Ka\n").is_err());
        assert!(ConfigFile::parse("no equals sign\n").is_err());
        assert!(file.check_keys(&["bands"]).is_err());
        assert!(file.check_keys(SCENARIO_KEYS).is_ok());
    }

    #[test]
    fn validation_rejects_empty_grids() {
        let mut cfg = small();
        cfg.ms.clear();
        assert!(run_sweep(&cfg).is_err());
        let mut cfg = small();
        cfg.alphas = vec![0.9];
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn rows_are_ordered_and_deterministic() {
        let cfg = small();
        let a = run_sweep(&cfg).unwrap();
        assert!(a.failures.is_empty());
        assert_eq!(a.rows.len(), 8);
        let keys: Vec<(f64, f64, f64)> = a.rows.iter().map(|r| (r.alpha, r.m, r.t_b)).collect();
        let mut sorted = keys.clone();
        sorted.sort_by(|x, y| x.partial_cmp(y).unwrap());
        assert_eq!(keys, sorted);
        let b = run_sweep(&cfg).unwrap();
        assert_eq!(csv_text(&a.rows, &[]), csv_text(&b.rows, &[]));
    }

    #[test]
    fn bps_is_bandwidth_times_bound() {
        let p = OperatingPoint { band: Band::S, d: 1e7, p_t: 1.0, alpha: 1.9, m: 5.0, t_b: 100.0, gamma_th_db: 10.0 };
        let r = evaluate_point(&p, GainsMode::Table).unwrap();
        let dist = SnrDistribution::new(1.9, 5.0, r.gamma_bar).unwrap();
        let bpcu = ergodic_capacity_lb_quadrature(&dist).unwrap();
        assert_eq!(r.capacity_bps, 1e6 * bpcu);
    }

    #[test]
    fn csv_contract() {
        let rows = run_sweep(&small()).unwrap().rows;
        let text = csv_text(&rows, &small().metadata());
        assert!(text.starts_with(CSV_HEADER));
        assert!(text.ends_with('\n'));
        for line in text.lines().filter(|l| !l.starts_with('#')) {
            assert_eq!(line.split(',').count(), 14);
        }
        assert_eq!(parse_csv(&text).unwrap(), rows);
        assert_eq!(csv_text(&[], &[]), format!("{CSV_HEADER}\n"));
        assert!(parse_csv("band\n").is_err());
    }

    #[test]
    fn csv_written_to_disk() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.csv");
        emit_csv(&[], &path).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), format!("{CSV_HEADER}\n"));
        assert!(emit_csv(&[], &dir.path().join("missing/x.csv")).is_err());
    }

    #[test]
    fn panel_thresholds() {
        assert_eq!(default_gamma_th_db(Band::Ka, 1e7, 1.0), 15.0);
        assert_eq!(default_gamma_th_db(Band::Ka, 7e7, 10.0), 10.0);
        assert_eq!(default_gamma_th_db(Band::S, 7e7, 1.0), -5.0);
        let cfg = ScenarioConfig { gamma_th_db: Some(3.0), ..small() };
        assert_eq!(cfg.gamma_th_db_for(Band::S, 1e7, 10.0), 3.0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn csv_round_trips_arbitrary_rows(
            vals in proptest::collection::vec(-1e30f64..1e30, 13),
            ka in any::<bool>(),
        ) {
            let row = SweepRow {
                band: if ka { Band::Ka } else { Band::S },
                f_hz: vals[0], bw_hz: vals[1], t_b: vals[2], alpha: vals[3], m: vals[4], d: vals[5],
                p_t: vals[6], t_op: vals[7], p_r_dbw: vals[8], lambda_n: vals[9], gamma_bar: vals[10],
                capacity_bps: vals[11], outage_ub: vals[12],
            };
            prop_assert_eq!(parse_csv(&csv_text(&[row], &[])).unwrap(), vec![row]);
        }

        #[test]
        fn capacity_falls_and_outage_rises_with_brightness(t in 0.0f64..550.0, dt in 5.0f64..50.0) {
            let at = |t_b: f64| {
                let p = OperatingPoint { band: Band::Ka, d: 7e7, p_t: 1.0, alpha: 1.9, m: 5.0, t_b, gamma_th_db: 5.0 };
                evaluate_point(&p, GainsMode::Table).unwrap()
            };
            let (a, b) = (at(t), at(t + dt));
            prop_assert!(b.capacity_bps < a.capacity_bps);
            prop_assert!(b.outage_ub >= a.outage_ub);
            // the bound saturates at 1 in this panel, so strictness shows in the complement
            let q = |r: &SweepRow| {
                let dist = SnrDistribution::new(r.alpha, r.m, r.gamma_bar).unwrap();
                outage_ub_complement(&dist, db_to_linear(5.0)).unwrap()
            };
            prop_assert!(q(&b) < q(&a));
        }
    }
}
