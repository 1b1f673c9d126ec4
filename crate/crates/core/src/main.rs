use clap::{Args, Parser, Subcommand, ValueEnum};
use lunarlink::blahut_arimoto::BaConfig;
use lunarlink::capacity_bounds::{
    ergodic_capacity_lb_meijerg, ergodic_capacity_lb_quadrature, outage_ub, RationalAlpha,
};
use lunarlink::link_budget::{db_to_linear, literal_moon_solid_angle, Band, GainsMode, LinkBudget};
use lunarlink::mc_oracle::{validation_suite, McConfig, DEFAULT_SEED};
use lunarlink::scenario::{
    ba_csv_text, csv_text, emit_plots, parse_grid, run_ba, run_sweep, ConfigFile, ScenarioConfig, SCENARIO_KEYS,
};
use lunarlink::snr_model::SnrDistribution;
use lunarlink::Error;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser, Debug)]
#[command(name = "lunarlink", version, about = "Capacity and outage of lunar links under SaS noise and Nakagami-m fading")]
struct Cli {
    /// Flat `key = value` file; keys mirror the long flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Antenna gains: table or computed.
    #[arg(long, global = true)]
    gains: Option<String>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Moon solid angle with the d_M^2 divisor; always rejected.
    #[arg(long, global = true)]
    literal_moon_divisor: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BoundKind {
    Ergodic,
    Outage,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Quadrature,
    ClosedForm,
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Method as ValueEnum>::from_str(s, true)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// One-shot link budget report.
    Linkbudget(LinkArgs),
    /// Single-point ergodic or outage bound.
    Bound(BoundArgs),
    /// Amplitude-constrained capacity by Blahut-Arimoto, written as CSV.
    Ba(BaArgs),
    /// Grid sweep written as CSV and SVG charts.
    Sweep(SweepArgs),
    /// Monte-Carlo validation of every analytical quantity.
    Validate(ValidateArgs),
}

#[derive(Args, Debug)]
struct LinkArgs {
    #[arg(long)]
    band: Option<String>,
    /// Distance (m).
    #[arg(long)]
    d: Option<f64>,
    /// Transmit power (W).
    #[arg(long)]
    p_t: Option<f64>,
    /// Brightness temperature (K).
    #[arg(long)]
    t_b: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    m: Option<f64>,
}

#[derive(Args, Debug)]
struct BoundArgs {
    #[arg(value_enum)]
    kind: BoundKind,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    m: Option<f64>,
    /// Average SNR; derived from --p-c and --lambda-n when absent.
    #[arg(long)]
    gamma_bar: Option<f64>,
    #[arg(long)]
    p_c: Option<f64>,
    #[arg(long)]
    lambda_n: Option<f64>,
    /// Outage threshold (dB).
    #[arg(long)]
    gamma_th_db: Option<f64>,
    #[arg(long, value_enum)]
    method: Option<Method>,
}

#[derive(Args, Debug)]
struct BaArgs {
    #[arg(long)]
    alphas: Option<String>,
    #[arg(long)]
    m: Option<f64>,
    #[arg(long)]
    p_c: Option<f64>,
    #[arg(long)]
    lambda_n: Option<f64>,
    /// Input alphabet size.
    #[arg(long)]
    n_x: Option<usize>,
    /// Output alphabet size.
    #[arg(long)]
    n_y: Option<usize>,
    /// Fading grid size.
    #[arg(long)]
    n_h: Option<usize>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    bands: Option<String>,
    /// List or start:step:stop (K).
    #[arg(long)]
    t_b_grid: Option<String>,
    #[arg(long)]
    alphas: Option<String>,
    #[arg(long)]
    ms: Option<String>,
    #[arg(long)]
    distances: Option<String>,
    #[arg(long)]
    p_ts: Option<String>,
    /// Outage threshold (dB) for every panel.
    #[arg(long)]
    gamma_th_db: Option<f64>,
    #[arg(long)]
    no_plots: bool,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    #[arg(long)]
    n_samples: Option<usize>,
}

const GLOBAL_KEYS: &[&str] = &["seed", "out", "gains", "format", "literal_moon_divisor"];
const POINT_KEYS: &[&str] = &[
    "band", "d", "p_t", "t_b", "alpha", "m", "gamma_bar", "p_c", "lambda_n", "method", "n_x", "n_y", "n_h",
    "n_samples", "no_plots",
];

enum Failure {
    Usage(String),
    Validation,
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(_) | Error::InvalidParameter { .. } => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

/// Command-line values over config-file values over defaults.
struct Settings {
    file: ConfigFile,
}

impl Settings {
    fn get<T: FromStr>(&self, cli: Option<T>, key: &str, default: T) -> Result<T, Failure> {
        if let Some(v) = cli {
            return Ok(v);
        }
        match self.file.get(key) {
            Some(s) => s
                .parse()
                .map_err(|_| Failure::Usage(format!("config key `{key}`: cannot read `{s}`"))),
            None => Ok(default),
        }
    }

    fn flag(&self, cli: bool, key: &str) -> Result<bool, Failure> {
        self.get(cli.then_some(true), key, false)
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation) => ExitCode::from(1),
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let file = match &cli.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let allowed: Vec<&str> = GLOBAL_KEYS.iter().chain(POINT_KEYS).chain(SCENARIO_KEYS).copied().collect();
    file.check_keys(&allowed)?;
    let settings = Settings { file };
    if settings.flag(cli.literal_moon_divisor, "literal_moon_divisor")? {
        let reason = literal_moon_solid_angle().err().map(|e| e.to_string()).unwrap_or_default();
        return Err(Failure::Usage(reason));
    }
    let seed = settings.get(cli.seed, "seed", DEFAULT_SEED)?;
    let out = settings.get(cli.out.clone(), "out", PathBuf::from("."))?;
    let format = settings.get(cli.format, "format", Format::Text)?;
    let gains: GainsMode = match &cli.gains {
        Some(g) => g.parse()?,
        None => settings.get(None, "gains", GainsMode::Table)?,
    };

    match cli.command {
        Command::Linkbudget(a) => linkbudget(&settings, a, gains, format),
        Command::Bound(a) => bound(&settings, a, format),
        Command::Ba(a) => ba(&settings, a, &out),
        Command::Sweep(a) => sweep(&settings, a, cli.gains.as_deref(), &out),
        Command::Validate(a) => validate(&settings, a, seed, format),
    }
}

fn print_pairs(pairs: &[(&str, String)], format: Format) {
    match format {
        Format::Text => {
            for (k, v) in pairs {
                println!("{k:<16} {v}");
            }
        }
        Format::Csv => {
            println!("{}", pairs.iter().map(|p| p.0).collect::<Vec<_>>().join(","));
            println!("{}", pairs.iter().map(|p| p.1.as_str()).collect::<Vec<_>>().join(","));
        }
    }
}

fn linkbudget(s: &Settings, a: LinkArgs, gains: GainsMode, format: Format) -> Outcome {
    let band: Band = match a.band {
        Some(b) => b.parse()?,
        None => s.get(None, "band", Band::Ka)?,
    };
    let d = s.get(a.d, "d", 1e7)?;
    let p_t = s.get(a.p_t, "p_t", 1.0)?;
    let t_b = s.get(a.t_b, "t_b", 0.0)?;
    let alpha = s.get(a.alpha, "alpha", 2.0)?;
    let m = s.get(a.m, "m", 15.0)?;
    let r = LinkBudget::standard(band, gains, d, p_t, t_b, alpha).evaluate()?;
    let dist = SnrDistribution::from_physical(alpha, m, r.p_c, r.noise.lambda_n)?;
    let bpcu = ergodic_capacity_lb_quadrature(&dist)?;
    print_pairs(
        &[
            ("band", band.name().to_string()),
            ("gains", gains.name().to_string()),
            ("f_hz", format!("{:e}", band.frequency())),
            ("bw_hz", format!("{:e}", band.bandwidth())),
            ("g_t_dbi", format!("{:.4}", r.g_t_dbi)),
            ("g_r_dbi", format!("{:.4}", r.g_r_dbi)),
            ("p_r_dbw", format!("{:.4}", r.p_r_dbw)),
            ("omega_moon_sr", format!("{:e}", r.omega_moon)),
            ("omega_beam_sr", format!("{:e}", r.omega_beam)),
            ("delta_t_ext_k", format!("{:.4}", r.delta_t_ext)),
            ("t_op_k", format!("{:.4}", r.noise.t_op)),
            ("n0_w_per_hz", format!("{:e}", r.noise.n0)),
            ("lambda_n", format!("{:e}", r.noise.lambda_n)),
            ("p_c", format!("{:e}", r.p_c)),
            ("gamma_bar", format!("{:e}", dist.gamma_bar())),
            ("capacity_bps", format!("{:e}", bpcu * band.bandwidth())),
        ],
        format,
    );
    Ok(())
}

fn bound(s: &Settings, a: BoundArgs, format: Format) -> Outcome {
    let alpha = s.get(a.alpha, "alpha", 2.0)?;
    let m = s.get(a.m, "m", 1.0)?;
    let gamma_bar: Option<f64> = match a.gamma_bar {
        Some(g) => Some(g),
        None => s.file.get("gamma_bar").map(|v| v.parse()).transpose().map_err(|_| {
            Failure::Usage("config key `gamma_bar`: not a number".into())
        })?,
    };
    let dist = match gamma_bar {
        Some(g) => SnrDistribution::new(alpha, m, g)?,
        None => {
            let p_c = s.get(a.p_c, "p_c", 5.0)?;
            let lambda_n = s.get(a.lambda_n, "lambda_n", std::f64::consts::FRAC_1_SQRT_2)?;
            SnrDistribution::from_physical(alpha, m, p_c, lambda_n)?
        }
    };
    let mut pairs = vec![
        ("alpha", format!("{alpha}")),
        ("m", format!("{m}")),
        ("gamma_bar", format!("{:e}", dist.gamma_bar())),
    ];
    match a.kind {
        BoundKind::Ergodic => {
            let value = match s.get(a.method, "method", Method::Quadrature)? {
                Method::Quadrature => ergodic_capacity_lb_quadrature(&dist)?,
                Method::ClosedForm => ergodic_capacity_lb_meijerg(&dist, RationalAlpha::from_alpha(alpha, 16)?)?,
            };
            pairs.push(("ergodic_bpcu", format!("{value:e}")));
        }
        BoundKind::Outage => {
            let th_db = s.get(a.gamma_th_db, "gamma_th_db", 10.0)?;
            pairs.push(("gamma_th_db", format!("{th_db}")));
            pairs.push(("outage_ub", format!("{:e}", outage_ub(&dist, db_to_linear(th_db))?)));
        }
    }
    print_pairs(&pairs, format);
    Ok(())
}

fn ensure_dir(out: &Path) -> Outcome {
    std::fs::create_dir_all(out).map_err(|e| Failure::Runtime(format!("{}: {e}", out.display())))
}

fn ba(s: &Settings, a: BaArgs, out: &Path) -> Outcome {
    let alphas = match a.alphas.or_else(|| s.file.get("alphas").map(str::to_string)) {
        Some(g) => parse_grid(&g)?,
        None => vec![1.8, 1.9, 2.0],
    };
    let m = s.get(a.m, "m", 1.0)?;
    let p_c = s.get(a.p_c, "p_c", 5.0)?;
    let lambda_n = s.get(a.lambda_n, "lambda_n", std::f64::consts::FRAC_1_SQRT_2)?;
    let defaults = BaConfig::new(p_c);
    let grid = BaConfig {
        m_x: s.get(a.n_x, "n_x", defaults.m_x)?,
        m_n: s.get(a.n_y, "n_y", defaults.m_n)?,
        n_h: s.get(a.n_h, "n_h", defaults.n_h)?,
        ..defaults
    };
    let rows = run_ba(&alphas, m, p_c, lambda_n, &grid)?;
    ensure_dir(out)?;
    let path = out.join("ba.csv");
    let text = ba_csv_text(&rows);
    std::fs::write(&path, &text).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?;
    print!("{text}");
    Ok(())
}

fn sweep(s: &Settings, a: SweepArgs, gains_cli: Option<&str>, out: &Path) -> Outcome {
    let mut cfg = ScenarioConfig::default();
    cfg.apply_file(&s.file)?;
    let overrides = [
        ("bands", a.bands),
        ("t_b_grid", a.t_b_grid),
        ("alphas", a.alphas),
        ("ms", a.ms),
        ("distances", a.distances),
        ("p_ts", a.p_ts),
        ("gains", gains_cli.map(str::to_string)),
        ("gamma_th_db", a.gamma_th_db.map(|g| g.to_string())),
    ];
    for (k, v) in overrides {
        if let Some(v) = v {
            cfg.set(k, &v)?;
        }
    }
    let outcome = run_sweep(&cfg)?;
    ensure_dir(out)?;
    let path = out.join("sweep.csv");
    std::fs::write(&path, csv_text(&outcome.rows, &cfg.metadata()))
        .map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?;
    println!("wrote {} rows to {}", outcome.rows.len(), path.display());
    if !s.flag(a.no_plots, "no_plots")? {
        let charts = emit_plots(&outcome.rows, &out.join("sweep_"))?;
        println!("wrote {} charts", charts.len());
    }
    if !outcome.failures.is_empty() {
        eprintln!("{} grid points failed:", outcome.failures.len());
        for f in &outcome.failures {
            eprintln!("  {}: {}", f.point, f.error);
        }
    }
    Ok(())
}

fn validate(s: &Settings, a: ValidateArgs, seed: u64, format: Format) -> Outcome {
    let n = s.get(a.n_samples, "n_samples", McConfig::default().n_samples)?;
    let cfg = McConfig::new(n, seed)?;
    let checks = validation_suite(&cfg)?;
    if format == Format::Csv {
        println!("check,passed,detail");
    }
    for c in &checks {
        match format {
            Format::Text => println!("[{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail),
            Format::Csv => println!("\"{}\",{},\"{}\"", c.name, c.passed, c.detail),
        }
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    eprintln!("{} of {} checks passed", checks.len() - failed, checks.len());
    if failed > 0 {
        return Err(Failure::Validation);
    }
    Ok(())
}
