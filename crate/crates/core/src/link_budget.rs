//! Lunar link budget: antenna gains, Friis received power, receiver noise
//! temperature with lunar brightness, and the mapping to the noise scale.

use crate::error::{invalid, Error, Result};
use std::f64::consts::PI;

/// Speed of light (m/s).
pub const SPEED_OF_LIGHT: f64 = 2.998e8;
/// Boltzmann constant (J/K).
pub const BOLTZMANN: f64 = 1.380_649e-23;
/// Mean lunar radius (m).
pub const MOON_RADIUS: f64 = 1.737e6;

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// Parabolic antenna.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntennaSpec {
    /// Dish diameter (m).
    pub diameter: f64,
    pub aperture_efficiency: f64,
    pub rad_efficiency: f64,
    /// Physical temperature of the antenna (K).
    pub physical_temp: f64,
}

impl AntennaSpec {
    /// Transmitter on the lunar surface.
    pub fn lunar_transmitter() -> Self {
        Self { diameter: 0.254, aperture_efficiency: 0.43, rad_efficiency: 0.95, physical_temp: 300.0 }
    }

    /// Receiver at the orbiting relay.
    pub fn relay_receiver() -> Self {
        Self { diameter: 1.5, aperture_efficiency: 0.54, rad_efficiency: 0.95, physical_temp: 300.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.diameter > 0.0) {
            return Err(invalid("diameter", "must be positive"));
        }
        for (name, v) in [("aperture_efficiency", self.aperture_efficiency), ("rad_efficiency", self.rad_efficiency)] {
            if !(v > 0.0 && v <= 1.0) {
                return Err(invalid(name, format!("{v} not in (0, 1]")));
            }
        }
        if !(self.physical_temp >= 0.0) {
            return Err(invalid("physical_temp", "must be non-negative"));
        }
        Ok(())
    }
}

/// Losses and temperatures of the RF chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RfChain {
    /// Transmit line loss (dB).
    pub loss_tx_db: f64,
    /// Receive line loss (dB).
    pub loss_rx_db: f64,
    /// Receiver noise temperature (K).
    pub receiver_temp: f64,
    /// Physical temperature of the transmission line (K).
    pub line_temp: f64,
    pub line_efficiency: f64,
    /// Cosmic background temperature (K).
    pub cmb_temp: f64,
}

impl Default for RfChain {
    fn default() -> Self {
        Self {
            loss_tx_db: 1.0,
            loss_rx_db: 3.0,
            receiver_temp: 50.0,
            line_temp: 300.0,
            line_efficiency: 0.99,
            cmb_temp: 2.725,
        }
    }
}

impl RfChain {
    pub fn validate(&self) -> Result<()> {
        if !(self.loss_tx_db >= 0.0 && self.loss_rx_db >= 0.0) {
            return Err(invalid("loss", "line losses must be non-negative dB"));
        }
        for (name, v) in [("receiver_temp", self.receiver_temp), ("line_temp", self.line_temp), ("cmb_temp", self.cmb_temp)] {
            if !(v >= 0.0) {
                return Err(invalid(name, format!("{v} K is negative")));
            }
        }
        if !(self.line_efficiency > 0.0 && self.line_efficiency <= 1.0) {
            return Err(invalid("line_efficiency", "not in (0, 1]"));
        }
        Ok(())
    }
}

/// Link geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    /// Transmitter-receiver distance (m).
    pub distance: f64,
    /// Receiver to Moon center (m).
    pub moon_distance: f64,
    pub moon_radius: f64,
}

impl Geometry {
    /// Receiver pointed at the surface: Moon distance equals the link distance.
    pub fn pointing_at_surface(distance: f64) -> Self {
        Self { distance, moon_distance: distance, moon_radius: MOON_RADIUS }
    }
}

/// Receiver noise quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseBudget {
    /// Operational noise temperature (K).
    pub t_op: f64,
    /// Spectral density k·T_op (W/Hz).
    pub n0: f64,
    /// N0·B (W).
    pub noise_power: f64,
    /// Per-quadrature amplitude scale √(N0·B/2).
    pub sigma: f64,
    /// SαS scale 2^{1/α−1/2}·σ.
    pub lambda_n: f64,
}

/// η(Dπf/c)².
pub fn antenna_gain(spec: &AntennaSpec, f: f64) -> Result<f64> {
    spec.validate()?;
    if !(f > 0.0) {
        return Err(invalid("f", "frequency must be positive"));
    }
    Ok(spec.aperture_efficiency * (spec.diameter * PI * f / SPEED_OF_LIGHT).powi(2))
}

/// P_t G_t G_r c² / ((4πfd)² L_t L_r), gains and losses linear.
pub fn friis_received_power(p_t: f64, g_t: f64, g_r: f64, f: f64, d: f64, l_t: f64, l_r: f64) -> Result<f64> {
    if !(p_t >= 0.0) {
        return Err(invalid("p_t", "must be non-negative"));
    }
    if !(g_t > 0.0 && g_r > 0.0 && f > 0.0 && d > 0.0) {
        return Err(invalid("friis", "gains, frequency and distance must be positive"));
    }
    if !(l_t >= 1.0 && l_r >= 1.0) {
        return Err(invalid("loss", "linear losses must be at least 1"));
    }
    Ok(p_t * g_t * g_r * (SPEED_OF_LIGHT / (4.0 * PI * f * d)).powi(2) / (l_t * l_r))
}

/// Spherical-cap solid angle 2π(1 − √(d_M² − R_M²)/d_M) of the Moon.
pub fn moon_solid_angle(geom: &Geometry) -> Result<f64> {
    let (d, r) = (geom.moon_distance, geom.moon_radius);
    if !(r > 0.0) {
        return Err(invalid("moon_radius", "must be positive"));
    }
    if !(d >= r) {
        return Err(invalid("moon_distance", format!("{d} m is inside the Moon (radius {r} m)")));
    }
    let x = r / d;
    Ok(2.0 * PI * x * x / (1.0 + (1.0 - x * x).sqrt()))
}

/// θ² with half-power beamwidth θ = 70°·(c/f)/D.
pub fn antenna_solid_angle(spec: &AntennaSpec, f: f64) -> Result<f64> {
    spec.validate()?;
    if !(f > 0.0) {
        return Err(invalid("f", "frequency must be positive"));
    }
    let theta = 70f64.to_radians() * (SPEED_OF_LIGHT / f) / spec.diameter;
    Ok(theta * theta)
}

/// Brightness contribution min(1, Ω_M/Ω_A)·T_B/2.
pub fn external_antenna_temp(t_b: f64, omega_m: f64, omega_a: f64) -> Result<f64> {
    if !(t_b >= 0.0 && omega_m >= 0.0 && omega_a > 0.0) {
        return Err(invalid("external_antenna_temp", "inputs must be non-negative, beam solid angle positive"));
    }
    Ok((omega_m / omega_a).min(1.0) * t_b / 2.0)
}

/// T_CMB + T_A + T_TL/η_rad + T_R/(η_rad η_TL), with T_A = ΔT + T_AP(1/η_rad − 1)
/// and T_TL = T_TLP(1/η_TL − 1).
pub fn operational_temp(spec: &AntennaSpec, chain: &RfChain, delta_t_ext: f64) -> Result<f64> {
    spec.validate()?;
    chain.validate()?;
    if !(delta_t_ext >= 0.0) {
        return Err(invalid("delta_t_ext", "must be non-negative"));
    }
    let eta_rad = spec.rad_efficiency;
    let t_a = delta_t_ext + spec.physical_temp * (1.0 / eta_rad - 1.0);
    let t_tl = chain.line_temp * (1.0 / chain.line_efficiency - 1.0);
    Ok(chain.cmb_temp + t_a + t_tl / eta_rad + chain.receiver_temp / (eta_rad * chain.line_efficiency))
}

/// Noise density, power and SαS scale for temperature `t_op` over `bandwidth`.
pub fn noise_budget(t_op: f64, bandwidth: f64, alpha: f64) -> Result<NoiseBudget> {
    if !(t_op > 0.0 && bandwidth > 0.0) {
        return Err(invalid("noise_budget", "temperature and bandwidth must be positive"));
    }
    if !(alpha > 1.0 && alpha <= 2.0) {
        return Err(invalid("alpha", format!("{alpha} not in (1, 2]")));
    }
    let n0 = BOLTZMANN * t_op;
    let noise_power = n0 * bandwidth;
    let sigma = (noise_power / 2.0).sqrt();
    Ok(NoiseBudget { t_op, n0, noise_power, sigma, lambda_n: 2f64.powf(1.0 / alpha - 0.5) * sigma })
}

/// Received amplitude budget √P_r.
pub fn amplitude_constraint(p_r: f64) -> Result<f64> {
    if !(p_r >= 0.0) {
        return Err(invalid("p_r", "must be non-negative"));
    }
    Ok(p_r.sqrt())
}

/// Rejects the literal d_M² divisor in the Moon solid angle.
pub fn literal_moon_solid_angle() -> Result<f64> {
    Err(Error::Unsupported(
        "the d_M^2 divisor makes the Moon solid angle dimensionally inconsistent; \
         the spherical-cap form 2*pi*(1 - sqrt(d_M^2 - R_M^2)/d_M) is used instead"
            .into(),
    ))
}

/// Carrier frequency bands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Band {
    S,
    Ka,
}

/// Which antenna gains feed the budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GainsMode {
    /// Tabulated dBi values.
    Table,
    /// η(Dπf/c)² from the antenna specs.
    Computed,
}

impl Band {
    pub fn name(&self) -> &'static str {
        match self {
            Band::S => "S",
            Band::Ka => "Ka",
        }
    }

    pub fn frequency(&self) -> f64 {
        match self {
            Band::S => 2245e6,
            Band::Ka => 27250e6,
        }
    }

    pub fn bandwidth(&self) -> f64 {
        match self {
            Band::S => 1e6,
            Band::Ka => 10e6,
        }
    }

    /// Tabulated (transmit, receive) gains in dBi.
    pub fn table_gains_dbi(&self) -> (f64, f64) {
        match self {
            Band::S => (11.85, 33.53),
            Band::Ka => (28.27, 49.95),
        }
    }

    pub fn gains_dbi(&self, mode: GainsMode, tx: &AntennaSpec, rx: &AntennaSpec) -> Result<(f64, f64)> {
        match mode {
            GainsMode::Table => Ok(self.table_gains_dbi()),
            GainsMode::Computed => Ok((
                linear_to_db(antenna_gain(tx, self.frequency())?),
                linear_to_db(antenna_gain(rx, self.frequency())?),
            )),
        }
    }
}

impl std::str::FromStr for Band {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "s" => Ok(Band::S),
            "ka" => Ok(Band::Ka),
            other => Err(Error::Config(format!("unknown band `{other}` (expected S or Ka)"))),
        }
    }
}

impl std::str::FromStr for GainsMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "table" => Ok(GainsMode::Table),
            "computed" => Ok(GainsMode::Computed),
            other => Err(Error::Config(format!("unknown gains mode `{other}` (expected table or computed)"))),
        }
    }
}

impl GainsMode {
    pub fn name(&self) -> &'static str {
        match self {
            GainsMode::Table => "table",
            GainsMode::Computed => "computed",
        }
    }
}

/// Complete link evaluation at one operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    pub band: Band,
    pub gains_mode: GainsMode,
    pub tx: AntennaSpec,
    pub rx: AntennaSpec,
    pub chain: RfChain,
    pub geometry: Geometry,
    pub p_t: f64,
    pub t_b: f64,
    pub alpha: f64,
}

/// Derived quantities of a [`LinkBudget`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkReport {
    pub g_t_dbi: f64,
    pub g_r_dbi: f64,
    pub p_r: f64,
    pub p_r_dbw: f64,
    pub omega_moon: f64,
    pub omega_beam: f64,
    pub delta_t_ext: f64,
    pub noise: NoiseBudget,
    pub p_c: f64,
}

impl LinkBudget {
    /// Default equipment for `band` at distance `d`.
    pub fn standard(band: Band, gains_mode: GainsMode, d: f64, p_t: f64, t_b: f64, alpha: f64) -> Self {
        Self {
            band,
            gains_mode,
            tx: AntennaSpec::lunar_transmitter(),
            rx: AntennaSpec::relay_receiver(),
            chain: RfChain::default(),
            geometry: Geometry::pointing_at_surface(d),
            p_t,
            t_b,
            alpha,
        }
    }

    pub fn evaluate(&self) -> Result<LinkReport> {
        let f = self.band.frequency();
        let (g_t_dbi, g_r_dbi) = self.band.gains_dbi(self.gains_mode, &self.tx, &self.rx)?;
        let p_r = friis_received_power(
            self.p_t,
            db_to_linear(g_t_dbi),
            db_to_linear(g_r_dbi),
            f,
            self.geometry.distance,
            db_to_linear(self.chain.loss_tx_db),
            db_to_linear(self.chain.loss_rx_db),
        )?;
        let omega_moon = moon_solid_angle(&self.geometry)?;
        let omega_beam = antenna_solid_angle(&self.rx, f)?;
        let delta_t_ext = external_antenna_temp(self.t_b, omega_moon, omega_beam)?;
        let t_op = operational_temp(&self.rx, &self.chain, delta_t_ext)?;
        let noise = noise_budget(t_op, self.band.bandwidth(), self.alpha)?;
        Ok(LinkReport {
            g_t_dbi,
            g_r_dbi,
            p_r,
            p_r_dbw: linear_to_db(p_r),
            omega_moon,
            omega_beam,
            delta_t_ext,
            noise,
            p_c: amplitude_constraint(p_r)?,
        })
    }
}
