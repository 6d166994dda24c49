//! `RunConfig`: a flat TOML document with `[protocol]`, `[sweep]` and
//! optional `[dynamics]` / `[sff]` sections.
//!
//! ```toml
//! experiment = "sweep-r"
//! sites = 18
//! boundary = "periodic"
//! momentum = 0
//! parity = 1
//!
//! [protocol]
//! kind = "two-tone"
//! lambda0 = 20.0
//! w0 = 1.0
//! w1 = 1.0
//! gamma_over_pi = 2.0
//!
//! [sweep]
//! axis = "gamma_over_pi"
//! start = 1.5
//! stop = 2.5
//! step = 0.05
//! ```

use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::basis::Boundary;
use crate::drive::{DriveKind, DriveProtocol};
use crate::error::{Error, Result};
use crate::hamiltonians::{DetuningSign, PhysicalParams};
use crate::symmetry::Sector;

/// Default cycle count ceiling for dynamics.
pub const DEFAULT_MAX_CYCLES: u64 = 1_000_000;
/// Beyond this many cycles double-precision phases lose their meaning.
pub const PHASE_GRANULARITY_CYCLES: u64 = 1_000_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    SweepR,
    SpectrumEntanglement,
    Dynamics,
    Sff,
    VerifyMap,
    ChargeNorm,
    FptCompare,
    AsymSweep,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::SweepR => "sweep-r",
            Experiment::SpectrumEntanglement => "spectrum-entanglement",
            Experiment::Dynamics => "dynamics",
            Experiment::Sff => "sff",
            Experiment::VerifyMap => "verify-map",
            Experiment::ChargeNorm => "charge-norm",
            Experiment::FptCompare => "fpt-compare",
            Experiment::AsymSweep => "asym-sweep",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProtocolKind {
    TwoTone,
    Cosine,
    Asymmetric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundaryName {
    Periodic,
    Open,
}

impl From<BoundaryName> for Boundary {
    fn from(b: BoundaryName) -> Self {
        match b {
            BoundaryName::Periodic => Boundary::Periodic,
            BoundaryName::Open => Boundary::Open,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignName {
    Minus,
    Plus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitialState {
    Vac,
    /// `(|Z2⟩ + |Z̄2⟩)/√2`, the fully symmetric Néel state.
    Afm,
    /// The bare Néel word, up spins on even sites.
    Z2,
}

impl InitialState {
    /// Product word generating the state.
    pub fn word(self, sites: usize) -> u32 {
        match self {
            InitialState::Vac => 0,
            InitialState::Afm | InitialState::Z2 => {
                (0..sites).step_by(2).fold(0, |w, j| w | (1 << j))
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            InitialState::Vac => "vac",
            InitialState::Afm => "afm",
            InitialState::Z2 => "z2",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    GammaOverPi,
    /// `p·x` of the asymmetric drive at fixed `x`.
    Px,
    Lambda0OverW1,
    W0,
    /// Chain length, for `verify-map`.
    Sites,
}

impl SweepAxis {
    pub fn column(self) -> &'static str {
        match self {
            SweepAxis::GammaOverPi => "gamma_over_pi",
            SweepAxis::Px => "px",
            SweepAxis::Lambda0OverW1 => "lambda0_over_w1",
            SweepAxis::W0 => "w0",
            SweepAxis::Sites => "sites",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProtocolConfig {
    pub kind: ProtocolKind,
    #[serde(default = "default_sign")]
    pub sign: SignName,
    pub lambda0: f64,
    pub w0: f64,
    #[serde(default)]
    pub w1: f64,
    /// `γ/π = λ0T1/(2π)`; set either this or `x`.
    pub gamma_over_pi: Option<f64>,
    /// `x = λ0T1/π`.
    pub x: Option<f64>,
    #[serde(default = "default_q")]
    pub q: usize,
    #[serde(default)]
    pub w1_sign_flip: bool,
    /// Duty fraction of the asymmetric drive; overridden by a `px` sweep.
    pub p: Option<f64>,
    #[serde(default = "default_harmonic")]
    pub harmonic: usize,
}

fn default_sign() -> SignName {
    SignName::Minus
}
fn default_q() -> usize {
    3
}
fn default_harmonic() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub axis: SweepAxis,
    pub values: Option<Vec<f64>>,
    pub start: Option<f64>,
    pub stop: Option<f64>,
    pub step: Option<f64>,
}

impl SweepConfig {
    /// Grid values; `start..=stop` in `step` increments when `values` is absent.
    pub fn grid(&self) -> Result<Vec<f64>> {
        let v = match (&self.values, self.start, self.stop, self.step) {
            (Some(v), None, None, None) => v.clone(),
            (None, Some(a), Some(b), Some(h)) if h > 0.0 && b >= a => {
                let n = ((b - a) / h + 1e-9).floor() as usize;
                // snapped to 12 decimals so 1.8 + 0.1 prints as 1.9
                (0..=n)
                    .map(|i| ((a + i as f64 * h) * 1e12).round() / 1e12)
                    .collect()
            }
            _ => {
                return Err(Error::Config(
                    "sweep needs `values` or `start`/`stop`/`step` with step > 0".into(),
                ))
            }
        };
        if v.is_empty() {
            return Err(Error::Config("sweep grid is empty".into()));
        }
        if v.windows(2).any(|w| w[1] <= w[0]) || v.iter().any(|x| !x.is_finite()) {
            return Err(Error::Config(
                "sweep grid must be finite and strictly increasing".into(),
            ));
        }
        Ok(v)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DynamicsConfig {
    #[serde(default = "default_state")]
    pub initial_state: InitialState,
    /// Explicit cycle list; otherwise `1, 10, …, max_cycles` (plus 0).
    pub cycles: Option<Vec<u64>>,
    #[serde(default = "default_max_cycles")]
    pub max_cycles: u64,
    /// Points per decade of the logarithmic schedule.
    #[serde(default = "default_per_decade")]
    pub per_decade: usize,
}

fn default_state() -> InitialState {
    InitialState::Vac
}
fn default_max_cycles() -> u64 {
    DEFAULT_MAX_CYCLES
}
fn default_per_decade() -> usize {
    1
}

impl Default for DynamicsConfig {
    fn default() -> Self {
        DynamicsConfig {
            initial_state: InitialState::Vac,
            cycles: None,
            max_cycles: DEFAULT_MAX_CYCLES,
            per_decade: 1,
        }
    }
}

impl DynamicsConfig {
    pub fn schedule(&self) -> Result<Vec<u64>> {
        let mut n = match &self.cycles {
            Some(c) => c.clone(),
            None => {
                if self.per_decade == 0 {
                    return Err(Error::Config("per_decade must be positive".into()));
                }
                let decades = (self.max_cycles.max(1) as f64).log10();
                let steps = (decades * self.per_decade as f64).round() as usize;
                let mut v = vec![0];
                v.extend(
                    (0..=steps)
                        .map(|i| 10f64.powf(i as f64 / self.per_decade as f64).round() as u64),
                );
                v
            }
        };
        n.sort_unstable();
        n.dedup();
        Ok(n)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SffConfig {
    #[serde(default = "default_sff_points")]
    pub window_points: usize,
    /// Relative half-width of the `w0` window.
    #[serde(default = "default_sff_width")]
    pub window_half_width: f64,
    #[serde(default = "default_sff_cycles")]
    pub max_cycles: u64,
    /// Write every `stride`-th cycle.
    #[serde(default = "default_stride")]
    pub stride: u64,
}

fn default_sff_points() -> usize {
    20
}
fn default_sff_width() -> f64 {
    0.05
}
fn default_sff_cycles() -> u64 {
    20_000
}
fn default_stride() -> u64 {
    1
}

impl Default for SffConfig {
    fn default() -> Self {
        SffConfig {
            window_points: 20,
            window_half_width: 0.05,
            max_cycles: 20_000,
            stride: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SteadyConfig {
    pub n0: u64,
    pub window: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub experiment: Experiment,
    pub sites: usize,
    #[serde(default = "default_boundary")]
    pub boundary: BoundaryName,
    pub momentum: Option<usize>,
    pub parity: Option<i8>,
    pub protocol: ProtocolConfig,
    pub sweep: SweepConfig,
    #[serde(default)]
    pub dynamics: DynamicsConfig,
    #[serde(default)]
    pub sff: SffConfig,
    /// Adds a steady-state column to `dynamics` output.
    pub steady: Option<SteadyConfig>,
    #[serde(default)]
    pub seed: u64,
    /// Output directory; the `--out` flag overrides it.
    pub output_dir: Option<String>,
    /// Worker threads; the `--threads` flag and the environment override it.
    pub threads: Option<usize>,
}

fn default_boundary() -> BoundaryName {
    BoundaryName::Periodic
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if !(2..=crate::basis::MAX_SITES).contains(&self.sites) {
            return bad(format!("sites = {} outside 2..=32", self.sites));
        }
        if self.momentum.is_some() && self.boundary == BoundaryName::Open {
            return bad("momentum requires periodic boundaries".into());
        }
        if let Some(p) = self.parity {
            if p != 1 && p != -1 {
                return bad(format!("parity must be ±1, got {p}"));
            }
        }
        let grid = self.sweep.grid()?;
        let p = &self.protocol;
        if !(p.lambda0 > 0.0 && p.w0.is_finite() && p.w1.is_finite()) {
            return bad("lambda0 must be positive and couplings finite".into());
        }
        if self.sweep.axis != SweepAxis::GammaOverPi && p.gamma_over_pi.is_none() && p.x.is_none() {
            return bad("protocol needs gamma_over_pi or x unless gamma is swept".into());
        }
        if p.gamma_over_pi.is_some() && p.x.is_some() {
            return bad("set only one of gamma_over_pi and x".into());
        }
        let positive = match self.sweep.axis {
            SweepAxis::GammaOverPi
            | SweepAxis::Px
            | SweepAxis::Lambda0OverW1
            | SweepAxis::Sites => true,
            SweepAxis::W0 => false,
        };
        if positive && grid[0] <= 0.0 {
            return bad(format!(
                "sweep axis {} must be positive",
                self.sweep.axis.column()
            ));
        }
        let allowed: &[SweepAxis] = match self.experiment {
            Experiment::VerifyMap => &[SweepAxis::Sites],
            Experiment::AsymSweep => &[SweepAxis::Px],
            _ => &[
                SweepAxis::GammaOverPi,
                SweepAxis::Px,
                SweepAxis::Lambda0OverW1,
                SweepAxis::W0,
            ],
        };
        if !allowed.contains(&self.sweep.axis) {
            return bad(format!(
                "axis {} not available for {}",
                self.sweep.axis.column(),
                self.experiment.name()
            ));
        }
        if self.sweep.axis == SweepAxis::Px && p.kind != ProtocolKind::Asymmetric {
            return bad("a px sweep needs the asymmetric protocol".into());
        }
        if self.experiment == Experiment::Sff
            && (self.sff.window_points == 0 || self.sff.stride == 0)
        {
            return bad("sff window_points and stride must be positive".into());
        }
        if let Some(s) = &self.steady {
            if s.window == 0 {
                return bad("steady window must be positive".into());
            }
        }
        Ok(())
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary.into()
    }

    pub fn sector(&self) -> Sector {
        Sector {
            momentum: self.momentum,
            parity: self.parity,
        }
    }

    /// Drive protocol at one sweep value.
    pub fn protocol_at(&self, value: f64) -> Result<DriveProtocol> {
        let p = &self.protocol;
        let mut lambda0 = p.lambda0;
        let (mut w0, mut w1) = (p.w0, p.w1);
        let mut t1 = match (p.gamma_over_pi, p.x) {
            (Some(g), _) => 2.0 * g * PI / lambda0,
            (_, Some(x)) => x * PI / lambda0,
            _ => 0.0,
        };
        let mut duty = p.p;
        match self.sweep.axis {
            SweepAxis::GammaOverPi => t1 = 2.0 * value * PI / lambda0,
            SweepAxis::Lambda0OverW1 => {
                // fixed γ, so T1 follows λ0
                let gamma = 0.5 * p.lambda0 * t1;
                lambda0 = value * w1;
                t1 = 2.0 * gamma / lambda0;
            }
            SweepAxis::W0 => {
                w0 = value;
                if p.kind != ProtocolKind::Asymmetric {
                    w1 = value * if p.w0 != 0.0 { p.w1 / p.w0 } else { 1.0 };
                }
            }
            SweepAxis::Px => duty = Some(value / (lambda0 * t1 / PI)),
            SweepAxis::Sites => {}
        }
        let params =
            PhysicalParams::new(lambda0, w0, w1, t1).map_err(|e| Error::Config(e.to_string()))?;
        let sign = match p.sign {
            SignName::Minus => DetuningSign::Minus,
            SignName::Plus => DetuningSign::Plus,
        };
        let kind = match p.kind {
            ProtocolKind::TwoTone => DriveKind::SquareTwoTone {
                q: p.q,
                w1_sign_flip: p.w1_sign_flip,
            },
            ProtocolKind::Cosine => DriveKind::CosineTwoTone {
                harmonic: p.harmonic,
            },
            ProtocolKind::Asymmetric => DriveKind::SquareAsymmetric {
                p: duty.ok_or_else(|| {
                    Error::Config("asymmetric protocol needs p or a px sweep".into())
                })?,
            },
        };
        let proto = DriveProtocol { params, kind, sign };
        proto.validate().map_err(|e| Error::Config(e.to_string()))?;
        Ok(proto)
    }

    /// Canonical JSON of everything that affects results (not threads or paths).
    pub fn canonical_json(&self) -> String {
        let mut c = self.clone();
        c.threads = None;
        c.output_dir = None;
        serde_json::to_string(&c).expect("config serializes")
    }
}
