//! Experiment configuration files.
//!
//! Configs are TOML documents carrying `schema_version = 1`. A config fixes
//! one system, one sweep axis, the DAC resolutions to compare and one or
//! more series (curves) that override the correlation model or `ξ`.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::channel::LargeScaleFading;
use crate::corrmat::{load_explicit_csv, CorrelationSpec};
use crate::dac::Resolution;
use crate::error::{Error, Result};
use crate::rates::SystemConfig;

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_REALIZATIONS: usize = 1000;
pub const DEFAULT_SEED: u64 = 1;

const PRESETS: [(&str, &str); 5] = [
    ("fig1", include_str!("../../presets/fig1.cfg")),
    ("fig2", include_str!("../../presets/fig2.cfg")),
    ("fig3a", include_str!("../../presets/fig3a.cfg")),
    ("fig3b", include_str!("../../presets/fig3b.cfg")),
    ("fig4", include_str!("../../presets/fig4.cfg")),
];

/// Names accepted by [`ExperimentConfig::preset`].
pub fn preset_names() -> impl Iterator<Item = &'static str> {
    PRESETS.iter().map(|(name, _)| *name)
}

/// Source text of a shipped preset.
pub fn preset_source(name: &str) -> Option<&'static str> {
    PRESETS.iter().find(|(n, _)| *n == name).map(|(_, src)| *src)
}

/// The parameter varied along a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    SnrDb,
    Xi,
    Zeta,
    Bits,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::SnrDb => "snr_db",
            SweepAxis::Xi => "xi",
            SweepAxis::Zeta => "zeta",
            SweepAxis::Bits => "bits",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SweepAxis::SnrDb => "SNR (dB)",
            SweepAxis::Xi => "power allocation factor xi",
            SweepAxis::Zeta => "correlation coefficient zeta",
            SweepAxis::Bits => "DAC bits",
        }
    }
}

/// Fixed `ξ` or the closed-form optimum at every point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum XiSetting {
    Fixed(f64),
    Optimal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub axis: SweepAxis,
    /// Strictly increasing; `inf` is allowed on the bits axis.
    pub values: Vec<f64>,
}

/// One curve of an experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub corr: CorrelationSpec,
    pub xi: XiSetting,
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub name: String,
    /// System shared by all series; its `xi`, `dac` and `corr` are
    /// placeholders that each point overrides.
    pub system: SystemConfig,
    pub dacs: Vec<Resolution>,
    pub sweep: Sweep,
    pub series: Vec<Series>,
    pub realizations: usize,
    pub seed: u64,
    /// Skip Monte-Carlo and fill only the closed-form columns.
    pub bounds_only: bool,
}

impl ExperimentConfig {
    /// Parses a config; relative paths inside it resolve against `base_dir`.
    pub fn parse(text: &str, base_dir: Option<&Path>) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        raw.resolve(base_dir)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read `{}`: {e}", path.display())))?;
        Self::parse(&text, path.parent())
    }

    pub fn preset(name: &str) -> Result<Self> {
        let src = preset_source(name).ok_or_else(|| {
            let known: Vec<_> = preset_names().collect();
            Error::Config(format!("unknown preset `{name}` (known: {})", known.join(", ")))
        })?;
        Self::parse(src, None)
    }

    /// DAC models evaluated at each sweep value: the sweep itself on the
    /// bits axis, the configured list otherwise.
    pub fn dac_models_at(&self, sweep_value: f64) -> Result<Vec<Resolution>> {
        match self.sweep.axis {
            SweepAxis::Bits => Ok(vec![Resolution::from_f64(sweep_value)?]),
            _ => Ok(self.dacs.clone()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.realizations == 0 {
            return Err(Error::Config("realizations must be at least 1".into()));
        }
        if self.sweep.values.is_empty() {
            return Err(Error::Config("sweep has no values".into()));
        }
        if self.sweep.values.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Config("sweep values must be strictly increasing".into()));
        }
        if self.sweep.axis != SweepAxis::Bits && self.dacs.is_empty() {
            return Err(Error::Config("at least one DAC resolution is required".into()));
        }
        if self.series.is_empty() {
            return Err(Error::Config("at least one series is required".into()));
        }
        let mut labels: Vec<&str> = self.series.iter().map(|s| s.label.as_str()).collect();
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Config("series labels must be unique".into()));
        }
        for s in &self.series {
            if s.xi == XiSetting::Optimal && self.sweep.axis == SweepAxis::Xi {
                return Err(Error::Config(format!(
                    "series `{}`: xi = \"optimal\" conflicts with a sweep over xi",
                    s.label
                )));
            }
            if self.sweep.axis == SweepAxis::Zeta
                && !matches!(s.corr, CorrelationSpec::Identity | CorrelationSpec::Exponential { .. })
            {
                return Err(Error::Config(format!(
                    "series `{}`: a zeta sweep needs the exponential correlation model",
                    s.label
                )));
            }
            if let XiSetting::Fixed(xi) = s.xi {
                if !(xi > 0.0 && xi <= 1.0) {
                    return Err(Error::Config(format!("series `{}`: xi must lie in (0, 1]", s.label)));
                }
            }
            s.corr.validate()?;
        }
        self.system.clone().with_xi(0.5).validate()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    schema_version: u32,
    name: String,
    realizations: Option<usize>,
    seed: Option<u64>,
    user: Option<usize>,
    system: RawSystem,
    #[serde(default)]
    fading: RawFading,
    correlation: Option<RawCorrelation>,
    #[serde(default)]
    dac: RawDac,
    sweep: RawSweep,
    #[serde(default)]
    series: Vec<RawSeries>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSystem {
    antennas: usize,
    users: usize,
    eavesdropper_antennas: usize,
    #[serde(default = "one")]
    power: f64,
    snr_db: Option<f64>,
    xi: Option<RawXi>,
    #[serde(default)]
    sigma_e2: f64,
}

fn one() -> f64 {
    1.0
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawXi {
    Number(f64),
    Text(String),
}

impl RawXi {
    fn resolve(&self) -> Result<XiSetting> {
        match self {
            RawXi::Number(x) => Ok(XiSetting::Fixed(*x)),
            RawXi::Text(t) if t == "optimal" => Ok(XiSetting::Optimal),
            RawXi::Text(t) => Err(Error::Config(format!("xi must be a number or \"optimal\", got `{t}`"))),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFading {
    #[serde(default)]
    betas: RawBetas,
    #[serde(default = "one")]
    beta_e: f64,
}

impl Default for RawFading {
    fn default() -> Self {
        Self {
            betas: RawBetas::default(),
            beta_e: 1.0,
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawBetas {
    Text(String),
    List(Vec<f64>),
    Geometry { d_ref: f64, eta: f64, distances: Vec<f64> },
}

impl Default for RawBetas {
    fn default() -> Self {
        RawBetas::Text("unit".into())
    }
}

#[derive(Deserialize, Clone)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawCorrelation {
    Identity,
    Exponential {
        zeta: f64,
    },
    Clustered {
        clusters: usize,
        spread: Option<f64>,
        spread_deg: Option<f64>,
        #[serde(default)]
        seed: u64,
    },
    Explicit {
        path: PathBuf,
    },
}

impl RawCorrelation {
    fn resolve(&self, base_dir: Option<&Path>) -> Result<CorrelationSpec> {
        match self {
            RawCorrelation::Identity => Ok(CorrelationSpec::Identity),
            RawCorrelation::Exponential { zeta } => Ok(CorrelationSpec::Exponential { zeta: *zeta }),
            RawCorrelation::Clustered {
                clusters,
                spread,
                spread_deg,
                seed,
            } => {
                let spread = match (spread, spread_deg) {
                    (Some(r), None) => *r,
                    (None, Some(d)) => d.to_radians(),
                    _ => {
                        return Err(Error::Config(
                            "clustered correlation needs exactly one of `spread` (radians) or `spread_deg`".into(),
                        ))
                    }
                };
                Ok(CorrelationSpec::ClusteredAngular {
                    clusters: *clusters,
                    spread,
                    seed: *seed,
                })
            }
            RawCorrelation::Explicit { path } => {
                let full = match base_dir {
                    Some(dir) if path.is_relative() => dir.join(path),
                    _ => path.clone(),
                };
                Ok(CorrelationSpec::Explicit(load_explicit_csv(&full)?))
            }
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDac {
    bits: Vec<RawBits>,
}

impl Default for RawDac {
    fn default() -> Self {
        Self {
            bits: vec![RawBits::Text("inf".into())],
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawBits {
    Int(i64),
    Float(f64),
    Text(String),
}

impl RawBits {
    fn value(&self) -> Result<f64> {
        match self {
            RawBits::Int(b) => Ok(*b as f64),
            RawBits::Float(f) => Ok(*f),
            RawBits::Text(t) => Ok(t.parse::<Resolution>()?.as_f64()),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    axis: SweepAxis,
    values: Option<Vec<RawBits>>,
    start: Option<f64>,
    stop: Option<f64>,
    step: Option<f64>,
}

impl RawSweep {
    fn resolve(&self) -> Result<Sweep> {
        let values = match (&self.values, self.start, self.stop, self.step) {
            (Some(v), None, None, None) => v.iter().map(RawBits::value).collect::<Result<Vec<_>>>()?,
            (None, Some(start), Some(stop), Some(step)) => {
                if !(step > 0.0) || !(stop >= start) {
                    return Err(Error::Config("sweep needs step > 0 and stop >= start".into()));
                }
                let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
                // Round to suppress accumulated representation error, e.g. 0.30000000000000004.
                (0..count)
                    .map(|i| ((start + i as f64 * step) * 1e9).round() / 1e9)
                    .collect()
            }
            _ => {
                return Err(Error::Config(
                    "sweep needs either `values` or all of `start`, `stop`, `step`".into(),
                ))
            }
        };
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::Config("sweep values must be numbers".into()));
        }
        Ok(Sweep { axis: self.axis, values })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSeries {
    label: String,
    correlation: Option<RawCorrelation>,
    xi: Option<RawXi>,
}

impl RawConfig {
    fn resolve(self, base_dir: Option<&Path>) -> Result<ExperimentConfig> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        let s = &self.system;
        let fading = match self.fading.betas {
            RawBetas::Text(t) if t == "unit" => LargeScaleFading::new(vec![1.0; s.users], self.fading.beta_e)?,
            RawBetas::Text(t) => return Err(Error::Config(format!("betas must be \"unit\", a list or a geometry table, got `{t}`"))),
            RawBetas::List(b) => LargeScaleFading::new(b, self.fading.beta_e)?,
            RawBetas::Geometry { d_ref, eta, distances } => {
                LargeScaleFading::from_distances(d_ref, eta, distances, self.fading.beta_e)?
            }
        };
        let mut system = SystemConfig::new(s.antennas, s.users, s.eavesdropper_antennas).with_fading(fading);
        system.power = s.power;
        system.sigma_e2 = s.sigma_e2;
        system.user = self.user.unwrap_or(0);
        system = system.with_snr_db(s.snr_db.unwrap_or(10.0));

        let base_corr = self
            .correlation
            .as_ref()
            .map(|c| c.resolve(base_dir))
            .transpose()?
            .unwrap_or(CorrelationSpec::Identity);
        let base_xi = s.xi.as_ref().map(RawXi::resolve).transpose()?.unwrap_or(XiSetting::Fixed(0.7));

        let series = if self.series.is_empty() {
            vec![Series {
                label: self.name.clone(),
                corr: base_corr,
                xi: base_xi,
            }]
        } else {
            self.series
                .iter()
                .map(|raw| {
                    Ok(Series {
                        label: raw.label.clone(),
                        corr: match &raw.correlation {
                            Some(c) => c.resolve(base_dir)?,
                            None => base_corr.clone(),
                        },
                        xi: raw.xi.as_ref().map(RawXi::resolve).transpose()?.unwrap_or(base_xi),
                    })
                })
                .collect::<Result<_>>()?
        };

        let dacs = self
            .dac
            .bits
            .iter()
            .map(|b| Resolution::from_f64(b.value()?))
            .collect::<Result<Vec<_>>>()?;

        let config = ExperimentConfig {
            name: self.name,
            system,
            dacs,
            sweep: self.sweep.resolve()?,
            series,
            realizations: self.realizations.unwrap_or(DEFAULT_REALIZATIONS),
            seed: self.seed.unwrap_or(DEFAULT_SEED),
            bounds_only: false,
        };
        config.validate()?;
        Ok(config)
    }
}
