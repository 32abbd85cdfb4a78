//! Closed-form analyses driven by an experiment config: optimal power
//! allocation per point and the correlation crossover.

use std::io::Write;

use super::config::{ExperimentConfig, SweepAxis, XiSetting};
use super::sweep::point_config;
use crate::dac::{distortion_factor, Resolution};
use crate::error::{Error, Result};
use crate::rates::{find_crossover_zeta, XiMethod, XiPolicy};

#[derive(Debug, Clone, PartialEq)]
pub struct XiOptRow {
    pub series: String,
    pub sweep_value: f64,
    pub bits: Resolution,
    pub xi: f64,
    pub method: XiMethod,
    /// `[R̲_k − C̄]⁺` at `xi`.
    pub secrecy_bound: f64,
}

/// `ξ*` at every `(series, sweep value, DAC)` point.
pub fn xi_opt_report(config: &ExperimentConfig) -> Result<Vec<XiOptRow>> {
    config.validate()?;
    if config.sweep.axis == SweepAxis::Xi {
        return Err(Error::Config("xi-opt needs a sweep axis other than xi".into()));
    }
    let mut rows = Vec::new();
    for series in &config.series {
        let mut fixed = series.clone();
        fixed.xi = XiSetting::Fixed(0.5);
        for &value in &config.sweep.values {
            for bits in config.dac_models_at(value)? {
                let model = point_config(config, &fixed, value, bits)?.bound_model()?;
                let opt = model.optimal_xi();
                rows.push(XiOptRow {
                    series: series.label.clone(),
                    sweep_value: value,
                    bits,
                    xi: opt.xi,
                    method: opt.method,
                    secrecy_bound: opt.margin.max(0.0),
                });
            }
        }
    }
    Ok(rows)
}

pub fn write_xi_opt_csv<W: Write>(rows: &[XiOptRow], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["series", "sweep_value", "bits", "xi_opt", "method", "secrecy_bound"])?;
    for r in rows {
        w.write_record([
            r.series.clone(),
            r.sweep_value.to_string(),
            r.bits.to_string(),
            r.xi.to_string(),
            match r.method {
                XiMethod::ClosedForm => "closed_form".to_string(),
                XiMethod::NumericFallback => "numeric".to_string(),
            },
            r.secrecy_bound.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossoverRow {
    pub series: String,
    /// `None` when the config sweeps ζ itself.
    pub sweep_value: Option<f64>,
    pub bits_high: Resolution,
    pub bits_low: Resolution,
    pub zeta_bar: Option<f64>,
}

/// Crossover `ζ̄` between the highest and lowest configured resolutions,
/// per series and (unless ζ is swept) per sweep value.
pub fn crossover_report(config: &ExperimentConfig) -> Result<Vec<CrossoverRow>> {
    config.validate()?;
    if config.sweep.axis == SweepAxis::Bits {
        return Err(Error::Config("crossover compares the configured DAC list; do not sweep bits".into()));
    }
    let (Some(&bits_low), Some(&bits_high)) = (config.dacs.iter().min(), config.dacs.iter().max()) else {
        return Err(Error::Config("crossover needs DAC resolutions".into()));
    };
    if bits_low == bits_high {
        return Err(Error::Config("crossover needs two distinct DAC resolutions".into()));
    }
    let values: Vec<Option<f64>> = match config.sweep.axis {
        SweepAxis::Zeta => vec![None],
        _ => config.sweep.values.iter().copied().map(Some).collect(),
    };
    let mut rows = Vec::new();
    for series in &config.series {
        for &value in &values {
            let mut fixed = series.clone();
            fixed.xi = XiSetting::Fixed(0.5);
            let model = point_config(config, &fixed, value.unwrap_or(0.0), bits_high)?.bound_model()?;
            let policy = match (config.sweep.axis, series.xi) {
                (SweepAxis::Xi, _) => XiPolicy::Fixed(value.unwrap_or(0.5)),
                (_, XiSetting::Fixed(x)) => XiPolicy::Fixed(x),
                (_, XiSetting::Optimal) => XiPolicy::Optimal,
            };
            let zeta_bar = find_crossover_zeta(
                &model,
                distortion_factor(bits_high)?,
                distortion_factor(bits_low)?,
                policy,
            )?;
            rows.push(CrossoverRow {
                series: series.label.clone(),
                sweep_value: value,
                bits_high,
                bits_low,
                zeta_bar,
            });
        }
    }
    Ok(rows)
}

pub fn write_crossover_csv<W: Write>(rows: &[CrossoverRow], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["series", "sweep_value", "bits_high", "bits_low", "zeta_bar"])?;
    for r in rows {
        w.write_record([
            r.series.clone(),
            r.sweep_value.map_or(String::new(), |v| v.to_string()),
            r.bits_high.to_string(),
            r.bits_low.to_string(),
            r.zeta_bar.map_or("none".to_string(), |z| z.to_string()),
        ])?;
    }
    w.flush()?;
    Ok(())
}
