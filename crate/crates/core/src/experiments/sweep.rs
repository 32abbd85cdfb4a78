//! Parameter sweeps.
//!
//! All points of a series that share channel statistics (everything but a
//! ζ sweep) are evaluated from one set of channel draws.

use std::path::{Path, PathBuf};

use log::info;

use super::config::{ExperimentConfig, Series, SweepAxis, XiSetting};
use super::plot::emit_plot;
use super::table::{emit_csv, Cell, ResultRow, ResultTable};
use crate::corrmat::CorrelationSpec;
use crate::dac::{DacModel, Resolution};
use crate::error::Result;
use crate::rates::{MonteCarlo, OperatingPoint, PointEstimate, SystemConfig};

/// System for one `(series, sweep value, DAC)` point with `ξ` resolved.
pub fn point_config(config: &ExperimentConfig, series: &Series, value: f64, bits: Resolution) -> Result<SystemConfig> {
    let mut cfg = config
        .system
        .clone()
        .with_corr(series.corr.clone())
        .with_dac(DacModel::new(bits)?);
    let mut xi = series.xi;
    match config.sweep.axis {
        SweepAxis::SnrDb => cfg = cfg.with_snr_db(value),
        SweepAxis::Xi => xi = XiSetting::Fixed(value),
        SweepAxis::Zeta => cfg.corr = CorrelationSpec::Exponential { zeta: value },
        SweepAxis::Bits => {}
    }
    cfg.xi = match xi {
        XiSetting::Fixed(x) => x,
        XiSetting::Optimal => cfg.clone().with_xi(0.5).bound_model()?.optimal_xi().xi,
    };
    cfg.validate()?;
    Ok(cfg)
}

struct Point {
    sweep_value: f64,
    bits: Resolution,
    cfg: Result<SystemConfig>,
}

fn failed(kind: &str) -> Cell {
    Cell::Failed(kind.to_string())
}

/// `(user, eve, secrecy)` bound cells.
fn bound_cells(cfg: &Result<SystemConfig>) -> [Cell; 3] {
    let model = match cfg.as_ref().map_err(|e| e.kind()).and_then(|c| c.bound_model().map_err(|e| e.kind())) {
        Ok(m) => m,
        Err(kind) => return [failed(kind), failed(kind), failed(kind)],
    };
    let user = model.user_rate_bound();
    let eve = model.eve_rate_bound();
    let secrecy = eve.as_ref().map(|e| (user - e).max(0.0)).map_err(|e| e.kind());
    [
        Cell::Value(user),
        Cell::from_result(&eve),
        match secrecy {
            Ok(s) => Cell::Value(s),
            Err(kind) => failed(kind),
        },
    ]
}

/// `(user, eve, secrecy, std_err)` Monte-Carlo cells.
fn mc_cells(estimate: &PointEstimate) -> [Cell; 4] {
    let user = Cell::Value(estimate.user.mean);
    match estimate.secrecy() {
        Ok((secrecy, se)) => [
            user,
            Cell::from_result(&estimate.eve().map(|e| e.mean)),
            Cell::Value(secrecy),
            Cell::Value(se),
        ],
        Err(e) => [user, failed(e.kind()), failed(e.kind()), failed(e.kind())],
    }
}

fn run_group(points: &[Point], realizations: usize, seed: u64) -> Vec<[Cell; 4]> {
    let valid: Vec<(usize, &SystemConfig)> = points
        .iter()
        .enumerate()
        .filter_map(|(i, p)| p.cfg.as_ref().ok().map(|c| (i, c)))
        .collect();
    let mut out: Vec<[Cell; 4]> = points
        .iter()
        .map(|p| {
            let kind = p.cfg.as_ref().err().map(|e| e.kind()).unwrap_or("internal");
            std::array::from_fn(|_| failed(kind))
        })
        .collect();
    let Some((_, first)) = valid.first() else {
        return out;
    };
    let run = MonteCarlo::from_config(first).and_then(|mc| {
        let ops = valid
            .iter()
            .map(|(_, c)| OperatingPoint::from_config(c))
            .collect::<Result<Vec<_>>>()?;
        mc.run(&ops, realizations, seed)
    });
    match run {
        Ok(estimates) => {
            for ((i, _), est) in valid.iter().zip(&estimates) {
                out[*i] = mc_cells(est);
            }
        }
        Err(e) => {
            for (i, _) in &valid {
                out[*i] = std::array::from_fn(|_| failed(e.kind()));
            }
        }
    }
    out
}

fn run_series(config: &ExperimentConfig, series: &Series) -> Result<ResultTable> {
    let mut points = Vec::new();
    for &value in &config.sweep.values {
        for bits in config.dac_models_at(value)? {
            points.push(Point {
                sweep_value: value,
                bits,
                cfg: point_config(config, series, value, bits),
            });
        }
    }
    info!(
        "{}/{}: {} points, {}",
        config.name,
        series.label,
        points.len(),
        if config.bounds_only {
            "bounds only".to_string()
        } else {
            format!("{} realizations", config.realizations)
        }
    );

    let mc: Vec<[Cell; 4]> = if config.bounds_only {
        points.iter().map(|_| std::array::from_fn(|_| Cell::Value(f64::NAN))).collect()
    } else if config.sweep.axis == SweepAxis::Zeta {
        // Each ζ has its own correlation matrix, hence its own channel draws.
        let mut out = Vec::with_capacity(points.len());
        let mut start = 0;
        while start < points.len() {
            let end = points[start..]
                .iter()
                .position(|p| p.sweep_value != points[start].sweep_value)
                .map_or(points.len(), |off| start + off);
            out.extend(run_group(&points[start..end], config.realizations, config.seed));
            start = end;
        }
        out
    } else {
        run_group(&points, config.realizations, config.seed)
    };

    let rows = points
        .iter()
        .zip(mc)
        .map(|(p, [user_mc, eve_mc, secrecy_mc, std_err])| {
            let [user_bound, eve_bound, secrecy_bound] = bound_cells(&p.cfg);
            ResultRow {
                sweep_value: p.sweep_value,
                bits: p.bits,
                user_rate_mc: user_mc,
                user_rate_bound: user_bound,
                eve_rate_mc: eve_mc,
                eve_rate_bound: eve_bound,
                secrecy_mc,
                secrecy_bound,
                std_err,
                seed: config.seed,
            }
        })
        .collect();
    Ok(ResultTable {
        scenario: config.name.clone(),
        series: series.label.clone(),
        axis: config.sweep.axis.name().to_string(),
        rows,
    })
}

/// One table per series, rows ordered by sweep value then DAC model.
///
/// A point that fails is kept with `ERR:<kind>` cells.
pub fn run_sweep(config: &ExperimentConfig) -> Result<Vec<ResultTable>> {
    config.validate()?;
    config.series.iter().map(|s| run_series(config, s)).collect()
}

/// File stem for a series: the scenario name, suffixed with the series
/// label when there is more than one series.
pub fn output_stem(config: &ExperimentConfig, table: &ResultTable) -> String {
    if config.series.len() == 1 {
        config.name.clone()
    } else {
        format!("{}_{}", config.name, table.series)
    }
}

/// Writes `<stem>.csv` and `<stem>.svg` per table into `out_dir`.
pub fn write_outputs(config: &ExperimentConfig, tables: &[ResultTable], out_dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out_dir)?;
    let mut written = Vec::new();
    for table in tables {
        let stem = output_stem(config, table);
        let csv = out_dir.join(format!("{stem}.csv"));
        emit_csv(table, &csv)?;
        let svg = out_dir.join(format!("{stem}.svg"));
        emit_plot(table, &svg)?;
        written.push(csv);
        written.push(svg);
    }
    Ok(written)
}
