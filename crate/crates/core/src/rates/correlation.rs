//! How antenna correlation moves the secrecy gap between two DAC resolutions.
//!
//! Correlation follows the exponential model at the model's N. Gaps are taken
//! between raw margins `R̲_k − C̄`; clamping both sides at zero would flatten
//! the gap to zero wherever both rates vanish.

use super::BoundModel;
use crate::corrmat::exponential_sq_trace;
use crate::error::{Error, Result};

/// Power allocation used at each correlation level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum XiPolicy {
    Fixed(f64),
    /// Each DAC model uses its own `ξ*`.
    Optimal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapPoint {
    pub zeta: f64,
    /// Margin with the higher-resolution DAC.
    pub high: f64,
    /// Margin with the lower-resolution DAC.
    pub low: f64,
    /// `high − low`.
    pub gap: f64,
    pub xi_high: f64,
    pub xi_low: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapProfile {
    pub points: Vec<GapPoint>,
}

impl GapProfile {
    pub fn is_weakly_decreasing(&self) -> bool {
        self.points.windows(2).all(|w| w[1].gap <= w[0].gap)
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.points.windows(2).all(|w| w[1].gap < w[0].gap)
    }
}

fn margin_at(model: &BoundModel, policy: XiPolicy) -> Result<(f64, f64)> {
    match policy {
        XiPolicy::Fixed(xi) => Ok((model.with_xi(xi).secrecy_margin()?, xi)),
        XiPolicy::Optimal => {
            let opt = model.optimal_xi();
            if !opt.margin.is_finite() {
                return Err(Error::EveDofExhausted(f64::NAN));
            }
            // Both rates vanish as ξ → 0, so the optimized secrecy rate is
            // never below zero even when every interior ξ loses.
            Ok((opt.margin.max(0.0), opt.xi))
        }
    }
}

/// Gap between DAC distortions `rho_high < rho_low` at correlation `zeta`.
pub fn secrecy_gap_at(base: &BoundModel, rho_high: f64, rho_low: f64, zeta: f64, policy: XiPolicy) -> Result<GapPoint> {
    if !(0.0..1.0).contains(&zeta) {
        return Err(Error::invalid("zeta", format!("need 0 <= zeta < 1, got {zeta}")));
    }
    let model = base.with_tr_r2(exponential_sq_trace(zeta, base.n));
    let (high, xi_high) = margin_at(&model.with_rho(rho_high), policy)?;
    let (low, xi_low) = margin_at(&model.with_rho(rho_low), policy)?;
    Ok(GapPoint {
        zeta,
        high,
        low,
        gap: high - low,
        xi_high,
        xi_low,
    })
}

/// Gap profile over an increasing grid of `ζ`.
pub fn secrecy_gap_monotonicity(
    base: &BoundModel,
    rho_high: f64,
    rho_low: f64,
    zetas: &[f64],
    policy: XiPolicy,
) -> Result<GapProfile> {
    if zetas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("zeta", "grid must be strictly increasing"));
    }
    let points = zetas
        .iter()
        .map(|&z| secrecy_gap_at(base, rho_high, rho_low, z, policy))
        .collect::<Result<_>>()?;
    Ok(GapProfile { points })
}

/// Correlation level `ζ̄` at which the gap changes sign.
///
/// Scans `ζ` on a 0.001 grid while the bounds exist, then bisects the first
/// bracket where the gap changes sign to `|gap| ≤ 1e-6`. `None` if it never
/// does.
pub fn find_crossover_zeta(base: &BoundModel, rho_high: f64, rho_low: f64, policy: XiPolicy) -> Result<Option<f64>> {
    let gap = |z: f64| secrecy_gap_at(base, rho_high, rho_low, z, policy).map(|p| p.gap);
    // Last grid point with a nonzero gap; exact zeros carry no sign.
    let mut last: Option<(f64, f64)> = None;
    for i in 0..1000 {
        let z = i as f64 / 1000.0;
        let g = match gap(z) {
            Ok(g) => g,
            Err(e) if i == 0 => return Err(e),
            // Past this point the eavesdropper bound no longer exists.
            Err(_) => break,
        };
        if g == 0.0 {
            continue;
        }
        if let Some((z_lo, g_lo)) = last {
            if g.signum() != g_lo.signum() {
                return bisect(&gap, z_lo, z, g_lo).map(Some);
            }
        }
        last = Some((z, g));
    }
    Ok(None)
}

fn bisect(gap: &impl Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64, g_lo: f64) -> Result<f64> {
    let sign_lo = g_lo.signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let g = gap(mid)?;
        if g.abs() <= 1e-6 {
            return Ok(mid);
        }
        if g.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
