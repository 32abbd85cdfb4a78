//! Finite-resolution DACs under the additive quantization noise model.
//!
//! A b-bit DAC maps the precoded signal `x` to `z = √(1−ρ) x + q`, where the
//! distortion `q` is uncorrelated with `x` and has diagonal covariance
//! `C_q = ρ [μ diag(WWᴴ) + ν diag(VVᴴ)]`.

use std::fmt;
use std::str::FromStr;

use nalgebra::DVector;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{c64, gram_diag, CMatrix, CVector};
use crate::rng::complex_gaussian;

/// Normalized MSE of the Lloyd-Max quantizer for a unit-variance Gaussian
/// input, for 2, 3 and 4 bits. The 1-bit value is exactly `1 − 2/π`.
const LLOYD_MAX_DISTORTION: [f64; 3] = [0.1175, 0.03454, 0.009497];

/// DAC resolution in bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Resolution {
    Bits(u32),
    Infinite,
}

impl Resolution {
    /// Bits as a float, `inf` for an ideal converter.
    pub fn as_f64(self) -> f64 {
        match self {
            Resolution::Bits(b) => b as f64,
            Resolution::Infinite => f64::INFINITY,
        }
    }

    pub fn from_f64(v: f64) -> Result<Self> {
        if v == f64::INFINITY {
            Ok(Resolution::Infinite)
        } else if v >= 1.0 && v.fract() == 0.0 && v <= u32::MAX as f64 {
            Ok(Resolution::Bits(v as u32))
        } else {
            Err(Error::invalid("bits", format!("expected a positive integer or inf, got {v}")))
        }
    }
}

impl fmt::Display for Resolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Resolution::Bits(b) => write!(f, "{b}"),
            Resolution::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Resolution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinite") {
            return Ok(Resolution::Infinite);
        }
        let bits: u32 = s
            .parse()
            .map_err(|_| Error::invalid("bits", format!("expected an integer or `inf`, got `{s}`")))?;
        if bits == 0 {
            return Err(Error::invalid("bits", "a DAC needs at least one bit"));
        }
        Ok(Resolution::Bits(bits))
    }
}

/// Distortion factor ρ for a given resolution.
///
/// Resolutions below 5 bits use the Lloyd-Max table; 5 bits and above use
/// `ρ = (√3 π / 2) · 2^{−2b}`.
pub fn distortion_factor(resolution: Resolution) -> Result<f64> {
    match resolution {
        Resolution::Infinite => Ok(0.0),
        Resolution::Bits(0) => Err(Error::invalid("bits", "a DAC needs at least one bit")),
        Resolution::Bits(1) => Ok(1.0 - 2.0 / std::f64::consts::PI),
        Resolution::Bits(b @ 2..=4) => Ok(LLOYD_MAX_DISTORTION[b as usize - 2]),
        Resolution::Bits(b) => {
            Ok(3f64.sqrt() * std::f64::consts::PI / 2.0 * 2f64.powi(-2 * b.min(600) as i32))
        }
    }
}

/// Linear-gain model of a DAC: resolution, ρ and `ρ′ = ρ/(1−ρ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DacModel {
    resolution: Option<Resolution>,
    rho: f64,
    rho_prime: f64,
}

impl DacModel {
    pub fn new(resolution: Resolution) -> Result<Self> {
        let rho = distortion_factor(resolution)?;
        Ok(Self {
            resolution: Some(resolution),
            rho,
            rho_prime: rho / (1.0 - rho),
        })
    }

    pub fn ideal() -> Self {
        Self {
            resolution: Some(Resolution::Infinite),
            rho: 0.0,
            rho_prime: 0.0,
        }
    }

    /// A model defined directly by its distortion factor, for analysis over
    /// continuous ρ. `resolution()` is `None` unless ρ = 0.
    pub fn from_rho(rho: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&rho) {
            return Err(Error::invalid("rho", format!("need 0 <= rho < 1, got {rho}")));
        }
        Ok(Self {
            resolution: (rho == 0.0).then_some(Resolution::Infinite),
            rho,
            rho_prime: rho / (1.0 - rho),
        })
    }

    pub fn resolution(&self) -> Option<Resolution> {
        self.resolution
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn rho_prime(&self) -> f64 {
        self.rho_prime
    }
}

/// Diagonal of `C_q = ρ [μ diag(WWᴴ) + ν diag(VVᴴ)]`.
pub fn quantization_noise_cov(w: &CMatrix, v: &CMatrix, mu: f64, nu: f64, rho: f64) -> Result<DVector<f64>> {
    if w.nrows() != v.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "W has {} rows but V has {}",
            w.nrows(),
            v.nrows()
        )));
    }
    let dw = gram_diag(w);
    let dv = gram_diag(v);
    Ok((dw * mu + dv * nu) * rho)
}

/// Applies the additive quantization noise model to one transmit vector.
pub fn quantize<R: Rng + ?Sized>(x: &CVector, cq_diag: &DVector<f64>, rho: f64, rng: &mut R) -> Result<CVector> {
    if x.len() != cq_diag.len() {
        return Err(Error::DimensionMismatch(format!(
            "signal has {} entries but C_q has {}",
            x.len(),
            cq_diag.len()
        )));
    }
    if let Some(v) = cq_diag.iter().find(|v| **v < 0.0) {
        return Err(Error::invalid("C_q", format!("negative noise variance {v}")));
    }
    if rho == 0.0 {
        return Ok(x.clone());
    }
    let gain = (1.0 - rho).sqrt();
    Ok(CVector::from_iterator(
        x.len(),
        x.iter().zip(cq_diag.iter()).map(|(xi, var)| {
            let q: c64 = complex_gaussian(rng) * var.sqrt();
            xi * gain + q
        }),
    ))
}
