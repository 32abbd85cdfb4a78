//! Matched-filter data precoding and null-space artificial noise.

use crate::error::{Error, Result};
use crate::linalg::{c64, complete_unitary_basis, frobenius_sq, CMatrix, CVector};

/// Precoders for one channel realization plus the power split.
#[derive(Debug, Clone)]
pub struct PrecoderSet {
    /// N×K matched-filter precoder with `tr(WWᴴ) = K`.
    pub w: CMatrix,
    /// N×(N−K) orthonormal basis of the null space of `H` (AN shaping).
    pub v: CMatrix,
    /// N×K orthonormal basis of the row space of `H`; `[V V0]` is unitary.
    pub v0: CMatrix,
    /// Per-stream data power `ξP/K`.
    pub mu: f64,
    /// Per-dimension AN power `(1−ξ)P/(N−K)`.
    pub nu: f64,
    pub xi: f64,
}

impl PrecoderSet {
    pub fn build(h: &CMatrix, power: f64, xi: f64) -> Result<Self> {
        let (k, n) = h.shape();
        let (mu, nu) = power_split(power, xi, n, k)?;
        let (v, v0) = null_space_an(h)?;
        let w = matched_filter(h)?;
        Ok(Self { w, v, v0, mu, nu, xi })
    }
}

/// `W = √K Hᴴ / ‖H‖_F`, so `h_kᵀ w_k = √K ‖h_k‖² / ‖H‖_F` is real and
/// nonnegative.
pub fn mf_precoder(h: &CMatrix) -> Result<CMatrix> {
    check_shape(h)?;
    check_full_row_rank(h)?;
    matched_filter(h)
}

fn matched_filter(h: &CMatrix) -> Result<CMatrix> {
    let k = h.nrows();
    let fro = frobenius_sq(h).sqrt();
    if !(fro > 0.0) {
        return Err(Error::RankDeficient { expected: k });
    }
    Ok(h.adjoint() * c64::new((k as f64).sqrt() / fro, 0.0))
}

/// Orthonormal bases `(V, V0)` of the null space and row space of `H`.
///
/// `HV = 0`, `VᴴV = I`, `V0ᴴV0 = I`, `VᴴV0 = 0`.
pub fn null_space_an(h: &CMatrix) -> Result<(CMatrix, CMatrix)> {
    check_shape(h)?;
    let (k, n) = h.shape();
    let q = complete_unitary_basis(&h.adjoint())?;
    let v0 = q.columns(0, k).into_owned();
    let v = q.columns(k, n - k).into_owned();
    Ok((v, v0))
}

/// `(μ, ν) = (ξP/K, (1−ξ)P/(N−K))`.
pub fn power_split(power: f64, xi: f64, n: usize, k: usize) -> Result<(f64, f64)> {
    if !(xi > 0.0 && xi <= 1.0) {
        return Err(Error::invalid("xi", format!("power allocation factor must lie in (0, 1], got {xi}")));
    }
    if k == 0 || k >= n {
        return Err(Error::invalid("k", format!("need 0 < K < N, got K = {k}, N = {n}")));
    }
    if !(power > 0.0) {
        return Err(Error::invalid("power", format!("must be positive, got {power}")));
    }
    Ok((xi * power / k as f64, (1.0 - xi) * power / (n - k) as f64))
}

/// `x = √μ W s + √ν V t`.
pub fn transmit(w: &CMatrix, v: &CMatrix, s: &CVector, t: &CVector, mu: f64, nu: f64) -> Result<CVector> {
    if w.ncols() != s.len() || v.ncols() != t.len() || w.nrows() != v.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "W {}x{}, s {}, V {}x{}, t {}",
            w.nrows(),
            w.ncols(),
            s.len(),
            v.nrows(),
            v.ncols(),
            t.len()
        )));
    }
    Ok(w * s * c64::new(mu.sqrt(), 0.0) + v * t * c64::new(nu.sqrt(), 0.0))
}

fn check_shape(h: &CMatrix) -> Result<()> {
    let (k, n) = h.shape();
    if k == 0 || k >= n {
        return Err(Error::DimensionMismatch(format!(
            "need a K×N channel with 0 < K < N, got {k}x{n}"
        )));
    }
    Ok(())
}

fn check_full_row_rank(h: &CMatrix) -> Result<()> {
    let gram = h * h.adjoint();
    let eig = gram.symmetric_eigenvalues();
    let max = eig.iter().cloned().fold(0.0, f64::max);
    let min = eig.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(max > 0.0) || min <= 1e-12 * max {
        return Err(Error::RankDeficient { expected: h.nrows() });
    }
    Ok(())
}
