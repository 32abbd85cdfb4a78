//! Correlated Rayleigh channels under the Kronecker model.
//!
//! User channel `H = D^{1/2} H̃ R^{1/2}` (K×N) and eavesdropper channel
//! `H_e = (βᵉ)^{1/2} H̃_e R^{1/2}` (M×N), with `H̃`, `H̃_e` i.i.d. CN(0, 1).
//!
//! Row `k` of `H` satisfies `E[h_kᴴ h_k] = β_k R` when `h_k` is read as a
//! row vector; equivalently the column vector `h_k` has covariance `β_k Rᵀ`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::rng::complex_gaussian_matrix;

/// `(d_ref / d)^η`.
pub fn path_loss(d: f64, d_ref: f64, eta: f64) -> Result<f64> {
    if !(d > 0.0) {
        return Err(Error::invalid("distance", format!("must be positive, got {d}")));
    }
    if !(d_ref > 0.0) {
        return Err(Error::invalid("d_ref", format!("must be positive, got {d_ref}")));
    }
    if !(eta >= 0.0) || !eta.is_finite() {
        return Err(Error::invalid("eta", format!("must be a finite nonnegative exponent, got {eta}")));
    }
    Ok((d_ref / d).powf(eta))
}

/// Distance-based path-loss description the β_k were derived from.
#[derive(Debug, Clone, PartialEq)]
pub struct PathLossGeometry {
    pub d_ref: f64,
    pub eta: f64,
    pub distances: Vec<f64>,
}

/// Large-scale fading of the K users and the eavesdropper.
#[derive(Debug, Clone, PartialEq)]
pub struct LargeScaleFading {
    betas: Vec<f64>,
    beta_e: f64,
    geometry: Option<PathLossGeometry>,
}

impl LargeScaleFading {
    pub fn new(betas: Vec<f64>, beta_e: f64) -> Result<Self> {
        if betas.is_empty() {
            return Err(Error::invalid("betas", "need at least one user"));
        }
        if let Some(b) = betas.iter().find(|b| !(**b > 0.0) || !b.is_finite()) {
            return Err(Error::invalid("betas", format!("every beta_k must be positive, got {b}")));
        }
        if !(beta_e > 0.0) || !beta_e.is_finite() {
            return Err(Error::invalid("beta_e", format!("must be positive, got {beta_e}")));
        }
        Ok(Self {
            betas,
            beta_e,
            geometry: None,
        })
    }

    /// All `β_k = 1` and `βᵉ = 1`.
    pub fn unit(k: usize) -> Self {
        Self {
            betas: vec![1.0; k],
            beta_e: 1.0,
            geometry: None,
        }
    }

    /// `β_k = (d_ref / d_k)^η`.
    pub fn from_distances(d_ref: f64, eta: f64, distances: Vec<f64>, beta_e: f64) -> Result<Self> {
        let betas = distances
            .iter()
            .map(|&d| path_loss(d, d_ref, eta))
            .collect::<Result<Vec<_>>>()?;
        let mut fading = Self::new(betas, beta_e)?;
        fading.geometry = Some(PathLossGeometry {
            d_ref,
            eta,
            distances,
        });
        Ok(fading)
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    pub fn beta_e(&self) -> f64 {
        self.beta_e
    }

    pub fn geometry(&self) -> Option<&PathLossGeometry> {
        self.geometry.as_ref()
    }

    pub fn num_users(&self) -> usize {
        self.betas.len()
    }
}

/// One realization of the user and eavesdropper channels.
#[derive(Debug, Clone)]
pub struct ChannelPair {
    /// K×N; row k is user k's channel.
    pub h: CMatrix,
    /// M×N.
    pub h_e: CMatrix,
}

/// Draws `H` then `H_e` from `rng`.
pub fn sample_channels<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    m: usize,
    fading: &LargeScaleFading,
    r_half: &CMatrix,
    rng: &mut R,
) -> Result<ChannelPair> {
    if r_half.nrows() != n || r_half.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "R^(1/2) is {}x{}, expected {n}x{n}",
            r_half.nrows(),
            r_half.ncols()
        )));
    }
    if fading.num_users() != k {
        return Err(Error::DimensionMismatch(format!(
            "{} large-scale fading coefficients for {k} users",
            fading.num_users()
        )));
    }
    let h_iid = complex_gaussian_matrix(k, n, rng);
    let he_iid = complex_gaussian_matrix(m, n, rng);

    let mut h = h_iid * r_half;
    for (mut row, beta) in h.row_iter_mut().zip(fading.betas()) {
        row.scale_mut(beta.sqrt());
    }
    let mut h_e = he_iid * r_half;
    h_e.scale_mut(fading.beta_e().sqrt());
    Ok(ChannelPair { h, h_e })
}

/// `h_kᴴ h_k` (N×N) for row `k`.
#[cfg(test)]
fn row_outer(h: &CMatrix, k: usize) -> CMatrix {
    let row = h.row(k);
    CMatrix::from_fn(h.ncols(), h.ncols(), |i, j| row[i].conj() * row[j])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corrmat::{build_correlation, CorrelationSpec};
    use crate::linalg::row_energies;
    use crate::rng::substream;

    #[test]
    fn path_loss_examples() {
        assert_eq!(path_loss(300.0, 300.0, 3.8).unwrap(), 1.0);
        let pl = path_loss(500.0, 300.0, 3.8).unwrap();
        // (0.6)^3.8 evaluated directly.
        let oracle = (3.8 * (0.6f64).ln()).exp();
        assert!((pl - oracle).abs() < 1e-15);
        // The quoted 0.1436 is a rounding of 0.14354.
        assert!((pl - 0.1436).abs() < 1e-4);
        assert_eq!(path_loss(123.0, 300.0, 0.0).unwrap(), 1.0);
        assert!(path_loss(0.0, 300.0, 3.8).is_err());
        assert!(path_loss(-5.0, 300.0, 3.8).is_err());
    }

    #[test]
    fn fading_from_distances() {
        let f = LargeScaleFading::from_distances(300.0, 3.8, vec![300.0, 500.0], 1.0).unwrap();
        assert_eq!(f.betas()[0], 1.0);
        assert!((f.betas()[1] - 0.1436).abs() < 1e-4);
        assert!(f.geometry().is_some());
        assert!(LargeScaleFading::new(vec![1.0, 0.0], 1.0).is_err());
    }

    fn mean_row_energy(n: usize, beta: f64, draws: u64) -> f64 {
        let r = build_correlation(&CorrelationSpec::Identity, n).unwrap();
        let fading = LargeScaleFading::new(vec![beta], 1.0).unwrap();
        let total: f64 = (0..draws)
            .map(|i| {
                let mut rng = substream(11, i);
                let ch = sample_channels(n, 1, 1, &fading, r.sqrt(), &mut rng).unwrap();
                row_energies(&ch.h)[0]
            })
            .sum();
        total / draws as f64
    }

    #[test]
    fn iid_row_energy_is_n() {
        let e = mean_row_energy(16, 1.0, 2000);
        assert!((e - 16.0).abs() / 16.0 < 0.03, "{e}");
    }

    #[test]
    fn fading_scales_row_energy() {
        let e = mean_row_energy(16, 4.0, 2000);
        assert!((e - 64.0).abs() / 64.0 < 0.03, "{e}");
    }

    #[test]
    fn row_covariance_matches_correlation() {
        let n = 16;
        let r = build_correlation(&CorrelationSpec::Exponential { zeta: 0.5 }, n).unwrap();
        let beta = 2.0;
        let fading = LargeScaleFading::new(vec![beta], 1.0).unwrap();
        let draws = 20_000u64;
        let mut acc = CMatrix::zeros(n, n);
        for i in 0..draws {
            let mut rng = substream(5, i);
            let ch = sample_channels(n, 1, 1, &fading, r.sqrt(), &mut rng).unwrap();
            acc += row_outer(&ch.h, 0);
        }
        acc.unscale_mut(draws as f64 * beta);
        let err = (&acc - r.matrix()).norm() / r.matrix().norm();
        assert!(err < 0.05, "sample covariance error {err}");
    }

    #[test]
    fn dimension_checks() {
        let r = build_correlation(&CorrelationSpec::Identity, 4).unwrap();
        let mut rng = substream(0, 0);
        assert!(sample_channels(5, 2, 1, &LargeScaleFading::unit(2), r.sqrt(), &mut rng).is_err());
        assert!(sample_channels(4, 3, 1, &LargeScaleFading::unit(2), r.sqrt(), &mut rng).is_err());
    }
}
