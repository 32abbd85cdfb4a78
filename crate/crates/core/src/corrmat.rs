//! Transmit-side spatial correlation for the Kronecker channel model.
//!
//! A [`CorrMatrix`] is a Hermitian positive semidefinite N×N matrix with
//! `tr(R) = N`. Its eigendecomposition and square root are computed once at
//! construction and shared read-only by every channel realization.

use std::f64::consts::PI;
use std::io::Read;
use std::path::Path;

use nalgebra::{DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{c64, frobenius_sq, hermitian_defect, CMatrix};

/// Eigenvalues in `[-PSD_TOLERANCE, 0)` are numerical noise and get clamped.
pub const PSD_TOLERANCE: f64 = 1e-10;
const HERMITIAN_TOLERANCE: f64 = 1e-12;

/// How the transmit correlation matrix is generated.
#[derive(Debug, Clone, PartialEq)]
pub enum CorrelationSpec {
    /// Uncorrelated antennas, `R = I`.
    Identity,
    /// `R_ij = ζ^{|i−j|}` with `0 ≤ ζ < 1`.
    Exponential { zeta: f64 },
    /// Sum of `clusters` Gaussian angular clusters with angular spread
    /// `spread` (radians). Cluster centres are drawn uniformly on
    /// `[−spread/2, spread/2]` once, from `seed`.
    ClusteredAngular { clusters: usize, spread: f64, seed: u64 },
    /// A user-supplied Hermitian PSD matrix; its trace is rescaled to N.
    Explicit(CMatrix),
}

impl CorrelationSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            CorrelationSpec::Identity | CorrelationSpec::Explicit(_) => Ok(()),
            CorrelationSpec::Exponential { zeta } => {
                if (0.0..1.0).contains(&zeta) {
                    Ok(())
                } else {
                    Err(Error::invalid("zeta", format!("need 0 <= zeta < 1, got {zeta}")))
                }
            }
            CorrelationSpec::ClusteredAngular { clusters, spread, .. } => {
                if clusters == 0 {
                    return Err(Error::invalid("clusters", "need at least one cluster"));
                }
                if !(spread > 0.0 && spread <= PI) {
                    return Err(Error::invalid(
                        "spread",
                        format!("need 0 < spread <= pi, got {spread}"),
                    ));
                }
                Ok(())
            }
        }
    }

    /// The trace-normalized correlation matrix, without decomposing it.
    pub fn raw_matrix(&self, n: usize) -> Result<CMatrix> {
        check_dim(n)?;
        self.validate()?;
        let r = match self {
            CorrelationSpec::Identity => CMatrix::identity(n, n),
            CorrelationSpec::Exponential { zeta } => {
                CMatrix::from_fn(n, n, |i, j| c64::new(zeta.powi(i.abs_diff(j) as i32), 0.0))
            }
            CorrelationSpec::ClusteredAngular {
                clusters,
                spread,
                seed,
            } => clustered_matrix(n, *clusters, *spread, *seed),
            CorrelationSpec::Explicit(m) => {
                if m.nrows() != n || m.ncols() != n {
                    return Err(Error::DimensionMismatch(format!(
                        "explicit correlation is {}x{}, expected {n}x{n}",
                        m.nrows(),
                        m.ncols()
                    )));
                }
                m.clone()
            }
        };
        normalize_trace(r)
    }

    /// `tr(R²)` for an N-antenna array.
    ///
    /// Identity and exponential models are evaluated analytically, which also
    /// admits the fully correlated limit `ζ = 1` (`tr(R²) = N²`).
    pub fn sq_trace(&self, n: usize) -> Result<f64> {
        match *self {
            CorrelationSpec::Identity => Ok(n as f64),
            CorrelationSpec::Exponential { zeta } => {
                if !(0.0..=1.0).contains(&zeta) {
                    return Err(Error::invalid("zeta", format!("need 0 <= zeta <= 1, got {zeta}")));
                }
                Ok(exponential_sq_trace(zeta, n))
            }
            _ => Ok(frobenius_sq(&self.raw_matrix(n)?)),
        }
    }
}

/// `Σ_{i,j} ζ^{2|i−j|} = N + 2 Σ_{d=1}^{N−1} (N−d) ζ^{2d}`.
pub fn exponential_sq_trace(zeta: f64, n: usize) -> f64 {
    let z2 = zeta * zeta;
    let mut acc = n as f64;
    let mut pow = 1.0;
    for d in 1..n {
        pow *= z2;
        acc += 2.0 * (n - d) as f64 * pow;
    }
    acc
}

/// Limit of `tr(R²)/N` for the exponential model as `N → ∞`.
pub fn exponential_sq_trace_limit(zeta: f64) -> f64 {
    (1.0 + zeta * zeta) / (1.0 - zeta * zeta)
}

fn check_dim(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::invalid("n", format!("need at least 2 antennas, got {n}")));
    }
    Ok(())
}

fn clustered_matrix(n: usize, clusters: usize, spread: f64, seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let angles: Vec<f64> = (0..clusters)
        .map(|_| rng.random_range(-spread / 2.0..=spread / 2.0))
        .collect();
    // Hermitian Toeplitz: fill by lag.
    let lag_value = |d: f64| -> c64 {
        let sum: c64 = angles
            .iter()
            .map(|phi| {
                let steer = c64::from_polar(1.0, PI * d * phi.sin());
                let spread_term = (-(spread * spread) / 2.0 * (PI * d * phi.cos()).powi(2)).exp();
                steer * spread_term
            })
            .sum();
        sum / clusters as f64
    };
    let lags: Vec<c64> = (0..n).map(|d| lag_value(d as f64)).collect();
    CMatrix::from_fn(n, n, |s, m| {
        if s >= m {
            lags[s - m]
        } else {
            lags[m - s].conj()
        }
    })
}

fn normalize_trace(r: CMatrix) -> Result<CMatrix> {
    let n = r.nrows();
    if r.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "correlation matrix must be square, got {}x{}",
            n,
            r.ncols()
        )));
    }
    let scale = r.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    let defect = hermitian_defect(&r);
    if defect > HERMITIAN_TOLERANCE * scale {
        return Err(Error::NotHermitian(defect));
    }
    let trace = r.diagonal().iter().map(|z| z.re).sum::<f64>();
    if !(trace > 0.0) {
        return Err(Error::NotPositiveSemidefinite(trace / n as f64));
    }
    let factor = n as f64 / trace;
    // Exact Hermitian symmetry after rescaling.
    let mut out = (&r + r.adjoint()) * c64::new(0.5 * factor, 0.0);
    for i in 0..n {
        out[(i, i)].im = 0.0;
    }
    Ok(out)
}

/// Hermitian PSD transmit correlation with cached spectral data.
#[derive(Debug, Clone)]
pub struct CorrMatrix {
    r: CMatrix,
    eigenvalues: DVector<f64>,
    eigenvectors: CMatrix,
    sqrt: CMatrix,
    tr_r2: f64,
}

impl CorrMatrix {
    /// Validates `r` (square, Hermitian, PSD), rescales it to `tr(R) = N`
    /// and decomposes it.
    pub fn from_matrix(r: CMatrix) -> Result<Self> {
        check_dim(r.nrows())?;
        let r = normalize_trace(r)?;
        Self::decompose(r)
    }

    fn decompose(r: CMatrix) -> Result<Self> {
        let n = r.nrows();
        let SymmetricEigen {
            eigenvectors,
            mut eigenvalues,
        } = SymmetricEigen::new(r.clone());
        for lambda in eigenvalues.iter_mut() {
            if *lambda < -PSD_TOLERANCE {
                return Err(Error::NotPositiveSemidefinite(*lambda));
            }
            *lambda = lambda.max(0.0);
        }
        let mut scaled = eigenvectors.clone();
        for (j, lambda) in eigenvalues.iter().enumerate() {
            scaled.column_mut(j).scale_mut(lambda.sqrt());
        }
        let sqrt = &scaled * eigenvectors.adjoint();
        let tr_r2 = eigenvalues.iter().map(|l| l * l).sum();
        debug_assert_eq!(sqrt.nrows(), n);
        Ok(Self {
            r,
            eigenvalues,
            eigenvectors,
            sqrt,
            tr_r2,
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Self {
            r: CMatrix::identity(n, n),
            eigenvalues: DVector::from_element(n, 1.0),
            eigenvectors: CMatrix::identity(n, n),
            sqrt: CMatrix::identity(n, n),
            tr_r2: n as f64,
        })
    }

    pub fn dim(&self) -> usize {
        self.r.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.r
    }

    /// Clamped eigenvalues (nonnegative), in the eigensolver's order.
    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    /// Unitary eigenvector matrix `U` with `R = U Λ Uᴴ`.
    pub fn eigenvectors(&self) -> &CMatrix {
        &self.eigenvectors
    }

    /// `R^{1/2} = U Λ^{1/2} Uᴴ`.
    pub fn sqrt(&self) -> &CMatrix {
        &self.sqrt
    }

    /// `Σ λᵢ²`.
    pub fn spectral_sq_trace(&self) -> f64 {
        self.tr_r2
    }

    /// `U Λ Uᴴ`, for checking the decomposition.
    pub fn reconstruct(&self) -> CMatrix {
        let mut scaled = self.eigenvectors.clone();
        for (j, lambda) in self.eigenvalues.iter().enumerate() {
            scaled.column_mut(j).scale_mut(*lambda);
        }
        scaled * self.eigenvectors.adjoint()
    }
}

/// Builds and decomposes the correlation matrix described by `spec`.
pub fn build_correlation(spec: &CorrelationSpec, n: usize) -> Result<CorrMatrix> {
    match spec {
        CorrelationSpec::Identity => CorrMatrix::identity(n),
        CorrelationSpec::Exponential { zeta } if *zeta == 0.0 => {
            spec.validate()?;
            CorrMatrix::identity(n)
        }
        _ => CorrMatrix::decompose(spec.raw_matrix(n)?),
    }
}

/// `tr(R²) = Σ_ij |R_ij|²`.
pub fn corr_sq_trace(r: &CorrMatrix) -> f64 {
    frobenius_sq(r.matrix())
}

pub fn corr_sqrt(r: &CorrMatrix) -> CMatrix {
    r.sqrt().clone()
}

/// Reads an N×N complex matrix from headerless CSV: each row holds
/// `re_1, im_1, re_2, im_2, …` for one matrix row.
pub fn read_explicit_csv<R: Read>(reader: R) -> Result<CMatrix> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut rows: Vec<Vec<c64>> = Vec::new();
    for record in rdr.records() {
        let record = record?;
        if record.len() % 2 != 0 {
            return Err(Error::Config(format!(
                "correlation CSV row {} has an odd number of values",
                rows.len() + 1
            )));
        }
        let values = record
            .iter()
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|e| Error::Config(format!("bad number `{s}` in correlation CSV: {e}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(values.chunks(2).map(|p| c64::new(p[0], p[1])).collect());
    }
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(
            "correlation CSV must describe a square matrix".into(),
        ));
    }
    let flat: Vec<c64> = rows.into_iter().flatten().collect();
    Ok(CMatrix::from_row_slice(n, n, &flat))
}

pub fn load_explicit_csv(path: &Path) -> Result<CMatrix> {
    read_explicit_csv(std::fs::File::open(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel_frob(a: &CMatrix, b: &CMatrix) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn zero_zeta_is_identity() {
        let r = build_correlation(&CorrelationSpec::Exponential { zeta: 0.0 }, 8).unwrap();
        assert_eq!(r.matrix(), &CMatrix::identity(8, 8));
        assert_eq!(corr_sq_trace(&r), 8.0);
    }

    #[test]
    fn exponential_two_by_two() {
        let r = build_correlation(&CorrelationSpec::Exponential { zeta: 0.5 }, 2).unwrap();
        let expected = CMatrix::from_row_slice(
            2,
            2,
            &[c64::new(1.0, 0.0), c64::new(0.5, 0.0), c64::new(0.5, 0.0), c64::new(1.0, 0.0)],
        );
        assert!(rel_frob(r.matrix(), &expected) < 1e-15);
    }

    #[test]
    fn exponential_sq_trace_n4() {
        // Direct summation over all (i, j) pairs of 0.5^{2|i-j|}.
        let mut oracle = 0.0;
        for i in 0..4i32 {
            for j in 0..4i32 {
                oracle += 0.25f64.powi((i - j).abs());
            }
        }
        assert_eq!(oracle, 5.78125);
        let r = build_correlation(&CorrelationSpec::Exponential { zeta: 0.5 }, 4).unwrap();
        assert!((corr_sq_trace(&r) - oracle).abs() < 1e-12);
        assert!((r.spectral_sq_trace() - oracle).abs() < 1e-10);
        assert!((exponential_sq_trace(0.5, 4) - oracle).abs() < 1e-15);
    }

    #[test]
    fn fully_correlated_rank_one() {
        let ones = CMatrix::from_element(6, 6, c64::new(1.0, 0.0));
        let r = CorrMatrix::from_matrix(ones).unwrap();
        assert!((corr_sq_trace(&r) - 36.0).abs() < 1e-12);
        assert!((r.spectral_sq_trace() - 36.0).abs() < 1e-9);
        assert_eq!(CorrelationSpec::Exponential { zeta: 1.0 }.sq_trace(6).unwrap(), 36.0);
    }

    #[test]
    fn exponential_sq_trace_approaches_limit() {
        let n = 256;
        let per_antenna = exponential_sq_trace(0.8, n) / n as f64;
        let limit = exponential_sq_trace_limit(0.8);
        assert!((limit - 4.5556).abs() < 1e-4);
        assert!((per_antenna - limit).abs() / limit < 0.02, "{per_antenna} vs {limit}");
    }

    #[test]
    fn sqrt_of_diagonal() {
        // diag(4, 1, 0, 0, 0) already has trace N = 5.
        let diag = |v: &[f64]| {
            CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                v.len(),
                v.iter().map(|&x| c64::new(x, 0.0)),
            ))
        };
        let r = CorrMatrix::from_matrix(diag(&[4.0, 1.0, 0.0, 0.0, 0.0])).unwrap();
        let s = corr_sqrt(&r);
        assert!((&s - diag(&[2.0, 1.0, 0.0, 0.0, 0.0])).norm() < 1e-14);
    }

    #[test]
    fn sqrt_squares_back() {
        let r = build_correlation(&CorrelationSpec::Exponential { zeta: 0.5 }, 4).unwrap();
        let s = corr_sqrt(&r);
        assert!(rel_frob(&(&s * &s), r.matrix()) < 1e-9);
        assert!(rel_frob(&r.reconstruct(), r.matrix()) < 1e-10);
    }

    #[test]
    fn identity_sqrt_is_identity() {
        let r = build_correlation(&CorrelationSpec::Identity, 5).unwrap();
        assert_eq!(corr_sqrt(&r), CMatrix::identity(5, 5));
    }

    #[test]
    fn rejects_invalid_specs() {
        assert!(build_correlation(&CorrelationSpec::Exponential { zeta: 1.0 }, 4).is_err());
        assert!(build_correlation(&CorrelationSpec::Exponential { zeta: -0.1 }, 4).is_err());
        let bad_l = CorrelationSpec::ClusteredAngular {
            clusters: 0,
            spread: 0.5,
            seed: 1,
        };
        assert!(build_correlation(&bad_l, 4).is_err());
        let bad_spread = CorrelationSpec::ClusteredAngular {
            clusters: 3,
            spread: 4.0,
            seed: 1,
        };
        assert!(build_correlation(&bad_spread, 4).is_err());
        assert!(build_correlation(&CorrelationSpec::Identity, 1).is_err());
    }

    #[test]
    fn rejects_non_hermitian_explicit() {
        let mut m = CMatrix::identity(3, 3);
        m[(0, 2)] = c64::new(0.3, 0.0);
        assert!(matches!(
            CorrMatrix::from_matrix(m),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn rejects_indefinite_explicit() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[c64::new(1.0, 0.0), c64::new(2.0, 0.0), c64::new(2.0, 0.0), c64::new(1.0, 0.0)],
        );
        assert!(matches!(
            CorrMatrix::from_matrix(m),
            Err(Error::NotPositiveSemidefinite(_))
        ));
    }

    #[test]
    fn clustered_is_hermitian_psd_with_unit_diagonal() {
        let spec = CorrelationSpec::ClusteredAngular {
            clusters: 10,
            spread: 50f64.to_radians(),
            seed: 4,
        };
        let r = build_correlation(&spec, 32).unwrap();
        assert_eq!(hermitian_defect(r.matrix()), 0.0);
        for i in 0..32 {
            assert!((r.matrix()[(i, i)].re - 1.0).abs() < 1e-12);
        }
        assert!(r.eigenvalues().iter().all(|&l| l >= 0.0));
        assert!(rel_frob(&r.reconstruct(), r.matrix()) < 1e-10);
    }

    #[test]
    fn explicit_csv_round_trip() {
        let text = "2, 0, 0.5, 0.25\n0.5, -0.25, 2, 0\n";
        let m = read_explicit_csv(text.as_bytes()).unwrap();
        assert_eq!(m[(0, 1)], c64::new(0.5, 0.25));
        let r = CorrMatrix::from_matrix(m).unwrap();
        // Trace rescaled from 4 to 2.
        assert!((r.matrix()[(0, 0)].re - 1.0).abs() < 1e-15);
        assert!((r.matrix()[(1, 0)] - c64::new(0.25, -0.125)).norm() < 1e-15);
        assert!(read_explicit_csv("1, 0, 2\n".as_bytes()).is_err());
        assert!(read_explicit_csv("1, 0, 2, 0\n".as_bytes()).is_err());
    }
}
