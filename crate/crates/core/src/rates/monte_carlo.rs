//! Monte-Carlo ergodic rates.
//!
//! Each realization draws `(H, H_e)`, builds the precoders once and reduces
//! everything the rates depend on to a few sufficient statistics, so one
//! set of channel draws serves any number of operating points `(ρ, μ, ν,
//! σ_n², σ_e²)`.
//!
//! Realization `i` always consumes substream `i` of the master seed and the
//! per-realization values are summed sequentially in index order, so the
//! result does not depend on how many worker threads ran the loop.

use nalgebra::DVector;
use rayon::prelude::*;

use super::{RateResult, SystemConfig};
use crate::channel::{sample_channels, LargeScaleFading};
use crate::corrmat::CorrMatrix;
use crate::error::{Error, Result};
use crate::linalg::{c64, compensated_sum, gram_diag, CMatrix, CVector};
use crate::precoder::{mf_precoder, null_space_an, power_split};
use crate::rng::substream;

/// `γ_k` for one realization, evaluated from the full matrices.
///
/// `cq` is the diagonal of `C_q`.
#[allow(clippy::too_many_arguments)]
pub fn user_sinr(
    h: &CMatrix,
    w: &CMatrix,
    v: &CMatrix,
    cq: &DVector<f64>,
    mu: f64,
    nu: f64,
    rho: f64,
    sigma_n2: f64,
    k: usize,
) -> Result<f64> {
    let n = h.ncols();
    if k >= h.nrows() || w.nrows() != n || v.nrows() != n || cq.len() != n || w.ncols() != h.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "H {}x{}, W {}x{}, V {}x{}, C_q {}, user {k}",
            h.nrows(),
            h.ncols(),
            w.nrows(),
            w.ncols(),
            v.nrows(),
            v.ncols(),
            cq.len()
        )));
    }
    let row = h.row(k);
    let hw = row * w;
    let signal = (1.0 - rho) * mu * hw[k].norm_sqr();
    let interference: f64 = (1.0 - rho)
        * mu
        * hw.iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, z)| z.norm_sqr())
            .sum::<f64>();
    let quantization: f64 = row.iter().zip(cq.iter()).map(|(z, c)| z.norm_sqr() * c).sum();
    let an = (1.0 - rho) * nu * (row * v).norm_squared();
    let den = interference + quantization + an + sigma_n2;
    if !(den > 0.0) {
        return Err(Error::NonpositiveDenominator("user SINR"));
    }
    Ok(signal / den)
}

/// `(1−ρ)μ w_kᴴ H_eᴴ X⁻¹ H_e w_k` with
/// `X = (1−ρ)ν H_e V Vᴴ H_eᴴ + H_e C_q H_eᴴ + σ_e² I`.
#[allow(clippy::too_many_arguments)]
pub fn eve_snr(
    h_e: &CMatrix,
    w: &CMatrix,
    v: &CMatrix,
    cq: &DVector<f64>,
    mu: f64,
    nu: f64,
    rho: f64,
    sigma_e2: f64,
    k: usize,
) -> Result<f64> {
    let n = h_e.ncols();
    if k >= w.ncols() || w.nrows() != n || v.nrows() != n || cq.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "H_e {}x{}, W {}x{}, V {}x{}, C_q {}, user {k}",
            h_e.nrows(),
            h_e.ncols(),
            w.nrows(),
            w.ncols(),
            v.nrows(),
            v.ncols(),
            cq.len()
        )));
    }
    let hv = h_e * v;
    let mut hcq = h_e.clone();
    for (mut col, c) in hcq.column_iter_mut().zip(cq.iter()) {
        col.scale_mut(*c);
    }
    let mut x = &hv * hv.adjoint() * c64::new((1.0 - rho) * nu, 0.0) + hcq * h_e.adjoint();
    for i in 0..x.nrows() {
        x[(i, i)] += c64::new(sigma_e2, 0.0);
    }
    let g = h_e * w.column(k);
    quadratic_inverse(x, &g).map(|q| (1.0 - rho) * mu * q)
}

/// `gᴴ X⁻¹ g` for Hermitian positive definite `X`.
fn quadratic_inverse(x: CMatrix, g: &CVector) -> Result<f64> {
    let chol = x.cholesky().ok_or(Error::SingularCovariance)?;
    let y = chol.l().solve_lower_triangular(g).ok_or(Error::SingularCovariance)?;
    let q = y.norm_squared();
    if !q.is_finite() {
        return Err(Error::SingularCovariance);
    }
    Ok(q)
}

/// Power split, distortion and noise powers at which rates are evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    pub rho: f64,
    pub mu: f64,
    pub nu: f64,
    pub sigma_n2: f64,
    pub sigma_e2: f64,
}

impl OperatingPoint {
    pub fn from_config(cfg: &SystemConfig) -> Result<Self> {
        let (mu, nu) = power_split(cfg.power, cfg.xi, cfg.n, cfg.k)?;
        Ok(Self {
            rho: cfg.dac.rho(),
            mu,
            nu,
            sigma_n2: cfg.sigma_n2,
            sigma_e2: cfg.sigma_e2,
        })
    }

    /// No artificial noise, no quantization noise and a noiseless
    /// eavesdropper leave `X = 0`.
    pub fn eve_singular(&self) -> bool {
        self.nu == 0.0 && self.rho == 0.0 && self.sigma_e2 == 0.0
    }
}

/// Per-realization quantities that determine both rates at any operating
/// point.
#[derive(Debug, Clone)]
pub struct RealizationStats {
    /// `|h_kᵀ w_k|²`.
    pub signal: f64,
    /// `Σ_{j≠k} |h_kᵀ w_j|²`.
    pub interference: f64,
    /// `Σ_n |h_kn|² diag(WWᴴ)_n`.
    pub quant_data: f64,
    /// `Σ_n |h_kn|² diag(VVᴴ)_n`.
    pub quant_an: f64,
    /// `‖h_kᵀ V‖²`, zero up to round-off.
    pub an_leak: f64,
    /// `H_e w_k`.
    pub eve_signal: CVector,
    /// `H_e V Vᴴ H_eᴴ`.
    pub eve_an: CMatrix,
    /// `H_e diag(WWᴴ) H_eᴴ`.
    pub eve_quant_data: CMatrix,
    /// `H_e diag(VVᴴ) H_eᴴ`.
    pub eve_quant_an: CMatrix,
}

impl RealizationStats {
    pub fn compute(h: &CMatrix, h_e: &CMatrix, w: &CMatrix, v: &CMatrix, user: usize) -> Self {
        let dw = gram_diag(w);
        let dv = gram_diag(v);
        let row = h.row(user);
        let hw = row * w;
        let signal = hw[user].norm_sqr();
        let interference = hw
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != user)
            .map(|(_, z)| z.norm_sqr())
            .sum();
        let quant_data = row.iter().zip(dw.iter()).map(|(z, d)| z.norm_sqr() * d).sum();
        let quant_an = row.iter().zip(dv.iter()).map(|(z, d)| z.norm_sqr() * d).sum();
        let an_leak = (row * v).norm_squared();

        let hv = h_e * v;
        let weighted = |d: &DVector<f64>| {
            let mut scaled = h_e.clone();
            for (mut col, s) in scaled.column_iter_mut().zip(d.iter()) {
                col.scale_mut(*s);
            }
            scaled * h_e.adjoint()
        };
        Self {
            signal,
            interference,
            quant_data,
            quant_an,
            an_leak,
            eve_signal: h_e * w.column(user),
            eve_an: &hv * hv.adjoint(),
            eve_quant_data: weighted(&dw),
            eve_quant_an: weighted(&dv),
        }
    }

    /// `h_kᵀ C_q h_k*` at `(ρ, μ, ν)`.
    pub fn quantization_leak(&self, rho: f64, mu: f64, nu: f64) -> f64 {
        rho * (mu * self.quant_data + nu * self.quant_an)
    }

    pub fn user_sinr(&self, p: &OperatingPoint) -> f64 {
        let gain = (1.0 - p.rho) * p.mu;
        let den = gain * self.interference
            + self.quantization_leak(p.rho, p.mu, p.nu)
            + (1.0 - p.rho) * p.nu * self.an_leak
            + p.sigma_n2;
        gain * self.signal / den
    }

    pub fn eve_snr(&self, p: &OperatingPoint) -> Result<f64> {
        if p.eve_singular() {
            return Err(Error::SingularCovariance);
        }
        let mut x = &self.eve_an * c64::new((1.0 - p.rho) * p.nu, 0.0)
            + &self.eve_quant_data * c64::new(p.rho * p.mu, 0.0)
            + &self.eve_quant_an * c64::new(p.rho * p.nu, 0.0);
        for i in 0..x.nrows() {
            x[(i, i)] += c64::new(p.sigma_e2, 0.0);
        }
        quadratic_inverse(x, &self.eve_signal).map(|q| (1.0 - p.rho) * p.mu * q)
    }
}

/// Sample mean with its standard error (NaN for a single sample).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub std_err: f64,
    pub n: usize,
}

impl Estimate {
    fn from_samples(values: &[f64]) -> Self {
        let n = values.len();
        let mean = compensated_sum(values.iter().copied()) / n as f64;
        let std_err = if n > 1 {
            let ss = compensated_sum(values.iter().map(|x| (x - mean) * (x - mean)));
            (ss / (n - 1) as f64 / n as f64).sqrt()
        } else {
            f64::NAN
        };
        Self { mean, std_err, n }
    }
}

/// Monte-Carlo results for one operating point.
#[derive(Debug)]
pub struct PointEstimate {
    pub user: Estimate,
    eve: Result<Estimate>,
    /// Standard error of the paired difference `R_k − C`.
    secrecy_std_err: f64,
}

impl PointEstimate {
    pub fn eve(&self) -> Result<Estimate> {
        match &self.eve {
            Ok(e) => Ok(*e),
            Err(_) => Err(Error::SingularCovariance),
        }
    }

    /// `([E R_k − E C]⁺, std_err)`.
    pub fn secrecy(&self) -> Result<(f64, f64)> {
        let eve = self.eve()?;
        Ok(((self.user.mean - eve.mean).max(0.0), self.secrecy_std_err))
    }
}

/// Channel statistics and geometry shared by all operating points.
#[derive(Debug, Clone)]
pub struct MonteCarlo {
    n: usize,
    k: usize,
    m: usize,
    user: usize,
    fading: LargeScaleFading,
    corr: CorrMatrix,
}

impl MonteCarlo {
    pub fn new(n: usize, k: usize, m: usize, user: usize, fading: LargeScaleFading, corr: CorrMatrix) -> Result<Self> {
        if corr.dim() != n {
            return Err(Error::DimensionMismatch(format!("R is {0}x{0}, expected {n}x{n}", corr.dim())));
        }
        if k == 0 || k >= n || fading.num_users() != k || user >= k {
            return Err(Error::DimensionMismatch(format!(
                "N = {n}, K = {k}, {} fading coefficients, user {user}",
                fading.num_users()
            )));
        }
        Ok(Self {
            n,
            k,
            m,
            user,
            fading,
            corr,
        })
    }

    pub fn from_config(cfg: &SystemConfig) -> Result<Self> {
        cfg.validate()?;
        Self::new(cfg.n, cfg.k, cfg.m, cfg.user, cfg.fading.clone(), cfg.correlation()?)
    }

    /// Statistics of realization `index` under `seed`.
    pub fn realization(&self, seed: u64, index: u64) -> Result<RealizationStats> {
        let mut rng = substream(seed, index);
        let ch = sample_channels(self.n, self.k, self.m, &self.fading, self.corr.sqrt(), &mut rng)?;
        let w = mf_precoder(&ch.h)?;
        let (v, _) = null_space_an(&ch.h)?;
        Ok(RealizationStats::compute(&ch.h, &ch.h_e, &w, &v, self.user))
    }

    /// Estimates at every point from `realizations` shared channel draws.
    ///
    /// Fails as a whole only if a channel draw itself fails; a singular
    /// eavesdropper covariance is reported per point.
    pub fn run(&self, points: &[OperatingPoint], realizations: usize, seed: u64) -> Result<Vec<PointEstimate>> {
        if realizations == 0 {
            return Err(Error::invalid("realizations", "need at least one realization"));
        }
        let samples: Vec<Vec<(f64, Option<f64>)>> = (0..realizations as u64)
            .into_par_iter()
            .map(|i| {
                let stats = self.realization(seed, i)?;
                Ok(points
                    .iter()
                    .map(|p| {
                        let user = stats.user_sinr(p).ln_1p() / std::f64::consts::LN_2;
                        let eve = stats.eve_snr(p).ok().map(|s| s.ln_1p() / std::f64::consts::LN_2);
                        (user, eve)
                    })
                    .collect())
            })
            .collect::<Result<_>>()?;

        Ok((0..points.len())
            .map(|j| {
                let user: Vec<f64> = samples.iter().map(|s| s[j].0).collect();
                let eve: Option<Vec<f64>> = samples.iter().map(|s| s[j].1).collect();
                let user_est = Estimate::from_samples(&user);
                match eve {
                    Some(eve) => {
                        let diff: Vec<f64> = user.iter().zip(&eve).map(|(u, e)| u - e).collect();
                        PointEstimate {
                            user: user_est,
                            eve: Ok(Estimate::from_samples(&eve)),
                            secrecy_std_err: Estimate::from_samples(&diff).std_err,
                        }
                    }
                    None => PointEstimate {
                        user: user_est,
                        eve: Err(Error::SingularCovariance),
                        secrecy_std_err: f64::NAN,
                    },
                }
            })
            .collect())
    }
}

fn single_point(cfg: &SystemConfig, realizations: usize, seed: u64) -> Result<PointEstimate> {
    let point = OperatingPoint::from_config(cfg)?;
    let mut out = MonteCarlo::from_config(cfg)?.run(&[point], realizations, seed)?;
    Ok(out.remove(0))
}

/// Mean of `log₂(1 + γ_k)` over `realizations` draws.
pub fn user_rate_mc(cfg: &SystemConfig, realizations: usize, seed: u64) -> Result<Estimate> {
    Ok(single_point(cfg, realizations, seed)?.user)
}

/// Mean eavesdropping rate against the configured user.
pub fn eve_rate_mc(cfg: &SystemConfig, realizations: usize, seed: u64) -> Result<Estimate> {
    single_point(cfg, realizations, seed)?.eve()
}

/// Monte-Carlo estimates alongside the closed-form bounds.
pub fn simulate(cfg: &SystemConfig, realizations: usize, seed: u64) -> Result<RateResult> {
    let estimate = single_point(cfg, realizations, seed)?;
    evaluate_bounds(cfg)?.with_estimate(&estimate)
}

/// Closed-form bounds only; Monte-Carlo fields are NaN.
pub fn evaluate_bounds(cfg: &SystemConfig) -> Result<RateResult> {
    RateResult::bounds_only(&cfg.bound_model()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corrmat::{build_correlation, CorrelationSpec};
    use crate::dac::{quantization_noise_cov, DacModel, Resolution};
    use crate::precoder::PrecoderSet;
    use crate::rng::complex_gaussian_matrix;

    fn re(x: f64) -> c64 {
        c64::new(x, 0.0)
    }

    #[test]
    fn single_user_closed_form() {
        // K = 1, h = √β e₁, ρ = 0: γ = μβ/σ².
        let beta: f64 = 2.5;
        let mut h = CMatrix::zeros(1, 4);
        h[(0, 0)] = re(beta.sqrt());
        let p = PrecoderSet::build(&h, 1.0, 0.8).unwrap();
        let cq = DVector::zeros(4);
        let g = user_sinr(&h, &p.w, &p.v, &cq, p.mu, p.nu, 0.0, 0.1, 0).unwrap();
        assert!((g - p.mu * beta / 0.1).abs() < 1e-12);
    }

    #[test]
    fn orthogonal_rows_have_no_interference() {
        let mut h = CMatrix::zeros(2, 6);
        h[(0, 0)] = re(1.5);
        h[(1, 3)] = c64::new(0.0, 2.0);
        let p = PrecoderSet::build(&h, 1.0, 1.0).unwrap();
        let cq = DVector::zeros(6);
        // W = √2 Hᴴ/‖H‖_F, so ‖h_kᵀ w_k‖² = 2‖h_k‖⁴/‖H‖_F².
        let fro2 = 1.5f64.powi(2) + 4.0;
        for (k, e) in [(0, 2.25f64), (1, 4.0)] {
            let g = user_sinr(&h, &p.w, &p.v, &cq, p.mu, p.nu, 0.0, 0.5, k).unwrap();
            let oracle = p.mu * 2.0 * e * e / fro2 / 0.5;
            assert!((g - oracle).abs() < 1e-12, "{g} vs {oracle}");
        }
    }

    #[test]
    fn hand_built_four_by_two() {
        // h_1 = [1, 1, 0, 0], h_2 = [0, 1, 1, 0]; ‖H‖_F² = 4.
        // W = √2/2 Hᴴ: h_1ᵀw_1 = √2/2·2, h_1ᵀw_2 = √2/2·1.
        let mut h = CMatrix::zeros(2, 4);
        h[(0, 0)] = re(1.0);
        h[(0, 1)] = re(1.0);
        h[(1, 1)] = re(1.0);
        h[(1, 2)] = re(1.0);
        let w = h.adjoint() * re(2f64.sqrt() / 2.0);
        let (v, _) = null_space_an(&h).unwrap();
        let (mu, nu, rho, s2) = (0.3, 0.2, 0.25, 0.1);
        let cq = quantization_noise_cov(&w, &v, mu, nu, rho).unwrap();
        // diag(WWᴴ) = [0.5, 1.0, 0.5, 0]; diag(VVᴴ) = 1 − diag(V0V0ᴴ).
        // Row space of H is span{[1,1,0,0], [0,1,1,0]}: P_row diag = [2/3, 2/3, 2/3, 0].
        let dv = [1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0];
        let dw = [0.5, 1.0, 0.5, 0.0];
        let quant: f64 = rho * (mu * (dw[0] + dw[1]) + nu * (dv[0] + dv[1]));
        let signal = (1.0 - rho) * mu * 2.0;
        let inter = (1.0 - rho) * mu * 0.5;
        let oracle = signal / (inter + quant + s2);
        let g = user_sinr(&h, &w, &v, &cq, mu, nu, rho, s2, 0).unwrap();
        assert!((g - oracle).abs() < 1e-12, "{g} vs {oracle}");
    }

    #[test]
    fn zero_denominator_rejected() {
        let mut h = CMatrix::zeros(1, 3);
        h[(0, 0)] = re(1.0);
        let p = PrecoderSet::build(&h, 1.0, 1.0).unwrap();
        let cq = DVector::zeros(3);
        assert!(user_sinr(&h, &p.w, &p.v, &cq, p.mu, p.nu, 0.0, 0.0, 0).is_err());
    }

    #[test]
    fn single_antenna_eavesdropper_by_hand() {
        // M = 1: rate = (1−ρ)μ|h_e w_k|² / ((1−ρ)ν‖h_e V‖² + Σ|h_en|² C_q,n).
        let mut rng = substream(21, 0);
        let h = complex_gaussian_matrix(2, 6, &mut rng);
        let h_e = complex_gaussian_matrix(1, 6, &mut rng);
        let p = PrecoderSet::build(&h, 1.0, 0.6).unwrap();
        let rho = 0.1175;
        let cq = quantization_noise_cov(&p.w, &p.v, p.mu, p.nu, rho).unwrap();
        let num = (1.0 - rho) * p.mu * (&h_e * p.w.column(1))[0].norm_sqr();
        let an = (1.0 - rho) * p.nu * (&h_e * &p.v).norm_squared();
        let q: f64 = h_e.iter().zip(cq.iter()).map(|(z, c)| z.norm_sqr() * c).sum();
        let got = eve_snr(&h_e, &p.w, &p.v, &cq, p.mu, p.nu, rho, 0.0, 1).unwrap();
        assert!((got - num / (an + q)).abs() < 1e-12 * got);
    }

    #[test]
    fn singular_eavesdropper_covariance_is_an_error() {
        let mut rng = substream(22, 0);
        let h = complex_gaussian_matrix(2, 8, &mut rng);
        let h_e = complex_gaussian_matrix(2, 8, &mut rng);
        let p = PrecoderSet::build(&h, 1.0, 1.0).unwrap();
        let cq = DVector::zeros(8);
        assert!(matches!(
            eve_snr(&h_e, &p.w, &p.v, &cq, p.mu, p.nu, 0.0, 0.0, 0),
            Err(Error::SingularCovariance)
        ));
        let cfg = SystemConfig::new(16, 2, 2).with_xi(1.0);
        assert!(matches!(eve_rate_mc(&cfg, 4, 1), Err(Error::SingularCovariance)));
        assert!(user_rate_mc(&cfg, 4, 1).is_ok());
    }

    #[test]
    fn sufficient_statistics_match_reference() {
        let (n, k, m) = (24, 3, 2);
        let corr = build_correlation(&CorrelationSpec::Exponential { zeta: 0.4 }, n).unwrap();
        let fading = LargeScaleFading::new(vec![1.0, 0.5, 2.0], 0.7).unwrap();
        let mc = MonteCarlo::new(n, k, m, 1, fading.clone(), corr.clone()).unwrap();
        let mut rng = substream(30, 5);
        let ch = sample_channels(n, k, m, &fading, corr.sqrt(), &mut rng).unwrap();
        let stats = mc.realization(30, 5).unwrap();
        let p = PrecoderSet::build(&ch.h, 1.0, 0.55).unwrap();
        for (rho, s2, se2) in [(0.0, 0.1, 0.0), (0.3634, 1.0, 0.0), (0.03454, 0.01, 0.2)] {
            let op = OperatingPoint {
                rho,
                mu: p.mu,
                nu: p.nu,
                sigma_n2: s2,
                sigma_e2: se2,
            };
            let cq = quantization_noise_cov(&p.w, &p.v, p.mu, p.nu, rho).unwrap();
            let u_ref = user_sinr(&ch.h, &p.w, &p.v, &cq, p.mu, p.nu, rho, s2, 1).unwrap();
            let e_ref = eve_snr(&ch.h_e, &p.w, &p.v, &cq, p.mu, p.nu, rho, se2, 1).unwrap();
            assert!((stats.user_sinr(&op) - u_ref).abs() <= 1e-10 * u_ref);
            assert!((stats.eve_snr(&op).unwrap() - e_ref).abs() <= 1e-10 * e_ref);
        }
    }

    #[test]
    fn one_realization_is_single_shot() {
        let cfg = SystemConfig::new(32, 4, 2);
        let est = user_rate_mc(&cfg, 1, 7).unwrap();
        assert!(est.std_err.is_nan());
        let stats = MonteCarlo::from_config(&cfg).unwrap().realization(7, 0).unwrap();
        let op = OperatingPoint::from_config(&cfg).unwrap();
        assert_eq!(est.mean, stats.user_sinr(&op).ln_1p() / std::f64::consts::LN_2);
    }

    #[test]
    fn std_err_shrinks_with_realizations() {
        let cfg = SystemConfig::new(32, 4, 2);
        let a = user_rate_mc(&cfg, 400, 3).unwrap().std_err;
        let b = user_rate_mc(&cfg, 800, 3).unwrap().std_err;
        let ratio = a / b;
        assert!((ratio - 2f64.sqrt()).abs() < 0.2, "{ratio}");
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let cfg = SystemConfig::new(32, 4, 2).with_dac(DacModel::new(Resolution::Bits(1)).unwrap());
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| simulate(&cfg, 64, 99).unwrap())
        };
        let one = run(1);
        let many = run(4);
        assert_eq!(one.user_rate_mc.to_bits(), many.user_rate_mc.to_bits());
        assert_eq!(one.eve_rate_mc.to_bits(), many.eve_rate_mc.to_bits());
        assert_eq!(one.std_err.to_bits(), many.std_err.to_bits());
    }

    #[test]
    fn secrecy_is_clamped_difference_of_means() {
        let cfg = SystemConfig::new(32, 4, 2).with_snr_db(0.0);
        let r = simulate(&cfg, 50, 4).unwrap();
        assert_eq!(r.secrecy_mc, (r.user_rate_mc - r.eve_rate_mc).max(0.0));
        assert_eq!(r.n_realizations, 50);
    }
}
