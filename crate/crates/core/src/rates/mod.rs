//! Ergodic rates: Monte-Carlo estimates and closed-form bounds.

mod bounds;
mod correlation;
mod monte_carlo;

pub use bounds::{BoundModel, WishartFit, XiMethod, XiOptimum};
pub use correlation::{find_crossover_zeta, secrecy_gap_at, secrecy_gap_monotonicity, GapPoint, GapProfile, XiPolicy};
pub use monte_carlo::{
    eve_rate_mc, eve_snr, evaluate_bounds, simulate, user_rate_mc, user_sinr, Estimate, MonteCarlo,
    OperatingPoint, PointEstimate, RealizationStats,
};

use crate::channel::LargeScaleFading;
use crate::corrmat::{build_correlation, CorrMatrix, CorrelationSpec};
use crate::dac::DacModel;
use crate::error::{Error, Result};

/// All scalar parameters of the downlink.
#[derive(Debug, Clone)]
pub struct SystemConfig {
    /// Transmit antennas N.
    pub n: usize,
    /// Single-antenna users K.
    pub k: usize,
    /// Eavesdropper antennas M.
    pub m: usize,
    pub power: f64,
    pub sigma_n2: f64,
    /// Eavesdropper noise power; zero is the worst case.
    pub sigma_e2: f64,
    pub xi: f64,
    pub dac: DacModel,
    pub fading: LargeScaleFading,
    pub corr: CorrelationSpec,
    /// Index of the user under attack.
    pub user: usize,
}

impl SystemConfig {
    /// Unit fading, i.i.d. antennas, ideal DACs, `P = 1`, `γ₀ = 10`, `ξ = 0.7`.
    pub fn new(n: usize, k: usize, m: usize) -> Self {
        Self {
            n,
            k,
            m,
            power: 1.0,
            sigma_n2: 0.1,
            sigma_e2: 0.0,
            xi: 0.7,
            dac: DacModel::ideal(),
            fading: LargeScaleFading::unit(k),
            corr: CorrelationSpec::Identity,
            user: 0,
        }
    }

    /// Sets `σ_n²` so that `10 log₁₀(P/σ_n²) = snr_db`.
    pub fn with_snr_db(mut self, snr_db: f64) -> Self {
        self.sigma_n2 = self.power / 10f64.powf(snr_db / 10.0);
        self
    }

    pub fn with_xi(mut self, xi: f64) -> Self {
        self.xi = xi;
        self
    }

    pub fn with_dac(mut self, dac: DacModel) -> Self {
        self.dac = dac;
        self
    }

    pub fn with_corr(mut self, corr: CorrelationSpec) -> Self {
        self.corr = corr;
        self
    }

    pub fn with_fading(mut self, fading: LargeScaleFading) -> Self {
        self.fading = fading;
        self
    }

    pub fn gamma0(&self) -> f64 {
        self.power / self.sigma_n2
    }

    pub fn snr_db(&self) -> f64 {
        10.0 * self.gamma0().log10()
    }

    pub fn a(&self) -> f64 {
        self.m as f64 / self.n as f64
    }

    pub fn b(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn phi(&self) -> f64 {
        1.0 - self.b()
    }

    pub fn kappa(&self) -> f64 {
        1.0 - self.xi + self.dac.rho_prime()
    }

    pub fn varpi(&self) -> f64 {
        self.a() * self.b() * (1.0 - self.xi).powi(2)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.k >= self.n {
            return Err(Error::invalid("users", format!("need 0 < K < N, got K = {}, N = {}", self.k, self.n)));
        }
        if self.m == 0 || self.m >= self.n - self.k {
            return Err(Error::invalid(
                "eavesdropper_antennas",
                format!("need 0 < M < N - K = {}, got M = {}", self.n - self.k, self.m),
            ));
        }
        if self.fading.num_users() != self.k {
            return Err(Error::DimensionMismatch(format!(
                "{} large-scale fading coefficients for {} users",
                self.fading.num_users(),
                self.k
            )));
        }
        if self.user >= self.k {
            return Err(Error::invalid("user", format!("user {} out of range for K = {}", self.user, self.k)));
        }
        if !(self.power > 0.0 && self.power.is_finite()) {
            return Err(Error::invalid("power", format!("must be positive, got {}", self.power)));
        }
        if !(self.sigma_n2 > 0.0 && self.sigma_n2.is_finite()) {
            return Err(Error::invalid("sigma_n2", format!("must be positive, got {}", self.sigma_n2)));
        }
        if !(self.sigma_e2 >= 0.0 && self.sigma_e2.is_finite()) {
            return Err(Error::invalid("sigma_e2", format!("must be nonnegative, got {}", self.sigma_e2)));
        }
        if !(self.xi > 0.0 && self.xi <= 1.0) {
            return Err(Error::invalid("xi", format!("must lie in (0, 1], got {}", self.xi)));
        }
        self.corr.validate()
    }

    pub fn tr_r2(&self) -> Result<f64> {
        self.corr.sq_trace(self.n)
    }

    pub fn correlation(&self) -> Result<CorrMatrix> {
        build_correlation(&self.corr, self.n)
    }

    /// The scalar model behind the closed forms.
    ///
    /// The bounds assume `σ_e² = 0`; a nonzero eavesdropper noise only
    /// affects the Monte-Carlo estimate.
    pub fn bound_model(&self) -> Result<BoundModel> {
        self.validate()?;
        let mut model = BoundModel {
            n: self.n,
            m: self.m as f64,
            gamma0: self.gamma0(),
            power: self.power,
            xi: self.xi,
            rho: self.dac.rho(),
            betas: self.fading.betas().to_vec(),
            user: self.user,
            tr_r2: self.tr_r2()?,
        };
        // Clustered models reach tr(R²) through an eigen-solve; keep tiny
        // round-off from tripping the [N, N²] range check.
        let n = self.n as f64;
        model.tr_r2 = model.tr_r2.clamp(n, n * n);
        model.validate()?;
        Ok(model)
    }
}

/// Monte-Carlo and closed-form rates for one operating point.
///
/// Monte-Carlo fields are NaN when only the bounds were evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateResult {
    pub user_rate_mc: f64,
    pub user_rate_bound: f64,
    pub eve_rate_mc: f64,
    pub eve_rate_bound: f64,
    /// `[E R_k − E C]⁺`.
    pub secrecy_mc: f64,
    /// `[R̲_k − C̄]⁺`.
    pub secrecy_bound: f64,
    pub n_realizations: usize,
    /// Standard error of the per-realization difference `R_k − C`.
    pub std_err: f64,
    pub user_std_err: f64,
    pub eve_std_err: f64,
}

impl RateResult {
    pub(crate) fn bounds_only(model: &BoundModel) -> Result<Self> {
        let user = model.user_rate_bound();
        let eve = model.eve_rate_bound()?;
        Ok(Self {
            user_rate_mc: f64::NAN,
            user_rate_bound: user,
            eve_rate_mc: f64::NAN,
            eve_rate_bound: eve,
            secrecy_mc: f64::NAN,
            secrecy_bound: (user - eve).max(0.0),
            n_realizations: 0,
            std_err: f64::NAN,
            user_std_err: f64::NAN,
            eve_std_err: f64::NAN,
        })
    }

    pub(crate) fn with_estimate(mut self, estimate: &PointEstimate) -> Result<Self> {
        let eve = estimate.eve()?;
        let (secrecy, secrecy_se) = estimate.secrecy()?;
        self.user_rate_mc = estimate.user.mean;
        self.user_std_err = estimate.user.std_err;
        self.eve_rate_mc = eve.mean;
        self.eve_std_err = eve.std_err;
        self.secrecy_mc = secrecy;
        self.std_err = secrecy_se;
        self.n_realizations = estimate.user.n;
        Ok(self)
    }
}
