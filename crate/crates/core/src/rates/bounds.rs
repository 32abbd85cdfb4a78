//! Closed-form rate bounds, their derivatives and the quantities derived
//! from them.
//!
//! Everything here is a deterministic function of a handful of scalars, so
//! the closed forms live on one plain parameter struct, [`BoundModel`],
//! whose `with_*` methods make parameter sweeps cheap.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};

/// Scalar inputs of the large-system bounds.
///
/// `m` is continuous so that antenna ratios `a = M/N` can be swept freely.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundModel {
    pub n: usize,
    pub m: f64,
    /// Average SNR `γ₀ = P/σ_n²`.
    pub gamma0: f64,
    pub power: f64,
    pub xi: f64,
    pub rho: f64,
    /// Large-scale fading `β_1..β_K`; K is `betas.len()`.
    pub betas: Vec<f64>,
    /// Index of the user whose secrecy rate is evaluated.
    pub user: usize,
    /// `tr(R²)`, between N (uncorrelated) and N² (fully correlated).
    pub tr_r2: f64,
}

/// How [`BoundModel::optimal_xi`] produced its answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XiMethod {
    /// The quadratic root of the stationarity condition.
    ClosedForm,
    /// Golden-section search over `(0, 1]` after the root was rejected.
    NumericFallback,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiOptimum {
    pub xi: f64,
    pub method: XiMethod,
    /// Raw `R̲_k − C̄` at `xi` (before clamping at zero).
    pub margin: f64,
}

/// Single scaled-Wishart fit `W_M(η_w, φ_w I)` of the eavesdropper's
/// interference matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WishartFit {
    pub eta_w: f64,
    pub phi_w: f64,
    /// `η_w φ_w`.
    pub first_moment: f64,
    /// `η_w φ_w²`.
    pub second_moment: f64,
    /// Weight `(1−ρ)ν + ρP/N` of the null-space term.
    pub null_weight: f64,
    /// Weight `ρP/N` of the row-space term.
    pub row_weight: f64,
}

impl BoundModel {
    pub fn new(
        n: usize,
        m: f64,
        gamma0: f64,
        xi: f64,
        rho: f64,
        betas: Vec<f64>,
        tr_r2: f64,
    ) -> Result<Self> {
        let model = Self {
            n,
            m,
            gamma0,
            power: 1.0,
            xi,
            rho,
            betas,
            user: 0,
            tr_r2,
        };
        model.validate()?;
        Ok(model)
    }

    /// Unit large-scale fading for all K users.
    pub fn unit_fading(n: usize, k: usize, m: f64, gamma0: f64, xi: f64, rho: f64, tr_r2: f64) -> Result<Self> {
        Self::new(n, m, gamma0, xi, rho, vec![1.0; k], tr_r2)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n as f64;
        let k = self.betas.len();
        if self.n < 2 {
            return Err(Error::invalid("n", "need at least 2 antennas"));
        }
        if k == 0 || k >= self.n {
            return Err(Error::invalid("k", format!("need 0 < K < N, got K = {k}")));
        }
        if self.user >= k {
            return Err(Error::invalid("user", format!("user {} out of range for K = {k}", self.user)));
        }
        if self.betas.iter().any(|b| !(*b > 0.0)) {
            return Err(Error::invalid("betas", "large-scale fading must be positive"));
        }
        if !(self.m >= 0.0) {
            return Err(Error::invalid("m", format!("must be nonnegative, got {}", self.m)));
        }
        if !(self.gamma0 > 0.0) {
            return Err(Error::invalid("gamma0", format!("must be positive, got {}", self.gamma0)));
        }
        if !(self.power > 0.0) {
            return Err(Error::invalid("power", format!("must be positive, got {}", self.power)));
        }
        if !(self.xi > 0.0 && self.xi <= 1.0) {
            return Err(Error::invalid("xi", format!("must lie in (0, 1], got {}", self.xi)));
        }
        if !(0.0..1.0).contains(&self.rho) {
            return Err(Error::invalid("rho", format!("must lie in [0, 1), got {}", self.rho)));
        }
        let slack = 1e-9 * n * n;
        if !(self.tr_r2 >= n - slack && self.tr_r2 <= n * n + slack) {
            return Err(Error::invalid(
                "tr_r2",
                format!("tr(R^2) must lie in [N, N^2], got {}", self.tr_r2),
            ));
        }
        Ok(())
    }

    pub fn with_xi(&self, xi: f64) -> Self {
        Self { xi, ..self.clone() }
    }

    pub fn with_rho(&self, rho: f64) -> Self {
        Self { rho, ..self.clone() }
    }

    pub fn with_tr_r2(&self, tr_r2: f64) -> Self {
        Self { tr_r2, ..self.clone() }
    }

    pub fn with_gamma0(&self, gamma0: f64) -> Self {
        Self { gamma0, ..self.clone() }
    }

    pub fn with_m(&self, m: f64) -> Self {
        Self { m, ..self.clone() }
    }

    pub fn k(&self) -> usize {
        self.betas.len()
    }

    fn nf(&self) -> f64 {
        self.n as f64
    }

    fn kf(&self) -> f64 {
        self.betas.len() as f64
    }

    pub fn beta_k(&self) -> f64 {
        self.betas[self.user]
    }

    pub fn sum_beta(&self) -> f64 {
        self.betas.iter().sum()
    }

    /// `Σ_{j≠k} β_j`.
    pub fn sum_other_betas(&self) -> f64 {
        self.betas
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != self.user)
            .map(|(_, b)| b)
            .sum()
    }

    /// `a = M/N`.
    pub fn a(&self) -> f64 {
        self.m / self.nf()
    }

    /// `b = K/N`.
    pub fn b(&self) -> f64 {
        self.kf() / self.nf()
    }

    /// `φ = 1 − b`.
    pub fn phi(&self) -> f64 {
        1.0 - self.b()
    }

    /// `ρ′ = ρ/(1−ρ)`.
    pub fn rho_prime(&self) -> f64 {
        self.rho / (1.0 - self.rho)
    }

    /// `κ = 1 − ξ + ρ′`.
    pub fn kappa(&self) -> f64 {
        1.0 - self.xi + self.rho_prime()
    }

    /// `ϖ = a b (1−ξ)²`.
    pub fn varpi(&self) -> f64 {
        self.a() * self.b() * (1.0 - self.xi).powi(2)
    }

    pub fn mu(&self) -> f64 {
        self.xi * self.power / self.kf()
    }

    pub fn nu(&self) -> f64 {
        (1.0 - self.xi) * self.power / (self.nf() - self.kf())
    }

    /// Lower bound on user k's ergodic rate (bits/s/Hz).
    pub fn user_rate_bound(&self) -> f64 {
        let (n, rho, g0, xi) = (self.nf(), self.rho, self.gamma0, self.xi);
        let (bk, sum, others) = (self.beta_k(), self.sum_beta(), self.sum_other_betas());
        let signal = (1.0 - rho) * bk * bk * g0 * xi * n / sum;
        let interference = (1.0 - rho) * xi * g0 * bk * self.tr_r2 * others / (n * sum);
        (signal / (interference + rho * bk * g0 + 1.0)).ln_1p() / LN_2
    }

    fn eve_rate_with(&self, varpi: f64) -> Result<f64> {
        let kappa = self.kappa();
        let num = self.phi() * self.m * self.xi * kappa * self.beta_k() / self.sum_beta();
        let den = self.phi() * kappa * kappa * (self.nf() / self.tr_r2 - self.a()) - varpi;
        if !(den > 0.0) {
            return Err(Error::EveDofExhausted(den));
        }
        Ok((num / den).ln_1p() / LN_2)
    }

    /// Large-N upper bound on the eavesdropper's ergodic rate against user k.
    pub fn eve_rate_bound(&self) -> Result<f64> {
        self.eve_rate_with(self.varpi())
    }

    /// The eavesdropper bound with `ϖ` dropped (`ab ≪ 1`).
    pub fn eve_rate_bound_simplified(&self) -> Result<f64> {
        self.eve_rate_with(0.0)
    }

    /// The same eavesdropper bound obtained from the Wishart fit instead of
    /// the simplified closed form: `log₂(1 + (1−ρ)μ E‖H_e w_k‖² / (φ_w(η_w − M)))`.
    pub fn eve_rate_bound_wishart(&self) -> Result<f64> {
        let fit = self.wishart_moment_match()?;
        let n = self.nf();
        let leak = self.m * self.kf() * self.beta_k() * self.tr_r2 / (n * self.sum_beta());
        let inv = 1.0 / (fit.phi_w * (fit.eta_w - self.m));
        Ok(((1.0 - self.rho) * self.mu() * leak * inv).ln_1p() / LN_2)
    }

    /// `R̲_k − C̄` before clamping.
    pub fn secrecy_margin(&self) -> Result<f64> {
        Ok(self.user_rate_bound() - self.eve_rate_bound()?)
    }

    /// `R̲_k − C̄` with the simplified eavesdropper bound.
    pub fn secrecy_margin_simplified(&self) -> Result<f64> {
        Ok(self.user_rate_bound() - self.eve_rate_bound_simplified()?)
    }

    /// Lower bound on the ergodic secrecy rate, `[R̲_k − C̄]⁺`.
    pub fn secrecy_bound(&self) -> Result<f64> {
        Ok(self.secrecy_margin()?.max(0.0))
    }

    /// Secrecy-rate bound for uncorrelated antennas (`R = I`), written out
    /// directly; ignores `tr_r2`.
    pub fn secrecy_rate_iid(&self) -> Result<f64> {
        let (n, rho, g0, xi) = (self.nf(), self.rho, self.gamma0, self.xi);
        let (bk, sum, others) = (self.beta_k(), self.sum_beta(), self.sum_other_betas());
        let user_sinr = (1.0 - rho) * bk * bk * g0 * xi * n / sum
            / ((1.0 - rho) * g0 * bk * xi * others / sum + rho * bk * g0 + 1.0);
        let (phi, kappa, a) = (self.phi(), self.kappa(), self.a());
        let den = phi * kappa * kappa * (1.0 - a) - self.varpi();
        if !(den > 0.0) {
            return Err(Error::EveDofExhausted(den));
        }
        let eve_snr = phi * self.m * xi * kappa * bk / sum / den;
        Ok(((user_sinr.ln_1p() - eve_snr.ln_1p()) / LN_2).max(0.0))
    }

    fn xi_terms(&self) -> (f64, f64, f64) {
        let (n, rho, g0) = (self.nf(), self.rho, self.gamma0);
        let (bk, sum, others) = (self.beta_k(), self.sum_beta(), self.sum_other_betas());
        let l1 = (1.0 - rho) * bk * bk * g0 * n / sum;
        let l2 = rho * bk * g0 + 1.0;
        let l3 = (1.0 - rho) * g0 * bk * self.tr_r2 * others / (n * sum);
        (l1, l2, l3)
    }

    /// `∂R̲_sec/∂ξ` in the `ab ≪ 1` regime, i.e. the exact derivative of
    /// [`secrecy_margin_simplified`](Self::secrecy_margin_simplified).
    pub fn d_secrecy_d_xi(&self) -> f64 {
        self.d_secrecy_d_xi_at(self.xi)
    }

    fn d_secrecy_d_xi_at(&self, xi: f64) -> f64 {
        let (l1, l2, l3) = self.xi_terms();
        let t = self.tr_r2;
        let kappa = 1.0 - xi + self.rho_prime();
        let bk = self.beta_k();
        let user_term = l1 * l2 / (LN_2 * (l3 * xi + l2) * (l2 + xi * (l1 + l3)));
        let eve_term = self.m * t * (1.0 + self.rho_prime()) * bk
            / (LN_2
                * (self.sum_beta() * (self.nf() - t * self.a()) * kappa * kappa
                    + self.m * xi * bk * t * kappa));
        user_term - eve_term
    }

    /// Coefficients `(A, B, C)` of the quadratic whose root is `ξ*`.
    pub fn optimal_xi_coefficients(&self) -> (f64, f64, f64) {
        let (l1, l2, l3) = self.xi_terms();
        let t = self.tr_r2;
        let rp1 = 1.0 + self.rho_prime();
        let bk = self.beta_k();
        let g1 = self.m * t * rp1 * bk;
        let g2 = self.sum_beta() * (self.nf() - t * self.a());
        let g3 = self.m * bk * t;
        let a = l1 * l2 * g2 - l1 * l2 * g3 - g1 * l3 * (l1 + l3);
        let b = rp1 * l1 * l2 * (g3 - 2.0 * g2) - g1 * l2 * (l1 + 2.0 * l3);
        let c = g2 * l1 * l2 * rp1 * rp1 - g1 * l2 * l2;
        (a, b, c)
    }

    /// `ξ* = (−B − √(B² − 4AC)) / 2A`, validated against the sign pattern of
    /// `∂R̲_sec/∂ξ`; otherwise a golden-section maximization of the secrecy
    /// margin over `(0, 1]`.
    pub fn optimal_xi(&self) -> XiOptimum {
        if let Some(xi) = self.closed_form_xi() {
            if let Ok(margin) = self.with_xi(xi).secrecy_margin() {
                return XiOptimum {
                    xi,
                    method: XiMethod::ClosedForm,
                    margin,
                };
            }
        }
        let objective = |xi: f64| self.with_xi(xi).secrecy_margin().unwrap_or(f64::NEG_INFINITY);
        let xi = golden_section_max(objective, 1e-9, 1.0, 1e-10);
        XiOptimum {
            xi,
            method: XiMethod::NumericFallback,
            margin: objective(xi),
        }
    }

    fn closed_form_xi(&self) -> Option<f64> {
        let (a, b, c) = self.optimal_xi_coefficients();
        let scale = a.abs().max(b.abs()).max(c.abs());
        if !(scale > 0.0) || a.abs() <= 1e-14 * scale {
            return None;
        }
        let disc = b * b - 4.0 * a * c;
        if disc < 0.0 {
            return None;
        }
        let xi = (-b - disc.sqrt()) / (2.0 * a);
        if !(xi > 0.0 && xi <= 1.0) {
            return None;
        }
        let delta = 1e-4 * xi.min(1.0 - xi).max(1e-9);
        let rising = self.d_secrecy_d_xi_at(xi - delta) > 0.0;
        let falling = xi + delta > 1.0 || self.d_secrecy_d_xi_at(xi + delta) < 0.0;
        (rising && falling).then_some(xi)
    }

    /// Largest eavesdropper antenna ratio `a = M/N` that still admits a
    /// positive secrecy rate as `ξ → 0`, for equal fading `β_k = β`.
    pub fn max_eve_antenna_ratio(&self) -> Result<f64> {
        let beta = self.betas[0];
        if self.betas.iter().any(|b| (b - beta).abs() > 1e-12 * beta) {
            return Err(Error::invalid(
                "betas",
                "the antenna-ratio limit assumes equal large-scale fading for all users",
            ));
        }
        let (b, g0, rho) = (self.b(), self.gamma0, self.rho);
        let den = self.tr_r2 * (g0 * rho * b * (rho - beta - 2.0) + g0 * (1.0 + beta * rho) + 1.0 - b);
        if !(den > 0.0) {
            return Err(Error::NonpositiveDenominator("maximum eavesdropper antenna ratio"));
        }
        Ok((1.0 - b) * self.nf() * g0 / den)
    }

    fn check_zeta(zeta: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&zeta) {
            return Err(Error::invalid("zeta", format!("need 0 <= zeta < 1, got {zeta}")));
        }
        Ok((1.0 + zeta * zeta) / (1.0 - zeta * zeta))
    }

    /// `∂R̲_k/∂ρ` under the exponential model with `tr(R²)/N` replaced by its
    /// large-N limit `ζ̃ = (1+ζ²)/(1−ζ²)`.
    pub fn d_userrate_d_rho(&self, zeta: f64) -> Result<f64> {
        let zt = Self::check_zeta(zeta)?;
        let (n, rho, g0, xi) = (self.nf(), self.rho, self.gamma0, self.xi);
        let (bk, sum, others) = (self.beta_k(), self.sum_beta(), self.sum_other_betas());
        let upsilon = (1.0 - rho) * (n * bk + zt * others) * xi + rho * sum;
        let psi = rho * sum + (1.0 - rho) * xi * zt * others;
        Ok(-(bk * bk * g0 * xi * n * (1.0 + bk * g0) * sum)
            / (LN_2 * (upsilon * bk * g0 + sum) * (psi * bk * g0 + sum)))
    }

    /// `∂C̄/∂ρ` under the exponential model (`N/tr(R²) → 1/ζ̃`).
    ///
    /// With `simplified` the `ab ≪ 1` form is returned (`ϖ` dropped).
    pub fn d_everate_d_rho(&self, zeta: f64, simplified: bool) -> Result<f64> {
        let zt = Self::check_zeta(zeta)?;
        // The parent bound must exist at this operating point.
        self.with_tr_r2(self.nf() * zt).eve_rate_bound()?;
        let (a, phi, kappa, rho) = (self.a(), self.phi(), self.kappa(), self.rho);
        let q = self.m * self.xi * self.beta_k() / self.sum_beta();
        let scale = LN_2 * (1.0 - rho).powi(2);
        if simplified {
            return Ok(-(phi * q * zt) / (scale * kappa * phi * (kappa - (a * kappa - q) * zt)));
        }
        let varpi = self.varpi();
        let num = phi * q * zt * ((1.0 - a * zt) * phi * kappa * kappa + varpi * zt);
        let d1 = (a * zt - 1.0) * phi * kappa * kappa + varpi * zt;
        let d2 = ((a * kappa * kappa - q * kappa) * zt - kappa * kappa) * phi + varpi * zt;
        Ok(-num / (scale * d1 * d2))
    }

    /// Moment-matched Wishart parameters of the eavesdropper's interference.
    pub fn wishart_moment_match(&self) -> Result<WishartFit> {
        let (n, k) = (self.nf(), self.kf());
        let row_weight = self.rho * self.power / n;
        let null_weight = (1.0 - self.rho) * self.nu() + row_weight;
        let first_moment = null_weight * (n - k) + row_weight * k;
        let second_moment =
            self.tr_r2 / n * (null_weight * null_weight * (n - k) + row_weight * row_weight * k);
        if !(first_moment > 0.0) {
            return Err(Error::SingularCovariance);
        }
        let eta_w = first_moment * first_moment / second_moment;
        let phi_w = second_moment / first_moment;
        if !(eta_w > self.m) {
            return Err(Error::WishartUndefined { eta_w, m: self.m });
        }
        Ok(WishartFit {
            eta_w,
            phi_w,
            first_moment,
            second_moment,
            null_weight,
            row_weight,
        })
    }
}

/// Maximizes a unimodal function on `[lo, hi]`.
pub(crate) fn golden_section_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let mid = 0.5 * (a + b);
    // The maximum may sit on the boundary of the search interval.
    [lo, mid, hi]
        .into_iter()
        .max_by(|x, y| f(*x).total_cmp(&f(*y)))
        .unwrap_or(mid)
}
