use std::f64::consts::PI;

use proptest::prelude::*;

use secmimo::channel::{sample_channels, LargeScaleFading};
use secmimo::corrmat::{build_correlation, exponential_sq_trace, CorrelationSpec};
use secmimo::dac::{distortion_factor, quantization_noise_cov, quantize, Resolution};
use secmimo::linalg::{c64, frobenius_sq, hermitian_defect, CMatrix};
use secmimo::precoder::{mf_precoder, null_space_an, power_split, transmit};
use secmimo::rates::{BoundModel, MonteCarlo, OperatingPoint, XiMethod};
use secmimo::rng::{complex_gaussian_vector, substream};

fn spec() -> impl Strategy<Value = CorrelationSpec> {
    prop_oneof![
        Just(CorrelationSpec::Identity),
        (0.0..0.99f64).prop_map(|zeta| CorrelationSpec::Exponential { zeta }),
        (1usize..12, 0.05..3.0f64, any::<u64>()).prop_map(|(clusters, spread, seed)| {
            CorrelationSpec::ClusteredAngular { clusters, spread, seed }
        }),
    ]
}

/// Bound models with unequal fading whose eavesdropper bound exists.
fn model() -> impl Strategy<Value = BoundModel> {
    (16usize..400, 0.01..0.2f64, 0.005..0.1f64, 0.3..200.0f64, 0.02..0.98f64, 0.0..0.4f64, 0.0..0.95f64)
        .prop_flat_map(|(n, kf, mf, g, xi, rho, zeta)| {
            let k = ((kf * n as f64) as usize).max(1);
            let m = ((mf * n as f64).round()).max(1.0);
            (prop::collection::vec(0.1..3.0f64, k), Just((n, m, g, xi, rho, zeta)))
        })
        .prop_filter_map("eavesdropper bound undefined", |(betas, (n, m, g, xi, rho, zeta))| {
            let model = BoundModel::new(n, m, g, xi, rho, betas, exponential_sq_trace(zeta, n)).ok()?;
            model.eve_rate_bound().ok().map(|_| model)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn built_correlation_is_normalized_hermitian_psd(spec in spec(), n in 2usize..40) {
        let r = build_correlation(&spec, n).unwrap();
        let tr: f64 = r.matrix().diagonal().iter().map(|z| z.re).sum();
        prop_assert!((tr - n as f64).abs() <= 1e-9 * n as f64);
        prop_assert_eq!(hermitian_defect(r.matrix()), 0.0);
        prop_assert!(r.eigenvalues().iter().all(|l| *l >= 0.0));
        let err = (r.reconstruct() - r.matrix()).norm() / r.matrix().norm();
        prop_assert!(err <= 1e-10, "reconstruction error {err}");
    }

    #[test]
    fn sq_trace_elementwise_and_spectral_agree(spec in spec(), n in 2usize..40) {
        let r = build_correlation(&spec, n).unwrap();
        let elementwise = frobenius_sq(r.matrix());
        let spectral: f64 = r.eigenvalues().iter().map(|l| l * l).sum();
        prop_assert!((elementwise - spectral).abs() <= 1e-8 * elementwise);
        prop_assert!((r.spectral_sq_trace() - elementwise).abs() <= 1e-8 * elementwise);
        prop_assert!((spec.sq_trace(n).unwrap() - elementwise).abs() <= 1e-8 * elementwise);
    }

    #[test]
    fn exponential_sq_trace_matches_double_sum(zeta in 0.0..1.0f64, n in 2usize..200) {
        let mut direct = 0.0;
        for i in 0..n {
            for j in 0..n {
                direct += zeta.powi(2 * i.abs_diff(j) as i32);
            }
        }
        let closed = exponential_sq_trace(zeta, n);
        prop_assert!((closed - direct).abs() <= 1e-12 * direct, "{closed} vs {direct}");
    }

    #[test]
    fn users_see_no_artificial_noise(n in 4usize..48, k in 1usize..4, seed in any::<u64>()) {
        let fading = LargeScaleFading::unit(k);
        let ch = sample_channels(n, k, 1, &fading, &CMatrix::identity(n, n), &mut substream(seed, 0)).unwrap();
        let (v, _) = null_space_an(&ch.h).unwrap();
        prop_assert!((&ch.h * &v).norm() <= 1e-10 * ch.h.norm());
        for row in 0..k {
            let hv = ch.h.row(row) * &v;
            let leak = hv.norm_squared() / ch.h.row(row).norm_squared();
            prop_assert!(leak <= 1e-18, "leak {leak}");
        }
    }

    #[test]
    fn iid_bound_equals_general_bound(model in model()) {
        let iid = model.with_tr_r2(model.n as f64);
        let general = iid.secrecy_bound().unwrap();
        let closed = iid.secrecy_rate_iid().unwrap();
        prop_assert!((general - closed).abs() <= 1e-12 * general.abs().max(1.0), "{general} vs {closed}");
    }

    #[test]
    fn secrecy_clamp(model in model()) {
        let margin = model.secrecy_margin().unwrap();
        let secrecy = model.secrecy_bound().unwrap();
        prop_assert!(secrecy >= 0.0);
        if margin > 0.0 {
            prop_assert_eq!(secrecy, margin);
        } else {
            prop_assert_eq!(secrecy, 0.0);
        }
    }

    #[test]
    fn secrecy_nonincreasing_in_correlation(model in model(), steps in prop::collection::vec(0.0..5.0f64, 1..6)) {
        let mut tr = model.n as f64;
        let mut last = model.with_tr_r2(tr).secrecy_bound().unwrap();
        for s in steps {
            tr *= 1.0 + s;
            match model.with_tr_r2(tr).secrecy_bound() {
                Ok(next) => {
                    prop_assert!(next <= last + 1e-12, "{next} > {last} at tr {tr}");
                    last = next;
                }
                // Larger tr(R²) only shrinks the eavesdropper's denominator.
                Err(_) => break,
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn closed_form_xi_maximizes_simplified_margin(model in model()) {
        let opt = model.optimal_xi();
        prop_assume!(opt.method == XiMethod::ClosedForm);
        let best = grid_argmax(|xi| model.with_xi(xi).secrecy_margin_simplified().ok());
        prop_assert!((opt.xi - best).abs() <= 0.005, "closed form {} vs grid {best}", opt.xi);
    }

    #[test]
    fn closed_form_xi_matches_grid_when_ab_small(model in model()) {
        prop_assume!(model.a() * model.b() <= 1e-3);
        let opt = model.optimal_xi();
        prop_assume!(opt.method == XiMethod::ClosedForm);
        let best = grid_argmax(|xi| model.with_xi(xi).secrecy_bound().ok());
        prop_assert!((opt.xi - best).abs() <= 0.005, "closed form {} vs grid {best}", opt.xi);
    }
}

/// Argmax over the ξ grid with step 0.001, skipping points without a value.
fn grid_argmax(f: impl Fn(f64) -> Option<f64>) -> f64 {
    (1..=1000)
        .map(|i| i as f64 / 1000.0)
        .filter_map(|xi| f(xi).map(|v| (xi, v)))
        .fold((0.0, f64::NEG_INFINITY), |b, c| if c.1 > b.1 { c } else { b })
        .0
}

/// Median over 50 cluster draws of `|R_{lag,0}|`.
fn clustered_median(spread: f64, lag: usize) -> f64 {
    let mut mags: Vec<f64> = (0..50)
        .map(|seed| {
            let spec = CorrelationSpec::ClusteredAngular {
                clusters: 40,
                spread,
                seed,
            };
            spec.raw_matrix(16).unwrap()[(lag, 0)].norm()
        })
        .collect();
    mags.sort_by(f64::total_cmp);
    (mags[24] + mags[25]) / 2.0
}

#[test]
fn clustered_correlation_decays_with_spread() {
    for lag in 1..4 {
        let medians: Vec<f64> = [0.2, 0.4, 0.7, 1.0, 1.4]
            .into_iter()
            .map(|s| clustered_median(s, lag))
            .collect();
        assert!(medians.windows(2).all(|w| w[1] < w[0]), "lag {lag}: {medians:?}");
    }
}

/// Near Δ = π the edge clusters sit at φ ≈ ±π/2 where cos φ ≈ 0, so the
/// Gaussian spread factor no longer damps them and correlation grows again.
#[test]
fn clustered_correlation_rises_near_half_circle() {
    for lag in 1..4 {
        let medians: Vec<f64> = [2.0, 2.8, PI]
            .into_iter()
            .map(|s| clustered_median(s, lag))
            .collect();
        assert!(medians.windows(2).all(|w| w[1] > w[0]), "lag {lag}: {medians:?}");
    }
}

#[test]
fn user_and_eavesdropper_channels_uncorrelated() {
    let (n, k, m) = (4, 2, 2);
    let fading = LargeScaleFading::unit(k);
    let draws = 20_000;
    let mut cross = vec![c64::new(0.0, 0.0); k * n * m * n];
    for i in 0..draws {
        let ch = sample_channels(n, k, m, &fading, &CMatrix::identity(n, n), &mut substream(5, i)).unwrap();
        let mut idx = 0;
        for a in ch.h.iter() {
            for b in ch.h_e.iter() {
                cross[idx] += a * b.conj();
                idx += 1;
            }
        }
    }
    let worst = cross.iter().map(|c| c.norm() / draws as f64).fold(0.0, f64::max);
    assert!(worst < 0.02, "max |E[h h_e*]| = {worst}");
}

#[test]
fn quantized_power_is_conserved_and_noise_uncorrelated() {
    let (n, k, power, xi) = (32, 4, 1.0, 0.6);
    let fading = LargeScaleFading::unit(k);
    let ch = sample_channels(n, k, 1, &fading, &CMatrix::identity(n, n), &mut substream(9, 0)).unwrap();
    let w = mf_precoder(&ch.h).unwrap();
    let (v, _) = null_space_an(&ch.h).unwrap();
    let (mu, nu) = power_split(power, xi, n, k).unwrap();
    for rho in [0.0, 0.3634, 0.1175] {
        let cq = quantization_noise_cov(&w, &v, mu, nu, rho).unwrap();
        let draws = 10_000;
        let (mut energy, mut corr, mut x_energy) = (0.0, c64::new(0.0, 0.0), 0.0);
        for i in 0..draws {
            let mut rng = substream(10, i);
            let s = complex_gaussian_vector(k, &mut rng);
            let t = complex_gaussian_vector(n - k, &mut rng);
            let x = transmit(&w, &v, &s, &t, mu, nu).unwrap();
            let z = quantize(&x, &cq, rho, &mut rng).unwrap();
            let q = &z - &x * c64::new((1.0 - rho).sqrt(), 0.0);
            energy += z.norm_squared();
            x_energy += x.norm_squared();
            corr += x.dotc(&q);
        }
        let d = draws as f64;
        assert!((energy / d - power).abs() <= 0.03 * power, "rho {rho}: E|z|^2 = {}", energy / d);
        let normalized = corr.norm() / d / (x_energy / d);
        assert!(normalized <= 0.02, "rho {rho}: normalized E[x^H q] = {normalized}");
    }
}

#[test]
fn frobenius_normalization_approaches_asymptotic_constant() {
    let k = 4;
    let fading = LargeScaleFading::new(vec![0.5, 1.0, 1.5, 2.0], 1.0).unwrap();
    let sum_beta: f64 = fading.betas().iter().sum();
    let deviation = |n: usize| {
        let draws = 50;
        (0..draws)
            .map(|i| {
                let ch = sample_channels(n, k, 1, &fading, &CMatrix::identity(n, n), &mut substream(11, i)).unwrap();
                (frobenius_sq(&ch.h) / (n as f64 * sum_beta) - 1.0).abs()
            })
            .sum::<f64>()
            / draws as f64
    };
    let devs: Vec<f64> = [16, 64, 256, 1024].into_iter().map(deviation).collect();
    assert!(devs.windows(2).all(|w| w[1] < w[0]), "{devs:?}");
}

#[test]
fn projection_diagonals_concentrate() {
    let (n, k) = (256, 16);
    let fading = LargeScaleFading::unit(k);
    let draws = 200;
    let mut w_diag = vec![0.0; n];
    for i in 0..draws {
        let ch = sample_channels(n, k, 1, &fading, &CMatrix::identity(n, n), &mut substream(12, i)).unwrap();
        let w = mf_precoder(&ch.h).unwrap();
        let (v, _) = null_space_an(&ch.h).unwrap();
        let v_target = (n - k) as f64 / n as f64;
        for (row, acc) in w_diag.iter_mut().enumerate() {
            *acc += w.row(row).norm_squared() / draws as f64;
            let vv = v.row(row).norm_squared();
            assert!((vv - v_target).abs() <= 0.1 * v_target, "diag(VV^H) entry {vv}");
        }
    }
    let w_target = k as f64 / n as f64;
    let worst = w_diag.iter().map(|d| (d - w_target).abs() / w_target).fold(0.0, f64::max);
    assert!(worst <= 0.1, "diag(WW^H) deviation {worst}");
}

#[test]
fn monte_carlo_respects_bound_directions_on_fig1_grid() {
    let (n, k, m) = (256, 16, 4);
    let (mu, nu) = power_split(1.0, 0.7, n, k).unwrap();
    for zeta in [0.2, 0.6] {
        let corr = build_correlation(&CorrelationSpec::Exponential { zeta }, n).unwrap();
        let tr = corr.spectral_sq_trace();
        let mc = MonteCarlo::new(n, k, m, 0, LargeScaleFading::unit(k), corr).unwrap();
        let mut points = Vec::new();
        let mut models = Vec::new();
        for bits in [Resolution::Bits(1), Resolution::Infinite] {
            let rho = distortion_factor(bits).unwrap();
            for snr_db in -10..=20 {
                let gamma0 = 10f64.powf(snr_db as f64 / 10.0);
                points.push(OperatingPoint {
                    rho,
                    mu,
                    nu,
                    sigma_n2: 1.0 / gamma0,
                    sigma_e2: 0.0,
                });
                models.push(BoundModel::unit_fading(n, k, m as f64, gamma0, 0.7, rho, tr).unwrap());
            }
        }
        let estimates = mc.run(&points, 300, 99).unwrap();
        for (est, model) in estimates.iter().zip(&models) {
            let user = est.user.mean;
            assert!(
                user >= model.user_rate_bound() - 3.0 * est.user.std_err,
                "user {user} below bound {}",
                model.user_rate_bound()
            );
            let eve = est.eve().unwrap();
            let bound = model.eve_rate_bound().unwrap();
            assert!(eve.mean <= bound + 3.0 * eve.std_err, "eve {} above bound {bound}", eve.mean);
        }
    }
}

/// Samples the eavesdropper's interference Gram matrix `H_e X H_eᴴ` with
/// the realized `X = (1−ρ)νVVᴴ + C_q` and compares its eigenvalue moments
/// with the moment-matched Wishart law.
#[test]
fn wishart_fit_matches_sampled_eigenvalue_moments() {
    let (n, k, m) = (256, 16, 4);
    let rho = distortion_factor(Resolution::Bits(1)).unwrap();
    let (mu, nu) = power_split(1.0, 0.7, n, k).unwrap();
    for zeta in [0.0, 0.5] {
        let corr = build_correlation(&CorrelationSpec::Exponential { zeta }, n).unwrap();
        let fading = LargeScaleFading::unit(k);
        let model = BoundModel::unit_fading(n, k, m as f64, 10.0, 0.7, rho, corr.spectral_sq_trace()).unwrap();
        let fit = model.wishart_moment_match().unwrap();
        let samples = 500;
        let (mut mean, mut spread) = (0.0, 0.0);
        for i in 0..samples {
            let ch = sample_channels(n, k, m, &fading, corr.sqrt(), &mut substream(13, i)).unwrap();
            let w = mf_precoder(&ch.h).unwrap();
            let (v, _) = null_space_an(&ch.h).unwrap();
            let cq = quantization_noise_cov(&w, &v, mu, nu, rho).unwrap();
            let hv = &ch.h_e * &v;
            let scaled = CMatrix::from_fn(m, n, |r, c| ch.h_e[(r, c)] * cq[c].sqrt());
            let y = &hv * hv.adjoint() * c64::new((1.0 - rho) * nu, 0.0) + &scaled * scaled.adjoint();
            let tr = y.trace().re / m as f64;
            let tr2 = (&y * &y).trace().re / m as f64;
            mean += tr / samples as f64;
            spread += (tr2 - tr * tr) / samples as f64;
        }
        let mf = m as f64;
        let mean_err = (mean - fit.first_moment).abs() / fit.first_moment;
        let spread_target = fit.second_moment * (mf - 1.0 / mf);
        let spread_err = (spread - spread_target).abs() / spread_target;
        assert!(mean_err <= 0.05, "zeta {zeta}: mean eigenvalue off by {mean_err}");
        assert!(spread_err <= 0.05, "zeta {zeta}: eigenvalue spread off by {spread_err}");
    }
}
