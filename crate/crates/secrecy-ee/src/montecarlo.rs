//! Monte Carlo validation of the closed-form outage model.
//!
//! The closed form in [`crate::model`] rests on two asymptotic arguments:
//! the legitimate links harden around their means as the array grows, and
//! the eavesdropper's effective channel keeps an exponential tail whose
//! `(1 - epsilon)`-quantile produces the `r_l` term. This module draws the
//! actual finite-array channels, beamforms exactly as the relay would, and
//! estimates outage probabilities and outage-capacity quantiles empirically
//! so the approximation quality is measurable instead of assumed.
//!
//! Reproducibility contract: a batch of `n` draws under `(seed, n)` is a
//! pure function of those values. Draw `i` uses its own counter-mode RNG
//! stream derived from `(seed, i)`, so results are independent of the rayon
//! thread count and of how work is split, and growing `n` preserves the
//! first `n` draws. Within one draw the four channel vectors are filled in a
//! fixed order — `h_sr`, `h_rd_hat`, `e`, `h_re` — element by element.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::SystemParams;

// ---------------------------------------------------------------------------
// Channel sampling
// ---------------------------------------------------------------------------

/// One draw of every small-scale channel in the link, each entry i.i.d.
/// circularly-symmetric complex Gaussian with unit variance.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    /// Source → relay channel.
    pub h_sr: Vec<Complex64>,
    /// Relay's *estimate* of the relay → destination channel; this is what
    /// the transmit beamformer points at.
    pub h_rd_hat: Vec<Complex64>,
    /// Estimation error of the relay → destination channel.
    pub e: Vec<Complex64>,
    /// Relay → eavesdropper channel.
    pub h_re: Vec<Complex64>,
}

impl ChannelRealization {
    fn zeros(n_r: usize) -> Self {
        let zero = vec![Complex64::new(0.0, 0.0); n_r];
        ChannelRealization {
            h_sr: zero.clone(),
            h_rd_hat: zero.clone(),
            e: zero.clone(),
            h_re: zero,
        }
    }

    /// Refills every vector from `rng` in the documented order.
    fn fill(&mut self, rng: &mut ChaCha8Rng) {
        for v in [&mut self.h_sr, &mut self.h_rd_hat, &mut self.e, &mut self.h_re] {
            for entry in v.iter_mut() {
                *entry = complex_gaussian(rng);
            }
        }
    }

    /// The true relay → destination channel implied by estimate quality
    /// `rho`: `sqrt(rho) * h_rd_hat + sqrt(1 - rho) * e`, element-wise.
    pub fn h_rd(&self, rho: f64) -> Vec<Complex64> {
        let c_hat = rho.sqrt();
        let c_err = (1.0 - rho).sqrt();
        self.h_rd_hat
            .iter()
            .zip(&self.e)
            .map(|(hat, err)| c_hat * hat + c_err * err)
            .collect()
    }
}

/// Unit-variance circularly-symmetric complex Gaussian sample.
fn complex_gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// RNG for draw `index` of a batch keyed by `seed`: one fixed key, one
/// counter stream per draw.
fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Draws one channel realization for the scenario (draw index 0 of the
/// batch keyed by `seed`; batch estimators reproduce it as their first
/// sample).
pub fn sample_channels(params: &SystemParams, seed: u64) -> ChannelRealization {
    let mut realization = ChannelRealization::zeros(params.n_r as usize);
    realization.fill(&mut stream_rng(seed, 0));
    realization
}

// ---------------------------------------------------------------------------
// Instantaneous SNRs
// ---------------------------------------------------------------------------

/// Exact post-processing SNRs of one realization, without any hardening
/// approximation: the relay MRC-combines the first hop with `h_sr`,
/// normalizes, and beamforms the second hop along `h_rd_hat`; destination
/// and eavesdropper then see
///
/// ```text
/// gamma_D = p_s p_r α_sr α_rd |h_rd^H ĥ|² s1 / (p_r α_rd |h_rd^H ĥ|² + s2 (p_s α_sr s1 + 1))
/// gamma_E = p_s p_r α_sr α_re |h_re^H ĥ|² s1 / (p_r α_re |h_re^H ĥ|² + s2 (p_s α_sr s1 + 1))
/// ```
///
/// with `s1 = ‖h_sr‖²`, `s2 = ‖ĥ‖²` and `h_rd` composed from the estimate
/// and the error per [`ChannelRealization::h_rd`].
fn snrs_core(realization: &ChannelRealization, p_r: f64, params: &SystemParams) -> (f64, f64) {
    let c_hat = params.rho.sqrt();
    let c_err = (1.0 - params.rho).sqrt();
    let mut s1 = 0.0f64;
    let mut s2 = 0.0f64;
    let mut ip_d = Complex64::new(0.0, 0.0);
    let mut ip_e = Complex64::new(0.0, 0.0);
    for k in 0..realization.h_rd_hat.len() {
        let hat = realization.h_rd_hat[k];
        let h_rd = c_hat * hat + c_err * realization.e[k];
        s1 += realization.h_sr[k].norm_sqr();
        s2 += hat.norm_sqr();
        ip_d += h_rd.conj() * hat;
        ip_e += realization.h_re[k].conj() * hat;
    }
    let g_d = ip_d.norm_sqr();
    let g_e = ip_e.norm_sqr();
    let first_hop = params.p_s * params.alpha_sr * s1 + 1.0;
    let gamma_d = params.p_s * p_r * params.alpha_sr * params.alpha_rd * g_d * s1
        / (p_r * params.alpha_rd * g_d + s2 * first_hop);
    let gamma_e = params.p_s * p_r * params.alpha_sr * params.alpha_re * g_e * s1
        / (p_r * params.alpha_re * g_e + s2 * first_hop);
    (gamma_d, gamma_e)
}

/// Destination and eavesdropper SNRs `(gamma_d, gamma_e)` of one
/// realization at relay power `p_r`.
///
/// Errors on invalid parameters, a negative / non-finite `p_r`, or a
/// realization whose vectors do not all have length `n_r`.
pub fn instantaneous_snrs(
    realization: &ChannelRealization,
    p_r: f64,
    params: &SystemParams,
) -> Result<(f64, f64)> {
    params.validate()?;
    if !(p_r.is_finite() && p_r >= 0.0) {
        return Err(Error::input(
            "p_r",
            format!("relay power must be finite and >= 0, got {p_r}"),
        ));
    }
    let n = params.n_r as usize;
    let lengths = [
        realization.h_sr.len(),
        realization.h_rd_hat.len(),
        realization.e.len(),
        realization.h_re.len(),
    ];
    if lengths.iter().any(|&l| l != n) {
        return Err(Error::input(
            "realization",
            format!("channel vectors have lengths {lengths:?}, expected n_r = {n} for all"),
        ));
    }
    Ok(snrs_core(realization, p_r, params))
}

// ---------------------------------------------------------------------------
// Batch estimators
// ---------------------------------------------------------------------------

/// Instantaneous secrecy rates `w * (log2(1 + gamma_d) - log2(1 + gamma_e))`
/// for draws `0..n_samples`, in draw order. May be negative; the outage
/// estimators floor at zero where the secrecy formulation requires it.
///
/// This is the sample stream underlying both empirical estimators, exposed
/// so callers can inspect distributions directly.
pub fn secrecy_rate_samples(
    p_r: f64,
    params: &SystemParams,
    n_samples: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    params.validate()?;
    if !(p_r.is_finite() && p_r >= 0.0) {
        return Err(Error::input(
            "p_r",
            format!("relay power must be finite and >= 0, got {p_r}"),
        ));
    }
    if n_samples == 0 {
        return Err(Error::input("n_samples", "must be at least 1".to_string()));
    }
    let n_r = params.n_r as usize;
    let rates = (0..n_samples)
        .into_par_iter()
        .map_init(
            || ChannelRealization::zeros(n_r),
            |scratch, i| {
                scratch.fill(&mut stream_rng(seed, i as u64));
                let (gamma_d, gamma_e) = snrs_core(scratch, p_r, params);
                params.w * ((1.0 + gamma_d).log2() - (1.0 + gamma_e).log2())
            },
        )
        .collect();
    Ok(rates)
}

/// An empirical outage probability with its sampling uncertainty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OutageEstimate {
    /// Fraction of draws whose secrecy rate fell below the target rate.
    pub p_out: f64,
    /// Number of draws behind the estimate.
    pub n_samples: usize,
    /// Normal-approximation 95% confidence half-width,
    /// `1.96 * sqrt(p (1 - p) / n)`.
    pub ci_halfwidth: f64,
}

/// Estimates the probability that the instantaneous secrecy rate falls
/// below `rate` (bit/s) at relay power `p_r`.
pub fn empirical_outage_probability(
    rate: f64,
    p_r: f64,
    params: &SystemParams,
    n_samples: usize,
    seed: u64,
) -> Result<OutageEstimate> {
    if !(rate.is_finite() && rate >= 0.0) {
        return Err(Error::input(
            "rate",
            format!("target rate must be finite and >= 0, got {rate}"),
        ));
    }
    let samples = secrecy_rate_samples(p_r, params, n_samples, seed)?;
    let count = samples.iter().filter(|&&s| s < rate).count();
    let p_out = count as f64 / n_samples as f64;
    let ci_halfwidth = 1.96 * (p_out * (1.0 - p_out) / n_samples as f64).sqrt();
    Ok(OutageEstimate {
        p_out,
        n_samples,
        ci_halfwidth,
    })
}

/// Empirical secrecy outage capacity: the lower `epsilon`-quantile of the
/// floored secrecy-rate sample, i.e. the largest rate whose estimated outage
/// probability stays within the target `params.epsilon`.
///
/// Requires at least 1000 samples — below that the quantile of a tail this
/// far out is mostly noise.
pub fn empirical_secrecy_outage_capacity(
    p_r: f64,
    params: &SystemParams,
    n_samples: usize,
    seed: u64,
) -> Result<f64> {
    if n_samples < 1000 {
        return Err(Error::input(
            "n_samples",
            format!("at least 1000 samples are needed for a stable quantile, got {n_samples}"),
        ));
    }
    let mut samples = secrecy_rate_samples(p_r, params, n_samples, seed)?;
    for s in &mut samples {
        *s = s.max(0.0);
    }
    samples.sort_unstable_by(f64::total_cmp);
    let k = (params.epsilon * n_samples as f64).ceil() as usize;
    let k = k.clamp(1, n_samples);
    Ok(samples[k - 1])
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{derive_coefficients, secrecy_outage_capacity};
    use crate::test_support::baseline_params;
    use approx::assert_relative_eq;

    #[test]
    fn sampling_is_deterministic_in_seed_and_differs_across_streams() {
        let params = baseline_params();
        let a = sample_channels(&params, 42);
        let b = sample_channels(&params, 42);
        assert_eq!(a, b, "same seed must reproduce the draw exactly");
        let c = sample_channels(&params, 43);
        assert_ne!(a, c, "different seeds must give different draws");
        let d0 = stream_rng(7, 0);
        let d1 = stream_rng(7, 1);
        let mut r0 = d0.clone();
        let mut r1 = d1.clone();
        assert_ne!(
            complex_gaussian(&mut r0),
            complex_gaussian(&mut r1),
            "per-draw streams must be distinct"
        );
    }

    #[test]
    fn realizations_have_the_right_shape() {
        let params = baseline_params();
        let r = sample_channels(&params, 1);
        for v in [&r.h_sr, &r.h_rd_hat, &r.e, &r.h_re] {
            assert_eq!(v.len(), params.n_r as usize);
        }
    }

    #[test]
    fn perfect_estimation_makes_the_true_channel_the_estimate() {
        let params = baseline_params();
        let r = sample_channels(&params, 5);
        assert_eq!(r.h_rd(1.0), r.h_rd_hat);
    }

    #[test]
    fn batch_first_sample_matches_the_single_draw_path() {
        let params = baseline_params();
        let seed = 99;
        let p_r = 1.25;
        let r = sample_channels(&params, seed);
        let (gd, ge) = instantaneous_snrs(&r, p_r, &params).unwrap();
        let direct = params.w * ((1.0 + gd).log2() - (1.0 + ge).log2());
        let batch = secrecy_rate_samples(p_r, &params, 3, seed).unwrap();
        assert_eq!(batch[0], direct, "draw 0 of a batch is the single-draw sample");
    }

    #[test]
    fn zero_relay_power_silences_both_receivers() {
        let params = baseline_params();
        let r = sample_channels(&params, 3);
        let (gd, ge) = instantaneous_snrs(&r, 0.0, &params).unwrap();
        assert_eq!(gd, 0.0);
        assert_eq!(ge, 0.0);
    }

    #[test]
    fn snrs_match_an_independent_recomputation() {
        let mut params = baseline_params();
        params.rho = 0.7;
        let r = sample_channels(&params, 11);
        let p_r = 2.0;
        let (gd, ge) = instantaneous_snrs(&r, p_r, &params).unwrap();

        let h_rd = r.h_rd(params.rho);
        let s1: f64 = r.h_sr.iter().map(|z| z.norm_sqr()).sum();
        let s2: f64 = r.h_rd_hat.iter().map(|z| z.norm_sqr()).sum();
        let ip_d: Complex64 = h_rd
            .iter()
            .zip(&r.h_rd_hat)
            .map(|(h, hat)| h.conj() * hat)
            .sum();
        let ip_e: Complex64 = r
            .h_re
            .iter()
            .zip(&r.h_rd_hat)
            .map(|(h, hat)| h.conj() * hat)
            .sum();
        let first_hop = params.p_s * params.alpha_sr * s1 + 1.0;
        let gd_ref = params.p_s * p_r * params.alpha_sr * params.alpha_rd * ip_d.norm_sqr() * s1
            / (p_r * params.alpha_rd * ip_d.norm_sqr() + s2 * first_hop);
        let ge_ref = params.p_s * p_r * params.alpha_sr * params.alpha_re * ip_e.norm_sqr() * s1
            / (p_r * params.alpha_re * ip_e.norm_sqr() + s2 * first_hop);
        assert_relative_eq!(gd, gd_ref, max_relative = 1e-12);
        assert_relative_eq!(ge, ge_ref, max_relative = 1e-12);
    }

    #[test]
    fn channel_norms_concentrate_on_their_means() {
        let draws = 10_000;
        let mut acc = 0.0;
        let mut scratch = ChannelRealization::zeros(64);
        for i in 0..draws {
            scratch.fill(&mut stream_rng(123, i));
            acc += scratch.h_sr.iter().map(|z| z.norm_sqr()).sum::<f64>() / 64.0;
        }
        let mean = acc / draws as f64;
        assert!(
            (mean - 1.0).abs() < 0.02,
            "per-antenna channel power should average 1, got {mean}"
        );
    }

    #[test]
    fn estimation_quality_shows_up_as_correlation() {
        let mut params = baseline_params();
        params.n_r = 8;
        params.rho = 0.9;
        let draws = 100_000u64;
        let mut num = Complex64::new(0.0, 0.0);
        let mut den_h = 0.0;
        let mut den_hat = 0.0;
        let mut scratch = ChannelRealization::zeros(8);
        for i in 0..draws {
            scratch.fill(&mut stream_rng(321, i));
            let h_rd = scratch.h_rd(params.rho);
            for (h, hat) in h_rd.iter().zip(&scratch.h_rd_hat) {
                num += h * hat.conj();
                den_h += h.norm_sqr();
                den_hat += hat.norm_sqr();
            }
        }
        let rho_hat = num.norm_sqr() / (den_h * den_hat);
        assert!(
            (rho_hat - 0.9).abs() < 0.01,
            "squared normalized inner product should estimate rho, got {rho_hat}"
        );
    }

    #[test]
    fn destination_snr_hardens_to_the_closed_form_mean() {
        let params = baseline_params();
        let p_r = 1.0;
        let draws = 30_000;
        let mut acc = 0.0;
        let mut scratch = ChannelRealization::zeros(params.n_r as usize);
        for i in 0..draws {
            scratch.fill(&mut stream_rng(7, i));
            acc += snrs_core(&scratch, p_r, &params).0;
        }
        let mean = acc / draws as f64;
        let coeffs = derive_coefficients(&params).unwrap();
        let hardened =
            p_r * coeffs.a * coeffs.b / (p_r * coeffs.a + coeffs.b + 1.0);
        assert_relative_eq!(mean, hardened, max_relative = 0.02);
    }

    #[test]
    fn outage_estimates_hit_the_distribution_extremes() {
        let params = baseline_params();
        let est_hi =
            empirical_outage_probability(1e12, 1.0, &params, 2000, 5).unwrap();
        assert_eq!(est_hi.p_out, 1.0);
        assert_eq!(est_hi.ci_halfwidth, 0.0);

        let est_lo = empirical_outage_probability(0.0, 1.0, &params, 2000, 5).unwrap();
        assert!(
            est_lo.p_out < 0.01,
            "a zero-rate target is outage-free up to the negative-rate tail, got {}",
            est_lo.p_out
        );
    }

    #[test]
    fn outage_counts_are_integral() {
        let params = baseline_params();
        let est = empirical_outage_probability(30_000.0, 1.0, &params, 1777, 2).unwrap();
        let count = est.p_out * est.n_samples as f64;
        assert!((count - count.round()).abs() < 1e-9);
        assert_eq!(est.n_samples, 1777);
        assert!(est.ci_halfwidth > 0.0);
    }

    #[test]
    fn closed_form_rate_sees_roughly_the_target_outage() {
        let params = baseline_params();
        let coeffs = derive_coefficients(&params).unwrap();
        let p_r = coeffs.p_peak;
        let rate = secrecy_outage_capacity(p_r, &params).unwrap();
        let est = empirical_outage_probability(rate, p_r, &params, 20_000, 1).unwrap();
        assert!(
            (est.p_out - params.epsilon).abs() < 0.02,
            "outage at the closed-form rate should sit near epsilon = {}, got {}",
            params.epsilon,
            est.p_out
        );
    }

    #[test]
    fn empirical_quantile_tracks_the_closed_form() {
        let params = baseline_params();
        let coeffs = derive_coefficients(&params).unwrap();
        let p_r = coeffs.p_peak;
        let closed = secrecy_outage_capacity(p_r, &params).unwrap();
        let empirical = empirical_secrecy_outage_capacity(p_r, &params, 20_000, 1).unwrap();
        assert_relative_eq!(empirical, closed, max_relative = 0.05);
    }

    #[test]
    fn empirical_quantile_is_monotone_in_the_outage_target() {
        let mut params = baseline_params();
        params.n_r = 25;
        let mut last = f64::NEG_INFINITY;
        for eps in [0.02, 0.05, 0.1, 0.2] {
            params.epsilon = eps;
            let q = empirical_secrecy_outage_capacity(1.0, &params, 5000, 9).unwrap();
            assert!(q >= last, "quantile must grow with the outage budget");
            last = q;
        }
    }

    #[test]
    fn doubling_the_sample_count_moves_the_quantile_within_its_ci() {
        let mut params = baseline_params();
        params.n_r = 25;
        let n = 20_000usize;
        let seed = 31;
        let q_n = empirical_secrecy_outage_capacity(1.0, &params, n, seed).unwrap();
        let q_2n = empirical_secrecy_outage_capacity(1.0, &params, 2 * n, seed).unwrap();

        // Order-statistic CI of the n-sample quantile.
        let mut samples = secrecy_rate_samples(1.0, &params, n, seed).unwrap();
        for s in &mut samples {
            *s = s.max(0.0);
        }
        samples.sort_unstable_by(f64::total_cmp);
        let k = (params.epsilon * n as f64).ceil() as f64;
        let spread = 1.96 * (n as f64 * params.epsilon * (1.0 - params.epsilon)).sqrt();
        let k_lo = ((k - spread).floor().max(1.0) as usize).min(n) - 1;
        let k_hi = ((k + spread).ceil() as usize).clamp(1, n) - 1;
        let width = samples[k_hi] - samples[k_lo];
        assert!(
            (q_2n - q_n).abs() <= width,
            "doubling n moved the quantile by {} which exceeds the CI width {width}",
            (q_2n - q_n).abs()
        );
    }

    #[test]
    fn estimates_do_not_depend_on_the_thread_count() {
        let mut params = baseline_params();
        params.n_r = 16;
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| secrecy_rate_samples(0.8, &params, 4000, 17).unwrap())
        };
        let serial = run(1);
        let parallel = run(3);
        assert_eq!(serial, parallel, "sample streams must be scheduling-invariant");
    }

    #[test]
    fn growing_the_batch_preserves_the_prefix() {
        let params = baseline_params();
        let small = secrecy_rate_samples(1.0, &params, 50, 23).unwrap();
        let large = secrecy_rate_samples(1.0, &params, 75, 23).unwrap();
        assert_eq!(&large[..50], &small[..]);
    }

    #[test]
    fn shape_and_range_violations_are_rejected() {
        let params = baseline_params();
        let mut r = sample_channels(&params, 0);
        r.h_re.pop();
        assert!(matches!(
            instantaneous_snrs(&r, 1.0, &params),
            Err(Error::InvalidInput { name: "realization", .. })
        ));

        assert!(matches!(
            instantaneous_snrs(&sample_channels(&params, 0), -1.0, &params),
            Err(Error::InvalidInput { name: "p_r", .. })
        ));
        assert!(matches!(
            secrecy_rate_samples(1.0, &params, 0, 0),
            Err(Error::InvalidInput { name: "n_samples", .. })
        ));
        assert!(matches!(
            empirical_secrecy_outage_capacity(1.0, &params, 999, 0),
            Err(Error::InvalidInput { name: "n_samples", .. })
        ));
        assert!(matches!(
            empirical_outage_probability(f64::NAN, 1.0, &params, 1000, 0),
            Err(Error::InvalidInput { name: "rate", .. })
        ));
    }
}
