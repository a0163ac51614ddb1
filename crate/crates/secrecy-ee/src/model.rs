//! Closed-form secrecy model of the relay link.
//!
//! The link under study is a two-hop amplify-and-forward connection in which
//! a single-antenna source talks to a relay equipped with a large antenna
//! array (`n_r` elements), the relay beamforms toward a single-antenna
//! destination using an imperfect channel estimate (quality `rho`), and a
//! passive single-antenna eavesdropper overhears the relay transmission.
//! With a large array, the legitimate links harden around their means while
//! the eavesdropper's effective SNR stays exponentially distributed, which
//! yields a closed form for the *secrecy outage capacity*: the largest
//! secrecy rate whose outage probability does not exceed `epsilon`.
//!
//! Everything in this module reduces to three coefficients derived from the
//! system parameters:
//!
//! * `a = rho * alpha_rd * n_r` — hardened array gain of the relay →
//!   destination hop,
//! * `b = p_s * alpha_sr * n_r` — hardened SNR of the source → relay hop,
//! * `r_l = -alpha_re * ln(epsilon) / a` — the eavesdropper quantile ratio:
//!   the `(1 - epsilon)`-quantile of the eavesdropper's channel gain
//!   relative to the hardened destination gain.
//!
//! The scenario supports a positive secrecy rate if and only if
//! `0 < r_l < 1`. When it does, the secrecy outage capacity
//!
//! ```text
//! C_soc(p_r) = w * log2(1 + p_r*a*b / (p_r*a + b + 1))
//!            - w * log2(1 + p_r*a*b / (p_r*a + (b + 1)/r_l))
//! ```
//!
//! is strictly quasi-concave in the relay power `p_r`, rising from zero to a
//! single peak at `p_peak = sqrt(r_l * (b + 1)) / (a * r_l)` and decaying
//! beyond it. Spending relay power past `p_peak` is therefore never useful,
//! which is what makes the energy-efficiency optimization in
//! [`crate::optimizer`] well behaved.
//!
//! The *secrecy energy efficiency* divides the capacity by the total power
//! drain `p_s + p_r + 2 * p_c` (both transmit powers plus the circuit power
//! of the two active terminals), giving bits per joule.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Natural log of 2, used to convert natural-log expressions to base 2.
const LN_2: f64 = std::f64::consts::LN_2;

// ---------------------------------------------------------------------------
// System parameters
// ---------------------------------------------------------------------------

/// Complete description of one link scenario.
///
/// All powers are linear and normalized to the receiver noise variance
/// (use [`crate::units::db_to_linear`] to convert decibel figures).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    /// Source transmit power (linear, > 0).
    pub p_s: f64,
    /// Relay transmit power budget (linear, > 0). Allocators never exceed it.
    pub p_t: f64,
    /// Circuit power drained by each active terminal (linear, >= 0).
    pub p_c: f64,
    /// Number of relay antennas (>= 1).
    pub n_r: u32,
    /// Bandwidth in hertz (> 0). Capacities scale linearly with it.
    pub w: f64,
    /// Channel-estimation quality of the relay → destination hop, in (0, 1].
    /// `rho = 1` is perfect CSI.
    pub rho: f64,
    /// Target secrecy outage probability, in (0, 1).
    pub epsilon: f64,
    /// Large-scale gain of the source → relay channel (> 0).
    pub alpha_sr: f64,
    /// Large-scale gain of the relay → destination channel (> 0).
    pub alpha_rd: f64,
    /// Large-scale gain of the relay → eavesdropper channel (> 0).
    pub alpha_re: f64,
}

impl SystemParams {
    /// Checks every field against its admissible range.
    pub fn validate(&self) -> Result<()> {
        fn positive(field: &'static str, v: f64) -> Result<()> {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::param(field, format!("must be finite and > 0, got {v}")))
            }
        }
        positive("p_s", self.p_s)?;
        positive("p_t", self.p_t)?;
        if !(self.p_c.is_finite() && self.p_c >= 0.0) {
            return Err(Error::param(
                "p_c",
                format!("must be finite and >= 0, got {}", self.p_c),
            ));
        }
        if self.n_r < 1 {
            return Err(Error::param("n_r", "must be at least 1".to_string()));
        }
        positive("w", self.w)?;
        if !(self.rho.is_finite() && self.rho > 0.0 && self.rho <= 1.0) {
            return Err(Error::param(
                "rho",
                format!("must lie in (0, 1], got {}", self.rho),
            ));
        }
        if !(self.epsilon.is_finite() && self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::param(
                "epsilon",
                format!("must lie strictly in (0, 1), got {}", self.epsilon),
            ));
        }
        positive("alpha_sr", self.alpha_sr)?;
        positive("alpha_rd", self.alpha_rd)?;
        positive("alpha_re", self.alpha_re)?;
        Ok(())
    }
}

/// Rejects relay powers that are negative or not finite.
fn ensure_relay_power(p_r: f64) -> Result<()> {
    if p_r.is_finite() && p_r >= 0.0 {
        Ok(())
    } else {
        Err(Error::input(
            "p_r",
            format!("relay power must be finite and >= 0, got {p_r}"),
        ))
    }
}

// ---------------------------------------------------------------------------
// Derived coefficients
// ---------------------------------------------------------------------------

/// The coefficient reduction of a scenario: everything the capacity and its
/// derivative depend on, besides bandwidth and relay power.
///
/// Derive once with [`derive_coefficients`], then evaluate the closed forms
/// as often as needed — the methods here are allocation-free and cheap, which
/// matters for grid sweeps and root finding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedCoefficients {
    /// Hardened relay → destination array gain, `rho * alpha_rd * n_r`.
    pub a: f64,
    /// Hardened source → relay SNR, `p_s * alpha_sr * n_r`.
    pub b: f64,
    /// Eavesdropper quantile ratio, `-alpha_re * ln(epsilon) / a`.
    pub r_l: f64,
    /// Stationary point of the capacity in `p_r`,
    /// `sqrt(r_l * (b + 1)) / (a * r_l)`. This is the capacity peak when the
    /// scenario is feasible (and the trough of the negative capacity branch
    /// when it is not).
    pub p_peak: f64,
}

impl DerivedCoefficients {
    /// Whether a positive secrecy rate is attainable: `0 < r_l < 1`.
    pub fn feasible(&self) -> bool {
        self.r_l > 0.0 && self.r_l < 1.0
    }

    /// Secrecy outage capacity in bit/s at relay power `p_r`, for
    /// bandwidth `w`.
    ///
    /// Returns exactly `0.0` at `p_r = 0`, positive values for `p_r > 0`
    /// when the scenario is feasible, and negative values when it is not
    /// (`r_l > 1`; callers treat that case as infeasible rather than as a
    /// meaningful rate).
    ///
    /// The defining difference of logarithms subtracts nearly equal terms
    /// whenever the capacity is small against either rate (most acutely as
    /// `r_l -> 1`). Collapsing the difference algebraically,
    ///
    /// ```text
    /// C = w * log2(1 + b*pa*(1 - r_l) / ((pa + b + 1)*(pa*r_l + 1)))
    /// ```
    ///
    /// with `pa = p_r * a`, is exact — the ratio of the two SNR terms reduces
    /// to precisely this single logarithm — and keeps full precision because
    /// `(1 - r_l)` enters as a factor instead of through the cancellation of
    /// two large logs.
    pub fn capacity(&self, w: f64, p_r: f64) -> f64 {
        let DerivedCoefficients { a, b, r_l, .. } = *self;
        let pa = p_r * a;
        let g = b * pa * (1.0 - r_l) / ((pa + b + 1.0) * (pa * r_l + 1.0));
        w * g.ln_1p() / LN_2
    }

    /// Derivative of the secrecy outage capacity with respect to `p_r`,
    /// in bit/s per unit power.
    ///
    /// The quotient rule gives the derivative as a difference of two
    /// fractions; factoring that difference yields the equivalent
    /// cancellation-free form evaluated here,
    ///
    /// ```text
    /// C'(p) = (w / ln 2) * a*b * (1 - r_l) * (b + 1 - (p*a)^2 * r_l)
    ///         / ((p*a + 1)(p*a + b + 1)(p*a*r_l + 1)(p*a*r_l + b + 1))
    /// ```
    ///
    /// which stays accurate for `r_l` arbitrarily close to 1 and makes the
    /// sign structure explicit: positive below `p_peak`, zero at it,
    /// negative above (signs flip when `r_l > 1`).
    ///
    /// `p_r = 0` returns the one-sided limit [`Self::derivative_at_zero`].
    pub fn capacity_derivative(&self, w: f64, p_r: f64) -> f64 {
        let DerivedCoefficients { a, b, r_l, .. } = *self;
        let pa = p_r * a;
        let parl = pa * r_l;
        let num = a * b * (1.0 - r_l) * (b + 1.0 - pa * parl);
        let den = (pa + 1.0) * (pa + b + 1.0) * (parl + 1.0) * (parl + b + 1.0);
        w / LN_2 * num / den
    }

    /// One-sided limit of the capacity derivative as `p_r -> 0+`:
    /// `(w / ln 2) * a * b * (1 - r_l) / (b + 1)`.
    ///
    /// For feasible scenarios this is the supremum of the derivative over
    /// `p_r > 0`, which bounds the efficiency weights for which the
    /// stationarity equation `C'(p) = q` still has a positive root.
    pub fn derivative_at_zero(&self, w: f64) -> f64 {
        w / LN_2 * self.a * self.b * (1.0 - self.r_l) / (self.b + 1.0)
    }
}

// ---------------------------------------------------------------------------
// Model operations
// ---------------------------------------------------------------------------

/// Reduces a parameter set to its [`DerivedCoefficients`].
///
/// Errors with [`Error::InvalidParams`] when any field is out of range.
/// Infeasible scenarios (`r_l >= 1`) are *not* an error here — the
/// coefficients describe them faithfully and [`DerivedCoefficients::feasible`]
/// reports the situation; allocators reject them.
pub fn derive_coefficients(params: &SystemParams) -> Result<DerivedCoefficients> {
    params.validate()?;
    let a = params.rho * params.alpha_rd * params.n_r as f64;
    let b = params.p_s * params.alpha_sr * params.n_r as f64;
    let r_l = -(params.alpha_re * params.epsilon.ln()) / a;
    let p_peak = (r_l * (b + 1.0)).sqrt() / (a * r_l);
    Ok(DerivedCoefficients { a, b, r_l, p_peak })
}

/// Secrecy outage capacity `C_soc(p_r)` in bit/s.
///
/// Errors on invalid parameters or a negative / non-finite `p_r`.
pub fn secrecy_outage_capacity(p_r: f64, params: &SystemParams) -> Result<f64> {
    ensure_relay_power(p_r)?;
    let coeffs = derive_coefficients(params)?;
    Ok(coeffs.capacity(params.w, p_r))
}

/// Derivative of the secrecy outage capacity with respect to `p_r`.
///
/// Errors on invalid parameters or a negative / non-finite `p_r`;
/// `p_r = 0` returns the one-sided limit.
pub fn capacity_derivative(p_r: f64, params: &SystemParams) -> Result<f64> {
    ensure_relay_power(p_r)?;
    let coeffs = derive_coefficients(params)?;
    Ok(coeffs.capacity_derivative(params.w, p_r))
}

/// Average total power drain `0.5 * p_s + 0.5 * p_r + p_c` in linear units.
///
/// The halves reflect that each hop transmits in only one of the two phases
/// of the relay protocol, while one terminal's worth of circuit power is
/// burned continuously on average.
pub fn total_power(p_r: f64, params: &SystemParams) -> Result<f64> {
    ensure_relay_power(p_r)?;
    params.validate()?;
    Ok(0.5 * params.p_s + 0.5 * p_r + params.p_c)
}

/// Secrecy energy efficiency `C_soc(p_r) / (p_s + p_r + 2 * p_c)` in bit/J.
///
/// This is the canonical ratio maximized by the allocator: capacity over the
/// sum of both transmit powers and both terminals' circuit power. It equals
/// `0.5 * C_soc / total_power` identically, the form that weights each
/// quantity by its duty cycle.
pub fn secrecy_energy_efficiency(p_r: f64, params: &SystemParams) -> Result<f64> {
    ensure_relay_power(p_r)?;
    let coeffs = derive_coefficients(params)?;
    let denom = params.p_s + p_r + 2.0 * params.p_c;
    Ok(coeffs.capacity(params.w, p_r) / denom)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
