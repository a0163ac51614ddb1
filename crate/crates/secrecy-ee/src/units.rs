//! Decibel/linear conversions.
//!
//! All powers in this crate are normalized to the receiver noise variance,
//! so a "linear" power is dimensionless and its decibel form is
//! `10 * log10(power)`. Configuration files may specify powers in either
//! unit; internally everything is linear.

/// Converts a power from decibels to linear scale: `10^(db / 10)`.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Converts a linear power to decibels: `10 * log10(linear)`.
///
/// Returns `-inf` for zero and NaN for negative input, mirroring `log10`.
pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
