//! Error type shared across the crate.
//!
//! Every fallible operation returns [`Error`]. The variants separate the
//! caller's responsibility (bad parameters, bad inputs, malformed config)
//! from properties of the scenario itself (an infeasible outage target) and
//! from solver-level failures, so command-line and library callers can map
//! each class to a distinct outcome.

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A field of the system parameter set is out of its admissible range.
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParams {
        /// Name of the offending parameter field.
        field: &'static str,
        /// Human-readable description of the violated constraint.
        reason: String,
    },

    /// A function argument (power level, sample count, ...) is out of range.
    #[error("invalid input `{name}`: {reason}")]
    InvalidInput {
        /// Name of the offending argument.
        name: &'static str,
        /// Human-readable description of the violated constraint.
        reason: String,
    },

    /// The scenario cannot sustain a positive secrecy rate at the requested
    /// outage level: the quantile ratio `r_l` must lie strictly inside
    /// (0, 1), and here it does not.
    #[error(
        "infeasible scenario: outage quantile ratio r_l = {r_l} is not in (0, 1); \
         no relay power yields a positive secrecy outage capacity"
    )]
    InfeasibleScenario {
        /// The offending quantile ratio.
        r_l: f64,
    },

    /// The inner stationarity equation `C'(p) = q` has no positive root
    /// because `q` is at or above the derivative's supremum at `p -> 0`.
    #[error(
        "no positive relay power satisfies the stationarity condition: \
         q = {q} is not below the derivative bound {sup} at vanishing power"
    )]
    NoPositiveSolution {
        /// The efficiency weight that was requested.
        q: f64,
        /// Supremum of the capacity derivative, attained as the power
        /// vanishes.
        sup: f64,
    },

    /// A scenario or sweep description could not be parsed.
    #[error("malformed config: {0}")]
    Config(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Helper for rejecting a parameter field.
    pub(crate) fn param(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParams {
            field,
            reason: reason.into(),
        }
    }

    /// Helper for rejecting a function argument.
    pub(crate) fn input(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidInput {
            name,
            reason: reason.into(),
        }
    }
}
