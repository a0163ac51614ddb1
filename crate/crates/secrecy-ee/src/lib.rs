//! Secrecy outage capacity and secrecy energy efficiency of an
//! amplify-and-forward large-scale-MIMO relay link under imperfect CSI.
//!
//! A single-antenna source reaches a single-antenna destination through a
//! relay with a large antenna array, while a passive eavesdropper overhears
//! the relay's transmission. The relay only has an imperfect estimate of the
//! destination channel. Channel hardening on the legitimate links plus the
//! exponential tail of the eavesdropper's effective channel yield a closed
//! form for the secrecy outage capacity — the largest secrecy rate whose
//! outage probability stays within a target `epsilon` — and from it the
//! secrecy energy efficiency in bits per joule.
//!
//! The crate provides, in matching modules:
//!
//! * [`model`] — the closed forms: parameters, derived coefficients,
//!   capacity, its derivative, total power, efficiency;
//! * [`optimizer`] — the Dinkelbach fractional-programming allocator that
//!   picks the energy-optimal relay power under the budget and peak caps,
//!   plus the capacity-max baseline scheme;
//! * [`montecarlo`] — finite-array channel simulation that validates the
//!   closed form empirically, with scheduling-invariant reproducibility;
//! * [`config`] — JSON scenario and sweep descriptions with explicit dB /
//!   linear power units;
//! * [`sweep`] — grid evaluation of allocation schemes and CSV rendering;
//! * [`cli`] — the subcommand layer behind the `secrecy-ee` binary.
//!
//! # Quick start
//!
//! ```
//! use secrecy_ee::model::SystemParams;
//! use secrecy_ee::optimizer::{dinkelbach_solve, SolverConfig};
//! use secrecy_ee::units::db_to_linear;
//!
//! // 100-antenna relay, 10 kHz band, 5% outage target, estimate quality 0.9.
//! let params = SystemParams {
//!     p_s: db_to_linear(10.0),
//!     p_t: db_to_linear(10.0),
//!     p_c: db_to_linear(5.0),
//!     n_r: 100,
//!     w: 1e4,
//!     rho: 0.9,
//!     epsilon: 0.05,
//!     alpha_sr: 1.0,
//!     alpha_rd: 1.0,
//!     alpha_re: 1.5,
//! };
//! let result = dinkelbach_solve(&params, &SolverConfig::for_bandwidth(params.w)).unwrap();
//! assert!(result.converged);
//! assert!((result.q_opt - 2274.62).abs() < 0.01); // bit/J
//! ```
//!
//! # Runnable examples
//!
//! Each major capability has a dedicated example under `examples/`:
//!
//! | example | shows |
//! |---------|-------|
//! | `capacity_curve` | capacity and efficiency vs. relay power, peak location |
//! | `solve_scenario` | one energy-efficient allocation, end to end |
//! | `convergence_trace` | Dinkelbach iterates across source powers |
//! | `scheme_comparison` | energy-efficient vs. capacity-max across `alpha_re` |
//! | `source_power_sweep` | efficiency vs. source power, interior maximum |
//! | `antenna_scaling` | efficiency vs. array size |
//! | `monte_carlo_validation` | empirical outage vs. the closed form |
//!
//! Run one with `cargo run --example <name>`.

pub mod cli;
pub mod config;
pub mod error;
pub mod model;
pub mod montecarlo;
pub mod optimizer;
pub mod sweep;
pub mod units;

pub use error::Error;
pub use model::{
    capacity_derivative, derive_coefficients, secrecy_energy_efficiency,
    secrecy_outage_capacity, total_power, DerivedCoefficients, SystemParams,
};
pub use montecarlo::{
    empirical_outage_probability, empirical_secrecy_outage_capacity, instantaneous_snrs,
    sample_channels, secrecy_rate_samples, ChannelRealization, OutageEstimate,
};
pub use optimizer::{
    capacity_max_allocation, dinkelbach_solve, dinkelbach_solve_from, effective_power_cap,
    solve_inner, theta_update, AllocationResult, InnerStrategy, SolverConfig, TracePoint,
};

// ---------------------------------------------------------------------------
// Shared test fixtures
// ---------------------------------------------------------------------------
