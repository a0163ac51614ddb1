//! JSON descriptions of scenarios and parameter sweeps.
//!
//! A *scenario* file carries one [`SystemParams`] plus optional solver
//! overrides. Every power accepts exactly one of two spellings — `<name>_db`
//! (decibel) or `<name>_linear` — and giving both or neither is an error, as
//! is any unknown key; silent unit mix-ups are the classic way to get a
//! plausible-looking wrong answer out of a link-budget tool.
//!
//! ```json
//! {
//!   "p_s_db": 10.0,
//!   "p_t_db": 10.0,
//!   "p_c_db": 5.0,
//!   "n_r": 100,
//!   "w": 10000.0,
//!   "rho": 0.9,
//!   "epsilon": 0.05,
//!   "alpha_sr": 1.0,
//!   "alpha_rd": 1.0,
//!   "alpha_re": 1.5,
//!   "solver": { "l_max": 50 }
//! }
//! ```
//!
//! A *sweep* file names one variable, the grid of values it takes, the base
//! scenario, and the allocation schemes to compare at every grid point.
//!
//! This module works on strings; file I/O stays with the caller so that I/O
//! failures and parse failures remain distinguishable.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::SystemParams;
use crate::optimizer::{InnerStrategy, SolverConfig};
use crate::units::db_to_linear;

/// A fully parsed scenario: validated parameters plus solver settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioConfig {
    /// The link scenario.
    pub params: SystemParams,
    /// Solver settings, defaulted from the bandwidth and overridden by the
    /// file's `solver` block.
    pub solver: SolverConfig,
}

// ---------------------------------------------------------------------------
// Raw JSON shapes
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    #[serde(default)]
    p_s_db: Option<f64>,
    #[serde(default)]
    p_s_linear: Option<f64>,
    #[serde(default)]
    p_t_db: Option<f64>,
    #[serde(default)]
    p_t_linear: Option<f64>,
    #[serde(default)]
    p_c_db: Option<f64>,
    #[serde(default)]
    p_c_linear: Option<f64>,
    n_r: u32,
    w: f64,
    rho: f64,
    epsilon: f64,
    alpha_sr: f64,
    alpha_rd: f64,
    alpha_re: f64,
    #[serde(default)]
    solver: Option<RawSolver>,
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSolver {
    #[serde(default)]
    l_max: Option<u32>,
    #[serde(default)]
    delta: Option<f64>,
    #[serde(default)]
    theta_step: Option<f64>,
    #[serde(default)]
    theta_max_iters: Option<u32>,
    #[serde(default)]
    root_tol: Option<f64>,
    #[serde(default)]
    inner: Option<InnerStrategy>,
    #[serde(default)]
    warm_start: Option<bool>,
}

fn config_err(err: serde_json::Error) -> Error {
    Error::Config(err.to_string())
}

/// Resolves the `<name>_db` / `<name>_linear` pair for one power key.
fn pick_power(name: &str, db: Option<f64>, linear: Option<f64>) -> Result<f64> {
    match (db, linear) {
        (Some(v), None) => Ok(db_to_linear(v)),
        (None, Some(v)) => Ok(v),
        (Some(_), Some(_)) => Err(Error::Config(format!(
            "power `{name}`: both `{name}_db` and `{name}_linear` given; specify exactly one"
        ))),
        (None, None) => Err(Error::Config(format!(
            "power `{name}`: missing; specify `{name}_db` or `{name}_linear`"
        ))),
    }
}

fn scenario_from_raw(raw: RawScenario) -> Result<ScenarioConfig> {
    let params = SystemParams {
        p_s: pick_power("p_s", raw.p_s_db, raw.p_s_linear)?,
        p_t: pick_power("p_t", raw.p_t_db, raw.p_t_linear)?,
        p_c: pick_power("p_c", raw.p_c_db, raw.p_c_linear)?,
        n_r: raw.n_r,
        w: raw.w,
        rho: raw.rho,
        epsilon: raw.epsilon,
        alpha_sr: raw.alpha_sr,
        alpha_rd: raw.alpha_rd,
        alpha_re: raw.alpha_re,
    };
    params.validate()?;

    let mut solver = SolverConfig::for_bandwidth(params.w);
    if let Some(over) = raw.solver {
        if let Some(v) = over.l_max {
            solver.l_max = v;
        }
        if let Some(v) = over.delta {
            solver.delta = v;
        }
        if let Some(v) = over.theta_step {
            solver.theta_step = v;
        }
        if let Some(v) = over.theta_max_iters {
            solver.theta_max_iters = v;
        }
        if let Some(v) = over.root_tol {
            solver.root_tol = v;
        }
        if let Some(v) = over.inner {
            solver.inner = v;
        }
        if let Some(v) = over.warm_start {
            solver.warm_start = v;
        }
    }
    solver.validate()?;

    Ok(ScenarioConfig { params, solver })
}

// ---------------------------------------------------------------------------
// Scenario parsing and canonical output
// ---------------------------------------------------------------------------

/// Parses a scenario from JSON text.
pub fn parse_scenario_str(text: &str) -> Result<ScenarioConfig> {
    let raw: RawScenario = serde_json::from_str(text).map_err(config_err)?;
    scenario_from_raw(raw)
}

#[derive(Serialize)]
struct CanonicalScenario {
    p_s_linear: f64,
    p_t_linear: f64,
    p_c_linear: f64,
    n_r: u32,
    w: f64,
    rho: f64,
    epsilon: f64,
    alpha_sr: f64,
    alpha_rd: f64,
    alpha_re: f64,
    solver: SolverConfig,
}

/// Renders a scenario as canonical JSON: linear power keys only, every
/// solver knob explicit. The output re-parses to a bitwise-identical
/// [`ScenarioConfig`], so dumped configs are exact archival records.
pub fn canonical_json(config: &ScenarioConfig) -> String {
    let canon = CanonicalScenario {
        p_s_linear: config.params.p_s,
        p_t_linear: config.params.p_t,
        p_c_linear: config.params.p_c,
        n_r: config.params.n_r,
        w: config.params.w,
        rho: config.params.rho,
        epsilon: config.params.epsilon,
        alpha_sr: config.params.alpha_sr,
        alpha_rd: config.params.alpha_rd,
        alpha_re: config.params.alpha_re,
        solver: config.solver,
    };
    let mut text = serde_json::to_string_pretty(&canon)
        .expect("validated scenarios contain only finite numbers");
    text.push('\n');
    text
}

// ---------------------------------------------------------------------------
// Sweep specifications
// ---------------------------------------------------------------------------

/// The scenario field a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepVariable {
    /// Eavesdropper large-scale gain `alpha_re`.
    #[serde(rename = "alpha_re")]
    AlphaRe,
    /// Source power in decibels.
    #[serde(rename = "p_s_db")]
    PSDb,
    /// Relay antenna count.
    #[serde(rename = "n_r")]
    NR,
}

impl SweepVariable {
    /// The config key this variable stands for.
    pub fn key(&self) -> &'static str {
        match self {
            SweepVariable::AlphaRe => "alpha_re",
            SweepVariable::PSDb => "p_s_db",
            SweepVariable::NR => "n_r",
        }
    }
}

/// A relay power allocation scheme compared in sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Dinkelbach allocation maximizing the secrecy energy efficiency.
    EnergyEfficient,
    /// Full effective-cap allocation maximizing the secrecy outage capacity.
    CapacityMax,
}

impl Scheme {
    /// Stable identifier used in CSV output.
    pub fn as_str(&self) -> &'static str {
        match self {
            Scheme::EnergyEfficient => "energy_efficient",
            Scheme::CapacityMax => "capacity_max",
        }
    }
}

/// A fully parsed and validated sweep description.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    /// The varied field.
    pub variable: SweepVariable,
    /// Grid of values, strictly increasing.
    pub values: Vec<f64>,
    /// Scenario providing every non-varied field and the solver settings.
    pub base: ScenarioConfig,
    /// Schemes evaluated at every grid point, in output order.
    pub schemes: Vec<Scheme>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    variable: SweepVariable,
    values: Vec<f64>,
    base: RawScenario,
    schemes: Vec<Scheme>,
}

/// Returns `base` with the swept variable replaced by `value`.
///
/// For [`SweepVariable::NR`] the value must be a positive integer in `f64`
/// clothing; for [`SweepVariable::PSDb`] it is converted from decibels. The
/// substituted parameter set is re-validated.
pub fn substitute(
    base: &SystemParams,
    variable: SweepVariable,
    value: f64,
) -> Result<SystemParams> {
    if !value.is_finite() {
        return Err(Error::input(
            "values",
            format!("sweep value must be finite, got {value}"),
        ));
    }
    let mut params = *base;
    match variable {
        SweepVariable::AlphaRe => params.alpha_re = value,
        SweepVariable::PSDb => params.p_s = db_to_linear(value),
        SweepVariable::NR => {
            if value.fract() != 0.0 || value < 1.0 || value > u32::MAX as f64 {
                return Err(Error::input(
                    "values",
                    format!("n_r sweep values must be positive integers, got {value}"),
                ));
            }
            params.n_r = value as u32;
        }
    }
    params.validate()?;
    Ok(params)
}

/// Parses a sweep description from JSON text and validates every grid point.
pub fn parse_sweep_str(text: &str) -> Result<SweepSpec> {
    let raw: RawSweep = serde_json::from_str(text).map_err(config_err)?;
    let base = scenario_from_raw(raw.base)?;

    if raw.values.is_empty() {
        return Err(Error::Config("`values` must not be empty".to_string()));
    }
    for pair in raw.values.windows(2) {
        if !(pair[1] > pair[0]) {
            return Err(Error::Config(format!(
                "`values` must be strictly increasing; {} does not exceed {}",
                pair[1], pair[0]
            )));
        }
    }
    if raw.schemes.is_empty() {
        return Err(Error::Config("`schemes` must not be empty".to_string()));
    }
    if raw.schemes.len() == 2 && raw.schemes[0] == raw.schemes[1] {
        return Err(Error::Config("`schemes` lists the same scheme twice".to_string()));
    }

    // Fail at parse time if any grid point would produce an invalid
    // parameter set (infeasible points are fine — the sweep reports them).
    for &v in &raw.values {
        substitute(&base.params, raw.variable, v).map_err(|e| {
            Error::Config(format!("sweep value {v} for `{}`: {e}", raw.variable.key()))
        })?;
    }

    Ok(SweepSpec {
        variable: raw.variable,
        values: raw.values,
        base,
        schemes: raw.schemes,
    })
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
