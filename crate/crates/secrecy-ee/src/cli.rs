//! Command implementations behind the `secrecy-ee` binary.
//!
//! Each `cmd_*` function is one subcommand: it performs the work, prints to
//! stdout/stderr, and returns the process exit code. Codes are stable and
//! scriptable:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | I/O failure (unreadable config, unwritable output) |
//! | 2 | malformed config or invalid argument (offending key named on stderr) |
//! | 3 | infeasible scenario: no positive secrecy rate at the outage target |
//! | 4 | allocator failed to converge within its iteration budget |

use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::config::{self, ScenarioConfig};
use crate::error::{Error, Result};
use crate::model::{secrecy_outage_capacity, total_power};
use crate::montecarlo::{empirical_outage_probability, empirical_secrecy_outage_capacity};
use crate::optimizer::{
    dinkelbach_solve, effective_power_cap, ActiveConstraint, TracePoint,
};
use crate::sweep::{run_sweep, run_traces, write_sweep_csv, write_trace_csv};
use crate::units::linear_to_db;

/// Success.
pub const EXIT_OK: i32 = 0;
/// I/O failure reading a config or writing an output file.
pub const EXIT_IO: i32 = 1;
/// Malformed config file or invalid argument.
pub const EXIT_CONFIG: i32 = 2;
/// The scenario admits no positive secrecy rate (`r_l` outside (0, 1)).
pub const EXIT_INFEASIBLE: i32 = 3;
/// The allocator did not converge within its iteration budget.
pub const EXIT_NOT_CONVERGED: i32 = 4;

/// Maps an [`Error`] to its process exit code.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::InvalidParams { .. } | Error::InvalidInput { .. } | Error::Config(_) => EXIT_CONFIG,
        Error::InfeasibleScenario { .. } => EXIT_INFEASIBLE,
        Error::NoPositiveSolution { .. } => EXIT_NOT_CONVERGED,
    }
}

fn fail(err: &Error) -> i32 {
    eprintln!("error: {err}");
    exit_code_for(err)
}

fn read_config_text(path: &Path) -> std::result::Result<String, i32> {
    fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        EXIT_IO
    })
}

fn write_output(path: &Path, contents: &[u8]) -> std::result::Result<(), i32> {
    fs::write(path, contents).map_err(|e| {
        eprintln!("error: cannot write {}: {e}", path.display());
        EXIT_IO
    })
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

/// Everything `solve` reports about one scenario.
#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    /// Optimal relay power, linear units.
    pub p_r_opt_linear: f64,
    /// Optimal relay power in dB.
    pub p_r_opt_db: f64,
    /// Optimal secrecy energy efficiency, bit/J.
    pub q_opt_bit_per_joule: f64,
    /// Secrecy outage capacity at the optimum, bit/s.
    pub c_soc_bit_per_s: f64,
    /// Average total power drain at the optimum, linear units.
    pub total_power_linear: f64,
    /// Effective relay power cap `min(p_t, p_peak)`, linear units.
    pub effective_power_cap_linear: f64,
    /// Whether the cap binds at the optimum.
    pub active_constraint: ActiveConstraint,
    /// Dinkelbach iterations spent.
    pub iterations: u32,
    /// Whether the allocator converged.
    pub converged: bool,
    /// Per-iteration record of the run.
    pub trace: Vec<TracePoint>,
}

impl SolveReport {
    fn render_text(&self) -> String {
        let constraint = match self.active_constraint {
            ActiveConstraint::Interior => "interior optimum",
            ActiveConstraint::PowerCapped => "power cap active",
        };
        let status = if self.converged {
            format!("converged in {} iterations", self.iterations)
        } else {
            format!("NOT converged after {} iterations", self.iterations)
        };
        format!(
            "relay power        {:.9} ({:.4} dB)\n\
             efficiency         {:.6} bit/J\n\
             outage capacity    {:.6} bit/s\n\
             total power drain  {:.9}\n\
             effective cap      {:.9} ({constraint})\n\
             {status}\n",
            self.p_r_opt_linear,
            self.p_r_opt_db,
            self.q_opt_bit_per_joule,
            self.c_soc_bit_per_s,
            self.total_power_linear,
            self.effective_power_cap_linear,
        )
    }
}

/// Runs the allocator on a parsed scenario and assembles the report.
pub fn build_solve_report(scenario: &ScenarioConfig) -> Result<SolveReport> {
    let result = dinkelbach_solve(&scenario.params, &scenario.solver)?;
    let c_soc = secrecy_outage_capacity(result.p_r_opt, &scenario.params)?;
    Ok(SolveReport {
        p_r_opt_linear: result.p_r_opt,
        p_r_opt_db: linear_to_db(result.p_r_opt),
        q_opt_bit_per_joule: result.q_opt,
        c_soc_bit_per_s: c_soc,
        total_power_linear: total_power(result.p_r_opt, &scenario.params)?,
        effective_power_cap_linear: effective_power_cap(&scenario.params)?,
        active_constraint: result.active_constraint,
        iterations: result.iterations,
        converged: result.converged,
        trace: result.trace,
    })
}

/// `solve`: optimal allocation for one scenario, as text or JSON. With
/// `dump_config`, additionally writes the scenario back out in canonical
/// form (linear keys, all solver knobs explicit) before solving.
pub fn cmd_solve(config_path: &Path, json: bool, dump_config: Option<&Path>) -> i32 {
    let text = match read_config_text(config_path) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let scenario = match config::parse_scenario_str(&text) {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    if let Some(path) = dump_config {
        if let Err(code) = write_output(path, config::canonical_json(&scenario).as_bytes()) {
            return code;
        }
    }
    let report = match build_solve_report(&scenario) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report contains only finite numbers")
        );
    } else {
        print!("{}", report.render_text());
    }
    if report.converged {
        EXIT_OK
    } else {
        eprintln!("error: allocator did not converge; raise l_max or loosen delta");
        EXIT_NOT_CONVERGED
    }
}

// ---------------------------------------------------------------------------
// trace
// ---------------------------------------------------------------------------

/// `trace`: Dinkelbach convergence traces for several source powers (dB),
/// written as CSV to `out`.
pub fn cmd_trace(config_path: &Path, ps_db: &[f64], out: &Path) -> i32 {
    let text = match read_config_text(config_path) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let scenario = match config::parse_scenario_str(&text) {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    let runs = match run_traces(&scenario, ps_db) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let mut buf = Vec::new();
    write_trace_csv(&runs, &mut buf).expect("writing to memory cannot fail");
    if let Err(code) = write_output(out, &buf) {
        return code;
    }
    let points: usize = runs.iter().map(|r| r.trace.len()).sum();
    println!(
        "wrote {points} trace points for {} source powers to {}",
        runs.len(),
        out.display()
    );
    if runs.iter().all(|r| r.converged) {
        EXIT_OK
    } else {
        eprintln!("error: at least one run did not converge (trace written regardless)");
        EXIT_NOT_CONVERGED
    }
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

/// `sweep`: evaluates the schemes in a sweep description over its grid and
/// writes the comparison as CSV to `out`.
pub fn cmd_sweep(spec_path: &Path, out: &Path) -> i32 {
    let text = match read_config_text(spec_path) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let spec = match config::parse_sweep_str(&text) {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    let rows = match run_sweep(&spec) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let mut buf = Vec::new();
    write_sweep_csv(&rows, &mut buf).expect("writing to memory cannot fail");
    if let Err(code) = write_output(out, &buf) {
        return code;
    }
    let infeasible = rows.iter().filter(|r| !r.feasible).count();
    println!(
        "wrote {} rows ({} grid points x {} schemes, {infeasible} infeasible) to {}",
        rows.len(),
        spec.values.len(),
        spec.schemes.len(),
        out.display()
    );
    if rows.iter().any(|r| r.converged == Some(false)) {
        eprintln!("error: at least one grid point did not converge (rows written regardless)");
        EXIT_NOT_CONVERGED
    } else {
        EXIT_OK
    }
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

/// Monte Carlo cross-check of the closed form, from `validate`.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    /// Relay power under test: the effective power cap.
    pub p_r_linear: f64,
    /// Number of channel draws.
    pub n_samples: usize,
    /// RNG seed.
    pub seed: u64,
    /// The scenario's outage target.
    pub epsilon_target: f64,
    /// Closed-form secrecy outage capacity, bit/s.
    pub closed_form_c_soc_bit_per_s: f64,
    /// Empirical outage-capacity quantile, bit/s.
    pub empirical_c_soc_bit_per_s: f64,
    /// `(empirical - closed) / closed`.
    pub quantile_relative_error: f64,
    /// Empirical outage probability at the closed-form rate.
    pub outage_at_closed_form_rate: f64,
    /// 95% confidence half-width of that outage estimate.
    pub outage_ci_halfwidth: f64,
    /// Whether the empirical outage sits within ±0.02 of the target.
    pub outage_within_tolerance: bool,
}

/// Draws `n_samples` channels and compares the empirical outage behavior at
/// the effective power cap against the closed form.
pub fn run_validation(
    scenario: &ScenarioConfig,
    n_samples: usize,
    seed: u64,
) -> Result<ValidationReport> {
    let params = scenario.params;
    let p_r = effective_power_cap(&params)?;
    let closed = secrecy_outage_capacity(p_r, &params)?;
    let empirical = empirical_secrecy_outage_capacity(p_r, &params, n_samples, seed)?;
    let outage = empirical_outage_probability(closed, p_r, &params, n_samples, seed)?;
    Ok(ValidationReport {
        p_r_linear: p_r,
        n_samples,
        seed,
        epsilon_target: params.epsilon,
        closed_form_c_soc_bit_per_s: closed,
        empirical_c_soc_bit_per_s: empirical,
        quantile_relative_error: (empirical - closed) / closed,
        outage_at_closed_form_rate: outage.p_out,
        outage_ci_halfwidth: outage.ci_halfwidth,
        outage_within_tolerance: (outage.p_out - params.epsilon).abs() <= 0.02,
    })
}

/// `validate`: Monte Carlo cross-check of the closed form, written as JSON
/// to `out`. The run is a pure function of (config, samples, seed); repeat
/// invocations produce byte-identical reports.
pub fn cmd_validate(config_path: &Path, n_samples: usize, seed: u64, out: &Path) -> i32 {
    let text = match read_config_text(config_path) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let scenario = match config::parse_scenario_str(&text) {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    let report = match run_validation(&scenario, n_samples, seed) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let mut rendered =
        serde_json::to_string_pretty(&report).expect("report contains only finite numbers");
    rendered.push('\n');
    if let Err(code) = write_output(out, rendered.as_bytes()) {
        return code;
    }
    println!(
        "empirical outage {:.4} vs target {:.4} (±{:.4}), quantile error {:+.3}%; wrote {}",
        report.outage_at_closed_form_rate,
        report.epsilon_target,
        report.outage_ci_halfwidth,
        100.0 * report.quantile_relative_error,
        out.display()
    );
    EXIT_OK
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optimizer::SolverConfig;
    use crate::test_support::baseline_params;
    use approx::assert_relative_eq;

    fn baseline_scenario() -> ScenarioConfig {
        let params = baseline_params();
        ScenarioConfig {
            params,
            solver: SolverConfig::for_bandwidth(params.w),
        }
    }

    #[test]
    fn exit_codes_partition_the_error_type() {
        assert_eq!(
            exit_code_for(&Error::param("rho", "nope".to_string())),
            EXIT_CONFIG
        );
        assert_eq!(
            exit_code_for(&Error::input("p_r", "nope".to_string())),
            EXIT_CONFIG
        );
        assert_eq!(exit_code_for(&Error::Config("nope".to_string())), EXIT_CONFIG);
        assert_eq!(
            exit_code_for(&Error::InfeasibleScenario { r_l: 2.0 }),
            EXIT_INFEASIBLE
        );
        assert_eq!(
            exit_code_for(&Error::NoPositiveSolution { q: 1.0, sup: 0.5 }),
            EXIT_NOT_CONVERGED
        );
    }

    #[test]
    fn solve_report_is_internally_consistent() {
        let scenario = baseline_scenario();
        let report = build_solve_report(&scenario).unwrap();
        assert!(report.converged);
        assert_relative_eq!(
            report.p_r_opt_db,
            linear_to_db(report.p_r_opt_linear),
            max_relative = 1e-15
        );
        assert!(report.p_r_opt_linear <= report.effective_power_cap_linear);
        assert_eq!(report.trace.len(), report.iterations as usize);
        let text = report.render_text();
        assert!(text.contains("converged"));
        assert!(text.contains("bit/J"));
    }

    #[test]
    fn validation_requires_a_sane_sample_count() {
        let scenario = baseline_scenario();
        assert!(matches!(
            run_validation(&scenario, 500, 1),
            Err(Error::InvalidInput { name: "n_samples", .. })
        ));
    }

    #[test]
    fn validation_report_reproduces_bitwise() {
        let scenario = baseline_scenario();
        let a = run_validation(&scenario, 2000, 7).unwrap();
        let b = run_validation(&scenario, 2000, 7).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        assert_eq!(a.n_samples, 2000);
        assert_eq!(a.seed, 7);
        assert_relative_eq!(
            a.quantile_relative_error,
            (a.empirical_c_soc_bit_per_s - a.closed_form_c_soc_bit_per_s)
                / a.closed_form_c_soc_bit_per_s,
            max_relative = 1e-15
        );
    }
}
