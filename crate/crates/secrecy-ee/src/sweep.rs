//! Sweep execution and CSV rendering.
//!
//! A sweep evaluates one or more allocation schemes over a grid of scenario
//! variants and renders the outcome as CSV, one row per (value, scheme) pair
//! with values outermost — the natural layout for plotting scheme
//! comparisons. Grid points where the scenario is infeasible produce rows
//! flagged `feasible = false` with empty result columns rather than aborting
//! the sweep; an eavesdropper-gain sweep pushing past the feasibility edge
//! is a perfectly reasonable thing to plot.
//!
//! Convergence traces across source powers get the same treatment: one CSV
//! row per Dinkelbach iteration, grouped by source power.
//!
//! Numbers are written with the shortest representation that round-trips to
//! the same `f64`, so parsing the CSV back recovers bitwise-identical
//! values.

use std::io::{self, Write};

use rayon::prelude::*;

use crate::config::{substitute, ScenarioConfig, Scheme, SweepSpec, SweepVariable};
use crate::error::{Error, Result};
use crate::model::{
    derive_coefficients, secrecy_energy_efficiency, secrecy_outage_capacity,
};
use crate::optimizer::{
    capacity_max_allocation, dinkelbach_solve, dinkelbach_solve_from, TracePoint,
};
use crate::units::linear_to_db;

/// Column schema of sweep CSV output.
pub const SWEEP_CSV_HEADER: &str =
    "value,scheme,p_r_opt_linear,p_r_opt_db,q_bit_per_joule,c_soc_bit_per_s,iterations,converged,feasible";

/// Column schema of trace CSV output.
pub const TRACE_CSV_HEADER: &str = "p_s_db,iteration,q_bit_per_joule";

// ---------------------------------------------------------------------------
// Sweep execution
// ---------------------------------------------------------------------------

/// Result of one scheme at one grid point. Infeasible points carry `None`
/// in every result column.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    /// The swept variable's value at this grid point.
    pub value: f64,
    /// The allocation scheme evaluated.
    pub scheme: Scheme,
    /// Whether the scenario admits a positive secrecy rate here.
    pub feasible: bool,
    /// Allocated relay power (linear units).
    pub p_r_opt: Option<f64>,
    /// Secrecy energy efficiency at the allocation, bit/J.
    pub q: Option<f64>,
    /// Secrecy outage capacity at the allocation, bit/s.
    pub c_soc: Option<f64>,
    /// Dinkelbach iterations spent (0 for the closed-form capacity-max
    /// scheme).
    pub iterations: Option<u32>,
    /// Whether the allocator converged (always true for capacity-max).
    pub converged: Option<bool>,
}

impl SweepRow {
    fn infeasible(value: f64, scheme: Scheme) -> Self {
        SweepRow {
            value,
            scheme,
            feasible: false,
            p_r_opt: None,
            q: None,
            c_soc: None,
            iterations: None,
            converged: None,
        }
    }
}

fn rows_for_value(spec: &SweepSpec, value: f64, q_start: Option<f64>) -> Result<Vec<SweepRow>> {
    let params = substitute(&spec.base.params, spec.variable, value)?;
    let coeffs = derive_coefficients(&params)?;
    if !coeffs.feasible() {
        return Ok(spec
            .schemes
            .iter()
            .map(|&scheme| SweepRow::infeasible(value, scheme))
            .collect());
    }
    spec.schemes
        .iter()
        .map(|&scheme| match scheme {
            Scheme::EnergyEfficient => {
                let result = match q_start {
                    Some(q0) => dinkelbach_solve_from(&params, &spec.base.solver, q0)?,
                    None => dinkelbach_solve(&params, &spec.base.solver)?,
                };
                Ok(SweepRow {
                    value,
                    scheme,
                    feasible: true,
                    p_r_opt: Some(result.p_r_opt),
                    q: Some(result.q_opt),
                    c_soc: Some(secrecy_outage_capacity(result.p_r_opt, &params)?),
                    iterations: Some(result.iterations),
                    converged: Some(result.converged),
                })
            }
            Scheme::CapacityMax => {
                let p = capacity_max_allocation(&params)?;
                Ok(SweepRow {
                    value,
                    scheme,
                    feasible: true,
                    p_r_opt: Some(p),
                    q: Some(secrecy_energy_efficiency(p, &params)?),
                    c_soc: Some(secrecy_outage_capacity(p, &params)?),
                    iterations: Some(0),
                    converged: Some(true),
                })
            }
        })
        .collect()
}

/// Evaluates every scheme at every grid point, values outermost.
///
/// Grid points run in parallel (the output order is fixed regardless).
/// When the base solver has `warm_start` set, points instead run
/// sequentially and each energy-efficient solve starts from the previous
/// point's optimal ratio — faster on fine grids, but iteration counts then
/// reflect the warm start rather than the cold-start convergence behavior.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    if spec.base.solver.warm_start {
        let mut rows = Vec::with_capacity(spec.values.len() * spec.schemes.len());
        let mut last_q: Option<f64> = None;
        for &value in &spec.values {
            let point_rows = rows_for_value(spec, value, last_q)?;
            if let Some(ee) = point_rows
                .iter()
                .find(|r| r.scheme == Scheme::EnergyEfficient && r.feasible)
            {
                last_q = ee.q;
            }
            rows.extend(point_rows);
        }
        Ok(rows)
    } else {
        let nested: Vec<Vec<SweepRow>> = spec
            .values
            .par_iter()
            .map(|&value| rows_for_value(spec, value, None))
            .collect::<Result<_>>()?;
        Ok(nested.concat())
    }
}

// ---------------------------------------------------------------------------
// Convergence traces
// ---------------------------------------------------------------------------

/// The Dinkelbach trace of one source-power variant.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRun {
    /// Source power of this run, in dB.
    pub p_s_db: f64,
    /// Whether the run converged within the iteration budget.
    pub converged: bool,
    /// Per-iteration record.
    pub trace: Vec<TracePoint>,
}

/// Runs the allocator once per source power (dB) and collects the traces,
/// in the given order.
pub fn run_traces(base: &ScenarioConfig, ps_db: &[f64]) -> Result<Vec<TraceRun>> {
    if ps_db.is_empty() {
        return Err(Error::input(
            "ps_db",
            "at least one source power is required".to_string(),
        ));
    }
    ps_db
        .iter()
        .map(|&db| {
            let params = substitute(&base.params, SweepVariable::PSDb, db)?;
            let result = dinkelbach_solve(&params, &base.solver)?;
            Ok(TraceRun {
                p_s_db: db,
                converged: result.converged,
                trace: result.trace,
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// CSV rendering
// ---------------------------------------------------------------------------

fn fmt_opt_f64(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Writes sweep rows as CSV under [`SWEEP_CSV_HEADER`].
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: &mut W) -> io::Result<()> {
    writeln!(out, "{SWEEP_CSV_HEADER}")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            row.value,
            row.scheme.as_str(),
            fmt_opt_f64(row.p_r_opt),
            fmt_opt_f64(row.p_r_opt.map(linear_to_db)),
            fmt_opt_f64(row.q),
            fmt_opt_f64(row.c_soc),
            row.iterations.map(|i| i.to_string()).unwrap_or_default(),
            row.converged.map(|c| c.to_string()).unwrap_or_default(),
            row.feasible,
        )?;
    }
    Ok(())
}

/// Writes trace runs as CSV under [`TRACE_CSV_HEADER`], one row per
/// iteration, runs in order.
pub fn write_trace_csv<W: Write>(runs: &[TraceRun], out: &mut W) -> io::Result<()> {
    writeln!(out, "{TRACE_CSV_HEADER}")?;
    for run in runs {
        for point in &run.trace {
            writeln!(out, "{},{},{}", run.p_s_db, point.iteration, point.q)?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_scenario_str;
    use crate::optimizer::SolverConfig;
    use crate::test_support::baseline_params;
    use approx::assert_relative_eq;

    fn baseline_config() -> ScenarioConfig {
        let params = baseline_params();
        ScenarioConfig {
            params,
            solver: SolverConfig::for_bandwidth(params.w),
        }
    }

    fn alpha_sweep(values: Vec<f64>) -> SweepSpec {
        SweepSpec {
            variable: SweepVariable::AlphaRe,
            values,
            base: baseline_config(),
            schemes: vec![Scheme::EnergyEfficient, Scheme::CapacityMax],
        }
    }

    #[test]
    fn rows_come_out_values_outermost_schemes_innermost() {
        let rows = run_sweep(&alpha_sweep(vec![0.1, 0.5, 1.0, 1.5])).unwrap();
        assert_eq!(rows.len(), 8);
        for (i, row) in rows.iter().enumerate() {
            let expected_value = [0.1, 0.5, 1.0, 1.5][i / 2];
            let expected_scheme = if i % 2 == 0 {
                Scheme::EnergyEfficient
            } else {
                Scheme::CapacityMax
            };
            assert_eq!(row.value, expected_value);
            assert_eq!(row.scheme, expected_scheme);
        }
    }

    #[test]
    fn energy_efficient_scheme_dominates_capacity_max() {
        let rows = run_sweep(&alpha_sweep(vec![0.1, 0.5, 1.0, 1.5])).unwrap();
        for pair in rows.chunks(2) {
            let (ee, cm) = (&pair[0], &pair[1]);
            assert!(ee.feasible && cm.feasible);
            assert!(
                ee.q.unwrap() >= cm.q.unwrap(),
                "efficiency-optimal allocation fell below the capacity-max scheme at alpha_re = {}",
                ee.value
            );
            // The capacity-max scheme, conversely, never loses capacity.
            assert!(cm.c_soc.unwrap() >= ee.c_soc.unwrap());
            assert_eq!(cm.iterations, Some(0));
            assert_eq!(cm.converged, Some(true));
        }
    }

    #[test]
    fn infeasible_grid_points_are_reported_not_fatal() {
        // r_l crosses 1 at alpha_re = 90 / -ln(0.05) ≈ 30.04 for the
        // baseline, so 40 is infeasible.
        let rows = run_sweep(&alpha_sweep(vec![1.0, 40.0])).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows[0].feasible && rows[1].feasible);
        for row in &rows[2..] {
            assert!(!row.feasible);
            assert_eq!(row.p_r_opt, None);
            assert_eq!(row.q, None);
            assert_eq!(row.c_soc, None);
            assert_eq!(row.iterations, None);
            assert_eq!(row.converged, None);
        }
    }

    #[test]
    fn antenna_sweep_rewards_bigger_arrays() {
        let spec = SweepSpec {
            variable: SweepVariable::NR,
            values: vec![50.0, 100.0, 200.0],
            base: baseline_config(),
            schemes: vec![Scheme::EnergyEfficient],
        };
        let rows = run_sweep(&spec).unwrap();
        assert!(rows.windows(2).all(|w| w[1].q.unwrap() > w[0].q.unwrap()));
    }

    #[test]
    fn source_power_sweep_decays_past_its_peak() {
        let spec = SweepSpec {
            variable: SweepVariable::PSDb,
            values: vec![0.0, 4.0, 10.0],
            base: baseline_config(),
            schemes: vec![Scheme::EnergyEfficient],
        };
        let rows = run_sweep(&spec).unwrap();
        assert!(rows.windows(2).all(|w| w[1].q.unwrap() < w[0].q.unwrap()));
    }

    #[test]
    fn warm_start_reproduces_cold_start_optima() {
        let mut warm_spec = alpha_sweep(vec![0.1, 0.5, 1.0, 1.5]);
        warm_spec.base.solver.warm_start = true;
        let warm = run_sweep(&warm_spec).unwrap();
        let cold = run_sweep(&alpha_sweep(vec![0.1, 0.5, 1.0, 1.5])).unwrap();
        assert_eq!(warm.len(), cold.len());
        for (w, c) in warm.iter().zip(&cold) {
            assert_relative_eq!(w.q.unwrap(), c.q.unwrap(), max_relative = 1e-9);
        }
    }

    #[test]
    fn sweeps_are_deterministic() {
        let spec = alpha_sweep(vec![0.1, 0.5, 1.0, 1.5]);
        let first = run_sweep(&spec).unwrap();
        let second = run_sweep(&spec).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn sweep_csv_round_trips_every_number() {
        let rows = run_sweep(&alpha_sweep(vec![0.1, 1.5, 40.0])).unwrap();
        let mut buf = Vec::new();
        write_sweep_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), SWEEP_CSV_HEADER);
        for (line, row) in lines.zip(&rows) {
            let cols: Vec<&str> = line.split(',').collect();
            assert_eq!(cols.len(), 9);
            assert_eq!(cols[0].parse::<f64>().unwrap(), row.value);
            assert_eq!(cols[1], row.scheme.as_str());
            match row.p_r_opt {
                Some(p) => {
                    assert_eq!(cols[2].parse::<f64>().unwrap(), p);
                    assert_eq!(cols[3].parse::<f64>().unwrap(), linear_to_db(p));
                    assert_eq!(cols[4].parse::<f64>().unwrap(), row.q.unwrap());
                    assert_eq!(cols[5].parse::<f64>().unwrap(), row.c_soc.unwrap());
                }
                None => {
                    assert!(cols[2].is_empty() && cols[3].is_empty());
                    assert!(cols[4].is_empty() && cols[5].is_empty());
                }
            }
            assert_eq!(cols[8].parse::<bool>().unwrap(), row.feasible);
        }
    }

    #[test]
    fn traces_group_by_source_power_and_never_decrease() {
        let runs = run_traces(&baseline_config(), &[0.0, 4.0, 10.0]).unwrap();
        assert_eq!(runs.len(), 3);
        for run in &runs {
            assert!(run.converged);
            assert!(!run.trace.is_empty());
            for pair in run.trace.windows(2) {
                assert!(pair[1].q >= pair[0].q * (1.0 - 1e-12));
            }
        }

        let mut buf = Vec::new();
        write_trace_csv(&runs, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), TRACE_CSV_HEADER);
        let rows: Vec<Vec<String>> = lines
            .map(|l| l.split(',').map(str::to_string).collect())
            .collect();
        let total_points: usize = runs.iter().map(|r| r.trace.len()).sum();
        assert_eq!(rows.len(), total_points);
        // Rows appear grouped in run order.
        assert_eq!(rows[0][0], "0");
        assert_eq!(rows.last().unwrap()[0], "10");
    }

    #[test]
    fn empty_trace_requests_are_rejected() {
        assert!(matches!(
            run_traces(&baseline_config(), &[]),
            Err(Error::InvalidInput { name: "ps_db", .. })
        ));
    }

    #[test]
    fn sweep_base_parses_from_json_end_to_end() {
        let config = parse_scenario_str(
            r#"{
                "p_s_db": 10.0, "p_t_db": 10.0, "p_c_db": 5.0,
                "n_r": 100, "w": 10000.0, "rho": 0.9, "epsilon": 0.05,
                "alpha_sr": 1.0, "alpha_rd": 1.0, "alpha_re": 1.5
            }"#,
        )
        .unwrap();
        let spec = SweepSpec {
            variable: SweepVariable::AlphaRe,
            values: vec![0.5, 1.5],
            base: config,
            schemes: vec![Scheme::EnergyEfficient],
        };
        let rows = run_sweep(&spec).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.converged == Some(true)));
    }
}
