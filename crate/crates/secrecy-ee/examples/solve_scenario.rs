//! Runs the energy-efficient power allocator on one scenario, end to end,
//! and prints the full allocation report.
//!
//! The allocator maximizes secrecy energy efficiency — secrecy outage
//! capacity per joule — over the relay power, subject to the power budget
//! and to never exceeding the capacity peak.
//!
//! ```text
//! cargo run --example solve_scenario
//! ```

use secrecy_ee::model::{
    derive_coefficients, secrecy_outage_capacity, total_power, SystemParams,
};
use secrecy_ee::optimizer::{dinkelbach_solve, effective_power_cap, SolverConfig};
use secrecy_ee::units::{db_to_linear, linear_to_db};

fn main() -> secrecy_ee::error::Result<()> {
    let params = SystemParams {
        p_s: db_to_linear(10.0),
        p_t: db_to_linear(10.0),
        p_c: db_to_linear(5.0),
        n_r: 100,
        w: 1e4,
        rho: 0.9,
        epsilon: 0.05,
        alpha_sr: 1.0,
        alpha_rd: 1.0,
        alpha_re: 1.5,
    };
    let config = SolverConfig::for_bandwidth(params.w);

    let coeffs = derive_coefficients(&params)?;
    let cap = effective_power_cap(&params)?;
    println!("scenario: 100-antenna relay, 10 dB source power, epsilon = 0.05");
    println!(
        "search interval: (0, {cap:.4}] (min of the budget {:.4} and the capacity peak {:.4})",
        params.p_t, coeffs.p_peak
    );
    println!();

    let result = dinkelbach_solve(&params, &config)?;

    println!("iterate  relay power    efficiency [bit/J]");
    for point in &result.trace {
        println!(
            "{:>7}  {:>11.6}  {:>18.6}",
            point.iteration, point.p_r, point.q
        );
    }
    println!();

    let c_opt = secrecy_outage_capacity(result.p_r_opt, &params)?;
    let d_opt = total_power(result.p_r_opt, &params)?;
    println!("converged          : {} ({} iterations)", result.converged, result.iterations);
    println!("active constraint  : {:?}", result.active_constraint);
    println!(
        "optimal relay power: {:.6} linear = {:.3} dB",
        result.p_r_opt,
        linear_to_db(result.p_r_opt)
    );
    println!("secrecy capacity   : {c_opt:.2} bit/s");
    println!("duty-cycle power   : {d_opt:.4} (half-duplex average)");
    println!("efficiency         : {:.2} bit/J", result.q_opt);

    // The optimum is interior here, so it satisfies the stationarity
    // condition C'(p) = q exactly (to the root tolerance).
    let slope = coeffs.capacity_derivative(params.w, result.p_r_opt);
    println!();
    println!(
        "stationarity check : C'(p_opt) = {slope:.6} vs q = {:.6}",
        result.q_opt
    );
    Ok(())
}
