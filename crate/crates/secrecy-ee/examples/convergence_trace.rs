//! Shows how the Dinkelbach iteration converges for several source powers.
//!
//! Each solve starts from efficiency ratio q = 0 and produces a
//! non-decreasing sequence of efficiency iterates; convergence is declared
//! once the fractional-programming objective C - q * D falls below the
//! tolerance. A handful of iterations suffices across the whole operating
//! range.
//!
//! ```text
//! cargo run --example convergence_trace
//! ```

use secrecy_ee::model::SystemParams;
use secrecy_ee::optimizer::{dinkelbach_solve, SolverConfig};
use secrecy_ee::units::db_to_linear;

fn main() -> secrecy_ee::error::Result<()> {
    let base = SystemParams {
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
    let config = SolverConfig::for_bandwidth(base.w);

    for ps_db in [0.0, 4.0, 10.0] {
        let params = SystemParams {
            p_s: db_to_linear(ps_db),
            ..base
        };
        let result = dinkelbach_solve(&params, &config)?;
        println!(
            "source power {ps_db:>4.1} dB: {} iterations, q_opt = {:.4} bit/J",
            result.iterations, result.q_opt
        );
        for point in &result.trace {
            let bar_len = (point.q / result.q_opt * 48.0).round() as usize;
            println!(
                "  iter {:>2}  q = {:>12.4}  |{}",
                point.iteration,
                point.q,
                "#".repeat(bar_len)
            );
        }
        println!();
    }
    Ok(())
}
