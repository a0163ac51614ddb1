//! Sweeps the source transmit power and prints the optimized secrecy energy
//! efficiency, revealing the interior optimum in the source power itself.
//!
//! More source power first buys secrecy rate faster than it costs energy,
//! then the eavesdropper's rate (and the energy bill) catch up: efficiency
//! peaks at a moderate source power and falls on both sides. The stronger
//! the eavesdropper channel, the lower and earlier the peak.
//!
//! ```text
//! cargo run --example source_power_sweep
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
    let alphas = [0.5, 1.0, 1.5];
    let grid: Vec<f64> = (-10..=20).map(|k| 2.0 * k as f64).collect();

    println!(
        "{:>8}  {:>14}  {:>14}  {:>14}",
        "p_s [dB]", "alpha_re 0.5", "alpha_re 1.0", "alpha_re 1.5"
    );
    let mut best: Vec<(f64, f64)> = vec![(f64::NEG_INFINITY, 0.0); alphas.len()];
    for &ps_db in &grid {
        print!("{ps_db:>8.0}");
        for (i, &alpha_re) in alphas.iter().enumerate() {
            let params = SystemParams {
                p_s: db_to_linear(ps_db),
                alpha_re,
                ..base
            };
            let q = dinkelbach_solve(&params, &config)?.q_opt;
            if q > best[i].0 {
                best[i] = (q, ps_db);
            }
            print!("  {q:>14.2}");
        }
        println!();
    }

    println!();
    for (i, &alpha_re) in alphas.iter().enumerate() {
        println!(
            "alpha_re = {alpha_re:.1}: efficiency peaks at {:.2} bit/J around p_s = {:.0} dB",
            best[i].0, best[i].1
        );
    }
    Ok(())
}
