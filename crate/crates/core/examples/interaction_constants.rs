//! Empirical interaction constants over a range of eps, with the slope
//! suprema they are built from.
//!
//! cargo run --release --example interaction_constants

use deltawave::estimates::{default_rho_ceiling, estimate_cstar, eval_g, eval_g_prime, CurveFunctions};
use deltawave::euler::{Family, GasParams};

fn main() -> deltawave::Result<()> {
    println!("{:>6} {:>9} {:>9} {:>9} {:>9} {:>9}", "eps", "C*", "C2", "C4", "C0", "min diff");
    for eps in [0.3, 0.1, 0.03, 0.01, 0.003] {
        let p = GasParams::new(eps)?;
        let c = estimate_cstar(10_000, default_rho_ceiling(&p), &p, 0)?;
        println!(
            "{eps:>6} {:>9.5} {:>9.5} {:>9.5} {:>9.5} {:>9.1e}",
            c.cstar, c.c2, c.c4, c.c0, c.min_diff
        );
    }

    let p = GasParams::new(0.1)?;
    let cf = CurveFunctions::new(p, 1.0)?;
    println!("\ng and g' at base density 1, eps = 0.1");
    for w in [0.01, 0.1, 0.5, 1.0, 2.0] {
        println!(
            "w = {w:<5} g1 = {:.6} g1' = {:.6}   g2 = {:.6} g2' = {:.6}",
            eval_g(w, Family::One, &cf)?,
            eval_g_prime(w, Family::One, &cf)?,
            eval_g(w, Family::Two, &cf)?,
            eval_g_prime(w, Family::Two, &cf)?
        );
    }
    Ok(())
}
