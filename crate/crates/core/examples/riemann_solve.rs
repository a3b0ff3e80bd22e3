//! Exact Riemann solutions of the perturbed system for a few data pairs,
//! with the Rankine-Hugoniot residual of every shock.
//!
//! cargo run --example riemann_solve

use deltawave::euler::{rh_residuals, solve_riemann, GasParams, State, WaveKind};

fn main() -> deltawave::Result<()> {
    let cases = [
        (0.5, State::new(1.0, 1.0), State::new(1.14286, 0.7)),
        (0.01, State::new(1.0, 1.0), State::new(1.14286, 0.7)),
        (0.1, State::new(1.0, -0.5), State::new(1.0, 0.5)),
        (0.1, State::new(2.0, 0.0), State::new(0.5, 0.0)),
    ];
    for (eps, l, r) in cases {
        let p = GasParams::new_inclusive(eps)?;
        let sol = solve_riemann(&l, &r, &p)?;
        println!("eps = {eps}: ({}, {}) | ({}, {})  pattern {}", l.rho, l.u, r.rho, r.u, sol.pattern);
        println!("  middle rho = {:.8} u = {:.8}", sol.middle.rho, sol.middle.u);
        for w in sol.waves() {
            let rh = match w.kind {
                WaveKind::Shock => {
                    let (a, b) = rh_residuals(&w.left, &w.right, w.speed_lo, &p);
                    format!(", RH residual {:.1e}", a.abs().max(b.abs()))
                }
                WaveKind::Rarefaction => String::new(),
            };
            println!(
                "  {}-{} amplitude {:+.6} speeds [{:.6}, {:.6}]{rh}",
                w.family.index(),
                w.kind.label(),
                w.amplitude,
                w.speed_lo,
                w.speed_hi
            );
        }
    }
    Ok(())
}
