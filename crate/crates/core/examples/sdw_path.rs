//! Interaction of two delta shocks in pressureless gas dynamics and the
//! path of the delta shock that emerges, for all three reference data sets.
//!
//! cargo run --release --example sdw_path

use deltawave::harness::{ExperimentConfig, EXAMPLE_NAMES};
use deltawave::sdw::{build_interaction_ivp, integrate_sdw, weak_residual_oracle, WeakBox};

fn main() -> deltawave::Result<()> {
    for name in EXAMPLE_NAMES {
        let cfg = ExperimentConfig::example(name)?;
        let ivp = build_interaction_ivp(&cfg.u0, &cfg.u1, &cfg.u2, cfg.a1, cfg.a2)?;
        let path = integrate_sdw(&ivp, 1e4, 1e-10)?;
        println!("{name}: incoming speeds {:.6} {:.6}, meet at X = {:.5} T = {:.5}", ivp.c1, ivp.c2, ivp.x, ivp.t);
        for t in [ivp.t, 20.0, 100.0, 1e3, 1e4] {
            let (xi, us, x) = path.at(t).expect("inside the path");
            println!("  t = {t:>9.3}  xi = {xi:>12.5}  us = {us:.7}  x = {x:>12.4}");
        }
        if let Some(target) = path.target_root() {
            println!("  trend {:?} toward {target:.7}", path.trend());
        }
        let (r1, r2) = weak_residual_oracle(&path, WeakBox { t_lo: ivp.t + 0.5, t_hi: 1e3 }, 3.0, 1);
        println!("  weak-form residuals {r1:.1e} {r2:.1e}");
    }
    Ok(())
}
