//! Reproduce the three reference tables: each eps in the sweep is tracked
//! in parallel to t = 15000.
//!
//! cargo run --release --example table_sweep [ex1|ex2|ex3]

use deltawave::harness::{render_table_text, run_table, ExperimentConfig, EXAMPLE_NAMES};

fn main() -> deltawave::Result<()> {
    let names: Vec<String> = match std::env::args().nth(1) {
        Some(n) => vec![n],
        None => EXAMPLE_NAMES.iter().map(|s| s.to_string()).collect(),
    };
    for name in names {
        let cfg = ExperimentConfig::example(&name)?;
        println!("{name}: U0 = ({}, {}), U1 = ({}, {}), U2 = ({}, {})", cfg.u0.rho, cfg.u0.u, cfg.u1.rho, cfg.u1.u, cfg.u2.rho, cfg.u2.u);
        print!("{}", render_table_text(&run_table(&cfg)?));
        println!();
    }
    Ok(())
}
