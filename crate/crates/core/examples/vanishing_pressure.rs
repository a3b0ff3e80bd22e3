//! Tracked solutions against the exact delta shock as eps decreases: the
//! spike centre follows the exact path and the middle velocity approaches
//! the pressureless one.
//!
//! cargo run --release --example vanishing_pressure [ex1|ex2|ex3]

use deltawave::harness::{run_comparison, ExperimentConfig};

fn main() -> deltawave::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "ex2".into());
    let cfg = ExperimentConfig::example(&name)?;
    println!("{name}");
    println!("{:>7} {:>12} {:>12} {:>10}", "eps", "sup |dx|", "|du| at end", "eps rho");
    for r in run_comparison(&cfg)? {
        println!("{:>7} {:>12.4e} {:>12.4e} {:>10.5}", r.eps, r.sup_dev, r.du_terminal, r.eps_rho);
    }
    Ok(())
}
