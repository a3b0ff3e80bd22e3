//! The Glimm-type functional along a tracked run: initial checks,
//! snapshots of L-, Q and F, and the per-collision bound audit.
//!
//! cargo run --release --example glimm_monitor

use deltawave::euler::GasParams;
use deltawave::harness::ExperimentConfig;
use deltawave::tracking::{compute_tv, run, TrackConfig};

fn main() -> deltawave::Result<()> {
    let cfg = ExperimentConfig::example("ex2")?;
    let p = GasParams::new(0.01)?;
    let track = TrackConfig { delta_r: 0.005, t_end: 500.0, snapshot_every: 256, ..TrackConfig::default() };
    let traj = run(&cfg.initial_data()?, &p, &track)?;

    println!("C* = {:.4}, 4 C* sqrt(eps) = {:.4}", traj.constants.cstar, traj.constants.k_tilde());
    println!("initial TV = {:.5}", compute_tv(&traj.initial, &p)?);
    println!("{:#?}", traj.checks);

    println!("{:>10} {:>10} {:>10} {:>10}", "t", "L-", "Q", "F");
    for s in &traj.snapshots {
        println!("{:>10.3} {:>10.6} {:>10.6} {:>10.6}", s.t, s.l_minus, s.q, s.f);
    }

    let r = &traj.report;
    println!(
        "{} collisions: {} unclassified, {} bound violations, {} increases of F (largest {:.1e})",
        r.collisions, r.unclassified, r.bound_violations, r.f_increases, r.max_f_increase
    );
    Ok(())
}
