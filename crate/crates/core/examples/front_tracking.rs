//! Track the first reference experiment at one eps and print the front
//! layout at a few times together with the collision statistics.
//!
//! cargo run --release --example front_tracking [eps]

use deltawave::euler::GasParams;
use deltawave::harness::ExperimentConfig;
use deltawave::tracking::{conservation_residual, run, TrackConfig};

fn main() -> deltawave::Result<()> {
    let eps: f64 = std::env::args().nth(1).map_or(0.1, |s| s.parse().expect("eps must be a number"));
    let cfg = ExperimentConfig::example("ex1")?;
    let p = GasParams::new_inclusive(eps)?;
    let track = TrackConfig { delta_r: 0.01, t_end: 200.0, cstar_samples: 2000, ..TrackConfig::default() };
    let traj = run(&cfg.initial_data()?, &p, &track)?;

    for t in [0.0, 10.0, 14.0, 50.0, 200.0] {
        let fronts = traj.fronts_at(t);
        let tags: Vec<String> = fronts.iter().map(|f| format!("{}@{:.3}", f.tag(), f.x_at(t))).collect();
        let shown = if tags.len() > 8 { format!("{} ... ({} fronts)", tags[..8].join(" "), tags.len()) } else { tags.join(" ") };
        println!("t = {t:>5}: {shown}");
    }

    let r = &traj.report;
    println!("collisions {}, peak front count {}", r.collisions, r.max_fronts);
    for (case, n) in &r.case_counts {
        println!("  case {case}: {n}");
    }
    if let Some(a) = traj.asymptotic_state() {
        println!("middle state rho = {:.6} u = {:.6}, outer speeds {:.5} {:.5}", a.peak.rho, a.peak.u, a.c1, a.c2);
    }
    let res = conservation_residual(&traj, &traj.default_box(), &p)?;
    println!("conservation residuals {:.2e} {:.2e}", res.eq1, res.eq2);
    Ok(())
}
