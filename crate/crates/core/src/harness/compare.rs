use std::io::Write;

use serde::Serialize;

use super::config::ExperimentConfig;
use super::table::{run_table_with_trajectories, TableRow};
use crate::error::{Error, Result};
use crate::euler::State;
use crate::sdw::{build_interaction_ivp, integrate_sdw, SdwPath};
use crate::tracking::Trajectory;

/// Tracked spike centre against the exact central line at one time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CenterSample {
    pub t: f64,
    pub x_wft: f64,
    pub x_sdw: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub eps: f64,
    /// `sup |x_wft - x_sdw|` over the sample times in `[T, t_end]`.
    pub sup_dev: f64,
    /// `|u_eps - us(t_end)|`
    pub du_terminal: f64,
    pub eps_rho: f64,
    pub row: TableRow,
    #[serde(skip)]
    pub centers: Vec<CenterSample>,
}

/// Density-weighted centroid of the spike at time `t`.
///
/// The spike is the stretch between the outermost interior states whose
/// density exceeds `threshold`; when none does, the plateau of largest
/// density is used instead.
pub fn spike_center(xs: &[f64], states: &[State], threshold: f64) -> Option<f64> {
    let n = states.len();
    if n < 3 {
        return None;
    }
    let interior = 1..n - 1;
    let above: Vec<usize> = interior.clone().filter(|&k| states[k].rho > threshold).collect();
    let (lo, hi) = match (above.first(), above.last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => {
            let peak = interior.clone().map(|k| states[k].rho).fold(f64::NEG_INFINITY, f64::max);
            let ks: Vec<usize> = interior.filter(|&k| states[k].rho == peak).collect();
            (ks[0], ks[ks.len() - 1])
        }
    };
    let (mut mass, mut moment) = (0.0, 0.0);
    for k in lo..=hi {
        let (x0, x1) = (xs[k - 1], xs[k]);
        mass += states[k].rho * (x1 - x0);
        moment += states[k].rho * 0.5 * (x1 * x1 - x0 * x0);
    }
    if mass > 0.0 {
        Some(moment / mass)
    } else {
        Some(0.5 * (xs[lo - 1] + xs[hi]))
    }
}

fn compare_one(cfg: &ExperimentConfig, path: &SdwPath, row: TableRow, traj: &Trajectory) -> Result<ComparisonReport> {
    let threshold = 2.0 * cfg.u0.rho.max(cfg.u2.rho);
    let t0 = path.ivp.t;
    let n = cfg.compare_samples.max(2);
    let mut centers = Vec::with_capacity(n);
    for i in 0..n {
        let t = t0 + (cfg.t_end - t0) * i as f64 / (n - 1) as f64;
        let (xs, states) = traj.profile_at(t);
        let Some(x_wft) = spike_center(&xs, &states, threshold) else { continue };
        let (_, _, x_sdw) = path.at(t).ok_or_else(|| Error::Domain(format!("t = {t} outside the exact path")))?;
        centers.push(CenterSample { t, x_wft, x_sdw });
    }
    let sup_dev = centers.iter().map(|c| (c.x_wft - c.x_sdw).abs()).fold(0.0, f64::max);
    let (_, us_end, _) = path.at(path.t_end()).expect("path end");
    Ok(ComparisonReport {
        eps: row.eps,
        sup_dev,
        du_terminal: (row.u_eps - us_end).abs(),
        eps_rho: row.eps * row.rho_eps,
        row,
        centers,
    })
}

/// The exact central line for the experiment, from the interaction time to
/// `t_end`.
pub fn exact_path(cfg: &ExperimentConfig) -> Result<SdwPath> {
    cfg.validate_ordering()?;
    let ivp = build_interaction_ivp(&cfg.u0, &cfg.u1, &cfg.u2, cfg.a1, cfg.a2)?;
    if !(cfg.t_end > ivp.t) {
        return Err(Error::Config(format!("t_end = {} does not exceed the interaction time {}", cfg.t_end, ivp.t)));
    }
    integrate_sdw(&ivp, cfg.t_end, 1e-10)
}

pub fn run_comparison(cfg: &ExperimentConfig) -> Result<Vec<ComparisonReport>> {
    let path = exact_path(cfg)?;
    run_table_with_trajectories(cfg)?
        .iter()
        .map(|(row, traj)| compare_one(cfg, &path, *row, traj))
        .collect()
}

pub fn write_compare_csv<W: Write>(reports: &[ComparisonReport], mut w: W) -> Result<()> {
    writeln!(w, "eps,sup_dev,du_terminal,eps_rho")?;
    for r in reports {
        writeln!(w, "{},{},{},{}", r.eps, r.sup_dev, r.du_terminal, r.eps_rho)?;
    }
    Ok(())
}

/// Plot data: both central lines of one sweep member.
pub fn write_centers_csv<W: Write>(report: &ComparisonReport, mut w: W) -> Result<()> {
    writeln!(w, "t,x_wft,x_sdw")?;
    for c in &report.centers {
        writeln!(w, "{},{},{}", c.t, c.x_wft, c.x_sdw)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centroid_of_single_plateau() {
        let xs = [0.0, 1.0, 3.0];
        let st = [State::new(1.0, 0.0), State::new(5.0, 0.0), State::new(2.0, 0.0), State::new(1.0, 0.0)];
        // threshold 2.5: only the plateau [0, 1] qualifies
        assert!((spike_center(&xs, &st, 2.5).unwrap() - 0.5).abs() < 1e-15);
        // threshold 1.5: both interior plateaus, weights 5 and 4
        let c = spike_center(&xs, &st, 1.5).unwrap();
        assert!((c - (5.0 * 0.5 + 4.0 * 2.0) / 9.0).abs() < 1e-15);
        // nothing above 10: falls back to the densest plateau
        assert!((spike_center(&xs, &st, 10.0).unwrap() - 0.5).abs() < 1e-15);
        assert!(spike_center(&[0.0], &st[..2], 1.0).is_none());
    }

    #[test]
    fn zero_width_spike_is_its_position() {
        let xs = [2.0, 2.0];
        let st = [State::new(1.0, 0.0), State::new(9.0, 0.0), State::new(1.0, 0.0)];
        assert_eq!(spike_center(&xs, &st, 2.0), Some(2.0));
    }
}
