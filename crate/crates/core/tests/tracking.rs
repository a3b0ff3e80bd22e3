//! Front tracking on random and reference data.

use deltawave::euler::{GasParams, State};
use deltawave::harness::ExperimentConfig;
use deltawave::tracking::{
    conservation_residual, conservation_residual_by_segments, run, PiecewiseData, TrackConfig,
};
use proptest::prelude::*;

fn quick(delta_r: f64, t_end: f64) -> TrackConfig {
    TrackConfig { delta_r, t_end, cstar_samples: 500, ..TrackConfig::default() }
}

fn data() -> impl Strategy<Value = PiecewiseData> {
    let st = (0.5f64..3.0, -0.5f64..0.5).prop_map(|(r, u)| State::new(r, u));
    (prop::collection::vec(st, 2..5), prop::collection::vec(0.2f64..2.0, 4)).prop_map(|(states, gaps)| {
        let mut x = 0.0;
        let bps = gaps[..states.len() - 1]
            .iter()
            .map(|g| {
                x += g;
                x
            })
            .collect();
        PiecewiseData::new(bps, states).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_data_stays_consistent(d in data(), eps in 0.02f64..0.4) {
        let p = GasParams::new(eps).unwrap();
        let traj = run(&d, &p, &quick(0.1, 20.0)).unwrap();
        traj.final_list.validate().unwrap();
        let (xs, states) = traj.profile_at(traj.t_end());
        prop_assert!(xs.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(states.first(), d.states.first());
        prop_assert_eq!(states.last(), d.states.last());
        let bx = traj.default_box();
        let exact = conservation_residual(&traj, &bx, &p).unwrap();
        let (s1, s2) = conservation_residual_by_segments(&traj, bx.t, &p);
        prop_assert!((exact.eq1 - s1.abs()).abs() < 1e-8 && (exact.eq2 - s2.abs()).abs() < 1e-8);
    }
}

#[test]
fn runs_are_deterministic() {
    let cfg = ExperimentConfig::example("ex2").unwrap();
    let p = GasParams::new(0.01).unwrap();
    let a = run(&cfg.initial_data().unwrap(), &p, &quick(0.05, 200.0)).unwrap();
    let b = run(&cfg.initial_data().unwrap(), &p, &quick(0.05, 200.0)).unwrap();
    assert_eq!(a.collisions, b.collisions);
    assert_eq!(a.final_list.positions(), b.final_list.positions());
}

#[test]
fn constant_data_has_no_fronts() {
    let s = State::new(2.0, -0.3);
    let d = PiecewiseData::new(vec![0.0, 1.0], vec![s, s, s]).unwrap();
    let traj = run(&d, &GasParams::new(0.1).unwrap(), &quick(0.05, 10.0)).unwrap();
    assert!(traj.final_list.is_empty());
    assert_eq!(traj.report.collisions, 0);
}

#[test]
fn separating_waves_never_collide() {
    // a 1-rarefaction on the left and a 2-rarefaction on the right
    let d = PiecewiseData::new(vec![0.0], vec![State::new(1.0, -1.0), State::new(1.0, 1.0)]).unwrap();
    let traj = run(&d, &GasParams::new(0.1).unwrap(), &quick(0.05, 50.0)).unwrap();
    assert_eq!(traj.report.collisions, 0);
    assert!(traj.final_list.len() > 2);
}

/// A wide 1-fan meets the 2-shock from the second breakpoint; the residual
/// comes from the fan fragments and shrinks roughly linearly in `delta_r`.
#[test]
fn refining_delta_r_shrinks_the_residual() {
    let states = vec![State::new(1.0, 0.0), State::new(1.0, 1.0), State::new(2.0, 0.2)];
    let d = PiecewiseData::new(vec![0.0, 1.0], states).unwrap();
    let p = GasParams::new(0.1).unwrap();
    let residual = |dr: f64| {
        let traj = run(&d, &p, &quick(dr, 20.0)).unwrap();
        conservation_residual(&traj, &traj.default_box(), &p).unwrap()
    };
    let rs: Vec<_> = [0.1, 0.05, 0.025].iter().map(|&dr| residual(dr)).collect();
    for w in rs.windows(2) {
        assert!(w[1].eq1 < w[0].eq1 && w[1].eq2 < w[0].eq2, "{rs:?}");
    }
}
