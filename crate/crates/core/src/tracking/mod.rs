//! Front tracking for the perturbed system with exact Riemann solutions at
//! every collision, plus the interaction-estimate monitor.

mod front;
mod monitor;
mod run;

pub use front::{discretize_initial, next_collision, CollisionEvent, Front, FrontList, PiecewiseData, TIME_TIE};
pub use monitor::{
    check_bounds, classify, compute_tv, glimm_functional, GlimmSnapshot, InteractionCase, InitialChecks, WaveSummary,
};
pub use run::{
    conservation_residual, conservation_residual_by_segments, resolve_collision, run, AsymptoticState,
    CollisionRecord, ConservationBox, ConservationResidual, MonitorReport, Resolution, Segment, TrackConfig,
    Trajectory,
};
