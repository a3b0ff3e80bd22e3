//! The reference experiments: parameter sweeps over `eps` and the
//! comparison of tracked solutions with the exact delta-shock path.

mod compare;
mod config;
mod table;

pub use compare::{
    exact_path, run_comparison, spike_center, write_centers_csv, write_compare_csv, CenterSample, ComparisonReport,
};
pub use config::{ExperimentConfig, EXAMPLE_NAMES};
pub use table::{render_table_text, run_member, run_table, run_table_with_trajectories, write_table_csv, TableRow};
