use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euler::{GasParams, State};
use crate::tracking::{PiecewiseData, TrackConfig};

/// Three-state experiment `U0 | a1 | U1 | a2 | U2` swept over `eps_list`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    pub a1: f64,
    pub a2: f64,
    #[serde(rename = "U0")]
    pub u0: State,
    #[serde(rename = "U1")]
    pub u1: State,
    #[serde(rename = "U2")]
    pub u2: State,
    pub eps_list: Vec<f64>,
    pub t_end: f64,
    pub delta_r: f64,
    pub output_dir: PathBuf,
    pub seed: u64,
    pub cstar_samples: usize,
    pub front_cap: usize,
    pub q_same_family: bool,
    /// Number of equally spaced times in `[T, t_end]` at which the tracked
    /// spike is compared with the exact path.
    pub compare_samples: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let track = TrackConfig::default();
        Self {
            name: "ex1".into(),
            a1: 0.0,
            a2: 2.0,
            u0: State::new(1.0, 1.0),
            u1: State::new(1.2, 0.8),
            u2: State::new(1.14286, 0.7),
            eps_list: vec![0.5, 0.1, 0.01, 0.005, 0.003],
            t_end: track.t_end,
            delta_r: 5e-4,
            output_dir: PathBuf::from("out"),
            seed: 0,
            cstar_samples: track.cstar_samples,
            front_cap: track.front_cap,
            q_same_family: true,
            compare_samples: 256,
        }
    }
}

pub const EXAMPLE_NAMES: [&str; 3] = ["ex1", "ex2", "ex3"];

impl ExperimentConfig {
    /// The three reference experiments. `ex1` has a single simple delta
    /// shock after the interaction, `ex2` and `ex3` a curved one.
    pub fn example(name: &str) -> Result<Self> {
        let base = Self::default();
        let (u1, u2) = match name {
            "ex1" => (State::new(1.2, 0.8), State::new(1.14286, 0.7)),
            "ex2" => (State::new(1.2, 0.8), State::new(1.3, 0.7)),
            "ex3" => (State::new(0.8, 0.9), State::new(0.9, 0.7)),
            _ => return Err(Error::Config(format!("unknown example '{name}', expected one of ex1, ex2, ex3"))),
        };
        Ok(Self { name: name.into(), u1, u2, ..base })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        Ok(cfg)
    }

    /// Checks needed by every run. The velocity ordering needed by the
    /// delta-shock comparison is checked by [`ExperimentConfig::validate_ordering`].
    pub fn validate(&self) -> Result<()> {
        if !(self.a1 < self.a2) {
            return Err(Error::Config(format!("need a1 < a2, got {} and {}", self.a1, self.a2)));
        }
        for (st, name) in [(&self.u0, "U0"), (&self.u1, "U1"), (&self.u2, "U2")] {
            if !(st.rho > 0.0 && st.rho.is_finite() && st.u.is_finite()) {
                return Err(Error::Config(format!("{name} = ({}, {}) needs a positive finite density", st.rho, st.u)));
            }
        }
        if self.eps_list.is_empty() {
            return Err(Error::Config("eps_list is empty".into()));
        }
        if let Some(e) = self.eps_list.iter().find(|&&e| !(e > 0.0 && e <= 0.5)) {
            return Err(Error::Config(format!("eps values must lie in (0, 1/2], got {e}")));
        }
        if !(self.t_end > 0.0 && self.delta_r > 0.0) {
            return Err(Error::Config("t_end and delta_r must be positive".into()));
        }
        Ok(())
    }

    pub fn validate_ordering(&self) -> Result<()> {
        if !(self.u0.u > self.u1.u && self.u1.u > self.u2.u) {
            return Err(Error::Config(format!(
                "need u0 > u1 > u2, got {} {} {}",
                self.u0.u, self.u1.u, self.u2.u
            )));
        }
        Ok(())
    }

    pub fn initial_data(&self) -> Result<PiecewiseData> {
        PiecewiseData::three_state(self.u0, self.u1, self.u2, self.a1, self.a2)
    }

    pub fn track_config(&self) -> TrackConfig {
        TrackConfig {
            delta_r: self.delta_r,
            t_end: self.t_end,
            front_cap: self.front_cap,
            q_same_family: self.q_same_family,
            cstar_samples: self.cstar_samples,
            seed: self.seed,
            ..TrackConfig::default()
        }
    }

    pub fn params(eps: f64) -> Result<GasParams> {
        GasParams::new_inclusive(eps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_are_valid() {
        for name in EXAMPLE_NAMES {
            let c = ExperimentConfig::example(name).unwrap();
            c.validate().unwrap();
            c.validate_ordering().unwrap();
        }
        assert!(matches!(ExperimentConfig::example("ex9"), Err(Error::Config(_))));
    }

    #[test]
    fn json_round_trip_and_partial_override() {
        let c = ExperimentConfig::example("ex2").unwrap();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(ExperimentConfig::from_json(&text).unwrap(), c);
        let partial = ExperimentConfig::from_json(r#"{"eps_list": [0.1], "U2": {"rho": 2.0, "u": 0.1}}"#).unwrap();
        assert_eq!(partial.eps_list, vec![0.1]);
        assert_eq!(partial.u2, State::new(2.0, 0.1));
        assert_eq!(partial.u0, State::new(1.0, 1.0));
        assert!(ExperimentConfig::from_json(r#"{"epsilon": 1}"#).is_err());
    }

    #[test]
    fn bad_configs_are_config_errors() {
        let mut c = ExperimentConfig::default();
        c.eps_list = vec![0.7];
        assert!(matches!(c.validate(), Err(Error::Config(_))));
        let mut c = ExperimentConfig::default();
        c.a2 = -1.0;
        assert!(matches!(c.validate(), Err(Error::Config(_))));
    }
}
