use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in the solvers and the harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("vacuum state: {0}")]
    Vacuum(String),

    #[error("state on the wrong branch of the wave curve: {0}")]
    Branch(String),

    /// The Riemann data would open a vacuum; `deficit` is `s0 - r1 + 2/sqrt(eps)`
    /// (non-positive when this error is raised).
    #[error("Riemann data forms a vacuum (deficit {deficit:e})")]
    VacuumFormation { deficit: f64 },

    #[error("root finder failed: {msg} (bracket [{lo:e}, {hi:e}])")]
    Numerics { msg: String, lo: f64, hi: f64 },

    #[error("degenerate jump: {0}")]
    DegenerateJump(String),

    #[error("states are not connected by a shock: {0}")]
    NotAShock(String),

    #[error("front cap of {cap} exceeded at t = {time} ({fronts} fronts alive)")]
    FrontCapExceeded { cap: usize, time: f64, fronts: usize },

    #[error("front outside the integration box: {0}")]
    Box(String),

    #[error("statistics: {0}")]
    Stats(String),

    #[error("the two delta shocks do not interact: {0}")]
    NoInteraction(String),

    #[error("integrity violation: {0}")]
    Integrity(String),

    #[error("configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn numerics(msg: impl Into<String>, lo: f64, hi: f64) -> Self {
        Error::Numerics { msg: msg.into(), lo, hi }
    }

    /// Process exit code used by the command-line front end: 1 for domain
    /// problems with the input, 2 for numerical failures, 64 for bad config.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Numerics { .. }
            | Error::FrontCapExceeded { .. }
            | Error::Integrity(_)
            | Error::Stats(_) => 2,
            Error::Config(_) | Error::Json(_) => 64,
            _ => 1,
        }
    }
}
