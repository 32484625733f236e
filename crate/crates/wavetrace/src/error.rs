use thiserror::Error;

use crate::beam_model::TrajectoryBundle;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("config error in `{key}`: {msg}")]
    Config { key: String, msg: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("trajectories crossed at step {step} between rays {left} and {right}")]
    Caustic { step: usize, left: usize, right: usize },

    #[error("non-finite state at step {step}, ray {ray}")]
    NumericalBlowup { step: usize, ray: usize },

    #[error("ray {ray} turned back at step {step} (rho_x = {rho_x})")]
    TurnedRay { step: usize, ray: usize, rho_x: f64 },

    #[error("oracle resolution: {0}")]
    OracleResolution(String),

    #[error("detector at zeta = {zeta} lies beyond the simulated range (reached {reached})")]
    Range { zeta: f64, reached: f64 },

    #[error("{cause} (partial bundle kept: {} snapshots)", partial.snapshots.len())]
    Halted {
        cause: Box<Error>,
        partial: Box<TrajectoryBundle>,
    },

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn config(key: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            msg: msg.into(),
        }
    }

    /// The underlying cause, looking through `Halted`.
    pub fn root(&self) -> &Error {
        match self {
            Error::Halted { cause, .. } => cause.root(),
            e => e,
        }
    }
}
