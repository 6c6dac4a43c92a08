//! Error type shared across the library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("placement holds {actual} coordinates, expected 2 * {n_uavs} = {expected}")]
    PlacementLength {
        n_uavs: usize,
        expected: usize,
        actual: usize,
    },

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("UAV {0} cannot link to itself")]
    SelfLink(usize),

    #[error("singular geometry: zero link distance with zero altitude")]
    SingularGeometry,

    #[error("degenerate link rate: {0}")]
    DegenerateRate(String),

    #[error("travel time {travel_s} s exceeds frame duration {frame_s} s")]
    TravelExceedsFrame { travel_s: f64, frame_s: f64 },

    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
