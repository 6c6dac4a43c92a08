//! Placement planning and lifetime simulation for UAV-mounted fog nodes.
//!
//! The library plans where a fleet of hovering UAVs should sit over a
//! bounded disaster area so that as many ground users as possible are
//! covered by one connected fog mesh, then simulates how long that mesh
//! keeps serving as batteries drain, optionally rebalancing energy by
//! swapping node positions between timeframes.
//!
//! Modules, bottom up:
//! - [`model`]: scenario data, geometry, coverage and link predicates
//! - [`topology`]: fog-fog link graph, connected components, user assignment
//! - [`objective`]: connected-coverage fitness `H = NCV2 / m`
//! - [`energy`]: channel gains, link rates, hover/travel/comm drain
//! - [`optimizer`]: whale optimization (adaptive) plus a PSO baseline
//! - [`ecnsa`]: energy-conscious node swapping between timeframes
//! - [`sim`]: discrete-timeframe lifetime simulation
//! - [`config`]: JSON config documents and scenario generation
//! - [`study`]: paired comparisons and parameter sweeps
//! - [`export`]: CSV renderers for traces, frames, comparisons, sweeps

pub mod config;
pub mod ecnsa;
pub mod energy;
pub mod error;
pub mod export;
pub mod model;
pub mod objective;
pub mod optimizer;
pub mod rng;
pub mod sim;
pub mod study;
pub mod topology;

pub use error::{Error, Result};
