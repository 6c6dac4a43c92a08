//! Population search over placements: an adaptive whale optimizer and a
//! particle swarm baseline sharing one state shape, one trace format,
//! and one deterministic draw scheme.
//!
//! Both optimizers are generational: every agent update in an iteration
//! reads the previous generation, and the incumbent best moves only at
//! the iteration barrier, only on strict improvement. Randomness comes
//! from counter-based streams keyed per (iteration, agent, slot), so
//! agent evaluation order cannot change any outcome.

mod pso;
mod woa;

pub use pso::{run_pso_baseline, PsoParams};
pub use woa::{adaptive_schedule, encircle_coord, run_optimizer, run_optimizer_masked, spiral_coord, woa_step, WoaParams};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{PlacementVector, Scenario};
use crate::objective::{fitness_h_masked, FitnessReport};
use crate::rng::{self, domain};

/// One iteration of optimizer progress. `mech_*` columns count which
/// whale update each agent used this iteration; the PSO baseline leaves
/// them (and `a_value`) at zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceRow {
    pub iter: usize,
    pub best_h: f64,
    pub nc: usize,
    pub ncv1: usize,
    pub ncv2: usize,
    pub a_value: f64,
    pub mech_encircle: usize,
    pub mech_explore: usize,
    pub mech_spiral: usize,
}

/// Population, incumbent best, and per-iteration trace.
#[derive(Debug, Clone)]
pub struct SearchState {
    pub agents: Vec<PlacementVector>,
    pub reports: Vec<FitnessReport>,
    pub best: PlacementVector,
    pub best_report: FitnessReport,
    /// Completed iterations.
    pub iter: usize,
    /// Consecutive completed iterations without strict improvement.
    pub stagnation: usize,
    pub trace: Vec<TraceRow>,
}

/// Final outcome of one optimizer run.
#[derive(Debug, Clone)]
pub struct OptimizerRun {
    pub best: PlacementVector,
    pub report: FitnessReport,
    pub trace: Vec<TraceRow>,
}

/// Uniform random population over the area, optionally seeding agent 0
/// with a warm-start placement. Both optimizers share this, so equal
/// seeds mean equal initial populations across algorithms.
pub fn init_population(
    scenario: &Scenario,
    pop_size: usize,
    seed: u64,
    warm: Option<&PlacementVector>,
    alive: &[bool],
) -> Result<SearchState> {
    if pop_size < 2 {
        return Err(Error::InvalidParams(format!(
            "population must hold at least 2 agents, got {pop_size}"
        )));
    }
    let n = scenario.n_uavs;
    let mut agents = Vec::with_capacity(pop_size);
    for a in 0..pop_size {
        let placement = match (a, warm) {
            (0, Some(w)) => {
                let mut w = (*w).clone();
                if w.n_uavs() != n {
                    return Err(Error::PlacementLength {
                        n_uavs: n,
                        expected: 2 * n,
                        actual: w.coords().len(),
                    });
                }
                w.clamp_to(scenario);
                w
            }
            _ => {
                let coords: Vec<f64> = (0..2 * n)
                    .map(|d| {
                        let extent = if d % 2 == 0 { scenario.area_width } else { scenario.area_height };
                        rng::unit(seed, domain::POP_INIT, a as u64, d as u64, 0) * extent
                    })
                    .collect();
                PlacementVector::new(coords, n)?
            }
        };
        agents.push(placement);
    }
    let reports = agents
        .iter()
        .map(|p| fitness_h_masked(p, scenario, alive))
        .collect::<Result<Vec<_>>>()?;
    let best_idx = argmax_strict(&reports);
    let best = agents[best_idx].clone();
    let best_report = reports[best_idx];
    let trace = vec![TraceRow {
        iter: 0,
        best_h: best_report.h_value,
        nc: best_report.nc,
        ncv1: best_report.ncv1,
        ncv2: best_report.ncv2,
        a_value: 2.0,
        mech_encircle: 0,
        mech_explore: 0,
        mech_spiral: 0,
    }];
    Ok(SearchState {
        agents,
        reports,
        best,
        best_report,
        iter: 0,
        stagnation: 0,
        trace,
    })
}

/// Index of the best report; ties keep the earliest (lowest) index.
pub(crate) fn argmax_strict(reports: &[FitnessReport]) -> usize {
    let mut best = 0;
    for (i, r) in reports.iter().enumerate().skip(1) {
        if r.h_value > reports[best].h_value {
            best = i;
        }
    }
    best
}

/// Commits an iteration: moves the incumbent only on strict improvement,
/// tracks stagnation, and appends the trace row.
pub(crate) fn commit_iteration(
    state: &mut SearchState,
    a_value: f64,
    mech: (usize, usize, usize),
) {
    let cand = argmax_strict(&state.reports);
    if state.reports[cand].h_value > state.best_report.h_value {
        state.best = state.agents[cand].clone();
        state.best_report = state.reports[cand];
        state.stagnation = 0;
    } else {
        state.stagnation += 1;
    }
    state.iter += 1;
    state.trace.push(TraceRow {
        iter: state.iter,
        best_h: state.best_report.h_value,
        nc: state.best_report.nc,
        ncv1: state.best_report.ncv1,
        ncv2: state.best_report.ncv2,
        a_value,
        mech_encircle: mech.0,
        mech_explore: mech.1,
        mech_spiral: mech.2,
    });
}
