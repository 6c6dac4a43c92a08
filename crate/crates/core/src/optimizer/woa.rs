//! Whale optimization with an adaptive exploration schedule.
//!
//! Each agent either encircles the incumbent best, explores toward a
//! random pool member, or spirals in toward the best, chosen per agent
//! per iteration. The coefficient `a` shrinks linearly from 2 to 0 over
//! the run, and on prolonged stagnation the adaptive schedule lifts it
//! back up to re-open exploration.

use serde::{Deserialize, Serialize};

use super::{commit_iteration, init_population, OptimizerRun, SearchState};
use crate::error::{Error, Result};
use crate::model::{PlacementVector, Scenario};
use crate::objective::fitness_h_masked;
use crate::rng::{self, domain};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WoaParams {
    pub pop_size: usize,
    pub max_iters: usize,
    /// Spiral pitch `b` in `e^(b l) cos(2 pi l)`.
    pub spiral_b: f64,
    pub seed: u64,
    /// Enables the stagnation-triggered exploration boost.
    pub adaptive: bool,
    /// Iterations without improvement before the boost kicks in.
    pub stagnation_window: usize,
    /// Amount added to the linear `a` while stagnant, capped at 2.
    pub a_boost: f64,
}

impl Default for WoaParams {
    fn default() -> Self {
        WoaParams {
            pop_size: 30,
            max_iters: 500,
            spiral_b: 1.0,
            seed: 42,
            adaptive: true,
            stagnation_window: 25,
            a_boost: 0.5,
        }
    }
}

impl WoaParams {
    pub fn validate(&self) -> Result<()> {
        if self.pop_size < 2 {
            return Err(Error::InvalidParams(format!(
                "pop_size must be >= 2, got {}",
                self.pop_size
            )));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidParams("max_iters must be >= 1".into()));
        }
        if !self.spiral_b.is_finite() {
            return Err(Error::InvalidParams(format!(
                "spiral_b must be finite, got {}",
                self.spiral_b
            )));
        }
        if self.stagnation_window == 0 {
            return Err(Error::InvalidParams("stagnation_window must be >= 1".into()));
        }
        if !(self.a_boost >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "a_boost must be >= 0, got {}",
                self.a_boost
            )));
        }
        Ok(())
    }
}

/// Coefficient `a` for the iteration being completed: linear descent
/// from 2 at iteration 0 to 0 at `max_iters`, lifted by `a_boost`
/// (capped at 2) once the best has stalled for the configured window.
pub fn adaptive_schedule(iter: usize, stagnation: usize, params: &WoaParams) -> f64 {
    let a_lin = 2.0 * (1.0 - iter as f64 / params.max_iters as f64);
    if params.adaptive && stagnation >= params.stagnation_window {
        (a_lin + params.a_boost).min(2.0)
    } else {
        a_lin
    }
}

/// Shrinking-encircling update for one coordinate:
/// `x' = target - A |C target - x|`.
pub fn encircle_coord(x: f64, target: f64, a_coef: f64, c_coef: f64) -> f64 {
    target - a_coef * (c_coef * target - x).abs()
}

/// Spiral update for one coordinate:
/// `x' = |best - x| e^(b l) cos(2 pi l) + best`.
pub fn spiral_coord(x: f64, best: f64, b: f64, l: f64) -> f64 {
    (best - x).abs() * (b * l).exp() * (std::f64::consts::TAU * l).cos() + best
}

// Draw slots within one (iteration, agent) key. Untaken branches simply
// never evaluate their slots; the keyed scheme leaves other draws alone.
const SLOT_P: u64 = 0;
const SLOT_L: u64 = 1;
const SLOT_GATE: u64 = 2;
const SLOT_RAND_IDX: u64 = 3;
const SLOT_DIMS: u64 = 4;

/// Advances the search by one generation. Reads the previous generation
/// and the incumbent best, commits all moves at the barrier.
pub fn woa_step(
    state: &mut SearchState,
    scenario: &Scenario,
    params: &WoaParams,
    alive: &[bool],
) -> Result<()> {
    if state.iter >= params.max_iters {
        return Err(Error::InvalidParams(format!(
            "run already completed {} of {} iterations",
            state.iter, params.max_iters
        )));
    }
    let step = state.iter as u64;
    // The step underway completes iteration iter+1; sampling the
    // schedule there makes the final step reach a = 0 exactly.
    let a = adaptive_schedule(state.iter + 1, state.stagnation, params);
    let pop = state.agents.len();
    let dims = 2 * scenario.n_uavs;
    let center = [scenario.area_width / 2.0, scenario.area_height / 2.0];
    let prev = state.agents.clone();
    let mut mech = (0usize, 0usize, 0usize);

    for i in 0..pop {
        let key_agent = i as u64;
        let p = rng::unit(params.seed, domain::WOA, step, key_agent, SLOT_P);
        let coords = state.agents[i].coords_mut();
        if p < 0.5 {
            let gate_r = rng::unit(params.seed, domain::WOA, step, key_agent, SLOT_GATE);
            let a_gate = 2.0 * a * gate_r - a;
            let target = if a_gate.abs() < 1.0 {
                mech.0 += 1;
                &state.best
            } else {
                mech.1 += 1;
                let u = rng::unit(params.seed, domain::WOA, step, key_agent, SLOT_RAND_IDX);
                let idx = ((u * pop as f64) as usize).min(pop - 1);
                &prev[idx]
            };
            for d in 0..dims {
                let r1 = rng::unit(params.seed, domain::WOA, step, key_agent, SLOT_DIMS + 2 * d as u64);
                let r2 = rng::unit(params.seed, domain::WOA, step, key_agent, SLOT_DIMS + 2 * d as u64 + 1);
                let a_coef = 2.0 * a * r1 - a;
                let c_coef = 2.0 * r2;
                // The C term scales a position, so it reads coordinates
                // relative to the area center; a frame anchored at one
                // corner would perturb far-corner placements harder
                // than near-corner ones for no physical reason.
                let c = center[d & 1];
                coords[d] = c
                    + encircle_coord(prev[i].coords()[d] - c, target.coords()[d] - c, a_coef, c_coef);
            }
        } else {
            mech.2 += 1;
            let l = rng::symmetric_unit(params.seed, domain::WOA, step, key_agent, SLOT_L);
            for d in 0..dims {
                coords[d] = spiral_coord(prev[i].coords()[d], state.best.coords()[d], params.spiral_b, l);
            }
        }
        state.agents[i].clamp_to(scenario);
        state.reports[i] = fitness_h_masked(&state.agents[i], scenario, alive)?;
    }

    commit_iteration(state, a, mech);
    Ok(())
}

/// Full optimization run with every UAV alive.
pub fn run_optimizer(scenario: &Scenario, params: &WoaParams) -> Result<OptimizerRun> {
    run_optimizer_masked(scenario, params, None, None)
}

/// Full optimization run, optionally warm-started from an existing
/// placement (injected as agent 0) and restricted to alive UAVs.
pub fn run_optimizer_masked(
    scenario: &Scenario,
    params: &WoaParams,
    warm: Option<&PlacementVector>,
    alive: Option<&[bool]>,
) -> Result<OptimizerRun> {
    params.validate()?;
    scenario.validate()?;
    let all_alive;
    let alive = match alive {
        Some(mask) => mask,
        None => {
            all_alive = vec![true; scenario.n_uavs];
            &all_alive
        }
    };
    let mut state = init_population(scenario, params.pop_size, params.seed, warm, alive)?;
    while state.iter < params.max_iters {
        woa_step(&mut state, scenario, params, alive)?;
    }
    Ok(OptimizerRun {
        best: state.best,
        report: state.best_report,
        trace: state.trace,
    })
}
