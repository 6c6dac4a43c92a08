//! Global-best particle swarm baseline over the same search space,
//! fitness, draw scheme, and trace format as the whale optimizer.

use serde::{Deserialize, Serialize};

use super::{init_population, OptimizerRun};
use crate::error::{Error, Result};
use crate::model::Scenario;
use crate::objective::{fitness_h_masked, FitnessReport};
use crate::rng::{self, domain};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PsoParams {
    pub pop_size: usize,
    pub max_iters: usize,
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
    pub seed: u64,
}

impl Default for PsoParams {
    fn default() -> Self {
        // Clerc-constriction style coefficients.
        PsoParams {
            pop_size: 30,
            max_iters: 500,
            inertia: 0.7298,
            cognitive: 1.49618,
            social: 1.49618,
            seed: 42,
        }
    }
}

impl PsoParams {
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
        for (name, v) in [
            ("inertia", self.inertia),
            ("cognitive", self.cognitive),
            ("social", self.social),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidParams(format!(
                    "{name} must be finite and >= 0, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Full PSO run with every UAV alive. The initial population is drawn
/// from the same stream as the whale optimizer, so equal seeds and
/// population sizes start both algorithms from identical agents.
pub fn run_pso_baseline(scenario: &Scenario, params: &PsoParams) -> Result<OptimizerRun> {
    params.validate()?;
    scenario.validate()?;
    let alive = vec![true; scenario.n_uavs];
    let mut state = init_population(scenario, params.pop_size, params.seed, None, &alive)?;
    // The schedule column is a whale concept; the baseline leaves it zero.
    state.trace[0].a_value = 0.0;
    let dims = 2 * scenario.n_uavs;
    let pop = params.pop_size;

    let mut velocity = vec![vec![0.0f64; dims]; pop];
    let mut pbest = state.agents.clone();
    let mut pbest_report: Vec<FitnessReport> = state.reports.clone();

    while state.iter < params.max_iters {
        let step = state.iter as u64;
        for i in 0..pop {
            for d in 0..dims {
                let r1 = rng::unit(params.seed, domain::PSO, step, i as u64, 2 * d as u64);
                let r2 = rng::unit(params.seed, domain::PSO, step, i as u64, 2 * d as u64 + 1);
                let x = state.agents[i].coords()[d];
                velocity[i][d] = params.inertia * velocity[i][d]
                    + params.cognitive * r1 * (pbest[i].coords()[d] - x)
                    + params.social * r2 * (state.best.coords()[d] - x);
                state.agents[i].coords_mut()[d] = x + velocity[i][d];
            }
            state.agents[i].clamp_to(scenario);
            state.reports[i] = fitness_h_masked(&state.agents[i], scenario, &alive)?;
            if state.reports[i].h_value > pbest_report[i].h_value {
                pbest[i] = state.agents[i].clone();
                pbest_report[i] = state.reports[i];
            }
        }
        super::commit_iteration(&mut state, 0.0, (0, 0, 0));
    }
    Ok(OptimizerRun {
        best: state.best,
        report: state.best_report,
        trace: state.trace,
    })
}
