//! Discrete-timeframe lifetime simulation.
//!
//! Each frame: users churn and drift, the alive fleet serves its
//! coverage, every alive UAV pays hover, pending travel, and per-user
//! communication energy, drained nodes die, and optionally the swap
//! planner rotates fresh batteries into the busy spots. When coverage
//! falls below a configured trigger the placement is re-optimized from
//! the current layout. The lifespan metric is the first frame whose
//! coverage drops below `coverage_floor * h_initial`.

use serde::{Deserialize, Serialize};

use crate::ecnsa::{apply_repositioning, rank_nodes, select_swaps, DropReason, SwapThresholds};
use crate::energy::{frame_energy_update, network_lifespan_sum, EnergyLedger};
use crate::error::{Error, Result};
use crate::model::{ground_distance, PlacementVector, Scenario};
use crate::objective::fitness_from_topology;
use crate::optimizer::{run_optimizer, run_optimizer_masked, WoaParams};
use crate::rng::{self, domain};
use crate::topology::build_topology_masked;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimConfig {
    pub n_frames: usize,
    /// Overrides the energy parameters' frame duration when set.
    pub frame_duration: Option<f64>,
    /// Per-frame probability that a user toggles between active and idle.
    pub user_toggle_prob: f64,
    /// Per-frame, per-axis Gaussian drift of user positions, meters.
    pub user_jitter_sigma: f64,
    pub ecnsa_enabled: bool,
    /// Re-optimize when `h < reopt_trigger * h_initial`; zero disables.
    pub reopt_trigger: f64,
    /// Lifespan threshold as a fraction of initial coverage.
    pub coverage_floor: f64,
    /// Minimum residual advantage (joules) required to justify a swap.
    pub swap_min_energy_gap_j: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            n_frames: 12,
            frame_duration: None,
            user_toggle_prob: 0.02,
            user_jitter_sigma: 5.0,
            ecnsa_enabled: true,
            reopt_trigger: 0.0,
            coverage_floor: 0.8,
            swap_min_energy_gap_j: 0.0,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_frames == 0 {
            return Err(Error::InvalidParams("n_frames must be >= 1".into()));
        }
        if let Some(f) = self.frame_duration {
            if !(f > 0.0) {
                return Err(Error::InvalidParams(format!(
                    "frame_duration must be > 0, got {f}"
                )));
            }
        }
        if !(0.0..=1.0).contains(&self.user_toggle_prob) {
            return Err(Error::InvalidParams(format!(
                "user_toggle_prob must lie in [0, 1], got {}",
                self.user_toggle_prob
            )));
        }
        if !(self.user_jitter_sigma >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "user_jitter_sigma must be >= 0, got {}",
                self.user_jitter_sigma
            )));
        }
        if !(0.0..=1.0).contains(&self.reopt_trigger) {
            return Err(Error::InvalidParams(format!(
                "reopt_trigger must lie in [0, 1], got {}",
                self.reopt_trigger
            )));
        }
        if !(0.0..=1.0).contains(&self.coverage_floor) {
            return Err(Error::InvalidParams(format!(
                "coverage_floor must lie in [0, 1], got {}",
                self.coverage_floor
            )));
        }
        if !(self.swap_min_energy_gap_j >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "swap_min_energy_gap_j must be >= 0, got {}",
                self.swap_min_energy_gap_j
            )));
        }
        Ok(())
    }
}

/// One row of the frame series. Coverage and connectivity describe the
/// topology that served this frame; alive counts and residuals are the
/// end-of-frame state after deaths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameRecord {
    pub frame: usize,
    pub h: f64,
    pub connectivity_ratio: f64,
    pub alive: usize,
    pub total_residual_j: f64,
    pub nls_gstar_j: f64,
    pub deaths: usize,
    pub swaps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeathEvent {
    pub frame: usize,
    pub uav: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SwapEvent {
    pub frame: usize,
    pub a: usize,
    pub b: usize,
    pub users_a: usize,
    pub users_b: usize,
    pub energy_a: f64,
    pub energy_b: f64,
    pub travel_m: f64,
    pub travel_j: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DroppedSwapEvent {
    pub frame: usize,
    pub a: usize,
    pub b: usize,
    pub reason: DropReason,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct SimEvents {
    pub deaths: Vec<DeathEvent>,
    pub swaps: Vec<SwapEvent>,
    pub dropped_swaps: Vec<DroppedSwapEvent>,
    /// Frames at which the placement was re-optimized.
    pub reopts: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    pub frames: Vec<FrameRecord>,
    pub h_initial: f64,
    pub lifespan_frames: usize,
    pub events: SimEvents,
    pub final_placement: PlacementVector,
}

/// Mutable simulation state carried across frames.
#[derive(Debug, Clone)]
pub struct SimState {
    /// Completed frames.
    pub frame: usize,
    /// Scenario copy whose users churn and drift.
    pub world: Scenario,
    pub placement: PlacementVector,
    pub ledger: EnergyLedger,
    /// Travel distance to charge at the next frame (re-optimization moves).
    pub pending_travel: Vec<f64>,
    pub h_initial: f64,
}

/// What one frame produced, beyond the mutated state.
#[derive(Debug, Clone)]
pub struct StepOutcome {
    pub record: FrameRecord,
    pub deaths: Vec<usize>,
    pub swaps: Vec<SwapEvent>,
    pub dropped_swaps: Vec<DroppedSwapEvent>,
    pub reoptimized: bool,
}

/// Advances the simulation by one frame.
pub fn step_timeframe(state: &mut SimState, sim: &SimConfig, woa: &WoaParams) -> Result<StepOutcome> {
    let frame = state.frame + 1;
    let seed = state.world.seed;
    let n = state.world.n_uavs;

    // User churn and drift, keyed per (frame, user) so enabling other
    // features never shifts these draws.
    let (area_w, area_h) = (state.world.area_width, state.world.area_height);
    for user in &mut state.world.users {
        if sim.user_toggle_prob > 0.0
            && rng::unit(seed, domain::CHURN, frame as u64, user.id as u64, 0) < sim.user_toggle_prob
        {
            user.active = !user.active;
        }
        if sim.user_jitter_sigma > 0.0 {
            user.pos.x += rng::gaussian(seed, domain::JITTER, frame as u64, user.id as u64, 0)
                * sim.user_jitter_sigma;
            user.pos.y += rng::gaussian(seed, domain::JITTER, frame as u64, user.id as u64, 1)
                * sim.user_jitter_sigma;
            user.pos.x = user.pos.x.clamp(0.0, area_w);
            user.pos.y = user.pos.y.clamp(0.0, area_h);
        }
    }

    // The fleet alive at frame start serves this frame.
    let serving_alive = state.ledger.alive_mask();
    let serving = build_topology_masked(&state.placement, &state.world, &serving_alive)?;
    let report = fitness_from_topology(&serving, &state.world);

    state.ledger.begin_frame();
    let deaths = frame_energy_update(
        &mut state.ledger,
        &state.pending_travel,
        &state.placement,
        &serving,
        &state.world,
    );
    state.pending_travel = vec![0.0; n];

    // Post-death view for residual accounting and swap planning.
    let after = build_topology_masked(&state.placement, &state.world, &state.ledger.alive_mask())?;

    let mut swaps = Vec::new();
    let mut dropped_swaps = Vec::new();
    if sim.ecnsa_enabled && state.ledger.alive_count() >= 2 {
        let rankings = rank_nodes(&after, &state.ledger);
        let thresholds = SwapThresholds { min_energy_gap: sim.swap_min_energy_gap_j };
        let plan = select_swaps(&rankings, &state.placement, &after, &state.ledger, &thresholds);
        let (next, outcome) =
            apply_repositioning(&state.placement, &plan, &mut state.ledger, &state.world.energy);
        for (&(a, b), &travel_j) in outcome.applied.iter().zip(&outcome.travel_cost_j) {
            let why = plan
                .rationale
                .iter()
                .find(|r| r.a == a && r.b == b)
                .expect("applied swap must come from the plan");
            swaps.push(SwapEvent {
                frame,
                a,
                b,
                users_a: why.users_a,
                users_b: why.users_b,
                energy_a: why.energy_a,
                energy_b: why.energy_b,
                travel_m: plan.projected_travel[a],
                travel_j,
            });
        }
        for d in outcome.dropped {
            dropped_swaps.push(DroppedSwapEvent { frame, a: d.a, b: d.b, reason: d.reason });
        }
        state.placement = next;
    }

    // Coverage collapse below the trigger re-optimizes the alive fleet,
    // warm-started from the current layout; dead UAVs stay parked.
    let mut reoptimized = false;
    if sim.reopt_trigger > 0.0
        && report.h_value < sim.reopt_trigger * state.h_initial
        && state.ledger.alive_count() >= 1
    {
        let woa_frame = WoaParams {
            seed: rng::derive_seed(seed, domain::REOPT, frame as u64),
            ..woa.clone()
        };
        let alive_now = state.ledger.alive_mask();
        let run = run_optimizer_masked(&state.world, &woa_frame, Some(&state.placement), Some(&alive_now))?;
        let mut next = run.best;
        for i in 0..n {
            if alive_now[i] {
                state.pending_travel[i] =
                    ground_distance(state.placement.position(i), next.position(i));
            } else {
                next.set_position(i, state.placement.position(i));
            }
        }
        state.placement = next;
        reoptimized = true;
    }

    let record = FrameRecord {
        frame,
        h: report.h_value,
        connectivity_ratio: serving.connectivity_ratio(),
        alive: state.ledger.alive_count(),
        total_residual_j: state.ledger.total_residual(),
        nls_gstar_j: network_lifespan_sum(&state.ledger, &after),
        deaths: deaths.len(),
        swaps: swaps.len(),
    };
    state.frame = frame;
    Ok(StepOutcome { record, deaths, swaps, dropped_swaps, reoptimized })
}

/// Runs the frame loop from an already chosen initial placement.
pub fn run_simulation_from(
    scenario: &Scenario,
    sim: &SimConfig,
    woa: &WoaParams,
    initial: &PlacementVector,
) -> Result<SimResult> {
    scenario.validate()?;
    sim.validate()?;
    woa.validate()?;
    let mut world = scenario.clone();
    if let Some(f) = sim.frame_duration {
        world.energy.frame_duration = f;
    }
    let n = world.n_uavs;
    if initial.n_uavs() != n {
        return Err(Error::PlacementLength {
            n_uavs: n,
            expected: 2 * n,
            actual: initial.coords().len(),
        });
    }

    let ledger = EnergyLedger::new(n, world.initial_energy);
    let topo0 = build_topology_masked(initial, &world, &ledger.alive_mask())?;
    let report0 = fitness_from_topology(&topo0, &world);
    let mut state = SimState {
        frame: 0,
        world,
        placement: initial.clone(),
        ledger,
        pending_travel: vec![0.0; n],
        h_initial: report0.h_value,
    };
    let mut frames = vec![FrameRecord {
        frame: 0,
        h: report0.h_value,
        connectivity_ratio: topo0.connectivity_ratio(),
        alive: n,
        total_residual_j: state.ledger.total_residual(),
        nls_gstar_j: network_lifespan_sum(&state.ledger, &topo0),
        deaths: 0,
        swaps: 0,
    }];
    let mut events = SimEvents::default();

    for _ in 0..sim.n_frames {
        let out = step_timeframe(&mut state, sim, woa)?;
        for uav in out.deaths {
            events.deaths.push(DeathEvent { frame: out.record.frame, uav });
        }
        events.swaps.extend(out.swaps);
        events.dropped_swaps.extend(out.dropped_swaps);
        if out.reoptimized {
            events.reopts.push(out.record.frame);
        }
        frames.push(out.record);
    }

    let lifespan_frames = lifespan_metric(&frames, state.h_initial, sim.coverage_floor);
    Ok(SimResult {
        frames,
        h_initial: state.h_initial,
        lifespan_frames,
        events,
        final_placement: state.placement,
    })
}

/// Full pipeline: optimize an initial placement, then simulate it.
pub fn run_simulation(scenario: &Scenario, sim: &SimConfig, woa: &WoaParams) -> Result<SimResult> {
    let initial = run_optimizer(scenario, woa)?;
    run_simulation_from(scenario, sim, woa, &initial.best)
}

/// First frame whose coverage falls below `coverage_floor * h_initial`;
/// the full horizon when coverage never does.
pub fn lifespan_metric(frames: &[FrameRecord], h_initial: f64, coverage_floor: f64) -> usize {
    let horizon = frames.last().map_or(0, |r| r.frame);
    for rec in frames.iter().filter(|r| r.frame >= 1) {
        if rec.h < coverage_floor * h_initial {
            return rec.frame;
        }
    }
    horizon
}
