//! Energy-conscious node swapping between timeframes.
//!
//! UAVs serving dense user pockets drain faster than idle ones. Between
//! frames, nodes that still hold plenty of energy but cover few users
//! exchange positions with nodes that are running low under heavy load,
//! so the depleted hardware coasts while fresh batteries take over the
//! busy spots. Swapping exact positions leaves the link graph and the
//! covered-user set untouched; only the energy-to-role pairing changes.

use serde::Serialize;

use crate::energy::{motion_energy_frame, EnergyLedger, EnergyParams};
use crate::model::{ground_distance, PlacementVector};
use crate::topology::Topology;

/// Alive UAVs ranked for swap planning.
#[derive(Debug, Clone, PartialEq)]
pub struct Rankings {
    /// By residual energy, highest first; ties toward the lower index.
    pub by_energy: Vec<usize>,
    /// By assigned-user count, highest first; ties toward the lower index.
    pub by_coverage: Vec<usize>,
}

/// Ranks alive UAVs by residual energy and by coverage load.
pub fn rank_nodes(topology: &Topology, ledger: &EnergyLedger) -> Rankings {
    let alive: Vec<usize> = (0..topology.n_uavs).filter(|&i| ledger.uavs[i].alive).collect();
    let mut by_energy = alive.clone();
    by_energy.sort_by(|&a, &b| {
        ledger.uavs[b]
            .residual
            .partial_cmp(&ledger.uavs[a].residual)
            .unwrap()
            .then(a.cmp(&b))
    });
    let mut by_coverage = alive;
    by_coverage.sort_by(|&a, &b| topology.uav_load[b].cmp(&topology.uav_load[a]).then(a.cmp(&b)));
    Rankings { by_energy, by_coverage }
}

/// Swap eligibility knobs. Classification itself is median-based: a
/// node is swap-relevant only when it sits strictly above the median on
/// one axis and strictly below on the other.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwapThresholds {
    /// Minimum residual-energy advantage (joules) the fresh node must
    /// hold over the depleted one for a swap to be worth its travel.
    pub min_energy_gap: f64,
}

impl Default for SwapThresholds {
    fn default() -> Self {
        SwapThresholds { min_energy_gap: 0.0 }
    }
}

/// Why a planned swap was selected: both members' loads and residuals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SwapRationale {
    pub a: usize,
    pub b: usize,
    pub users_a: usize,
    pub users_b: usize,
    pub energy_a: f64,
    pub energy_b: f64,
}

/// Planned position exchanges for one frame boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct SwapPlan {
    /// Pairs (fresh low-load node, depleted high-load node). No UAV
    /// appears in more than one pair.
    pub swaps: Vec<(usize, usize)>,
    /// Travel each UAV would fly, meters; zero for non-members.
    pub projected_travel: Vec<f64>,
    pub rationale: Vec<SwapRationale>,
}

impl SwapPlan {
    pub fn empty(n_uavs: usize) -> Self {
        SwapPlan {
            swaps: Vec::new(),
            projected_travel: vec![0.0; n_uavs],
            rationale: Vec::new(),
        }
    }
}

fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// Pairs high-energy low-load nodes with low-energy high-load nodes.
///
/// Both classifications are strict median splits over the alive fleet,
/// so a uniformly loaded or uniformly charged fleet plans no swaps.
/// Pairing is greedy in ranking order: the freshest eligible node takes
/// the most loaded eligible node, and each UAV swaps at most once.
pub fn select_swaps(
    rankings: &Rankings,
    placement: &PlacementVector,
    topology: &Topology,
    ledger: &EnergyLedger,
    thresholds: &SwapThresholds,
) -> SwapPlan {
    let n = topology.n_uavs;
    let alive: Vec<usize> = (0..n).filter(|&i| ledger.uavs[i].alive).collect();
    if alive.len() < 2 {
        return SwapPlan::empty(n);
    }

    let mut energies: Vec<f64> = alive.iter().map(|&i| ledger.uavs[i].residual).collect();
    energies.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let med_energy = median(&energies);
    let mut loads: Vec<f64> = alive.iter().map(|&i| topology.uav_load[i] as f64).collect();
    loads.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let med_load = median(&loads);

    let fresh_idle: Vec<usize> = rankings
        .by_energy
        .iter()
        .copied()
        .filter(|&i| ledger.uavs[i].residual > med_energy && (topology.uav_load[i] as f64) < med_load)
        .collect();
    let drained_busy: Vec<usize> = rankings
        .by_coverage
        .iter()
        .copied()
        .filter(|&i| ledger.uavs[i].residual < med_energy && (topology.uav_load[i] as f64) > med_load)
        .collect();

    let mut plan = SwapPlan::empty(n);
    let mut used = vec![false; n];
    for &a in &fresh_idle {
        if used[a] {
            continue;
        }
        let pick = drained_busy.iter().copied().find(|&b| {
            !used[b] && ledger.uavs[a].residual - ledger.uavs[b].residual >= thresholds.min_energy_gap
        });
        if let Some(b) = pick {
            used[a] = true;
            used[b] = true;
            let travel = ground_distance(placement.position(a), placement.position(b));
            plan.projected_travel[a] = travel;
            plan.projected_travel[b] = travel;
            plan.rationale.push(SwapRationale {
                a,
                b,
                users_a: topology.uav_load[a],
                users_b: topology.uav_load[b],
                energy_a: ledger.uavs[a].residual,
                energy_b: ledger.uavs[b].residual,
            });
            plan.swaps.push((a, b));
        }
    }
    plan
}

/// Why a planned swap was not executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DropReason {
    /// The exchange flight does not fit within one frame.
    TravelExceedsFrame,
    /// A member would die on the exchange flight itself.
    InsufficientEnergy,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DroppedSwap {
    pub a: usize,
    pub b: usize,
    pub reason: DropReason,
}

/// What [`apply_repositioning`] actually executed.
#[derive(Debug, Clone, PartialEq)]
pub struct SwapOutcome {
    pub applied: Vec<(usize, usize)>,
    pub dropped: Vec<DroppedSwap>,
    /// Travel energy charged per applied swap, joules per member.
    pub travel_cost_j: Vec<f64>,
}

/// Executes a swap plan: members exchange exact positions and each is
/// charged the travel energy for the exchange flight. Swaps whose
/// travel cannot finish within a frame, or would kill a member outright,
/// are dropped and reported instead.
pub fn apply_repositioning(
    placement: &PlacementVector,
    plan: &SwapPlan,
    ledger: &mut EnergyLedger,
    params: &EnergyParams,
) -> (PlacementVector, SwapOutcome) {
    let mut next = placement.clone();
    let mut outcome = SwapOutcome {
        applied: Vec::new(),
        dropped: Vec::new(),
        travel_cost_j: Vec::new(),
    };
    for &(a, b) in &plan.swaps {
        let dist = ground_distance(placement.position(a), placement.position(b));
        let travel_j = match motion_energy_frame(dist, params) {
            Ok((travel_j, _)) => travel_j,
            Err(_) => {
                outcome.dropped.push(DroppedSwap { a, b, reason: DropReason::TravelExceedsFrame });
                continue;
            }
        };
        if ledger.uavs[a].residual <= travel_j || ledger.uavs[b].residual <= travel_j {
            outcome.dropped.push(DroppedSwap { a, b, reason: DropReason::InsufficientEnergy });
            continue;
        }
        ledger.charge(a, 0.0, travel_j, 0.0);
        ledger.charge(b, 0.0, travel_j, 0.0);
        next.swap_positions(a, b);
        outcome.applied.push((a, b));
        outcome.travel_cost_j.push(travel_j);
    }
    (next, outcome)
}
